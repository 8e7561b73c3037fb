#pragma once

// Certificate data model for the proof replay, with JSON and text renderings.
// Every number is stored as a decimal string: big integers verbatim, real
// enclosures as {value, radius} pairs, and epsilon lower endpoints as exact
// finite decimals (their denominators are powers of two), so an independent
// checker can reproduce each comparison without parsing binary floats.

#include <gmpxx.h>

#include <cctype>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "pellpow2/bigreal.hpp"
#include "pellpow2/search.hpp"
#include "pellpow2/version.hpp"

namespace pellpow2 {

enum class OutputFormat { json, text };

inline const char* output_format_name(OutputFormat f) {
  return f == OutputFormat::json ? "json" : "text";
}

inline OutputFormat output_format_from_name(const std::string& s) {
  if (s == "json") return OutputFormat::json;
  if (s == "text") return OutputFormat::text;
  throw std::invalid_argument("unknown output format: " + s);
}

struct PipelineConfig {
  long n_threshold = 150;
  mpz_class m_big = mpz_class("40000000000000000000000000000000000000000000");
  PrecisionPolicy precision{};
  long shift_cap_nm = 200;
  OutputFormat output_format = OutputFormat::json;

  void validate() const {
    if (n_threshold < 1) throw std::invalid_argument("PipelineConfig: n_threshold >= 1");
    if (m_big < 6) throw std::invalid_argument("PipelineConfig: m_big >= 6");
    if (shift_cap_nm < 1) throw std::invalid_argument("PipelineConfig: shift_cap_nm >= 1");
    precision.validate();
  }
};

namespace detail {

// Exact decimal rendering of a rational whose denominator is 2^a 5^b.
inline std::string exact_decimal(const mpq_class& x) {
  if (x == 0) return "0";
  mpz_class num = x.get_num();
  mpz_class den = x.get_den();
  bool negative = num < 0;
  if (negative) num = -num;
  unsigned long twos = mpz_scan1(den.get_mpz_t(), 0);
  mpz_class rest = den >> twos;
  unsigned long fives = 0;
  while (mpz_divisible_ui_p(rest.get_mpz_t(), 5)) {
    mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), 5);
    ++fives;
  }
  if (rest != 1)
    throw std::domain_error("exact_decimal: denominator is not of the form 2^a 5^b");
  unsigned long k = std::max(twos, fives);
  mpz_class scaled = num << (k - twos);
  mpz_class five_pow;
  mpz_ui_pow_ui(five_pow.get_mpz_t(), 5, k - fives);
  scaled *= five_pow;
  std::string digits = scaled.get_str();
  std::string out;
  if (k == 0) {
    out = digits;
  } else {
    if (digits.size() <= k) digits.insert(0, k + 1 - digits.size(), '0');
    out = digits.substr(0, digits.size() - k) + "." + digits.substr(digits.size() - k);
    out.erase(out.find_last_not_of('0') + 1);
    if (out.back() == '.') out.pop_back();
  }
  return negative ? "-" + out : out;
}

// Parses [+-]? digits [. digits]? ([eE] [+-]? digits)? into an exact rational.
inline mpq_class mpq_from_decimal(const std::string& s) {
  std::size_t i = 0;
  auto fail = [&] { throw std::runtime_error("malformed decimal: " + s); };
  bool negative = false;
  if (i < s.size() && (s[i] == '+' || s[i] == '-')) negative = s[i++] == '-';
  std::string mantissa;
  long frac_len = 0;
  while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])))
    mantissa.push_back(s[i++]);
  if (i < s.size() && s[i] == '.') {
    ++i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
      mantissa.push_back(s[i++]);
      ++frac_len;
    }
  }
  if (mantissa.empty()) fail();
  long exponent = 0;
  if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
    ++i;
    bool exp_neg = false;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) exp_neg = s[i++] == '-';
    if (i == s.size()) fail();
    std::string digits;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])))
      digits.push_back(s[i++]);
    if (digits.empty() || digits.size() > 9) fail();
    exponent = std::stol(digits);
    if (exp_neg) exponent = -exponent;
  }
  if (i != s.size()) fail();
  mpq_class v{mpz_class(mantissa, 10)};  // explicit base: a leading 0 is not octal
  long e10 = exponent - frac_len;
  mpz_class pow10;
  mpz_ui_pow_ui(pow10.get_mpz_t(), 10, static_cast<unsigned long>(e10 < 0 ? -e10 : e10));
  if (e10 >= 0)
    v *= pow10;
  else
    v /= pow10;
  v.canonicalize();
  return negative ? mpq_class(-v) : v;
}

inline mpz_class mpz_from_decimal(const std::string& s) {
  try {
    return mpz_class(s, 10);
  } catch (const std::invalid_argument&) {
    throw std::runtime_error("malformed integer: " + s);
  }
}

inline long long_from_decimal(const std::string& s) {
  mpz_class v = mpz_from_decimal(s);
  if (!v.fits_slong_p()) throw std::runtime_error("integer out of range: " + s);
  return v.get_si();
}

}  // namespace detail

// A real enclosure rendered for the certificate: decimal midpoint + radius.
struct RealRecord {
  std::string value;
  std::string radius;
};

inline RealRecord real_record(const CertifiedReal& v) {
  return RealRecord{v.decimal(40), v.radius_decimal()};
}

struct EllZeroStage {
  std::set<SolutionTuple> solutions;
  CertificateNotes notes;
};

struct ChainCoefficientRecord {
  std::string quantity;  // "n_minus_m" | "n_minus_ell" | "n"
  long log_power = 0;
  RealRecord coefficient;
};

struct BoundChainStage {
  long precision_bits = 0;
  std::vector<ChainCoefficientRecord> coefficients;
  std::vector<std::string> certifications;
  std::vector<std::pair<std::string, std::string>> nonvanishing;  // form -> note
};

struct AbsoluteBoundStage {
  mpz_class n_abs;
};

struct ReductionRecord {
  std::vector<long> shifts;  // empty for round 1, one entry round 2, two round 3
  std::string method;        // "dujella_petho" | "legendre_fallback"
  // dujella_petho fields
  long convergent_index = -1;
  mpz_class q_used;
  RealRecord epsilon;
  mpq_class epsilon_lower;
  mpz_class w_bound;
  long certified_at_bits = 0;
  std::string a3;  // rounds 2 and 3: certified Matveev A3 for the shifts
  // legendre_fallback fields
  mpz_class a_max;
  long bracket_index = 0;
  std::string note;
};

struct ReductionStage {
  std::string name;
  mpz_class a_parameter;  // the A in 0 < |u gamma - v + mu| < A B^-w (B = alpha)
  mpz_class m_coeff;
  std::vector<ReductionRecord> records;
  mpz_class bound;  // max w_bound over records
};

struct BruteForceStage {
  long threshold = 0;
  std::set<SolutionTuple> solutions;
};

struct Verdict {
  std::string status = "failed";  // "verified" | "failed"
  std::string stage;
  std::string reason;
};

struct Certificate {
  std::string tool_version;
  PipelineConfig config;
  std::optional<EllZeroStage> ell_zero;
  std::optional<BoundChainStage> bound_chain;
  std::optional<AbsoluteBoundStage> absolute_bound;
  std::optional<ReductionStage> reduce_n_minus_m;
  std::optional<ReductionStage> reduce_n_minus_ell;
  std::optional<ReductionStage> reduce_n;
  std::optional<BruteForceStage> brute;
  std::vector<SolutionTuple> final_solution_set;
  Verdict verdict;
};

inline const std::vector<std::string>& stage_order() {
  static const std::vector<std::string> order = {
      "ell_zero",           "bound_chain", "absolute_bound", "reduce_n_minus_m",
      "reduce_n_minus_ell", "reduce_n",    "brute_force"};
  return order;
}

namespace detail {

using json = nlohmann::ordered_json;

inline json tuple_to_json(const SolutionTuple& t) {
  json j;
  j["n"] = std::to_string(t.n);
  j["m"] = std::to_string(t.m);
  j["ell"] = std::to_string(t.ell);
  j["a"] = std::to_string(t.a);
  return j;
}

inline SolutionTuple tuple_from_json(const json& j) {
  SolutionTuple t;
  t.n = long_from_decimal(j.at("n").get<std::string>());
  t.m = long_from_decimal(j.at("m").get<std::string>());
  t.ell = long_from_decimal(j.at("ell").get<std::string>());
  long a = long_from_decimal(j.at("a").get<std::string>());
  if (a < 0) throw std::runtime_error("solution tuple: negative exponent");
  t.a = static_cast<unsigned long>(a);
  return t;
}

inline json tuples_to_json(const std::set<SolutionTuple>& ts) {
  json arr = json::array();
  for (const auto& t : ts) arr.push_back(tuple_to_json(t));
  return arr;
}

inline std::set<SolutionTuple> tuples_from_json(const json& arr) {
  std::set<SolutionTuple> out;
  for (const auto& j : arr) out.insert(tuple_from_json(j));
  return out;
}

inline json real_to_json(const RealRecord& r) {
  json j;
  j["value"] = r.value;
  j["radius"] = r.radius;
  return j;
}

inline RealRecord real_from_json(const json& j) {
  return RealRecord{j.at("value").get<std::string>(), j.at("radius").get<std::string>()};
}

inline json record_to_json(const ReductionRecord& r) {
  json j;
  json shifts = json::array();
  for (long s : r.shifts) shifts.push_back(std::to_string(s));
  j["shifts"] = shifts;
  j["method"] = r.method;
  if (r.method == "dujella_petho") {
    j["convergent_index"] = std::to_string(r.convergent_index);
    j["q_used"] = r.q_used.get_str();
    j["epsilon"] = real_to_json(r.epsilon);
    j["epsilon_lower"] = exact_decimal(r.epsilon_lower);
    j["certified_at_bits"] = std::to_string(r.certified_at_bits);
    if (!r.a3.empty()) j["a3"] = r.a3;
  } else {
    j["a_max"] = r.a_max.get_str();
    j["bracket_index"] = std::to_string(r.bracket_index);
    j["note"] = r.note;
  }
  j["w_bound"] = r.w_bound.get_str();
  return j;
}

inline ReductionRecord record_from_json(const json& j) {
  ReductionRecord r;
  for (const auto& s : j.at("shifts"))
    r.shifts.push_back(long_from_decimal(s.get<std::string>()));
  r.method = j.at("method").get<std::string>();
  if (r.method == "dujella_petho") {
    r.convergent_index = long_from_decimal(j.at("convergent_index").get<std::string>());
    r.q_used = mpz_from_decimal(j.at("q_used").get<std::string>());
    r.epsilon = real_from_json(j.at("epsilon"));
    r.epsilon_lower = mpq_from_decimal(j.at("epsilon_lower").get<std::string>());
    r.certified_at_bits = long_from_decimal(j.at("certified_at_bits").get<std::string>());
    if (j.contains("a3")) r.a3 = j.at("a3").get<std::string>();
  } else if (r.method == "legendre_fallback") {
    r.a_max = mpz_from_decimal(j.at("a_max").get<std::string>());
    r.bracket_index = long_from_decimal(j.at("bracket_index").get<std::string>());
    r.note = j.at("note").get<std::string>();
  } else {
    throw std::runtime_error("unknown reduction method: " + r.method);
  }
  r.w_bound = mpz_from_decimal(j.at("w_bound").get<std::string>());
  return r;
}

inline json reduction_stage_to_json(const ReductionStage& st) {
  json j;
  j["stage"] = st.name;
  j["A"] = st.a_parameter.get_str();
  j["B"] = "alpha";
  j["M"] = st.m_coeff.get_str();
  json records = json::array();
  for (const auto& r : st.records) records.push_back(record_to_json(r));
  j["records"] = std::move(records);
  j["bound"] = st.bound.get_str();
  return j;
}

inline ReductionStage reduction_stage_from_json(const json& j) {
  ReductionStage st;
  st.name = j.at("stage").get<std::string>();
  st.a_parameter = mpz_from_decimal(j.at("A").get<std::string>());
  if (j.at("B").get<std::string>() != "alpha")
    throw std::runtime_error("reduction stage: unsupported base B");
  st.m_coeff = mpz_from_decimal(j.at("M").get<std::string>());
  for (const auto& r : j.at("records")) st.records.push_back(record_from_json(r));
  st.bound = mpz_from_decimal(j.at("bound").get<std::string>());
  return st;
}

inline json config_to_json(const PipelineConfig& cfg) {
  json j;
  j["n_threshold"] = std::to_string(cfg.n_threshold);
  j["m_big"] = cfg.m_big.get_str();
  json prec;
  prec["initial_bits"] = std::to_string(cfg.precision.initial_bits);
  prec["max_bits"] = std::to_string(cfg.precision.max_bits);
  prec["growth_factor"] = std::to_string(cfg.precision.growth_factor);
  j["precision"] = std::move(prec);
  j["shift_cap_nm"] = std::to_string(cfg.shift_cap_nm);
  j["output_format"] = output_format_name(cfg.output_format);
  return j;
}

inline PipelineConfig config_from_json(const json& j) {
  PipelineConfig cfg;
  cfg.n_threshold = long_from_decimal(j.at("n_threshold").get<std::string>());
  cfg.m_big = mpz_from_decimal(j.at("m_big").get<std::string>());
  const json& prec = j.at("precision");
  cfg.precision.initial_bits = long_from_decimal(prec.at("initial_bits").get<std::string>());
  cfg.precision.max_bits = long_from_decimal(prec.at("max_bits").get<std::string>());
  cfg.precision.growth_factor =
      static_cast<int>(long_from_decimal(prec.at("growth_factor").get<std::string>()));
  cfg.shift_cap_nm = long_from_decimal(j.at("shift_cap_nm").get<std::string>());
  cfg.output_format = output_format_from_name(j.at("output_format").get<std::string>());
  return cfg;
}

}  // namespace detail

inline nlohmann::ordered_json certificate_to_json(const Certificate& cert) {
  using detail::json;
  json j;
  j["format"] = kCertificateFormat;
  j["format_version"] = std::to_string(kCertificateVersion);
  j["tool_version"] = cert.tool_version;
  j["config"] = detail::config_to_json(cert.config);
  json stages = json::array();
  if (cert.ell_zero) {
    json s;
    s["stage"] = "ell_zero";
    s["solutions"] = detail::tuples_to_json(cert.ell_zero->solutions);
    s["notes"] = cert.ell_zero->notes;
    stages.push_back(std::move(s));
  }
  if (cert.bound_chain) {
    json s;
    s["stage"] = "bound_chain";
    s["precision_bits"] = std::to_string(cert.bound_chain->precision_bits);
    json coeffs = json::array();
    for (const auto& c : cert.bound_chain->coefficients) {
      json cj;
      cj["quantity"] = c.quantity;
      cj["log_power"] = std::to_string(c.log_power);
      cj["coefficient"] = detail::real_to_json(c.coefficient);
      coeffs.push_back(std::move(cj));
    }
    s["coefficients"] = std::move(coeffs);
    s["certifications"] = cert.bound_chain->certifications;
    json nv = json::array();
    for (const auto& [form, note] : cert.bound_chain->nonvanishing) {
      json fj;
      fj["form"] = form;
      fj["note"] = note;
      nv.push_back(std::move(fj));
    }
    s["nonvanishing"] = std::move(nv);
    stages.push_back(std::move(s));
  }
  if (cert.absolute_bound) {
    json s;
    s["stage"] = "absolute_bound";
    s["n_abs"] = cert.absolute_bound->n_abs.get_str();
    s["comparison"] = "2 * n_abs < m_big";
    stages.push_back(std::move(s));
  }
  for (const auto* st : {&cert.reduce_n_minus_m, &cert.reduce_n_minus_ell, &cert.reduce_n})
    if (*st) stages.push_back(detail::reduction_stage_to_json(**st));
  if (cert.brute) {
    json s;
    s["stage"] = "brute_force";
    s["threshold"] = std::to_string(cert.brute->threshold);
    s["solutions"] = detail::tuples_to_json(cert.brute->solutions);
    stages.push_back(std::move(s));
  }
  j["stages"] = std::move(stages);
  json fss = json::array();
  for (const auto& t : cert.final_solution_set) fss.push_back(detail::tuple_to_json(t));
  j["final_solution_set"] = std::move(fss);
  json v;
  v["status"] = cert.verdict.status;
  if (cert.verdict.status != "verified") {
    v["stage"] = cert.verdict.stage;
    v["reason"] = cert.verdict.reason;
  }
  j["verdict"] = std::move(v);
  return j;
}

inline Certificate certificate_from_json(const nlohmann::ordered_json& j) {
  using detail::json;
  Certificate cert;
  if (j.at("format").get<std::string>() != kCertificateFormat)
    throw std::runtime_error("unrecognized certificate format");
  if (detail::long_from_decimal(j.at("format_version").get<std::string>()) !=
      kCertificateVersion)
    throw std::runtime_error("unsupported certificate format version");
  cert.tool_version = j.at("tool_version").get<std::string>();
  cert.config = detail::config_from_json(j.at("config"));
  std::size_t expected = 0;
  for (const auto& s : j.at("stages")) {
    std::string name = s.at("stage").get<std::string>();
    if (expected >= stage_order().size() || name != stage_order()[expected])
      throw std::runtime_error("stage out of order: " + name);
    ++expected;
    if (name == "ell_zero") {
      EllZeroStage st;
      st.solutions = detail::tuples_from_json(s.at("solutions"));
      for (const auto& n : s.at("notes")) st.notes.push_back(n.get<std::string>());
      cert.ell_zero = std::move(st);
    } else if (name == "bound_chain") {
      BoundChainStage st;
      st.precision_bits = detail::long_from_decimal(s.at("precision_bits").get<std::string>());
      for (const auto& cj : s.at("coefficients")) {
        ChainCoefficientRecord c;
        c.quantity = cj.at("quantity").get<std::string>();
        c.log_power = detail::long_from_decimal(cj.at("log_power").get<std::string>());
        c.coefficient = detail::real_from_json(cj.at("coefficient"));
        st.coefficients.push_back(std::move(c));
      }
      for (const auto& n : s.at("certifications"))
        st.certifications.push_back(n.get<std::string>());
      for (const auto& fj : s.at("nonvanishing"))
        st.nonvanishing.emplace_back(fj.at("form").get<std::string>(),
                                     fj.at("note").get<std::string>());
      cert.bound_chain = std::move(st);
    } else if (name == "absolute_bound") {
      AbsoluteBoundStage st;
      st.n_abs = detail::mpz_from_decimal(s.at("n_abs").get<std::string>());
      cert.absolute_bound = std::move(st);
    } else if (name == "reduce_n_minus_m") {
      cert.reduce_n_minus_m = detail::reduction_stage_from_json(s);
    } else if (name == "reduce_n_minus_ell") {
      cert.reduce_n_minus_ell = detail::reduction_stage_from_json(s);
    } else if (name == "reduce_n") {
      cert.reduce_n = detail::reduction_stage_from_json(s);
    } else if (name == "brute_force") {
      BruteForceStage st;
      st.threshold = detail::long_from_decimal(s.at("threshold").get<std::string>());
      st.solutions = detail::tuples_from_json(s.at("solutions"));
      cert.brute = std::move(st);
    }
  }
  for (const auto& t : j.at("final_solution_set"))
    cert.final_solution_set.push_back(detail::tuple_from_json(t));
  const json& v = j.at("verdict");
  cert.verdict.status = v.at("status").get<std::string>();
  if (cert.verdict.status != "verified" && cert.verdict.status != "failed")
    throw std::runtime_error("unknown verdict status: " + cert.verdict.status);
  if (cert.verdict.status != "verified") {
    cert.verdict.stage = v.at("stage").get<std::string>();
    cert.verdict.reason = v.at("reason").get<std::string>();
  }
  return cert;
}

inline Certificate parse_certificate(const std::string& bytes) {
  nlohmann::ordered_json j;
  try {
    j = nlohmann::ordered_json::parse(bytes);
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(std::string("certificate parse failure: ") + e.what());
  }
  try {
    return certificate_from_json(j);
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(std::string("certificate parse failure: ") + e.what());
  }
}

namespace detail {

inline std::string tuple_list(const std::set<SolutionTuple>& ts) {
  std::ostringstream os;
  bool first = true;
  for (const auto& t : ts) {
    if (!first) os << ", ";
    os << to_string(t);
    first = false;
  }
  return os.str();
}

inline const ReductionRecord* worst_record(const ReductionStage& st) {
  const ReductionRecord* worst = nullptr;
  for (const auto& r : st.records)
    if (!worst || r.w_bound > worst->w_bound) worst = &r;
  return worst;
}

inline void reduction_stage_text(std::ostringstream& os, const ReductionStage& st) {
  os << "[" << st.name << "]\n";
  os << "  inequality 0 < |u gamma - v + mu| < " << st.a_parameter
     << " * alpha^-w with u <= " << st.m_coeff << "\n";
  os << "  " << st.records.size() << " record(s); bound on w: " << st.bound << "\n";
  if (st.records.size() <= 3) {
    for (const auto& r : st.records) {
      if (r.method == "dujella_petho") {
        os << "  convergent " << r.convergent_index << " (q = " << r.q_used
           << "): epsilon = " << r.epsilon.value << " +- " << r.epsilon.radius
           << ", w <= " << r.w_bound << " at " << r.certified_at_bits << " bits\n";
      } else {
        os << "  fallback at shift " << (r.shifts.empty() ? 0L : r.shifts.front())
           << ": max partial quotient " << r.a_max << " up to convergent "
           << r.bracket_index << ", w <= " << r.w_bound << " (" << r.note << ")\n";
      }
    }
  } else if (const ReductionRecord* worst = worst_record(st)) {
    os << "  worst shift(s):";
    for (long s : worst->shifts) os << " " << s;
    os << " with w <= " << worst->w_bound << " from convergent " << worst->convergent_index
       << "\n";
    long fallbacks = 0;
    for (const auto& r : st.records)
      if (r.method == "legendre_fallback") ++fallbacks;
    if (fallbacks > 0) {
      os << "  fallback records:";
      for (const auto& r : st.records)
        if (r.method == "legendre_fallback")
          os << " shift " << (r.shifts.empty() ? 0L : r.shifts.front()) << " -> w <= "
             << r.w_bound << ";";
      os << "\n";
    }
  }
}

}  // namespace detail

inline std::string certificate_text(const Certificate& cert) {
  std::ostringstream os;
  os << "pellpow2 proof-replay certificate (tool " << cert.tool_version << ")\n";
  os << "equation: P_n + P_m + P_ell = 2^a with n >= m >= ell >= 0\n";
  os << "config: n_threshold = " << cert.config.n_threshold
     << ", M = " << cert.config.m_big << ", precision " << cert.config.precision.initial_bits
     << ".." << cert.config.precision.max_bits << " bits\n\n";
  if (cert.ell_zero) {
    os << "[ell_zero]\n  solutions: " << detail::tuple_list(cert.ell_zero->solutions) << "\n";
    for (const auto& n : cert.ell_zero->notes) os << "  note: " << n << "\n";
  }
  if (cert.bound_chain) {
    os << "[bound_chain]\n";
    for (const auto& c : cert.bound_chain->coefficients)
      os << "  " << c.quantity << " < C * log^" << c.log_power << "(n) with C = "
         << c.coefficient.value << " +- " << c.coefficient.radius << "\n";
    for (const auto& n : cert.bound_chain->certifications) os << "  certified: " << n << "\n";
    for (const auto& [form, note] : cert.bound_chain->nonvanishing)
      os << "  nonvanishing " << form << ": " << note << "\n";
  }
  if (cert.absolute_bound)
    os << "[absolute_bound]\n  n < " << cert.absolute_bound->n_abs
       << " and 2 * n_abs < M = " << cert.config.m_big << "\n";
  if (cert.reduce_n_minus_m) detail::reduction_stage_text(os, *cert.reduce_n_minus_m);
  if (cert.reduce_n_minus_ell) detail::reduction_stage_text(os, *cert.reduce_n_minus_ell);
  if (cert.reduce_n) detail::reduction_stage_text(os, *cert.reduce_n);
  if (cert.brute) {
    os << "[brute_force]\n  threshold " << cert.brute->threshold << "; "
       << cert.brute->solutions.size()
       << " solution(s): " << detail::tuple_list(cert.brute->solutions) << "\n";
  }
  os << "\nverdict: " << cert.verdict.status;
  if (cert.verdict.status != "verified")
    os << " at stage " << cert.verdict.stage << ": " << cert.verdict.reason;
  os << "\n";
  return os.str();
}

inline std::string emit_report(const Certificate& cert, OutputFormat fmt) {
  if (fmt == OutputFormat::json) return certificate_to_json(cert).dump(2) + "\n";
  return certificate_text(cert);
}

}  // namespace pellpow2
