#pragma once

// Full proof replay: ell = 0 structural case, Matveev bound chain, absolute
// bound, three reduction rounds, final brute force, verdict.  Also the
// independent certificate checker, which re-derives every recorded claim at
// the recorded precision from the recorded inputs.

#include <gmpxx.h>

#include <algorithm>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "pellpow2/certificate.hpp"
#include "pellpow2/matveev.hpp"
#include "pellpow2/reduction.hpp"
#include "pellpow2/search.hpp"
#include "pellpow2/version.hpp"

namespace pellpow2 {

// The solution list the replay is expected to certify.
inline const std::set<SolutionTuple>& expected_solution_set() {
  static const std::set<SolutionTuple> s = {
      {1, 0, 0, 0}, {1, 1, 0, 1}, {2, 0, 0, 1}, {2, 1, 1, 2},
      {2, 2, 0, 2}, {3, 2, 1, 3}, {5, 2, 1, 5}, {6, 5, 5, 7},
  };
  return s;
}

namespace detail {

// Caps guarding against runaway enumeration under non-default configs.
inline constexpr long kBruteForceCap = 2000;

inline RealExpr pipeline_gamma() {
  return [](mpfr_prec_t p) {
    return named_constant(Constant::Log2, p) / named_constant(Constant::LogAlpha, p);
  };
}

// mu = log(sqrt(2))/log(alpha) for round 1, log(eta3(shifts))/log(alpha) after.
inline RealExpr pipeline_mu(const std::vector<long>& shifts) {
  if (shifts.empty())
    return [](mpfr_prec_t p) {
      return named_constant(Constant::LogSqrt2, p) / named_constant(Constant::LogAlpha, p);
    };
  return [shifts](mpfr_prec_t p) {
    return log(eta3_value(shifts, p)) / named_constant(Constant::LogAlpha, p);
  };
}

inline constexpr mpfr_prec_t kAuxPrec = 256;  // base B and per-shift A3 guards

inline ReductionInstance pipeline_instance(const mpz_class& m_big,
                                           const std::vector<long>& shifts, long a_value) {
  ReductionInstance inst;
  inst.gamma = pipeline_gamma();
  inst.mu = pipeline_mu(shifts);
  inst.A = CertifiedReal::from_long(a_value, 64);
  inst.B = named_constant(Constant::Alpha, kAuxPrec);
  inst.M = m_big;
  return inst;
}

inline long stage_a_value(const std::string& stage_name) {
  if (stage_name == "reduce_n_minus_m") return 10;
  if (stage_name == "reduce_n_minus_ell") return 6;
  if (stage_name == "reduce_n") return 5;
  throw std::invalid_argument("not a reduction stage: " + stage_name);
}

inline ReductionRecord dujella_record(const std::vector<long>& shifts,
                                      const ReductionOutcome& out, const std::string& a3) {
  ReductionRecord r;
  r.shifts = shifts;
  r.method = "dujella_petho";
  r.convergent_index = out.convergent_index;
  r.q_used = out.q_used;
  r.epsilon = real_record(out.epsilon);
  r.epsilon_lower = out.epsilon.lower();
  r.w_bound = out.w_bound;
  r.certified_at_bits = static_cast<long>(out.certified_at_bits);
  r.a3 = a3;
  return r;
}

inline std::string fallback_note(long shift) {
  if (shift == 1)
    return "eta3(1) = 1 exactly, so mu = 0 and the inequality is 0 < |u gamma - v| with "
           "u = a + 1 <= M";
  return "eta3(2) = alpha/2 exactly, so mu = 1 - gamma and the inequality folds into "
         "0 < |(u - 1) gamma - (v - 1)| with u - 1 = a <= M";
}

inline Verdict partial_verdict(const std::string& stop_after) {
  return Verdict{"failed", "verdict", "partial run: stopped after stage " + stop_after};
}

inline Verdict solution_set_verdict(const std::set<SolutionTuple>& found) {
  const auto& expected = expected_solution_set();
  if (found == expected) return Verdict{"verified", "", ""};
  std::ostringstream os;
  os << "enumeration disagrees with the expected solution set:";
  for (const auto& t : found)
    if (!expected.count(t)) os << " unexpected " << to_string(t);
  for (const auto& t : expected)
    if (!found.count(t)) os << " missing " << to_string(t);
  return Verdict{"failed", "verdict", os.str()};
}

}  // namespace detail

// Runs the replay; with a non-empty stop_after, runs the stage prefix ending
// at that stage and records a failed "partial run" verdict (a partial run is
// never verified).
inline Certificate run_pipeline(const PipelineConfig& cfg, const std::string& stop_after = "") {
  cfg.validate();
  if (!stop_after.empty() &&
      std::find(stage_order().begin(), stage_order().end(), stop_after) ==
          stage_order().end())
    throw std::invalid_argument("unknown stage: " + stop_after);

  Certificate cert;
  cert.tool_version = kToolVersion;
  cert.config = cfg;
  auto fail = [&cert](const std::string& stage, const std::string& reason) {
    cert.verdict = Verdict{"failed", stage, reason};
    return cert;
  };

  // ell = 0 structural case.
  try {
    EllZeroCase ez = case_ell_zero();
    cert.ell_zero = EllZeroStage{std::move(ez.solutions), std::move(ez.notes)};
  } catch (const std::exception& e) {
    return fail("ell_zero", e.what());
  }
  if (stop_after == "ell_zero") {
    cert.verdict = detail::partial_verdict(stop_after);
    return cert;
  }

  // Matveev bound chain and nonvanishing guards.
  std::optional<BoundChain> chain;
  const mpfr_prec_t chain_bits =
      std::max<mpfr_prec_t>(cfg.precision.initial_bits, detail::kAuxPrec);
  try {
    chain = bound_chain(chain_bits);
    BoundChainStage st;
    st.precision_bits = static_cast<long>(chain_bits);
    for (const BoundChainCoefficient* c : {&chain->K1, &chain->K2, &chain->K3})
      st.coefficients.push_back(ChainCoefficientRecord{chain_quantity_name(c->quantity),
                                                       c->log_power_k,
                                                       real_record(c->coefficient_C)});
    st.certifications = chain->certifications;
    for (LinearForm f : {LinearForm::Lambda1, LinearForm::Lambda2, LinearForm::Lambda3}) {
      NonvanishingResult nv = nonvanishing_guard(f, chain_bits);
      if (!nv.certified)
        return fail("bound_chain",
                    std::string("nonvanishing guard failed for ") + linear_form_name(f));
      st.nonvanishing.emplace_back(linear_form_name(f), nv.note);
    }
    cert.bound_chain = std::move(st);
  } catch (const std::exception& e) {
    return fail("bound_chain", e.what());
  }
  if (stop_after == "bound_chain") {
    cert.verdict = detail::partial_verdict(stop_after);
    return cert;
  }

  // Absolute bound n < n_abs, which must leave room for u = a + 1 <= 2n + 1 < M.
  try {
    mpz_class n_abs = solve_log_bound(chain->K3.coefficient_C, 3, cfg.precision);
    if (!(2 * n_abs < cfg.m_big))
      return fail("absolute_bound", "2 * n_abs >= m_big, so M cannot majorize a + 1");
    cert.absolute_bound = AbsoluteBoundStage{std::move(n_abs)};
  } catch (const std::exception& e) {
    return fail("absolute_bound", e.what());
  }
  if (stop_after == "absolute_bound") {
    cert.verdict = detail::partial_verdict(stop_after);
    return cert;
  }

  // One continued fraction of gamma serves all three rounds.
  ContinuedFractionExpansion cf;
  long s1 = 0;
  try {
    cf = expand_cf(detail::pipeline_gamma(), 128, cfg.precision);
    ReductionInstance inst = detail::pipeline_instance(cfg.m_big, {}, 10);
    ReductionResult res = dujella_petho(inst, cf, cfg.precision);
    if (const auto* dg = std::get_if<DegenerateFailure>(&res))
      return fail("reduce_n_minus_m", "degenerate reduction: " + dg->reason);
    const auto& out = std::get<ReductionOutcome>(res);
    ReductionStage st;
    st.name = "reduce_n_minus_m";
    st.a_parameter = 10;
    st.m_coeff = cfg.m_big;
    st.records.push_back(detail::dujella_record({}, out, ""));
    st.bound = out.w_bound;
    if (st.bound > cfg.shift_cap_nm)
      return fail("reduce_n_minus_m",
                  "bound " + st.bound.get_str() + " exceeds shift cap " +
                      std::to_string(cfg.shift_cap_nm));
    s1 = st.bound.get_si();
    cert.reduce_n_minus_m = std::move(st);
  } catch (const std::exception& e) {
    return fail("reduce_n_minus_m", e.what());
  }
  if (stop_after == "reduce_n_minus_m") {
    cert.verdict = detail::partial_verdict(stop_after);
    return cert;
  }

  // Round 2: one reduction per shift x = n - m, Legendre fallback at x = 1, 2
  // where mu degenerates to 0 and 1 - gamma.
  long s2 = 0;
  try {
    ReductionStage st;
    st.name = "reduce_n_minus_ell";
    st.a_parameter = 6;
    st.m_coeff = cfg.m_big;
    std::optional<BracketingResult> br;
    mpz_class a_max, fb_w;
    mpz_class bound = 0;
    for (long x = 0; x <= s1; ++x) {
      if (x == 1 || x == 2) {
        if (!br) {
          br = convergent_bracketing(cf, cfg.m_big);
          a_max = max_partial_quotient(cf, br->upper);
          fb_w = legendre_fallback(cf, cfg.m_big, CertifiedReal::from_long(6, 64),
                                   named_constant(Constant::Alpha, detail::kAuxPrec),
                                   br->upper);
        }
        ReductionRecord r;
        r.shifts = {x};
        r.method = "legendre_fallback";
        r.a_max = a_max;
        r.bracket_index = br->upper;
        r.w_bound = fb_w;
        r.note = detail::fallback_note(x);
        st.records.push_back(std::move(r));
        if (fb_w > bound) bound = fb_w;
        continue;
      }
      CertifiedReal a3 = a3_parameter({x}, detail::kAuxPrec);
      ReductionInstance inst = detail::pipeline_instance(cfg.m_big, {x}, 6);
      ReductionResult res = dujella_petho(inst, cf, cfg.precision);
      if (const auto* dg = std::get_if<DegenerateFailure>(&res))
        return fail("reduce_n_minus_ell",
                    "shift " + std::to_string(x) + ": degenerate reduction: " + dg->reason);
      const auto& out = std::get<ReductionOutcome>(res);
      st.records.push_back(detail::dujella_record({x}, out, a3.decimal(40)));
      if (out.w_bound > bound) bound = out.w_bound;
    }
    st.bound = bound;
    if (st.bound > cfg.shift_cap_nm)
      return fail("reduce_n_minus_ell",
                  "bound " + st.bound.get_str() + " exceeds shift cap " +
                      std::to_string(cfg.shift_cap_nm));
    s2 = st.bound.get_si();
    cert.reduce_n_minus_ell = std::move(st);
  } catch (const std::exception& e) {
    return fail("reduce_n_minus_ell", e.what());
  }
  if (stop_after == "reduce_n_minus_ell") {
    cert.verdict = detail::partial_verdict(stop_after);
    return cert;
  }

  // Round 3: one reduction per pair (x1, x2) = (n - m, n - ell), x1 <= x2.
  long s3 = 0;
  try {
    ReductionStage st;
    st.name = "reduce_n";
    st.a_parameter = 5;
    st.m_coeff = cfg.m_big;
    mpz_class bound = 0;
    for (long x1 = 0; x1 <= s1; ++x1)
      for (long x2 = x1; x2 <= s2; ++x2) {
        CertifiedReal a3 = a3_parameter({x1, x2}, detail::kAuxPrec);
        ReductionInstance inst = detail::pipeline_instance(cfg.m_big, {x1, x2}, 5);
        ReductionResult res = dujella_petho(inst, cf, cfg.precision);
        if (const auto* dg = std::get_if<DegenerateFailure>(&res))
          return fail("reduce_n", "pair (" + std::to_string(x1) + ", " + std::to_string(x2) +
                                      "): degenerate reduction: " + dg->reason);
        const auto& out = std::get<ReductionOutcome>(res);
        st.records.push_back(detail::dujella_record({x1, x2}, out, a3.decimal(40)));
        if (out.w_bound > bound) bound = out.w_bound;
      }
    st.bound = bound;
    if (!st.bound.fits_slong_p() || st.bound.get_si() > detail::kBruteForceCap)
      return fail("reduce_n", "bound " + st.bound.get_str() + " exceeds the enumeration cap");
    s3 = st.bound.get_si();
    cert.reduce_n = std::move(st);
  } catch (const std::exception& e) {
    return fail("reduce_n", e.what());
  }
  if (stop_after == "reduce_n") {
    cert.verdict = detail::partial_verdict(stop_after);
    return cert;
  }

  // Residual range enumeration.
  try {
    long threshold = std::max(s3, cfg.n_threshold);
    if (threshold > detail::kBruteForceCap)
      return fail("brute_force",
                  "threshold " + std::to_string(threshold) + " exceeds the enumeration cap");
    std::set<SolutionTuple> found = brute_force(threshold);
    cert.brute = BruteForceStage{threshold, found};
    cert.final_solution_set.assign(found.begin(), found.end());
  } catch (const std::exception& e) {
    return fail("brute_force", e.what());
  }
  if (stop_after == "brute_force") {
    cert.verdict = detail::partial_verdict(stop_after);
    return cert;
  }

  cert.verdict = detail::solution_set_verdict(cert.brute->solutions);
  return cert;
}

namespace detail {

struct VerifyContext {
  std::vector<std::string> problems;
  void flag(const std::string& stage, const std::string& what) {
    problems.push_back(stage + ": " + what);
  }
};

inline void verify_reduction_stage(const ReductionStage& st, const Certificate& cert,
                                   const ContinuedFractionExpansion& cf, VerifyContext& ctx) {
  const mpz_class& m_big = cert.config.m_big;
  long a_value = stage_a_value(st.name);
  if (st.a_parameter != a_value)
    ctx.flag(st.name, "A parameter is " + st.a_parameter.get_str() + ", expected " +
                          std::to_string(a_value));
  if (st.m_coeff != m_big) ctx.flag(st.name, "M does not match the configured m_big");

  CertifiedReal a_exact = CertifiedReal::from_long(a_value, 64);
  CertifiedReal base = named_constant(Constant::Alpha, kAuxPrec);
  mpz_class six_m = 6 * m_big;
  mpz_class max_w = 0;

  for (const ReductionRecord& r : st.records) {
    std::ostringstream tag;
    tag << st.name << " record";
    for (long s : r.shifts) tag << " " << s;
    const std::string where = tag.str();
    if (r.w_bound > max_w) max_w = r.w_bound;

    if (r.method == "legendre_fallback") {
      if (st.name != "reduce_n_minus_ell" || r.shifts.size() != 1 ||
          (r.shifts[0] != 1 && r.shifts[0] != 2)) {
        ctx.flag(where, "fallback record outside the degenerate shifts {1, 2}");
        continue;
      }
      try {
        BracketingResult br = convergent_bracketing(cf, m_big);
        if (br.upper != r.bracket_index)
          ctx.flag(where, "bracketing index mismatch");
        else if (max_partial_quotient(cf, r.bracket_index) != r.a_max)
          ctx.flag(where, "max partial quotient mismatch");
        else if (legendre_fallback(cf, m_big, a_exact, base, r.bracket_index) != r.w_bound)
          ctx.flag(where, "fallback w_bound does not reproduce");
      } catch (const std::exception& e) {
        ctx.flag(where, e.what());
      }
      continue;
    }
    if (r.method != "dujella_petho") {
      ctx.flag(where, "unknown method " + r.method);
      continue;
    }

    std::size_t expected_shifts =
        st.name == "reduce_n_minus_m" ? 0 : (st.name == "reduce_n_minus_ell" ? 1 : 2);
    if (r.shifts.size() != expected_shifts) {
      ctx.flag(where, "wrong number of shifts for this stage");
      continue;
    }
    if (r.convergent_index < 0 ||
        static_cast<std::size_t>(r.convergent_index) >= cf.convergents.size()) {
      ctx.flag(where, "convergent index outside the certified expansion");
      continue;
    }
    if (cf.convergents[static_cast<std::size_t>(r.convergent_index)].second != r.q_used) {
      ctx.flag(where, "q_used is not the claimed convergent denominator");
      continue;
    }
    if (!(r.q_used > six_m)) {
      ctx.flag(where, "q_used does not exceed 6M");
      continue;
    }
    mpfr_prec_t start_bits = std::max<mpfr_prec_t>(
        cert.config.precision.initial_bits,
        static_cast<mpfr_prec_t>(mpz_sizeinbase(r.q_used.get_mpz_t(), 2) +
                                 mpz_sizeinbase(m_big.get_mpz_t(), 2) + 64));
    if (r.certified_at_bits < 8 ||
        r.certified_at_bits > std::max<mpfr_prec_t>(cert.config.precision.max_bits, start_bits)) {
      ctx.flag(where, "certified_at_bits outside the configured policy");
      continue;
    }
    if (!(r.epsilon_lower > 0)) {
      ctx.flag(where, "recorded epsilon lower endpoint is not positive");
      continue;
    }
    try {
      ReductionInstance inst = pipeline_instance(m_big, r.shifts, a_value);
      CertifiedReal eps = reduction_epsilon(inst, r.q_used, r.certified_at_bits);
      if (!(eps.certified_sign() > 0)) {
        ctx.flag(where, "epsilon sign does not certify positive at the recorded precision");
        continue;
      }
      if (eps.lower() != r.epsilon_lower) {
        ctx.flag(where, "epsilon lower endpoint does not reproduce");
        continue;
      }
      RealRecord shown = real_record(eps);
      if (shown.value != r.epsilon.value || shown.radius != r.epsilon.radius) {
        ctx.flag(where, "epsilon enclosure rendering does not reproduce");
        continue;
      }
      if (dp_w_bound(a_exact, base, r.q_used, r.epsilon_lower, r.certified_at_bits) !=
          r.w_bound) {
        ctx.flag(where, "w_bound does not reproduce");
        continue;
      }
      if (expected_shifts == 0) {
        if (!r.a3.empty()) ctx.flag(where, "unexpected A3 certification on round 1");
      } else if (a3_parameter(r.shifts, kAuxPrec).decimal(40) != r.a3) {
        ctx.flag(where, "A3 certification does not reproduce");
      }
    } catch (const std::exception& e) {
      ctx.flag(where, e.what());
    }
  }
  if (max_w != st.bound) ctx.flag(st.name, "stage bound is not the max over records");
}

// Coverage: the recorded shifts must be exactly the required enumeration, in
// deterministic order.
inline void verify_round1_coverage(const ReductionStage& st, VerifyContext& ctx) {
  if (st.records.size() != 1 || !st.records[0].shifts.empty())
    ctx.flag("reduce_n_minus_m", "expected exactly one record with no shifts");
}

inline void verify_round2_coverage(const ReductionStage& st, long s1, VerifyContext& ctx) {
  if (static_cast<long>(st.records.size()) != s1 + 1) {
    ctx.flag("reduce_n_minus_ell", "expected one record per shift in [0, S1]");
    return;
  }
  for (long x = 0; x <= s1; ++x) {
    const ReductionRecord& r = st.records[static_cast<std::size_t>(x)];
    bool fallback_shift = x == 1 || x == 2;
    if (r.shifts != std::vector<long>{x} ||
        r.method != (fallback_shift ? "legendre_fallback" : "dujella_petho")) {
      ctx.flag("reduce_n_minus_ell", "shift coverage broken at " + std::to_string(x));
      return;
    }
  }
}

inline void verify_round3_coverage(const ReductionStage& st, long s1, long s2,
                                   VerifyContext& ctx) {
  std::size_t i = 0;
  bool ok = true;
  for (long x1 = 0; ok && x1 <= s1; ++x1)
    for (long x2 = x1; ok && x2 <= s2; ++x2, ++i)
      if (i >= st.records.size() || st.records[i].shifts != std::vector<long>{x1, x2})
        ok = false;
  if (!ok || i != st.records.size())
    ctx.flag("reduce_n", "pair coverage is not exactly [0, S1] x [x1, S2]");
}

}  // namespace detail

// Re-derives every recorded claim: case analysis, bound-chain coefficients
// and caps, absolute bound, epsilon signs and w bounds from the recorded
// convergents at the recorded precisions, shift coverage, brute force, and
// verdict consistency.  Returns false (with diagnostics) on any mismatch;
// throws on unparseable input.
inline bool verify_certificate(const std::string& bytes,
                               std::vector<std::string>* diagnostics = nullptr) {
  Certificate cert = parse_certificate(bytes);
  detail::VerifyContext ctx;

  try {
    cert.config.validate();
  } catch (const std::exception& e) {
    ctx.flag("config", e.what());
  }

  if (cert.ell_zero && ctx.problems.empty()) {
    try {
      EllZeroCase ez = case_ell_zero();
      if (ez.solutions != cert.ell_zero->solutions)
        ctx.flag("ell_zero", "structural solutions do not reproduce");
      if (ez.notes != cert.ell_zero->notes)
        ctx.flag("ell_zero", "structural notes do not reproduce");
    } catch (const std::exception& e) {
      ctx.flag("ell_zero", e.what());
    }
  }

  std::optional<BoundChain> chain;
  if (cert.bound_chain && ctx.problems.empty()) {
    const BoundChainStage& st = *cert.bound_chain;
    const mpfr_prec_t chain_bits =
        std::max<mpfr_prec_t>(cert.config.precision.initial_bits, detail::kAuxPrec);
    if (st.precision_bits != static_cast<long>(chain_bits))
      ctx.flag("bound_chain", "recorded precision does not match the policy");
    try {
      chain = bound_chain(chain_bits);
      const BoundChainCoefficient* ks[] = {&chain->K1, &chain->K2, &chain->K3};
      const mpq_class caps[] = {mpq_class("1800000000000"),
                                mpq_class("5000000000000000000000000"),
                                mpq_class("17000000000000000000000000000000000000")};
      if (st.coefficients.size() != 3) {
        ctx.flag("bound_chain", "expected three chain coefficients");
      } else {
        for (int i = 0; i < 3; ++i) {
          const ChainCoefficientRecord& c = st.coefficients[static_cast<std::size_t>(i)];
          RealRecord shown = real_record(ks[i]->coefficient_C);
          if (c.quantity != chain_quantity_name(ks[i]->quantity) ||
              c.log_power != ks[i]->log_power_k || c.coefficient.value != shown.value ||
              c.coefficient.radius != shown.radius) {
            ctx.flag("bound_chain", "coefficient " + c.quantity + " does not reproduce");
            continue;
          }
          mpq_class upper = detail::mpq_from_decimal(c.coefficient.value) +
                            detail::mpq_from_decimal(c.coefficient.radius);
          if (!(upper <= caps[i]))
            ctx.flag("bound_chain", "coefficient " + c.quantity + " exceeds its cap");
        }
      }
      if (st.certifications != chain->certifications)
        ctx.flag("bound_chain", "certification list does not reproduce");
      std::vector<std::pair<std::string, std::string>> nv;
      for (LinearForm f : {LinearForm::Lambda1, LinearForm::Lambda2, LinearForm::Lambda3}) {
        NonvanishingResult r = nonvanishing_guard(f, chain_bits);
        if (!r.certified) ctx.flag("bound_chain", "nonvanishing guard failed");
        nv.emplace_back(linear_form_name(f), r.note);
      }
      if (st.nonvanishing != nv)
        ctx.flag("bound_chain", "nonvanishing notes do not reproduce");
    } catch (const std::exception& e) {
      ctx.flag("bound_chain", e.what());
    }
  }

  if (cert.absolute_bound && ctx.problems.empty()) {
    try {
      mpz_class n_abs = solve_log_bound(chain->K3.coefficient_C, 3, cert.config.precision);
      if (n_abs != cert.absolute_bound->n_abs)
        ctx.flag("absolute_bound", "n_abs does not reproduce");
      if (!(2 * cert.absolute_bound->n_abs < cert.config.m_big))
        ctx.flag("absolute_bound", "2 * n_abs >= m_big");
    } catch (const std::exception& e) {
      ctx.flag("absolute_bound", e.what());
    }
  }

  long s1 = -1, s2 = -1, s3 = -1;
  if (cert.reduce_n_minus_m && ctx.problems.empty()) {
    // One expansion covers every recorded convergent and bracketing index.
    long need = 2;
    auto fold = [&need](const ReductionStage& st) {
      for (const auto& r : st.records) {
        if (r.convergent_index + 2 > need) need = r.convergent_index + 2;
        if (r.bracket_index + 2 > need) need = r.bracket_index + 2;
      }
    };
    fold(*cert.reduce_n_minus_m);
    if (cert.reduce_n_minus_ell) fold(*cert.reduce_n_minus_ell);
    if (cert.reduce_n) fold(*cert.reduce_n);
    if (need > 1024) {
      ctx.flag("reduce_n_minus_m", "recorded convergent indices are implausibly large");
    } else {
      try {
        ContinuedFractionExpansion cf =
            expand_cf(detail::pipeline_gamma(), need, cert.config.precision);
        detail::verify_reduction_stage(*cert.reduce_n_minus_m, cert, cf, ctx);
        detail::verify_round1_coverage(*cert.reduce_n_minus_m, ctx);
        if (cert.reduce_n_minus_m->bound.fits_slong_p() &&
            cert.reduce_n_minus_m->bound <= cert.config.shift_cap_nm)
          s1 = cert.reduce_n_minus_m->bound.get_si();
        else
          ctx.flag("reduce_n_minus_m", "bound exceeds the shift cap");
        if (cert.reduce_n_minus_ell) {
          detail::verify_reduction_stage(*cert.reduce_n_minus_ell, cert, cf, ctx);
          if (s1 >= 0) detail::verify_round2_coverage(*cert.reduce_n_minus_ell, s1, ctx);
          if (cert.reduce_n_minus_ell->bound.fits_slong_p() &&
              cert.reduce_n_minus_ell->bound <= cert.config.shift_cap_nm)
            s2 = cert.reduce_n_minus_ell->bound.get_si();
          else
            ctx.flag("reduce_n_minus_ell", "bound exceeds the shift cap");
        }
        if (cert.reduce_n) {
          detail::verify_reduction_stage(*cert.reduce_n, cert, cf, ctx);
          if (s1 >= 0 && s2 >= 0)
            detail::verify_round3_coverage(*cert.reduce_n, s1, s2, ctx);
          if (cert.reduce_n->bound.fits_slong_p() &&
              cert.reduce_n->bound.get_si() <= detail::kBruteForceCap)
            s3 = cert.reduce_n->bound.get_si();
          else
            ctx.flag("reduce_n", "bound exceeds the enumeration cap");
        }
      } catch (const std::exception& e) {
        ctx.flag("reduce_n_minus_m", e.what());
      }
    }
  }

  if (cert.brute && ctx.problems.empty()) {
    if (s3 < 0) {
      ctx.flag("brute_force", "missing reduction bound before enumeration");
    } else {
      long threshold = std::max(s3, cert.config.n_threshold);
      if (cert.brute->threshold != threshold)
        ctx.flag("brute_force", "threshold is not max(S3, n_threshold)");
      else if (threshold > detail::kBruteForceCap)
        ctx.flag("brute_force", "threshold exceeds the enumeration cap");
      else {
        try {
          if (brute_force(cert.brute->threshold) != cert.brute->solutions)
            ctx.flag("brute_force", "solution set does not reproduce");
        } catch (const std::exception& e) {
          ctx.flag("brute_force", e.what());
        }
      }
    }
    std::vector<SolutionTuple> expected_final(cert.brute->solutions.begin(),
                                              cert.brute->solutions.end());
    if (cert.final_solution_set != expected_final)
      ctx.flag("final_solution_set", "does not match the brute-force stage");
  } else if (!cert.brute && !cert.final_solution_set.empty()) {
    ctx.flag("final_solution_set", "present without a brute-force stage");
  }

  // Verdict must be consistent with the recorded evidence.
  bool complete = cert.ell_zero && cert.bound_chain && cert.absolute_bound &&
                  cert.reduce_n_minus_m && cert.reduce_n_minus_ell && cert.reduce_n &&
                  cert.brute;
  std::string expected_status = "failed";
  if (complete && ctx.problems.empty() && cert.brute->solutions == expected_solution_set())
    expected_status = "verified";
  if (cert.verdict.status != expected_status)
    ctx.flag("verdict", "recorded status '" + cert.verdict.status +
                            "' is inconsistent with the evidence ('" + expected_status +
                            "')");

  if (diagnostics) *diagnostics = ctx.problems;
  return ctx.problems.empty();
}

}  // namespace pellpow2
