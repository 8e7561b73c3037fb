#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "pellpow2/pipeline.hpp"
#include "pellpow2/version.hpp"

namespace {

using namespace pellpow2;

bool write_output(const std::string& path, const std::string& bytes) {
  if (path.empty()) {
    std::cout << bytes;
    return true;
  }
  std::ofstream f(path, std::ios::binary);
  f << bytes;
  if (!f) {
    std::cerr << "error: cannot write " << path << "\n";
    return false;
  }
  return true;
}

mpz_class integer_from_cli(const std::string& s) {
  mpq_class v = detail::mpq_from_decimal(s);
  if (v.get_den() != 1 || v < 0)
    throw std::invalid_argument("expected a nonnegative integer, got " + s);
  return v.get_num();
}

int cmd_run(const PipelineConfig& cfg, const std::string& stage, const std::string& out) {
  Certificate cert = run_pipeline(cfg, stage);
  if (!write_output(out, emit_report(cert, cfg.output_format))) return 1;
  if (!out.empty())
    std::cout << "verdict: " << cert.verdict.status
              << (cert.verdict.status == "verified" ? "" : " (" + cert.verdict.reason + ")")
              << "\n";
  return cert.verdict.status == "verified" ? 0 : 1;
}

int cmd_verify(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) {
    std::cerr << "error: cannot read " << path << "\n";
    return 1;
  }
  std::ostringstream buf;
  buf << f.rdbuf();
  std::vector<std::string> diagnostics;
  bool ok = verify_certificate(buf.str(), &diagnostics);
  for (const auto& d : diagnostics) std::cerr << "mismatch at " << d << "\n";
  std::cout << "certificate " << (ok ? "verified: all recorded claims reproduce"
                                     : "rejected: see diagnostics")
            << "\n";
  return ok ? 0 : 1;
}

int cmd_search(long n_max, OutputFormat fmt, const std::string& out) {
  std::set<SolutionTuple> found = brute_force(n_max);
  std::string bytes;
  if (fmt == OutputFormat::json) {
    nlohmann::ordered_json j;
    j["n_max"] = std::to_string(n_max);
    j["solutions"] = detail::tuples_to_json(found);
    bytes = j.dump(2) + "\n";
  } else {
    std::ostringstream os;
    for (const auto& t : found) os << to_string(t) << "\n";
    os << found.size() << " solution(s) with n <= " << n_max << "\n";
    bytes = os.str();
  }
  return write_output(out, bytes) ? 0 : 1;
}

int cmd_cf(long terms, const PrecisionPolicy& policy, OutputFormat fmt,
           const std::string& out) {
  ContinuedFractionExpansion cf = expand_cf(detail::pipeline_gamma(), terms, policy);
  std::string bytes;
  if (fmt == OutputFormat::json) {
    nlohmann::ordered_json j;
    j["value"] = "log(2)/log(1+sqrt(2))";
    j["certified_terms"] = std::to_string(cf.certified_terms);
    j["certified_at_bits"] = std::to_string(cf.certified_at_bits);
    j["terminated_rational"] = cf.terminated_rational;
    nlohmann::ordered_json quotients = nlohmann::ordered_json::array();
    for (long k = 0; k < cf.certified_terms; ++k)
      quotients.push_back(cf.partial_quotients[static_cast<std::size_t>(k)].get_str());
    j["partial_quotients"] = std::move(quotients);
    nlohmann::ordered_json convergents = nlohmann::ordered_json::array();
    for (long k = 0; k < cf.certified_terms; ++k) {
      nlohmann::ordered_json c;
      c["p"] = cf.convergents[static_cast<std::size_t>(k)].first.get_str();
      c["q"] = cf.convergents[static_cast<std::size_t>(k)].second.get_str();
      convergents.push_back(std::move(c));
    }
    j["convergents"] = std::move(convergents);
    bytes = j.dump(2) + "\n";
  } else {
    std::ostringstream os;
    os << "gamma = log(2)/log(1+sqrt(2)), " << cf.certified_terms
       << " certified terms at " << cf.certified_at_bits << " bits\n";
    for (long k = 0; k < cf.certified_terms; ++k) {
      auto i = static_cast<std::size_t>(k);
      os << "a[" << k << "] = " << cf.partial_quotients[i] << ", p/q = "
         << cf.convergents[i].first << "/" << cf.convergents[i].second << "\n";
    }
    bytes = os.str();
  }
  return write_output(out, bytes) ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"certified replay of the classification of P_n + P_m + P_ell = 2^a"};
  app.set_version_flag("--version", std::string(kToolVersion));
  app.require_subcommand(1);

  std::string format = "json";
  std::string out_path;
  std::string stage;
  std::string m_big_str;
  long precision_bits = 0;
  long max_precision_bits = 0;
  long n_max = 150;
  long cf_terms = 40;
  std::string cert_path;

  auto add_io = [&](CLI::App* cmd) {
    cmd->add_option("--format", format, "output format")
        ->check(CLI::IsMember({"json", "text"}));
    cmd->add_option("--out", out_path, "write the report to a file instead of stdout");
  };
  auto add_precision = [&](CLI::App* cmd) {
    cmd->add_option("--precision-bits", precision_bits, "initial working precision")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--max-precision-bits", max_precision_bits, "escalation ceiling")
        ->check(CLI::PositiveNumber);
  };

  CLI::App* run = app.add_subcommand("run", "run the proof replay and emit a certificate");
  add_io(run);
  add_precision(run);
  run->add_option("--m-big", m_big_str, "coefficient bound M (decimal)");
  run->add_option("--stage", stage, "stop after this stage (partial, never verified)")
      ->check(CLI::IsMember(stage_order()));

  CLI::App* verify = app.add_subcommand("verify", "re-check a json certificate");
  verify->add_option("certificate", cert_path, "path to a certificate json")->required();

  CLI::App* search = app.add_subcommand("search", "brute-force the equation exactly");
  search->add_option("--n-max", n_max, "largest index to enumerate")
      ->check(CLI::NonNegativeNumber);
  add_io(search);

  CLI::App* cf = app.add_subcommand("cf", "certified continued fraction of gamma");
  cf->add_option("--terms", cf_terms, "number of certified terms")
      ->check(CLI::PositiveNumber);
  add_io(cf);
  add_precision(cf);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  PipelineConfig cfg;
  try {
    if (precision_bits > 0) cfg.precision.initial_bits = precision_bits;
    if (max_precision_bits > 0) cfg.precision.max_bits = max_precision_bits;
    cfg.output_format = output_format_from_name(format);
    if (!m_big_str.empty()) cfg.m_big = integer_from_cli(m_big_str);
    cfg.validate();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (run->parsed()) return cmd_run(cfg, stage, out_path);
    if (verify->parsed()) return cmd_verify(cert_path);
    if (search->parsed()) return cmd_search(n_max, cfg.output_format, out_path);
    if (cf->parsed()) return cmd_cf(cf_terms, cfg.precision, cfg.output_format, out_path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
