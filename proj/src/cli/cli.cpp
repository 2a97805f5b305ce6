#include <fstream>
#include <iostream>
#include <map>
#include <regex>
#include <sstream>

#include <CLI11.hpp>

#include "divsum/cli.hpp"
#include "divsum/errors.hpp"
#include "divsum/int128.hpp"
#include "divsum/parallel.hpp"

namespace divsum::cli {
namespace {

// Accepts plain integers and exact scientific forms such as 1e8 or 25e6.
std::uint64_t parse_count(const std::string& text) {
  static const std::regex re(R"(\s*(\d+)(?:[eE]\+?(\d+))?\s*)");
  std::smatch m;
  if (!std::regex_match(text, m, re)) throw DomainError("not a non-negative integer: " + text);
  u128 v = parse_u128(m[1].str());
  if (m[2].matched) {
    const auto scale = checked_pow(10, std::stoull(m[2].str()));
    const auto prod = scale ? checked_mul(v, *scale) : std::nullopt;
    if (!prod) throw DomainError("integer out of range: " + text);
    v = *prod;
  }
  if (v > UINT64_MAX) throw DomainError("integer out of range: " + text);
  return static_cast<std::uint64_t>(v);
}

std::vector<std::uint64_t> parse_counts(const std::vector<std::string>& items) {
  std::vector<std::uint64_t> out;
  for (const auto& s : items) out.push_back(parse_count(s));
  return out;
}

Table dispatch(const RunConfig& cfg, std::ostream& log, bool& selftest_failed) {
  if (cfg.command == "sum") return cmd_sum(cfg, log);
  if (cfg.command == "dc") return cmd_dc(cfg, log);
  if (cfg.command == "error-scan") return cmd_error_scan(cfg, log);
  if (cfg.command == "expsum") return cmd_expsum(cfg, log);
  if (cfg.command == "psi-check") return cmd_psi_check(cfg, log);
  if (cfg.command == "theta") return cmd_theta(cfg, log);
  return cmd_selftest(cfg, log, selftest_failed);
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact divisor floor sums, the constant d_c and error-term diagnostics", "divsum"};
  app.set_help_flag("--help", "print this help and exit");  // -h would clash with --h
  app.set_version_flag("--version", "divsum 1.0 (output schema 1)");
  app.set_config("--config", "", "key=value file; command-line flags take precedence");

  RunConfig cfg;
  std::vector<std::string> x_text, d_text, h_text;
  std::string x_min, x_max, n_text, k_text;
  app.add_option("command", cfg.command, "sum | dc | error-scan | expsum | psi-check | theta | selftest")
      ->required()
      ->check(CLI::IsMember({"sum", "dc", "error-scan", "expsum", "psi-check", "theta",
                             "selftest"}));
  app.add_option("--x", x_text, "x, or a comma list of x for error-scan")->delimiter(',');
  app.add_option("--x-min", x_min, "error-scan grid start");
  app.add_option("--x-max", x_max, "error-scan grid end");
  app.add_option("--points", cfg.points, "error-scan grid size")->check(CLI::PositiveNumber);
  app.add_option("--c", cfg.c, "exponent as p/q or decimal; theta and dc take a list")
      ->delimiter(',');
  app.add_flag("--real-c", cfg.real_c, "treat --c as a real number (interval floors)");
  app.add_option("--N", n_text, "split point for the blocked evaluator");
  app.add_option("--H", cfg.H, "Vaaler degrees for psi-check")->delimiter(',');
  app.add_option("--K", k_text, "fixed truncation for dc");
  app.add_option("--target-error", cfg.target_error, "error bound for d_c")
      ->check(CLI::PositiveNumber);
  app.add_option("--D", d_text, "dyadic ranges for expsum")->delimiter(',');
  app.add_option("--h", h_text, "frequencies for expsum (default: sampled)")->delimiter(',');
  app.add_option("--h-count", cfg.h_count, "sampled frequencies per D");
  app.add_option("--delta", cfg.delta, "shift k + delta in the phase (0 or 1)");
  app.add_option("--samples", cfg.samples, "psi-check sample count");
  app.add_option("--seed", cfg.seed, "psi-check RNG seed");
  app.add_option("--precision", cfg.precision, "working precision in bits")
      ->envname("DIVSUM_PRECISION")
      ->check(CLI::Range(53, 1 << 16));
  std::map<std::string, Format> formats{
      {"csv", Format::kCsv}, {"tsv", Format::kTsv}, {"json", Format::kJson}};
  app.add_option("--format", cfg.format, "csv | tsv | json")
      ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
  app.add_option("--output", cfg.output, "write the table here instead of stdout");
  app.add_option("--threads", cfg.threads, "worker threads")
      ->envname("DIVSUM_THREADS")
      ->check(CLI::NonNegativeNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  bool selftest_failed = false;
  std::ostringstream data;
  try {
    if (!x_text.empty()) {
      cfg.x_list = parse_counts(x_text);
      if (cfg.x_list.size() == 1) cfg.x = cfg.x_list.front();
      if (cfg.command != "error-scan" && cfg.x_list.size() > 1)
        throw DomainError(cfg.command + ": expects a single --x");
    }
    if (!x_min.empty()) cfg.x_min = parse_count(x_min);
    if (!x_max.empty()) cfg.x_max = parse_count(x_max);
    if (!n_text.empty()) cfg.N = parse_count(n_text);
    if (!k_text.empty()) cfg.K = parse_count(k_text);
    cfg.D = parse_counts(d_text);
    cfg.h = parse_counts(h_text);
    if (cfg.threads > 0) parallel::set_threads(cfg.threads);

    write(dispatch(cfg, err, selftest_failed), cfg.format, data);
  } catch (const DomainError& e) {
    err << "divsum: " << e.what() << '\n';
    return kUsage;
  } catch (const ComputationError& e) {
    err << "divsum: " << e.what() << '\n';
    return kComputation;
  } catch (const std::exception& e) {
    err << "divsum: " << e.what() << '\n';
    return kComputation;
  }

  if (cfg.output.empty()) {
    out << data.str() << std::flush;
  } else {
    std::ofstream f(cfg.output, std::ios::binary);
    f << data.str();
    if (!f) {
      err << "divsum: cannot write " << cfg.output << '\n';
      return kUsage;
    }
  }
  return selftest_failed ? kSelftest : kOk;
}

}  // namespace divsum::cli
