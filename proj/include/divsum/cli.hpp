#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <mpfr.h>

namespace divsum::cli {

enum class Format { kCsv, kTsv, kJson };

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,        ///< parse error or violated precondition
  kComputation = 2,  ///< undecidable floor, precision or resource cap
  kSelftest = 3,
};

struct RunConfig {
  std::string command;
  std::vector<std::string> c;  ///< p/q or decimal; theta takes several
  bool real_c = false;
  std::optional<std::uint64_t> x;
  std::vector<std::uint64_t> x_list;
  std::optional<std::uint64_t> x_min, x_max;
  int points = 9;
  std::optional<std::uint64_t> N;
  std::vector<int> H;
  std::optional<std::uint64_t> K;
  std::optional<double> target_error;
  std::vector<std::uint64_t> D;
  std::vector<std::uint64_t> h;
  int h_count = 5;
  int delta = 0;
  int samples = 10000;
  std::uint64_t seed = 1;
  mpfr_prec_t precision = 128;
  Format format = Format::kCsv;
  std::string output;  ///< empty: stdout
  int threads = 0;     ///< 0: runtime default
};

/// One output table. Cells hold their final text; `raw` columns (numbers,
/// booleans) are written unquoted in JSON, empty raw cells as null.
struct Table {
  std::vector<std::string> columns;
  std::vector<bool> raw;
  std::vector<std::vector<std::string>> rows;

  void column(std::string name, bool is_raw);
  void add(std::vector<std::string> row);
};

void write(const Table& t, Format f, std::ostream& out);

/// Fixed formatting shared by all emitters.
std::string fmt(double v);
std::string fmt_bool(bool b);

Table cmd_sum(const RunConfig& cfg, std::ostream& log);
Table cmd_dc(const RunConfig& cfg, std::ostream& log);
Table cmd_error_scan(const RunConfig& cfg, std::ostream& log);
Table cmd_expsum(const RunConfig& cfg, std::ostream& log);
Table cmd_psi_check(const RunConfig& cfg, std::ostream& log);
Table cmd_theta(const RunConfig& cfg, std::ostream& log);
/// Sets `failed` when any check does not hold.
Table cmd_selftest(const RunConfig& cfg, std::ostream& log, bool& failed);

/// Parses argv (flags > environment > config file), runs the command and
/// writes the table. Returns an ExitCode.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace divsum::cli
