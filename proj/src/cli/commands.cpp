#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <random>
#include <ostream>

#include "divsum/cli.hpp"
#include "divsum/divisor.hpp"
#include "divsum/errors.hpp"
#include "divsum/exact_floor.hpp"
#include "divsum/exponent_analysis.hpp"
#include "divsum/floor_sum.hpp"
#include "divsum/harmonic.hpp"
#include "divsum/main_term.hpp"
#include "divsum/reference.hpp"

namespace divsum::cli {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

Exponent exponent_of(const RunConfig& cfg, const std::string& text) {
  return Exponent::parse(text, cfg.real_c, std::max<mpfr_prec_t>(cfg.precision, 256));
}

Exponent single_c(const RunConfig& cfg) {
  if (cfg.c.size() != 1) throw DomainError(cfg.command + ": expects exactly one --c");
  return exponent_of(cfg, cfg.c.front());
}

std::uint64_t single_x(const RunConfig& cfg) {
  if (!cfg.x) throw DomainError(cfg.command + ": --x is required");
  return *cfg.x;
}

int digits_for(mpfr_prec_t prec) { return static_cast<int>(prec * 0.30103) + 1; }

std::string str(const Real& r) { return r.str(digits_for(r.precision())); }

}  // namespace

Table cmd_sum(const RunConfig& cfg, std::ostream& log) {
  const std::uint64_t x = single_x(cfg);
  const Exponent c = single_c(cfg);
  if (x < 2) throw DomainError("sum: need x >= 2 for the blocked evaluator");
  const std::uint64_t N = cfg.N ? *cfg.N : optimal_N(x, c);

  auto t0 = Clock::now();
  SumResult blocked = sum_blocked(x, c, N);
  const double t_blocked = seconds_since(t0);
  t0 = Clock::now();
  SumResult direct = sum_direct(x, c);
  const double t_direct = seconds_since(t0);
  log << "sum: direct " << t_direct << " s, blocked " << t_blocked << " s\n";

  Table t;
  for (const char* name : {"x", "c"}) t.column(name, std::string(name) == "x");
  for (const char* name : {"n_limit", "N", "direct", "blocked", "agree", "direct_work",
                           "blocked_work"})
    t.column(name, true);
  t.add({std::to_string(x), c.str(), std::to_string(direct.n_limit), std::to_string(N),
         to_string(direct.value), to_string(blocked.value),
         fmt_bool(direct.value == blocked.value), std::to_string(direct.work_units),
         std::to_string(blocked.work_units)});
  return t;
}

Table cmd_dc(const RunConfig& cfg, std::ostream& log) {
  if (cfg.c.empty()) throw DomainError("dc: --c is required");
  MainTermOptions opt;
  opt.precision = cfg.precision;
  Table t;
  t.column("c", false);
  t.column("K", true);
  t.column("value", true);
  t.column("bound", true);
  for (const auto& text : cfg.c) {
    const Exponent c = exponent_of(cfg, text);
    const auto t0 = Clock::now();
    CertifiedValue v = cfg.K ? dc_at(c, *cfg.K, opt)
                             : dc_constant(c, cfg.target_error.value_or(1e-6), opt);
    log << "dc: c=" << c.str() << " K=" << v.truncation_K << " in " << seconds_since(t0)
        << " s\n";
    t.add({c.str(), std::to_string(v.truncation_K), str(v.value), fmt(v.error_bound)});
  }
  return t;
}

Table cmd_error_scan(const RunConfig& cfg, std::ostream& log) {
  const Exponent c = single_c(cfg);
  std::vector<std::uint64_t> grid = cfg.x_list;
  if (grid.empty()) {
    if (!cfg.x_min || !cfg.x_max)
      throw DomainError("error-scan: give --x a,b,... or --x-min/--x-max/--points");
    grid = geometric_grid(*cfg.x_min, *cfg.x_max, cfg.points);
  }
  if (grid.empty()) throw DomainError("error-scan: empty grid");
  // d_c must be tight enough that x^{1/c} * bound stays well below 1/2.
  const double top = std::pow(static_cast<double>(*std::max_element(grid.begin(), grid.end())),
                              1.0 / c.to_double());
  const double target = cfg.target_error.value_or(std::max(0.01 / top, 1e-15));

  const auto t0 = Clock::now();
  std::vector<ErrorSample> samples = scan(grid, c, target);
  log << "error-scan: " << samples.size() << " points in " << seconds_since(t0) << " s\n";
  if (samples.size() >= 5) {
    try {
      FitResult f = exponent_fit(samples);
      log << "error-scan: fitted slope " << f.slope << " (r^2 " << f.r_squared << ")\n";
    } catch (const DomainError& e) {
      log << "error-scan: no fit (" << e.what() << ")\n";
    }
  }

  Table t;
  t.column("x", true);
  t.column("c", false);
  for (const char* name : {"S", "main", "bound", "E"}) t.column(name, true);
  for (const auto& s : samples)
    t.add({std::to_string(s.x), c.str(), to_string(s.sum_value), fmt(s.main_value),
           fmt(s.main_bound), fmt(s.error)});
  return t;
}

Table cmd_expsum(const RunConfig& cfg, std::ostream& log) {
  const std::uint64_t x = single_x(cfg);
  const Exponent c = single_c(cfg);
  if (cfg.D.empty()) throw DomainError("expsum: --D is required");
  if (cfg.h_count < 1) throw DomainError("expsum: --h-count must be >= 1");
  HarmonicOptions opt;
  opt.precision = cfg.precision;

  Table t;
  for (const char* name : {"D", "h", "abs_sum", "denominator", "ratio", "in_range"})
    t.column(name, true);
  for (std::uint64_t D : cfg.D) {
    std::vector<std::uint64_t> hs = cfg.h;
    if (hs.empty()) {
      hs = sample_h(h_range(D, x, c), cfg.h_count);
      if (hs.empty()) {
        log << "expsum: admissible h-range is empty for D=" << D << "; using h=1.."
            << cfg.h_count << " flagged out of range\n";
        for (int h = 1; h <= cfg.h_count; ++h) hs.push_back(static_cast<std::uint64_t>(h));
      }
    }
    for (std::uint64_t h : hs) {
      const auto t0 = Clock::now();
      JutilaRatio j = jutila_ratio(ExpSumSpec{D, h, x, c, cfg.delta}, opt);
      log << "expsum: D=" << D << " h=" << h << " in " << seconds_since(t0) << " s\n";
      t.add({std::to_string(D), std::to_string(h), fmt(j.magnitude), fmt(j.denominator),
             fmt(j.ratio), fmt_bool(j.in_range)});
    }
  }
  return t;
}

Table cmd_psi_check(const RunConfig& cfg, std::ostream&) {
  if (cfg.samples < 1) throw DomainError("psi-check: --samples must be >= 1");
  std::vector<int> Hs = cfg.H.empty() ? std::vector<int>{4, 16, 64, 256} : cfg.H;
  std::mt19937_64 rng(cfg.seed);
  std::vector<double> xs(static_cast<std::size_t>(cfg.samples));
  for (auto& v : xs) v = static_cast<double>(rng() >> 11) * 0x1p-53;

  Table t;
  t.column("H", true);
  t.column("samples", true);
  for (const char* name : {"max_observed_error", "max_bound", "mean_abs_error", "violations",
                           "pass"})
    t.column(name, true);
  for (int H : Hs) {
    const TrigApprox approx(H);
    double max_err = 0, max_bound = 0, total = 0;
    std::uint64_t violations = 0;
    for (double v : xs) {
      const double err = std::fabs(psi_value(v) - approx(v));
      const double bound = fejer_bound(v, H);
      max_err = std::max(max_err, err);
      max_bound = std::max(max_bound, bound);
      total += err;
      if (err > bound + 1e-12) ++violations;
    }
    t.add({std::to_string(H), std::to_string(xs.size()), fmt(max_err), fmt(max_bound),
           fmt(total / static_cast<double>(xs.size())), std::to_string(violations),
           fmt_bool(violations == 0)});
  }
  return t;
}

Table cmd_theta(const RunConfig& cfg, std::ostream&) {
  static const char* const kDefault[] = {"1/9", "2/11", "1/5", "2/9", "1/3", "1/2",
                                         "2/3", "1",    "3/2", "2",   "3"};
  std::vector<std::string> cs = cfg.c;
  if (cs.empty()) cs.assign(std::begin(kDefault), std::end(kDefault));

  Table t;
  t.column("c", false);
  t.column("theta_new", false);
  t.column("theta_new_decimal", true);
  t.column("theta_feng", false);
  t.column("theta_feng_decimal", true);
  t.column("verdict", false);
  t.column("new_branches_equal", true);
  t.column("feng_branches_equal", true);
  for (const auto& text : cs) {
    const Exponent c = exponent_of(cfg, text);
    if (!c.is_rational()) throw DomainError("theta: exact comparison needs a rational c");
    const mpq_class q = c.as_rational();
    const mpq_class tn = theta_new(q), tf = theta_feng(q);
    const ThetaBranches b = theta_branches(q);
    t.add({q.get_str(), tn.get_str(), fmt(tn.get_d()), tf.get_str(), fmt(tf.get_d()),
           to_string(improvement_region_check(q)), fmt_bool(b.new_small == b.new_large),
           fmt_bool(b.feng_small == b.feng_large)});
  }
  return t;
}

namespace {

struct Check {
  const char* name;
  bool pass;
  std::string detail;
};

std::uint32_t enumerate_divisors(std::uint64_t n) {
  std::uint32_t k = 0;
  for (std::uint64_t d = 1; d * d <= n; ++d)
    if (n % d == 0) k += (d * d == n) ? 1 : 2;
  return k;
}

std::vector<Check> run_checks() {
  std::vector<Check> out;
  auto add = [&](const char* name, bool pass, std::string detail) {
    out.push_back({name, pass, std::move(detail)});
  };
  auto attempt = [&](const char* name, auto&& fn) {
    try {
      fn();
    } catch (const std::exception& e) {
      add(name, false, e.what());
    }
  };

  attempt("divisor_count", [&] {
    bool ok = true;
    for (std::uint64_t n = 1; n <= 5000 && ok; ++n) ok = divisor_count(n) == enumerate_divisors(n);
    add("divisor_count", ok, "n <= 5000 against enumeration");
  });
  attempt("divisor_sieve", [&] {
    bool ok = true;
    for (auto [lo, hi] : {std::pair<std::uint64_t, std::uint64_t>{1, 100000},
                          {1'000'000'000, 1'000'010'000}}) {
      DivisorTable s = divisor_sieve(lo, hi);
      DivisorTable r = reference::divisor_table(lo, hi);
      for (std::uint64_t n = lo; n <= hi && ok; ++n) ok = s(n) == r(n);
    }
    add("divisor_sieve", ok, "[1, 1e5] and [1e9, 1e9+1e4] against pointwise counts");
  });
  attempt("divisor_summatory", [&] {
    bool ok = true;
    std::uint64_t acc = 0;
    for (std::uint64_t n = 1; n <= 100000 && ok; ++n) {
      acc += divisor_count(n);
      if (n % 997 == 0 || n == 100000) ok = divisor_summatory(n) == acc;
    }
    add("divisor_summatory", ok, "hyperbola against running sums to 1e5");
  });
  attempt("floor_sum", [&] {
    bool ok = true;
    for (const auto& c : {Exponent::rational(1, 2), Exponent::rational(1, 1),
                          Exponent::rational(3, 2), Exponent::rational(2, 1)}) {
      for (std::uint64_t x = 2; x <= 300 && ok; ++x) {
        const u128 d = sum_direct(x, c).value;
        ok = d == reference::sum_naive(x, c);
        for (std::uint64_t N : {std::uint64_t{1}, std::uint64_t{2}, optimal_N(x, c)})
          if (ok && N <= max_split(x, c)) ok = sum_blocked(x, c, N).value == d;
      }
    }
    add("floor_sum", ok, "direct = blocked = literal loop for x <= 300");
  });
  add("exact_floor",
      floor_x_over_pow(1'000'000, 10, Exponent::rational(3, 2)) == 31622 &&
          floor_inv_pow(729, 27, Exponent::rational(3, 2)) == 9,
      "[1e6/10^(3/2)] = 31622, [(729/27)^(2/3)] = 9");
  attempt("dc_partial", [&] {
    const Real a = dc_partial(Exponent::rational(1, 1), 3);
    const Real b = dc_partial(Exponent::rational(2, 1), 5000);
    const Real r = reference::dc_partial(Exponent::rational(2, 1), 5000);
    Real diff(b.precision());
    mpfr_sub(diff.get(), b.get(), r.get(), MPFR_RNDN);
    add("dc_partial", mpfr_cmp_ui(a.get(), 1) == 0 && std::fabs(diff.to_double()) < 1e-30,
        "d_1 partial at K=3 is 1; c=2 chunked sum matches serial to 1e-30");
  });
  attempt("dc_constant", [&] {
    const Exponent one = Exponent::rational(1, 1);
    const CertifiedValue v = dc_constant(one, 1e-6);
    const double partial = dc_partial(one, 1'000'000).to_double();
    add("dc_constant", v.error_bound <= 1e-6 && partial <= v.upper(),
        "c=1 enclosure contains the partial sum to 1e6 from above");
  });
  attempt("theta", [&] {
    const bool ok = theta_new(mpq_class(1)) == mpq_class(5, 11) &&
                    theta_feng(mpq_class(1)) == mpq_class(11, 23) &&
                    theta_new(mpq_class(2, 9)) == theta_feng(mpq_class(2, 9)) &&
                    theta_new(mpq_class(2, 3)) == mpq_class(15, 28);
    add("theta", ok, "5/11, 11/23, crossover at 2/9, 15/28 at 2/3");
  });
  attempt("vaaler_majorant", [&] {
    std::mt19937_64 rng(7);
    bool ok = true;
    for (int H : {4, 16, 64}) {
      const TrigApprox a(H);
      for (int i = 0; i < 2000 && ok; ++i) {
        const double v = static_cast<double>(rng() >> 11) * 0x1p-53;
        ok = std::fabs(psi_value(v) - a(v)) <= fejer_bound(v, H) + 1e-12;
      }
    }
    add("vaaler_majorant", ok, "2000 points each for H = 4, 16, 64");
  });
  attempt("exp_sum", [&] {
    const ExpSumSpec spec{500, 3, 10'000'000, Exponent::rational(1, 1), 0};
    const double d = std::abs(exp_sum_divisor(spec).value - reference::exp_sum(spec));
    add("exp_sum", d < 1e-8, "D=500 h=3 x=1e7 against serial long double");
  });
  return out;
}

}  // namespace

Table cmd_selftest(const RunConfig&, std::ostream& log, bool& failed) {
  Table t;
  t.column("check", false);
  t.column("pass", true);
  t.column("detail", false);
  failed = false;
  for (const Check& c : run_checks()) {
    if (!c.pass) {
      failed = true;
      log << "selftest: FAILED " << c.name << " (" << c.detail << ")\n";
    }
    t.add({c.name, fmt_bool(c.pass), c.detail});
  }
  return t;
}

}  // namespace divsum::cli
