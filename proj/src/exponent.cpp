#include "divsum/exponent.hpp"

#include <cctype>
#include <numeric>
#include <optional>

#include "divsum/errors.hpp"

namespace divsum {

namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

bool all_digits(const std::string& s) {
  if (s.empty()) return false;
  for (char ch : s)
    if (!std::isdigit(static_cast<unsigned char>(ch))) return false;
  return true;
}

// "p/q", "n", "d.ddd", "d.ddde[+-]k" -> exact fraction; nullopt if not of that form.
std::optional<mpq_class> parse_fraction(const std::string& s) {
  auto slash = s.find('/');
  if (slash != std::string::npos) {
    std::string a = s.substr(0, slash), b = s.substr(slash + 1);
    if (!all_digits(a) || !all_digits(b)) return std::nullopt;
    mpz_class den(b);
    if (den == 0) throw DomainError("zero denominator in exponent '" + s + "'");
    mpq_class r(mpz_class(a), den);
    r.canonicalize();
    return r;
  }
  std::string mant = s;
  long exp10 = 0;
  auto epos = s.find_first_of("eE");
  if (epos != std::string::npos) {
    mant = s.substr(0, epos);
    std::string e = s.substr(epos + 1);
    bool neg = false;
    if (!e.empty() && (e[0] == '+' || e[0] == '-')) {
      neg = e[0] == '-';
      e = e.substr(1);
    }
    if (!all_digits(e) || e.size() > 4) return std::nullopt;
    exp10 = std::stol(e) * (neg ? -1 : 1);
  }
  std::string whole = mant, frac;
  auto dot = mant.find('.');
  if (dot != std::string::npos) {
    whole = mant.substr(0, dot);
    frac = mant.substr(dot + 1);
  }
  if (whole.empty() && frac.empty()) return std::nullopt;
  if ((!whole.empty() && !all_digits(whole)) || (!frac.empty() && !all_digits(frac)))
    return std::nullopt;
  mpz_class num(whole + frac);
  exp10 -= static_cast<long>(frac.size());
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(exp10 < 0 ? -exp10 : exp10));
  mpq_class r = exp10 < 0 ? mpq_class(num, scale) : mpq_class(num * scale, 1);
  r.canonicalize();
  return r;
}

// Directed-rounding evaluation of a real literal.
void eval_literal(const std::string& lit, mpfr_ptr out, mpfr_rnd_t rnd) {
  if (lit == "pi") {
    mpfr_const_pi(out, rnd);
    return;
  }
  if (lit == "e") {
    mpfr_t one;
    mpfr_init2(one, 2);
    mpfr_set_ui(one, 1, MPFR_RNDN);
    mpfr_exp(out, one, rnd);
    mpfr_clear(one);
    return;
  }
  if (lit.size() > 6 && lit.rfind("sqrt(", 0) == 0 && lit.back() == ')') {
    std::string arg = lit.substr(5, lit.size() - 6);
    if (!all_digits(arg) || arg.size() > 18) throw DomainError("bad sqrt literal '" + lit + "'");
    mpfr_sqrt_ui(out, std::stoul(arg), rnd);
    return;
  }
  auto slash = lit.find('/');
  if (slash != std::string::npos) {
    auto f = parse_fraction(lit);
    if (!f) throw DomainError("bad fraction literal '" + lit + "'");
    mpfr_set_q(out, f->get_mpq_t(), rnd);
    return;
  }
  if (!parse_fraction(lit)) throw DomainError("cannot parse real exponent '" + lit + "'");
  mpfr_set_str(out, lit.c_str(), 10, rnd);
}

}  // namespace

Exponent Exponent::rational(std::uint64_t p, std::uint64_t q) {
  if (p == 0 || q == 0) throw DomainError("exponent c = p/q needs p, q >= 1");
  std::uint64_t g = std::gcd(p, q);
  p /= g;
  q /= g;
  if (p > kMaxTerm || q > kMaxTerm)
    throw DomainError("exponent " + std::to_string(p) + "/" + std::to_string(q) +
                      " has terms above " + std::to_string(kMaxTerm) + "; use a real exponent");
  Exponent e;
  e.kind_ = Kind::kRational;
  e.p_ = p;
  e.q_ = q;
  return e;
}

Exponent Exponent::real(std::string literal, mpfr_prec_t precision) {
  Exponent e;
  e.kind_ = Kind::kReal;
  e.literal_ = trim(literal);
  e.precision_ = precision;
  e.p_ = e.q_ = 0;
  Real lo(precision), hi(precision);
  e.enclose(lo, hi);
  if (mpfr_sgn(lo.get()) <= 0) throw DomainError("exponent must be positive: '" + e.literal_ + "'");
  return e;
}

Exponent Exponent::parse(std::string_view text, bool force_real, mpfr_prec_t precision) {
  std::string s = trim(text);
  if (s.empty()) throw DomainError("empty exponent");
  if (force_real) return real(s, precision);
  auto f = parse_fraction(s);
  if (!f)
    throw DomainError("exponent '" + s + "' is not p/q or a finite decimal (use a real exponent)");
  if (sgn(*f) <= 0) throw DomainError("exponent must be positive: '" + s + "'");
  if (!f->get_num().fits_ulong_p() || !f->get_den().fits_ulong_p())
    throw DomainError("exponent '" + s + "' too large");
  return rational(f->get_num().get_ui(), f->get_den().get_ui());
}

mpq_class Exponent::as_rational() const {
  if (!is_rational()) throw DomainError("exponent '" + literal_ + "' is not rational");
  return mpq_class(mpz_class(static_cast<unsigned long>(p_)),
                   mpz_class(static_cast<unsigned long>(q_)));
}

void Exponent::enclose(Real& lo, Real& hi) const {
  if (is_rational()) {
    mpq_class r = as_rational();
    mpfr_set_q(lo.get(), r.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(hi.get(), r.get_mpq_t(), MPFR_RNDU);
    return;
  }
  eval_literal(literal_, lo.get(), MPFR_RNDD);
  eval_literal(literal_, hi.get(), MPFR_RNDU);
}

void Exponent::nearest(Real& out) const {
  if (is_rational()) {
    mpq_class r = as_rational();
    mpfr_set_q(out.get(), r.get_mpq_t(), MPFR_RNDN);
    return;
  }
  eval_literal(literal_, out.get(), MPFR_RNDN);
}

double Exponent::to_double() const {
  Real v(64);
  nearest(v);
  return v.to_double();
}

std::string Exponent::str() const {
  if (!is_rational()) return literal_;
  if (q_ == 1) return std::to_string(p_);
  return std::to_string(p_) + "/" + std::to_string(q_);
}

}  // namespace divsum
