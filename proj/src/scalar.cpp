#include "snc/scalar.hpp"

#include <cctype>

#include "snc/error.hpp"

namespace snc {

namespace {

bool is_integer_literal(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view{"1"} : text.substr(slash + 1);
  if (!is_integer_literal(num) || !is_integer_literal(den) || den[0] == '-' || den[0] == '+') {
    throw InputError("malformed rational \"" + std::string(text) + "\"");
  }
  Integer n(std::string(num[0] == '+' ? num.substr(1) : num));
  Integer d{std::string(den)};
  if (d == 0) throw InputError("zero denominator in \"" + std::string(text) + "\"");
  Rational q(n, d);
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rational frac(const Rational& q) {
  Integer fl;
  mpz_fdiv_q(fl.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  Rational r = q - Rational(fl);
  r.canonicalize();
  return r;
}

Integer lcm(const Integer& a, const Integer& b) {
  Integer r;
  mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

Integer factorial(unsigned n) {
  Integer r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

ExactScalar::ExactScalar(Rational modulus, Rational phase)
    : modulus_(std::move(modulus)) {
  phase.canonicalize();
  phase_ = frac(phase);
  modulus_.canonicalize();
  if (modulus_ <= 0) throw InputError("scalar modulus must be positive, got " + to_string(modulus_));
}

ExactScalar ExactScalar::root_of_unity(std::int64_t num, std::int64_t den) {
  if (den == 0) throw InputError("root of unity with zero denominator");
  return ExactScalar(Rational(1), Rational(Integer(static_cast<long>(num)), Integer(static_cast<long>(den))));
}

Integer ExactScalar::order() const {
  if (!is_torsion()) return 0;
  return phase_.get_den();
}

ExactScalar ExactScalar::inverse() const {
  ExactScalar r;
  r.modulus_ = 1 / modulus_;
  r.phase_ = frac(-phase_);
  return r;
}

ExactScalar ExactScalar::pow(std::int64_t m) const {
  ExactScalar base = m < 0 ? inverse() : *this;
  unsigned long e = m < 0 ? static_cast<unsigned long>(-m) : static_cast<unsigned long>(m);
  ExactScalar r;
  mpz_pow_ui(r.modulus_.get_num_mpz_t(), base.modulus_.get_num_mpz_t(), e);
  mpz_pow_ui(r.modulus_.get_den_mpz_t(), base.modulus_.get_den_mpz_t(), e);
  r.phase_ = frac(base.phase_ * Rational(Integer(e)));
  return r;
}

ExactScalar& ExactScalar::operator*=(const ExactScalar& other) {
  modulus_ *= other.modulus_;
  phase_ = frac(phase_ + other.phase_);
  return *this;
}

std::string ExactScalar::str() const { return "(" + to_string(modulus_) + ", " + to_string(phase_) + ")"; }

}  // namespace snc
