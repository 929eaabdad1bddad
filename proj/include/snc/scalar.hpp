#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace snc {

using Rational = mpq_class;
using Integer = mpz_class;

// Parses "p/q", "p" or "-p/q" into a canonical rational. Throws InputError.
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& q);

// Fractional part in [0, 1).
Rational frac(const Rational& q);

Integer lcm(const Integer& a, const Integer& b);
Integer factorial(unsigned n);

/// Element r * exp(2 pi i theta) of the subgroup Q_{>0} x (Q/Z) of C^*.
///
/// Moduli multiply and phases add mod 1. The element has finite order iff
/// its modulus is 1, in which case the order is the denominator of the
/// phase.
class ExactScalar {
 public:
  ExactScalar() : modulus_(1), phase_(0) {}
  ExactScalar(Rational modulus, Rational phase);

  static ExactScalar identity() { return {}; }
  static ExactScalar root_of_unity(std::int64_t num, std::int64_t den);

  const Rational& modulus() const { return modulus_; }
  const Rational& phase() const { return phase_; }

  bool is_identity() const { return modulus_ == 1 && phase_ == 0; }
  bool is_torsion() const { return modulus_ == 1; }
  // Multiplicative order; 0 when the element is not torsion.
  Integer order() const;

  ExactScalar inverse() const;
  ExactScalar pow(std::int64_t m) const;

  ExactScalar& operator*=(const ExactScalar& other);
  friend ExactScalar operator*(ExactScalar a, const ExactScalar& b) { return a *= b; }
  friend ExactScalar operator/(ExactScalar a, const ExactScalar& b) { return a *= b.inverse(); }
  friend bool operator==(const ExactScalar& a, const ExactScalar& b) {
    return a.modulus_ == b.modulus_ && a.phase_ == b.phase_;
  }
  friend bool operator!=(const ExactScalar& a, const ExactScalar& b) { return !(a == b); }

  // "(modulus, phase)" with both parts as p/q strings.
  std::string str() const;

 private:
  Rational modulus_;
  Rational phase_;
};

}  // namespace snc
