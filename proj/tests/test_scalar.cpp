#include <doctest.h>

#include "check/check.hpp"
#include "snc/error.hpp"
#include "snc/scalar.hpp"

using namespace snc;

TEST_SUITE("scalar") {
  TEST_CASE("rationals parse to canonical form") {
    CHECK(parse_rational("6/4") == Rational(3, 2));
    CHECK(to_string(parse_rational("6/4")) == "3/2");
    CHECK(to_string(parse_rational("-2/4")) == "-1/2");
    CHECK_THROWS_AS(parse_rational("2/-4"), InputError);
    CHECK(to_string(parse_rational("5")) == "5");
    CHECK(to_string(parse_rational("-0/7")) == "0");
    CHECK_THROWS_AS(parse_rational("1/0"), InputError);
    CHECK_THROWS_AS(parse_rational("abc"), InputError);
    CHECK_THROWS_AS(parse_rational(""), InputError);
    CHECK_THROWS_AS(parse_rational("1/2/3"), InputError);
  }

  TEST_CASE("fractional part lies in [0, 1)") {
    CHECK(frac(Rational(7, 3)) == Rational(1, 3));
    CHECK(frac(Rational(-1, 3)) == Rational(2, 3));
    CHECK(frac(Rational(-2)) == 0);
    CHECK(frac(Rational(0)) == 0);
  }

  TEST_CASE("factorial and lcm") {
    CHECK(factorial(0) == 1);
    CHECK(factorial(4) == 24);
    CHECK(factorial(10) == 3628800);
    CHECK(lcm(Integer(4), Integer(6)) == 12);
    CHECK(lcm(Integer(1), Integer(9)) == 9);
  }

  TEST_CASE("phases add mod 1 and moduli multiply") {
    ExactScalar a(Rational(2), Rational(3, 4));
    ExactScalar b(Rational(1, 3), Rational(1, 2));
    ExactScalar c = a * b;
    CHECK(c.modulus() == Rational(2, 3));
    CHECK(c.phase() == Rational(1, 4));
    CHECK((a / a).is_identity());
    CHECK(a.inverse().phase() == Rational(1, 4));
    CHECK(a.pow(-2) == (a * a).inverse());
    CHECK(a.pow(0).is_identity());
    CHECK(ExactScalar(Rational(1), Rational(5, 4)).phase() == Rational(1, 4));
    CHECK_THROWS_AS(ExactScalar(Rational(0), Rational(0)), InputError);
    CHECK_THROWS_AS(ExactScalar(Rational(-1), Rational(0)), InputError);
  }

  TEST_CASE("order is the phase denominator on the unit circle") {
    CHECK(ExactScalar::identity().order() == 1);
    CHECK(ExactScalar::root_of_unity(1, 3).order() == 3);
    CHECK(ExactScalar::root_of_unity(4, 6).order() == 3);
    CHECK(ExactScalar::root_of_unity(1, 2).str() == "(1, 1/2)");
    CHECK(ExactScalar(Rational(2), Rational(0)).order() == 0);
    CHECK_FALSE(ExactScalar(Rational(2), Rational(0)).is_torsion());
  }

  TEST_CASE("order agrees with repeated multiplication") {
    check::Rng rng(11);
    for (int i = 0; i < 200; ++i) {
      const long den = static_cast<long>(check::uniform(rng, 1, 12));
      const long num = static_cast<long>(check::uniform(rng, 0, 30));
      ExactScalar z = ExactScalar::root_of_unity(num, den);
      long k = 1;
      ExactScalar p = z;
      while (!p.is_identity()) {
        p *= z;
        ++k;
      }
      CHECK(z.order() == k);
    }
  }

  TEST_CASE("group laws on random elements") {
    check::Rng rng(5);
    auto draw = [&] {
      Rational m(static_cast<long>(check::uniform(rng, 1, 9)), static_cast<long>(check::uniform(rng, 1, 9)));
      Rational t(static_cast<long>(check::uniform(rng, 0, 20)), static_cast<long>(check::uniform(rng, 1, 8)));
      m.canonicalize();
      t.canonicalize();
      return ExactScalar(m, t);
    };
    for (int i = 0; i < 200; ++i) {
      ExactScalar a = draw(), b = draw(), c = draw();
      CHECK((a * b) * c == a * (b * c));
      CHECK(a * b == b * a);
      CHECK((a * a.inverse()).is_identity());
      CHECK(a.pow(3) == a * a * a);
      CHECK(a.phase() >= 0);
      CHECK(a.phase() < 1);
    }
  }
}
