#include <mpfr.h>

#include "doctest.h"
#include "xim/errors.hpp"
#include "xim/special.hpp"

using namespace xim;

namespace {
Complex cplx(double re, double im, unsigned d = 50) {
  return Complex(Scalar(re, d), Scalar(im, d));
}
}  // namespace

TEST_CASE("euler gamma against mpfr oracle") {
  for (unsigned d : {40u, 50u, 80u}) {
    Scalar ours = euler_gamma(d);
    Scalar ref = Scalar(0L, d + 10);
    mpfr_const_euler(ref.raw(), MPFR_RNDN);
    CHECK(abs(ours - ref) < pow10(-static_cast<long>(d) + 2, d + 10));
  }
}

TEST_CASE("complex gamma agrees with real gamma on the real axis") {
  for (double x : {0.25, 1.0, 3.5, 7.0}) {
    Complex g = gamma(cplx(x, 0.0));
    CHECK(g.im.is_zero());
    CHECK(abs(g.re - gamma(Scalar(x, 50))) < pow10(-45, 50));
  }
}

TEST_CASE("complex gamma functional equation Gamma(z+1) = z Gamma(z)") {
  for (auto [x, y] : {std::pair{0.3, 1.7}, {2.0, -3.0}, {-1.3, 0.4}, {-0.5, -2.5}}) {
    Complex z = cplx(x, y);
    Complex lhs = gamma(z + Scalar(1L, 50));
    Complex rhs = z * gamma(z);
    CHECK(abs(lhs - rhs) < pow10(-44, 50) * abs(lhs));
  }
}

TEST_CASE("Gamma(i) spot value") {
  // |Gamma(i)|^2 = pi / sinh(pi)
  Complex g = gamma(cplx(0.0, 1.0));
  Scalar expect = pi(50) / sinh(pi(50));
  CHECK(abs(norm(g) - expect) < pow10(-44, 50));
}

TEST_CASE("zeta spot values") {
  Complex z2 = zeta(cplx(2.0, 0.0));
  CHECK(abs(z2.re - pi(50) * pi(50) / 6) < pow10(-45, 50));
  CHECK(abs(z2.im) < pow10(-45, 50));

  // zeta(3), Apery's constant
  Complex z3 = zeta(cplx(3.0, 0.0));
  Scalar apery = Scalar::parse("1.2020569031595942853997381615114499907649862923405", 50);
  CHECK(abs(z3.re - apery) < pow10(-44, 50));

  // zeta(1/2)
  Complex zh = zeta(cplx(0.5, 0.0));
  Scalar ref = Scalar::parse("-1.4603545088095868128894991525152980124672293310126", 50);
  CHECK(abs(zh.re - ref) < pow10(-44, 50));
}

TEST_CASE("zeta on the critical line vanishes at the first zero ordinate") {
  Complex s = Complex(Scalar(0.5, 50),
                      Scalar::parse("14.134725141734693790457251983562470270784257115699", 50));
  CHECK(abs(zeta(s)) < pow10(-40, 50));
}

TEST_CASE("zeta functional-equation branch matches direct series") {
  // Compare zeta(-0.5 + 2i) via reflection against 60-digit Borwein at 0.4 threshold:
  // use the identity zeta(s) = 2^s pi^{s-1} sin(pi s/2) Gamma(1-s) zeta(1-s) both ways.
  Complex s = cplx(-0.5, 2.0);
  Complex direct = zeta(s);
  // Oracle: Dirichlet eta continuation evaluated at higher budget.
  Complex s80 = Complex(s.re.at_digits(80), s.im.at_digits(80));
  Complex oracle = zeta(s80);
  CHECK(abs(direct - Complex(oracle.re.at_digits(50), oracle.im.at_digits(50))) < pow10(-44, 50));
}

TEST_CASE("zeta pole guard") {
  CHECK_THROWS_AS((void)zeta(cplx(1.0, 0.0)), Error);
}

TEST_CASE("bernoulli numbers") {
  CHECK(abs(bernoulli2k(1, 50) - Scalar(1L, 50) / 6) < pow10(-48, 50));
  CHECK(abs(bernoulli2k(6, 50) + Scalar(691L, 50) / 2730) < pow10(-45, 50));
  CHECK_THROWS_AS((void)bernoulli2k(16, 50), Error);
}
