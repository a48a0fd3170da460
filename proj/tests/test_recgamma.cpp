#include <random>

#include "doctest.h"
#include "xim/errors.hpp"
#include "xim/recgamma.hpp"

using namespace xim;
using recgamma::Route;

TEST_CASE("reciprocal factorial: integer and trivial values") {
  SUBCASE("z = 0 gives 1 on both routes") {
    Complex p = recgamma::recfact_eval(Complex(0L, 50), Route::product, 1000, 50).value;
    Complex r = recgamma::recfact_eval(Complex(0L, 50), Route::reference, 0, 50).value;
    CHECK(abs(p - Complex(1L, 50)) < pow10(-45, 50));
    CHECK(abs(r - Complex(1L, 50)) < pow10(-45, 50));
  }

  SUBCASE("z = 3 gives 1/6") {
    Complex p = recgamma::recfact_eval(Complex(3L, 50), Route::product, 1000, 50).value;
    CHECK(abs(p.re - Scalar(1L, 50) / 6) < pow10(-40, 50));
    CHECK(p.im.is_zero());
  }

  SUBCASE("zeros at the negative integers are exact") {
    for (long k = 1; k <= 10; ++k) {
      Complex p = recgamma::recfact_eval(Complex(-k, 50), Route::product, 1000, 50).value;
      CHECK(p.re.is_zero());
      CHECK(p.im.is_zero());
    }
    Complex r = recgamma::recfact_eval(Complex(-4L, 50), Route::reference, 0, 50).value;
    CHECK(r.is_zero());
  }
}

TEST_CASE("product and reference routes agree off the real axis") {
  recgamma::RecFactValue p =
      recgamma::recfact_eval(Complex(Scalar(2L, 50), Scalar(1L, 50)), Route::product, 1000, 50);
  recgamma::RecFactValue r =
      recgamma::recfact_eval(Complex(Scalar(2L, 50), Scalar(1L, 50)), Route::reference, 0, 50);
  CHECK(abs(p.value - r.value) < pow10(-40, 50));
  CHECK(p.tail_bound < pow10(-40, 50));
}

TEST_CASE("tail correction makes the value independent of the product length") {
  Complex z(Scalar(2.5, 50), Scalar(-1L, 50));
  Complex a = recgamma::recfact_eval(z, Route::product, 100, 50).value;
  Complex b = recgamma::recfact_eval(z, Route::product, 10000, 50).value;
  CHECK(abs(a - b) < pow10(-44, 50));
}

TEST_CASE("shift identity: 1/(z-1)! = z / z! on 25 random points in |z| <= 5") {
  std::mt19937 rng(20260823u);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  int tested = 0;
  while (tested < 25) {
    double x = u(rng), y = u(rng);
    if (x * x + y * y > 25.0) continue;
    ++tested;
    Complex z(Scalar(x, 50), Scalar(y, 50));
    Complex left =
        recgamma::recfact_eval(z - Scalar(1L, 50), Route::product, 1000, 50).value;
    Complex right = z * recgamma::recfact_eval(z, Route::product, 1000, 50).value;
    CAPTURE(x);
    CAPTURE(y);
    CHECK(abs(left - right) < pow10(-42, 50));
  }
}

TEST_CASE("product route rejects short products") {
  CHECK_THROWS_AS((void)recgamma::recfact_eval(Complex(1L, 30), Route::product, 50, 30), Error);
}

TEST_CASE("Liouville transform equals Gamma(iz)") {
  SUBCASE("z = -i: integral of e^{phi - e^phi} is 1") {
    recgamma::LiouvilleValue v =
        recgamma::liouville_fourier(Complex(Scalar(0L, 30), Scalar(-1L, 30)), 30);
    CHECK(abs(v.value - Complex(1L, 30)) < pow10(-25, 30));
  }

  SUBCASE("z = -2i: Gamma(2) = 1") {
    recgamma::LiouvilleValue v =
        recgamma::liouville_fourier(Complex(Scalar(0L, 30), Scalar(-2L, 30)), 30);
    CHECK(abs(v.value - Complex(1L, 30)) < pow10(-25, 30));
  }

  SUBCASE("z = 1: Gamma(i) against the frozen oracle and the reference route") {
    recgamma::LiouvilleValue v = recgamma::liouville_fourier(Complex(1L, 30), 30);
    Complex oracle(Scalar::parse("-0.1549498283018106851249551304838866051959", 30),
                   Scalar::parse("-0.498015668118356042713691117462198091953", 30));
    CHECK(abs(v.value - oracle) < pow10(-18, 30));
    CHECK(v.gap < pow10(-15, 30));
  }

  SUBCASE("pole and half-plane guards") {
    CHECK_THROWS_AS((void)recgamma::liouville_fourier(Complex(0L, 30), 30), Error);
    try {
      (void)recgamma::liouville_fourier(Complex(0L, 30), 30);
    } catch (const Error& e) {
      CHECK(e.code() == Errc::pole_at_zero);
    }
    CHECK_THROWS_AS(
        (void)recgamma::liouville_fourier(Complex(Scalar(0L, 30), Scalar(1L, 30)), 30), Error);
  }
}
