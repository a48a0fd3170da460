#include "doctest.h"
#include "xim/airy.hpp"
#include "xim/errors.hpp"

using namespace xim;
using airy::Route;

namespace {
Scalar ai(double z, Route route = Route::reference, unsigned d = 50) {
  return airy::airy_eval(Complex(z, d), route, d).value.re;
}
}  // namespace

TEST_CASE("reference route matches series/asymptotic oracles") {
  CHECK(abs(ai(0) - Scalar::parse("0.3550280538878172392600631860041831763979791741991772", 50)) <
        pow10(-45, 50));
  CHECK(abs(ai(1) - Scalar::parse("0.1352924163128814155241474235154663061749441429883307", 50)) <
        pow10(-45, 50));
  CHECK(abs(ai(-1) - Scalar::parse("0.535560883292352118799516565638874707466930897683617", 50)) <
        pow10(-45, 50));
  CHECK(abs(ai(2.5) - Scalar::parse("0.01572592338047048999526604654076416845431582321747645", 50)) <
        pow10(-45, 50));
  // Beyond the switchover radius: exponential asymptotics on both axes.
  CHECK(abs(ai(30) - Scalar::parse("3.208217591550495571075286933184752796566851921757606e-49", 50)) <
        pow10(-85, 50));
  CHECK(abs(ai(-24) - Scalar::parse("-0.1498365900818865332891997815711358346113598282389204", 50)) <
        pow10(-38, 50));
}

TEST_CASE("reference route off the real axis") {
  Complex v = airy::airy_eval(Complex(Scalar(1L, 50), Scalar(0.5, 50)), Route::reference, 50).value;
  Complex expect(Scalar::parse("0.11791053318992206991770245771164957826053461726869", 50),
                 Scalar::parse("-0.078976443369599694482024913033517064613348257416645", 50));
  CHECK(abs(v - expect) < pow10(-44, 50));
}

TEST_CASE("kontsevich route agrees with reference") {
  for (double z : {0.0, 1.0, -1.0}) {
    Scalar gap = abs(ai(z, Route::kontsevich) - ai(z, Route::reference));
    CHECK(gap < pow10(-15, 50));
  }
}

TEST_CASE("kontsevich route off the real axis and its guard") {
  Complex z(Scalar(1L, 50), Scalar(0.5, 50));
  Complex k = airy::airy_eval(z, Route::kontsevich, 50).value;
  Complex r = airy::airy_eval(z, Route::reference, 50).value;
  CHECK(abs(k - r) < pow10(-15, 50));
  Complex high(Scalar(0L, 50), Scalar(2L, 50));
  CHECK_THROWS_AS((void)airy::airy_eval(high, Route::kontsevich, 50), Error);
}

TEST_CASE("zeros on the negative axis") {
  xi::ZeroList zl = airy::airy_zeros(20, 50);
  REQUIRE(zl.zeros.size() == 20);
  CHECK(abs(zl.zeros[0] - Scalar::parse("-2.33810741045976703848919725245", 50)) < pow10(-8, 50));
  CHECK(abs(zl.zeros[1] - Scalar::parse("-4.08794944413097061663698870146", 50)) < pow10(-8, 50));
  CHECK(abs(zl.zeros[19] - Scalar::parse("-20.5373329076775663599826814113", 50)) < pow10(-8, 50));
  for (const Scalar& z : zl.zeros) CHECK(z < 0);
  // No sign change on the positive axis up to +10.
  Scalar prev = ai(0);
  for (int i = 1; i <= 100; ++i) {
    Scalar cur = ai(i * 0.1);
    CHECK(cur > 0);
    prev = cur;
  }
}

TEST_CASE("positivity and monotone decay on [0, 5]") {
  Scalar prev = ai(0);
  for (int i = 1; i <= 50; ++i) {
    Scalar cur = ai(i * 0.1);
    CHECK(cur > 0);
    CHECK(cur < prev);
    prev = cur;
  }
}

TEST_CASE("ODE residual at the sampled points") {
  for (double z : {-3.0, -1.0, 0.0, 1.0, 2.0}) {
    CHECK(airy::ode_residual(Complex(z, 50), 50) < pow10(-10, 50));
  }
}
