#include "doctest.h"
#include "xim/arith.hpp"
#include "xim/errors.hpp"
#include "xim/special.hpp"
#include "xim/xi.hpp"

using namespace xim;

namespace {

// First 100 zeros (scan to 237), shared across test cases.
const xi::ZeroList& zeros100() {
  static xi::ZeroList zl = xi::find_zeros(Scalar(237L, 30), Scalar(0.05, 30), 30);
  return zl;
}

xi::ZeroList prefix(const xi::ZeroList& zl, size_t n) {
  xi::ZeroList out = zl;
  out.zeros.resize(n);
  out.brackets.resize(n);
  out.residuals.resize(n);
  return out;
}

}  // namespace

TEST_CASE("prime-power counts") {
  SUBCASE("l = 30: ten primes, three squares, two cubes, one fourth power") {
    arith::PrimePowerCount c = arith::prime_side(Scalar(30L, 30), 30);
    CHECK(abs(c.average - Scalar(149L, 30) / 12) < pow10(-25, 30));
    CHECK(c.strict_count == c.weak_count);  // 30 is not a prime power
  }

  SUBCASE("l = 10") {
    arith::PrimePowerCount c = arith::prime_side(Scalar(10L, 30), 30);
    CHECK(abs(c.average - Scalar(16L, 30) / 3) < pow10(-25, 30));
  }

  SUBCASE("l = 2: the single prime power, at the jump") {
    arith::PrimePowerCount c = arith::prime_side(Scalar(2L, 30), 30);
    CHECK(c.strict_count.is_zero());
    CHECK(abs(c.weak_count - Scalar(1L, 30)) < pow10(-25, 30));
    CHECK(abs(c.average - Scalar(0.5, 30)) < pow10(-25, 30));
  }

  SUBCASE("monotone sweep with weak >= strict") {
    Scalar prev(0L, 30);
    for (long l = 2; l <= 1000; ++l) {
      arith::PrimePowerCount c = arith::prime_side(Scalar(l, 30), 30);
      CHECK(c.weak_count >= c.strict_count);
      CHECK(c.average >= prev);
      prev = c.average;
    }
  }

  SUBCASE("range guards") {
    CHECK_THROWS_AS((void)arith::prime_side(Scalar(1.5, 30), 30), Error);
    CHECK_THROWS_AS((void)arith::prime_side(Scalar(2000000L, 30), 30), Error);
  }
}

TEST_CASE("loop wave function: smooth terms and guards") {
  SUBCASE("l = e with no zeros") {
    xi::ZeroList empty;
    Scalar e = exp(Scalar(1L, 30));
    Scalar w = arith::w_loop(e, empty, 0, 30);
    Scalar expect = 1 - 1 / (e * (e * e - 1));
    CHECK(abs(w - expect) < pow10(-25, 30));
    CHECK(abs(w - Scalar(0.942421, 30)) < pow10(-5, 30));
  }

  SUBCASE("log singularity guard") {
    xi::ZeroList empty;
    CHECK_THROWS_AS((void)arith::w_loop(Scalar(1.0000001, 30), empty, 0, 30), Error);
    CHECK_THROWS_AS((void)arith::w_loop(Scalar(0.5, 30), empty, 0, 30), Error);
  }

  SUBCASE("Cesaro smoothing stabilizes the conditionally convergent sum") {
    Scalar l(10L, 30);
    Scalar raw50 = arith::w_loop(l, prefix(zeros100(), 50), 0, 30);
    Scalar raw100 = arith::w_loop(l, zeros100(), 0, 30);
    Scalar sm50 = arith::w_loop(l, prefix(zeros100(), 50), 10, 30);
    Scalar sm100 = arith::w_loop(l, zeros100(), 10, 30);
    CHECK(abs(sm50 - sm100) < abs(raw50 - raw100));
  }
}

TEST_CASE("explicit formula at l = 30") {
  arith::ExplicitCheck ec = arith::explicit_check(Scalar(30L, 30), zeros100(), 30);
  CHECK(ec.gap < Scalar(0.05, 30));

  SUBCASE("gap shrinks (up to smoothing slack) as more zeros enter") {
    arith::ExplicitCheck ec25 = arith::explicit_check(Scalar(30L, 30), prefix(zeros100(), 25), 30);
    CHECK(ec.gap <= ec25.gap * Scalar(1.1, 30));
  }

  SUBCASE("domain edge and preconditions") {
    arith::ExplicitCheck edge = arith::explicit_check(Scalar(2.5, 30), zeros100(), 30);
    CHECK(edge.loop_integral.is_finite());
    CHECK_THROWS_AS((void)arith::explicit_check(Scalar(2L, 30), zeros100(), 30), Error);
    xi::ZeroList shallow = zeros100();
    shallow.scan_height = Scalar(50L, 30);
    CHECK_THROWS_AS((void)arith::explicit_check(Scalar(30L, 30), shallow, 30), Error);
  }
}

TEST_CASE("Euler product for log zeta") {
  SUBCASE("s = 3 (z = -2.5i)") {
    arith::EulerLogZeta e =
        arith::euler_log_zeta(Complex(Scalar(0L, 30), Scalar(-2.5, 30)), 100000, 30);
    Complex ref = log(zeta(Complex(3L, 30)));
    CHECK(abs(e.value - ref) < e.tail_bound);
    CHECK(abs(e.value.re - Scalar::parse("0.18403417539149142150", 30)) < pow10(-9, 30));
    CHECK(e.value.im.is_zero());
  }

  SUBCASE("s = 2 (z = -1.5i)") {
    arith::EulerLogZeta e =
        arith::euler_log_zeta(Complex(Scalar(0L, 30), Scalar(-1.5, 30)), 100000, 30);
    Complex ref = log(zeta(Complex(2L, 30)));
    CHECK(abs(e.value - ref) < e.tail_bound);
    CHECK(abs(e.value.re - Scalar(0.497700, 30)) < pow10(-5, 30));
  }

  SUBCASE("agrees with the loop observable W off the real axis") {
    xi::ZeroList empty;
    double pts[5][2] = {{0, -0.7}, {1, -0.8}, {-2, -1.0}, {0.5, -1.5}, {3, -2.5}};
    for (auto& p : pts) {
      Complex z(Scalar(p[0], 30), Scalar(p[1], 30));
      arith::EulerLogZeta e = arith::euler_log_zeta(z, 100000, 30);
      Complex w = xi::loop_observables(z, empty, 30).W;
      CAPTURE(p[0]);
      CAPTURE(p[1]);
      CHECK(abs(e.value - w) < e.tail_bound + pow10(-15, 30));
    }
  }

  SUBCASE("convergence and range guards") {
    CHECK_THROWS_AS((void)arith::euler_log_zeta(Complex(0L, 30), 100000, 30), Error);
    try {
      (void)arith::euler_log_zeta(Complex(0L, 30), 100000, 30);
    } catch (const Error& e) {
      CHECK(e.code() == Errc::convergence_domain_error);
    }
    CHECK_THROWS_AS(
        (void)arith::euler_log_zeta(Complex(Scalar(0L, 30), Scalar(-2L, 30)), 50, 30), Error);
  }
}
