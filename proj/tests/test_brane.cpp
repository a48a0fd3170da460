#include "doctest.h"
#include "xim/airy.hpp"
#include "xim/brane.hpp"
#include "xim/errors.hpp"
#include "xim/theta.hpp"

using namespace xim;
using brane::BraneConfig;

TEST_CASE("moments of the Airy kernel") {
  KernelSpec k = theta::make_airy_kernel(50);

  SUBCASE("m = 0, z = 0 is 2 pi Ai(0)") {
    Complex g0 = brane::moment_transform(k, 0, Complex(0L, 50), 50);
    Scalar expect = 2 * pi(50) *
        Scalar::parse("0.3550280538878172392600631860041831763979791741991772", 50);
    CHECK(abs(g0.re - expect) < pow10(-40, 50));
    CHECK(abs(g0.im) < pow10(-40, 50));
  }

  SUBCASE("m = 2, z = 1 matches (-i d/dz)^2 G0 by central differences") {
    Complex g2 = brane::moment_transform(k, 2, Complex(1L, 50), 50);
    Scalar h = pow10(-6, 50);
    Complex gp = brane::moment_transform(k, 0, Complex(Scalar(1L, 50) + h), 50);
    Complex g0 = brane::moment_transform(k, 0, Complex(1L, 50), 50);
    Complex gm = brane::moment_transform(k, 0, Complex(Scalar(1L, 50) - h), 50);
    Complex d2 = (gp - g0 * Scalar(2L, 50) + gm) * (1 / (h * h));
    // (-i)^2 d^2/dz^2 G0 = -d^2/dz^2 G0 should equal G2.
    CHECK(abs(g2 + d2) < pow10(-8, 50));
  }
}

TEST_CASE("even-kernel moments: odd order vanishes at z = 0") {
  KernelSpec g = theta::make_gaussian_kernel(50);
  Complex g1 = brane::moment_transform(g, 1, Complex(0L, 50), 50);
  CHECK(abs(g1) < pow10(-40, 50));
}

TEST_CASE("n = 1 reduces to the scalar value") {
  KernelSpec k = theta::make_airy_kernel(50);
  Complex p = brane::brane_partition(k, BraneConfig({Complex(0L, 50)}), 50);
  Scalar expect = 2 * pi(50) *
      Scalar::parse("0.3550280538878172392600631860041831763979791741991772", 50);
  CHECK(abs(p.re - expect) < pow10(-40, 50));
  // And equals the fourier transform of the kernel at the same z.
  Complex ai1 = airy::airy_eval(Complex(1L, 50), airy::Route::kontsevich, 50).value;
  Complex p1 = brane::brane_partition(k, BraneConfig({Complex(1L, 50)}), 50);
  CHECK(abs(p1 - ai1 * (2 * pi(50))) < pow10(-38, 50));
}

TEST_CASE("gaussian analytic oracle for n = 2") {
  // G0 = sqrt(pi) e^{-z^2/4}, G1 = (iz/2) G0; at z = (0, 1) the reduction
  // collapses to i^{-1} (i/2) pi e^{-1/4} = (pi/2) e^{-1/4}.
  KernelSpec g = theta::make_gaussian_kernel(50);
  Complex p = brane::brane_partition(g, BraneConfig({Complex(0L, 50), Complex(1L, 50)}), 50);
  Scalar expect = pi(50) / 2 * exp(Scalar(-0.25, 50));
  CHECK(abs(p.re - expect) < pow10(-38, 50));
  CHECK(p.im.is_zero());
}

TEST_CASE("permutation invariance for n = 2 and n = 3") {
  KernelSpec k = theta::make_airy_kernel(40);
  Complex a(Scalar(0L, 40)), b(Scalar(1L, 40)), c(Scalar(-1L, 40));
  Complex p12 = brane::brane_partition(k, BraneConfig({a, b}), 40);
  Complex p21 = brane::brane_partition(k, BraneConfig({b, a}), 40);
  CHECK(abs(p12 - p21) < pow10(-30, 40));
  Complex p123 = brane::brane_partition(k, BraneConfig({a, b, c}), 40);
  Complex p312 = brane::brane_partition(k, BraneConfig({c, a, b}), 40);
  Complex p213 = brane::brane_partition(k, BraneConfig({b, a, c}), 40);
  CHECK(abs(p123 - p312) < pow10(-28, 40));
  CHECK(abs(p123 - p213) < pow10(-28, 40));
}

TEST_CASE("xi-kernel all-real configurations are real") {
  KernelSpec x = theta::make_xi_kernel(30);
  Complex p = brane::brane_partition(x, BraneConfig({Complex(1L, 30), Complex(2L, 30)}), 30);
  CHECK(p.im.is_zero());
  CHECK(abs(p) > pow10(-10, 30));  // nontrivial value
}

TEST_CASE("confluent limit against Richardson extrapolation") {
  KernelSpec k = theta::make_airy_kernel(40);
  Complex z1(Scalar(1L, 40));
  Complex exact = brane::brane_partition(k, BraneConfig({z1, z1}), 40);

  auto at_spacing = [&](long e) {
    Complex z2(Scalar(1L, 40) + pow10(e, 40));
    return brane::brane_partition(k, BraneConfig({z1, z2}), 40);
  };
  Complex v2 = at_spacing(-2);
  Complex v3 = at_spacing(-3);
  Complex v4 = at_spacing(-4);
  // Quadratic (three-point Richardson) extrapolation to zero spacing:
  // Lagrange weights at eps = 0 for nodes 1e-2, 1e-3, 1e-4.
  Scalar e1 = pow10(-2, 40), e2 = pow10(-3, 40), e3 = pow10(-4, 40);
  Scalar w1 = (e2 * e3) / ((e2 - e1) * (e3 - e1));
  Scalar w2 = (e1 * e3) / ((e1 - e2) * (e3 - e2));
  Scalar w3 = (e1 * e2) / ((e1 - e3) * (e2 - e3));
  Complex extrap = v2 * w1 + v3 * w2 + v4 * w3;
  CHECK(abs(extrap - exact) < pow10(-8, 40));
  // And the raw sequence itself is converging toward the confluent value.
  CHECK(abs(v2 - exact) < pow10(-2, 40));
  CHECK(abs(v4 - exact) < abs(v2 - exact));
}

TEST_CASE("near-coincident spacing stays finite") {
  KernelSpec k = theta::make_airy_kernel(40);
  Complex z1(Scalar(1L, 40));
  Complex z2(Scalar(1L, 40) + pow10(-2, 40));
  Complex p = brane::brane_partition(k, BraneConfig({z1, z2}), 40);
  CHECK(p.re.is_finite());
  CHECK(abs(p) < Scalar(100L, 40));
}

TEST_CASE("config validation") {
  KernelSpec k = theta::make_airy_kernel(40);
  CHECK_THROWS_AS((void)brane::brane_partition(k, BraneConfig({}), 40), Error);
  std::vector<Complex> five(5, Complex(0L, 40));
  CHECK_THROWS_AS((void)brane::brane_partition(k, BraneConfig(five), 40), Error);
}

TEST_CASE("brute-force check: gaussian kernel") {
  KernelSpec g = theta::make_gaussian_kernel(18);
  brane::BruteCheck bc =
      brane::brane_brute_check(g, BraneConfig({Complex(0L, 18), Complex(1L, 18)}), 18);
  CHECK(bc.discrepancy < pow10(-15, 18));
}

TEST_CASE("brute-force check: airy kernel via nested contour quadrature") {
  KernelSpec k = theta::make_airy_kernel(14);
  brane::BruteCheck bc =
      brane::brane_brute_check(k, BraneConfig({Complex(0L, 14), Complex(1L, 14)}), 14);
  CHECK(bc.discrepancy < pow10(-12, 14));
}

TEST_CASE("brute-force check: xi kernel") {
  KernelSpec x = theta::make_xi_kernel(14);
  brane::BruteCheck bc =
      brane::brane_brute_check(x, BraneConfig({Complex(1L, 14), Complex(2L, 14)}), 14);
  CHECK(bc.discrepancy < pow10(-10, 14));
}

TEST_CASE("brute-force check: Delta cancellation at close spacing") {
  KernelSpec g = theta::make_gaussian_kernel(16);
  Complex z1(Scalar(1L, 16));
  Complex z2(Scalar(1L, 16) + pow10(-2, 16));
  brane::BruteCheck bc = brane::brane_brute_check(g, BraneConfig({z1, z2}), 16);
  CHECK(bc.reduced.re.is_finite());
  CHECK(bc.direct.re.is_finite());
  CHECK(bc.discrepancy < pow10(-10, 16));
}
