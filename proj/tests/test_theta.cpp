#include "doctest.h"
#include "xim/errors.hpp"
#include "xim/theta.hpp"

using namespace xim;
using theta::Variant;

namespace {
Scalar eval(Variant v, double point, unsigned d = 50) {
  Scalar x(point, d);
  ThetaTailBudget b = theta::make_budget(v, x, d);
  return theta::kernel_eval(v, x, b);
}
}  // namespace

TEST_CASE("derived kernel at 0 matches the direct-summation oracle") {
  // sum_q (2 pi^2 q^4 - 3 pi q^2) e^{-pi q^2}
  Scalar expect = Scalar::parse("0.44669690046712344408698466705470911322042436709482", 50);
  CHECK(abs(eval(Variant::phi_derived, 0.0) - expect) < pow10(-45, 50));
}

TEST_CASE("derived kernel away from 0 matches the oracle") {
  // Binary-exact sample points so the oracle sees the same argument.
  Scalar e25 = Scalar::parse("0.2431874103670870938465272258077442410861674054297308", 50);
  CHECK(abs(eval(Variant::phi_derived, 0.25) - e25) < pow10(-45, 50));
  Scalar e15 = Scalar::parse("6.48839544909138240781159719436877111752736114214983e-24", 50);
  CHECK(abs(eval(Variant::phi_derived, 1.5) - e15) < pow10(-45, 50));
  CHECK(abs(eval(Variant::phi_derived, -1.5) - e15) < pow10(-45, 50));
}

TEST_CASE("literal kernel at 0 is the printed variant, not the derived one") {
  // sum_k (pi^2 k^4 - 3/2 pi k^2) e^{-pi k^2}
  Scalar expect = Scalar::parse("0.22334845023356172204349233352735455661021218354741", 50);
  Scalar got = eval(Variant::phi_paper_literal, 0.0);
  CHECK(abs(got - expect) < pow10(-45, 50));
  CHECK(abs(got - eval(Variant::phi_derived, 0.0)) > Scalar(0.2, 50));
}

TEST_CASE("f(l) spot values and domain guard") {
  Scalar f1 = Scalar::parse("0.22334845023356172204349233352735455661021218354741", 50);
  Scalar f25 = Scalar::parse("0.012252506683382480736489723626732257261062731439775", 50);
  CHECK(abs(eval(Variant::f_of_ell, 1.0) - f1) < pow10(-45, 50));
  CHECK(abs(eval(Variant::f_of_ell, 2.5) - f25) < pow10(-45, 50));
  ThetaTailBudget b = theta::make_budget(Variant::f_of_ell, Scalar(1L, 50), 50);
  CHECK_THROWS_AS((void)theta::kernel_eval(Variant::f_of_ell, Scalar(0.5, 50), b), Error);
}

TEST_CASE("evenness of the derived kernel") {
  for (double u : {0.3, 1.1, 2.0}) {
    Scalar gap = abs(eval(Variant::phi_derived, u) - eval(Variant::phi_derived, -u));
    CHECK(gap < pow10(-44, 50));
  }
}

TEST_CASE("positivity, evenness, and decay bound on the +-3 grid") {
  KernelSpec k = theta::make_xi_kernel(50);
  Scalar max_gap(0L, 50);
  for (int i = 0; i <= 300; ++i) {  // 601 points counting both signs
    Scalar u(i * 0.01, 50);
    Scalar plus = k.eval(u).re;
    Scalar minus = k.eval(-u).re;
    CHECK(plus > 0);
    CHECK(minus > 0);
    max_gap = max(max_gap, abs(plus - minus));
    CHECK(plus <= k.decay_bound(u) + pow10(-44, 50));
  }
  CHECK(max_gap < pow10(-44, 50));
}

TEST_CASE("tail bound soundness: K versus K + 3 retained terms") {
  for (double u : {-1.5, 0.0, 0.8, 2.0}) {
    Scalar x(u, 50);
    ThetaTailBudget b = theta::make_budget(Variant::phi_derived, min(x, -x), 50);
    ThetaTailBudget wider = b;
    wider.K += 3;
    Scalar diff = abs(theta::kernel_eval(Variant::phi_derived, x, b) -
                      theta::kernel_eval(Variant::phi_derived, x, wider));
    CHECK(diff <= b.tail_bound);
  }
}

TEST_CASE("taylor series of the derived kernel") {
  PowerSeries s = theta::kernel_series(8, 50);
  Scalar phi0 = eval(Variant::phi_derived, 0.0);
  CHECK(abs(s[0].re - phi0) < pow10(-45, 50));
  CHECK(abs(s[1]) < pow10(-45, 50));  // even kernel
  CHECK(abs(s[3]) < pow10(-45, 50));

  // Independent second-derivative oracle: c2 = Phi''(0)/2.
  Scalar c2 = Scalar::parse("-4.1826251936758142166975310876932448997693890828114", 50);
  CHECK(abs(s[2].re - c2) < pow10(-40, 50));

  // Finite-difference cross-check of the u^2 coefficient at step 1e-8.
  Scalar h = pow10(-8, 60);
  ThetaTailBudget b = theta::make_budget(Variant::phi_derived, -h, 60);
  Scalar fd = (theta::kernel_eval(Variant::phi_derived, h, b) -
               2 * theta::kernel_eval(Variant::phi_derived, Scalar(0L, 60), b) +
               theta::kernel_eval(Variant::phi_derived, -h, b)) / (h * h) / 2;
  CHECK(abs(s[2].re - fd) < pow10(-12, 50));
}

TEST_CASE("series evaluation tracks pointwise evaluation near 0") {
  PowerSeries s = theta::kernel_series(32, 50);
  for (double u : {0.05, -0.05, 0.1}) {
    Complex via_series = s.eval(Complex(u, 50));
    Scalar direct = eval(Variant::phi_derived, u);
    // Truncation at order 32 is ~3e-29 at |u| = 0.1.
    CHECK(abs(via_series.re - direct) < pow10(-27, 50));
  }
}

TEST_CASE("series order guard") {
  CHECK_THROWS_AS((void)theta::kernel_series(PowerSeries::kMaxOrder + 1, 50), Error);
}
