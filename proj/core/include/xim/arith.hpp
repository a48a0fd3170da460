#pragma once

#include "xim/scalar.hpp"
#include "xim/xi.hpp"

namespace xim::arith {

/// Prime-power counts with 1/n weights: strict is over p^n < l, weak over
/// p^n <= l; average is their mean (the normalized count at jump points).
struct PrimePowerCount {
  Scalar l;
  Scalar strict_count;
  Scalar weak_count;
  Scalar average;
};

/// Sieve-backed counts for 2 <= l <= 10^6.
PrimePowerCount prime_side(const Scalar& l, unsigned digits = 0);

/// Macroscopic-loop wave function over the supplied zeros:
///   1/log l - sum_n 2 cos(lambda_n log l) / (sqrt(l) log l) - 1/(l(l^2-1) log l).
/// The zero sum converges only conditionally; zeros are summed in increasing
/// lambda with the +/- pair folded into the 2cos factor, and cesaro_m > 0
/// averages the last m partial sums. Requires l > 1 with log l away from 0.
Scalar w_loop(const Scalar& l, const xi::ZeroList& zeros, int cesaro_m = 0, unsigned digits = 0);

/// Explicit-formula comparison: loop_integral = int_2^l W with Cesaro(10)
/// smoothing, integrated on subintervals split at prime powers; gap is its
/// distance from the averaged prime-power count.
struct ExplicitCheck {
  Scalar loop_integral;
  Scalar prime_average;
  Scalar gap;
};

ExplicitCheck explicit_check(const Scalar& l, const xi::ZeroList& zeros, unsigned digits = 0);

/// Euler-product form of log zeta at s = iz + 1/2:
///   sum over primes p <= p_max, n <= n_cut of p^{-n s} / n,
/// with a rigorous tail bound from the integral majorant of the prime sum.
/// Requires Im z < -1/2 (absolute convergence) and p_max >= 100.
struct EulerLogZeta {
  Complex value;
  Scalar tail_bound;
  long p_max = 0;
};

EulerLogZeta euler_log_zeta(const Complex& z, long p_max, unsigned digits = 0);

}  // namespace xim::arith
