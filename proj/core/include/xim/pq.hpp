#pragma once

#include <map>

#include "xim/kernel.hpp"
#include "xim/scalar.hpp"
#include "xim/series.hpp"

namespace xim::pq {

/// Couplings of the truncated (p,1) model, read off the log of the kernel's
/// Taylor series. Series-matching convention: s_k = (k+1) L_{k+1} i^{-(k+1)};
/// the derivative-display variant s_k = i^{-(k+1)} L_k is kept alongside for
/// comparison (the two indexings differ by one).
struct CouplingSet {
  int p = 0;
  std::map<int, Complex> s;             // series-matching, 1 <= k <= p-2
  std::map<int, Complex> s_derivative;  // comparison variant, same range
  Scalar leading_coeff;                 // L_{p+1}, real and negative
};

/// Extract couplings at truncation order p (p odd; L_{p+1} must be negative).
/// The kernel defaults to the derived theta kernel; any kernel with a taylor
/// rule works.
CouplingSet extract_sk(int p, unsigned digits = 0, const KernelSpec* kernel = nullptr);

/// Degree-(p+1) Taylor truncation T of log kernel, as a series in phi.
PowerSeries truncated_log(int p, unsigned digits = 0, const KernelSpec* kernel = nullptr);

/// Xi_p(z) = c int e^{iz phi + T(phi)} dphi over the truncation's own decay
/// window, sharing the fourier route's calibration c so Xi_p approximates Xi.
/// For non-default kernels c = 1.
Complex xi_p_eval(const Complex& z, int p, unsigned digits = 0, const KernelSpec* kernel = nullptr);

/// Integration-by-parts residual of the generalized Airy relation
/// Q Xi_p = z Xi_p with Q built from T': |i int T' e^{iz phi + T}
/// - z int e^{iz phi + T} - i [e^{iz phi + T}] at the window ends|.
/// perturb_k >= 0 adds `perturb` to the phi^{perturb_k} coefficient of the
/// Q polynomial to exercise the sensitivity of the identity.
Scalar gen_airy_residual(const Complex& z, int p, unsigned digits = 0,
                         const KernelSpec* kernel = nullptr, int perturb_k = -1,
                         const Scalar& perturb = Scalar());

/// Limit matrix potential sum_k s_k V_k(y) with V_k(y) = sum_{j=1}^k (y^j - 1)/j,
/// truncated at the given series order.
PowerSeries limit_potential(const CouplingSet& couplings, int order, unsigned digits = 0);

/// B_n(z) = n! [y^n] exp(-V(y+1) + 2 z y), returned as a polynomial in z.
PowerSeries orth_poly(int n, const PowerSeries& potential);

}  // namespace xim::pq
