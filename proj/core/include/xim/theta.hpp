#pragma once

#include "xim/kernel.hpp"
#include "xim/scalar.hpp"
#include "xim/series.hpp"

namespace xim::theta {

enum class Variant { f_of_ell, phi_derived, phi_paper_literal };

/// Tail budget whose bound rigorously dominates the omitted q > K terms over
/// the region reaching down to u_min (phi variants) or ell_min (f_of_ell).
ThetaTailBudget make_budget(Variant v, const Scalar& region_min, unsigned digits,
                            int margin_digits = 6);

/// Budget adequate for Taylor coefficients up to the given order.
ThetaTailBudget make_series_budget(int order, unsigned digits, int margin_digits = 6);

/// Evaluate the theta-like Kontsevich integrand.
///   f_of_ell:          f(l) = sum_q (pi^2 q^4 l - 3/2 pi q^2) l^{1/2} e^{-pi q^2 l},  l >= 1
///   phi_derived:       Phi(u) = sum_q (2 pi^2 q^4 e^{9u/2} - 3 pi q^2 e^{5u/2}) e^{-pi q^2 e^{2u}}
///   phi_paper_literal: sum_k (pi^2 k^4 e^{2phi} - 3/2 pi k^2 e^{phi}) e^{-pi k^2 e^{phi}}
/// phi_derived is the even kernel obtained by substituting l = e^{2u} into the
/// a_2n integrand; the literal variant reproduces the printed transform kernel,
/// which differs from it by prefactor powers and a variable rescaling.
Scalar kernel_eval(Variant v, const Scalar& point, const ThetaTailBudget& budget);

/// Taylor series of the derived kernel about 0, built per q-term with series
/// arithmetic (exp of the e^{2u} series) and summed.
PowerSeries kernel_series(int order, unsigned digits = 0);

/// Kernel descriptors for downstream Fourier/moment machinery.
KernelSpec make_xi_kernel(unsigned digits = 0);            // phi_derived, even
KernelSpec make_xi_paper_literal_kernel(unsigned digits = 0);
KernelSpec make_airy_kernel(unsigned digits = 0);          // e^{i phi^3/3}, rotated rays
KernelSpec make_liouville_kernel(unsigned digits = 0);     // e^{-e^phi}
KernelSpec make_gaussian_kernel(unsigned digits = 0);      // e^{-phi^2}, test kernel

}  // namespace xim::theta
