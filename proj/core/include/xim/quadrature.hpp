#pragma once

#include <functional>

#include "xim/kernel.hpp"
#include "xim/scalar.hpp"

namespace xim {

struct QuadratureResult {
  Complex value;
  Scalar error_estimate;
  std::size_t nodes_used = 0;
  bool converged = false;
};

struct QuadOptions {
  unsigned digits = 0;      // working precision (0 = default)
  int max_level = 11;       // doubling levels of the trapezoid refinement
  int min_level = 3;
  double osc_frequency = 0; // |z| of an e^{iz phi} factor; forces node density
  bool allow_nonconverged = false;  // return flagged result instead of throwing
};

using Integrand = std::function<Complex(const Scalar&)>;

/// Double-exponential quadrature over [a, b] (tanh-sinh).
QuadratureResult integrate_finite(const Integrand& f, const Scalar& a, const Scalar& b,
                                  const Scalar& tol, const QuadOptions& opt = {});

/// Double-exponential quadrature over [a, infinity) (exp-sinh).
QuadratureResult integrate_half_line(const Integrand& f, const Scalar& a, const Scalar& tol,
                                     const QuadOptions& opt = {});

/// Double-exponential quadrature over the whole real line (sinh-sinh).
QuadratureResult integrate_real_line(const Integrand& f, const Scalar& tol,
                                     const QuadOptions& opt = {});

/// Fourier transform of a kernel: int e^{i z phi} g(phi) dphi.
/// Even kernels at real z reduce to 2 int_0^W g cos(z phi) with exact zero
/// imaginary part; airy_rays kernels integrate along the rotated contour.
QuadratureResult fourier_transform(const KernelSpec& kernel, const Complex& z, const Scalar& tol,
                                   const QuadOptions& opt = {});

/// Window half-width W such that the kernel's decay bound meets tol, also
/// accounting for e^{|Im z| W} growth. Throws WindowTooSmall if impossible.
Scalar fourier_window(const KernelSpec& kernel, const Complex& z, const Scalar& tol,
                      const Scalar& w_max);

}  // namespace xim
