#pragma once

#include <functional>
#include <string>

#include "xim/scalar.hpp"
#include "xim/series.hpp"

namespace xim {

/// One-dimensional Kontsevich integrand descriptor shared by the Xi, Airy and
/// Liouville kernels: evaluation rule, decay bound, Taylor rule and symmetry.
struct KernelSpec {
  enum class Id { xi_derived, xi_paper_literal, airy, liouville, truncated_log, custom };
  /// How Fourier-type integrals against the kernel are carried out.
  enum class Contour {
    real_line,   // plain window on the real axis
    airy_rays,   // ends rotated to arg = pi/6 and 5 pi/6 (convergence sectors)
  };

  Id id = Id::custom;
  int p = 0;  // truncation order for truncated_log
  /// phi -> g(phi) on the real axis.
  std::function<Complex(const Scalar&)> eval;
  /// g along a complex ray; required for airy_rays contours.
  std::function<Complex(const Complex&)> eval_complex;
  /// R -> rigorous bound on |g(phi)| for |phi| >= R (monotone nonincreasing).
  std::function<Scalar(const Scalar&)> decay_bound;
  bool even = false;
  Contour contour = Contour::real_line;
  /// order -> Taylor series of g about 0.
  std::function<PowerSeries(int)> taylor;

  std::string name() const;
};

/// Number of retained q-terms in the theta-kernel sum plus a rigorous bound
/// on everything omitted.
struct ThetaTailBudget {
  int K = 0;
  Scalar tail_bound;
};

}  // namespace xim
