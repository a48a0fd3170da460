#pragma once

#include "xim/scalar.hpp"

namespace xim::recgamma {

enum class Route { product, reference };

/// 1/z! = 1/Gamma(z+1). The product route is the Weierstrass form
/// e^{gamma z} prod_{n<=N} (1 + z/n) e^{-z/n}, completed with an analytic
/// tail correction exp(sum_{k>=2} (-1)^{k+1} z^k zeta(k, N+1) / k) whose
/// Hurwitz-zeta tails come from Euler-Maclaurin; tail_bound bounds what the
/// correction itself omits. The reference route is the direct reciprocal of
/// the complex Gamma.
struct RecFactValue {
  Complex z;
  Complex value;
  Route route = Route::product;
  long terms = 0;     // N of the product route (0 for reference)
  Scalar tail_bound;  // rigorous bound on the neglected tail remainder
};

RecFactValue recfact_eval(const Complex& z, Route route = Route::product, long terms = 100000,
                          unsigned digits = 0);

/// The real-line transform int e^{iz phi} e^{-e^phi} dphi. Substituting
/// t = e^phi turns it into int_0^inf t^{iz-1} e^{-t} dt = Gamma(iz); it is
/// evaluated through the absolutely convergent shifted integral
/// Gamma(iz+1)/(iz) and returned beside the reference Gamma at the same
/// argument. Requires Im z <= 0; z = 0 sits on the Gamma pole.
struct LiouvilleValue {
  Complex z;
  Complex value;      // transform, via quadrature of the shifted integral
  Complex reference;  // Gamma(iz) from the reference Gamma route
  Scalar gap;         // |value - reference|
};

LiouvilleValue liouville_fourier(const Complex& z, unsigned digits = 0);

}  // namespace xim::recgamma
