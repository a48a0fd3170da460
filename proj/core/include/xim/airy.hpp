#pragma once

#include "xim/scalar.hpp"
#include "xim/xi.hpp"

namespace xim::airy {

enum class Route { reference, kontsevich };

struct AiryValue {
  Complex z;
  Complex value;
  Route route = Route::reference;
};

/// Ai(z).
///   reference:  Maclaurin f/g pair below the switchover radius (with a
///               cancellation-sized precision boost), exponential asymptotics
///               beyond it on the real axis
///   kontsevich: (1/2pi) int e^{iz phi + i phi^3/3} dphi with the contour ends
///               rotated into arg phi = pi/6 and 5pi/6
AiryValue airy_eval(const Complex& z, Route route = Route::reference, unsigned digits = 0);

/// First n zeros on the negative real axis (n <= 20), by scan + refinement of
/// the reference route. zeros[k] is the (k+1)-th zero counted from the origin,
/// so the list holds negative abscissas of increasing magnitude.
xi::ZeroList airy_zeros(int n, unsigned digits = 0);

/// |Ai''(z) - z Ai(z)| via 5-point central differences of the reference route.
Scalar ode_residual(const Complex& z, unsigned digits = 0);

}  // namespace xim::airy
