#pragma once

#include <string>
#include <vector>

#include "xim/scalar.hpp"

namespace xim::xi {

enum class Route { reference, fourier, series };

struct XiValue {
  Complex z;
  Complex value;
  Route route = Route::reference;
  unsigned precision = 0;
};

struct Bracket {
  Scalar lo, hi;
};

struct ZeroList {
  std::vector<Scalar> zeros;      // positive representatives, strictly increasing
  std::vector<Bracket> brackets;  // refined enclosing interval per zero
  std::vector<Scalar> residuals;  // |Xi(lambda_n)| at the returned point
  Scalar scan_height;             // T of the scan that produced the list
  bool complete = false;          // scan step was <= 0.05
  std::vector<std::string> warnings;
};

/// Evaluate Xi(z) = (1/2) s(s-1) pi^{-s/2} Gamma(s/2) zeta(s) at s = iz + 1/2.
///   reference: direct formula with the alternating-series zeta
///   fourier:   c * integral of e^{izu} Phi(u), c calibrated once at z = 0
///   series:    sum (-1)^n a_{2n} z^{2n} / (2n)!, order auto-chosen when < 0
XiValue xi_eval(const Complex& z, Route route = Route::reference, int order = -1,
                unsigned digits = 0);

/// Calibration constant of the fourier route (fixed once at z = 0 against the
/// reference route); also used by the truncated (p,1) models so their values
/// share Xi's normalization.
Scalar fourier_calibration(unsigned digits = 0);

/// Series coefficient a_{2n} = 4 int_1^inf l^{-1/4} f(l) ((1/2) log l)^{2n} dl,
/// computed as 4 int_0^inf Phi(u) u^{2n} du; strictly positive. Cached.
Scalar a2n(int n, unsigned digits = 0);

/// Scan [0, T] for sign changes of the reference route and refine each bracket
/// by bisection (to width 1e-6) then secant (to 1e-10).
ZeroList find_zeros(const Scalar& T, const Scalar& step, unsigned digits = 0);

/// Associative, order-normalizing merge of zero lists.
ZeroList merge(const ZeroList& a, const ZeroList& b);

/// Xi(0) * product over listed zeros of (1 - z^2 / lambda_n^2).
Complex product_reconstruct(const Complex& z, const ZeroList& zeros, unsigned digits = 0);

struct LoopObservables {
  Complex W;  // log zeta(iz + 1/2), principal branch
  Complex R;  // dW/dz by central differences with precision-tied step
};

/// Macroscopic-loop and resolvent observables; throws NearZeroSingularity
/// when z is within 1e-6 of a listed zero (or its negative).
LoopObservables loop_observables(const Complex& z, const ZeroList& zeros, unsigned digits = 0);

/// Cross-check route for R: sum of 2z/(z^2 - lambda_n^2) over listed zeros
/// minus the derivative of the smooth log-prefactor of Xi.
Complex resolvent_zero_sum(const Complex& z, const ZeroList& zeros, unsigned digits = 0);

}  // namespace xim::xi
