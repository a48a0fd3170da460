#pragma once

#include <utility>
#include <vector>

#include "xim/scalar.hpp"

namespace xim {

/// Euler's constant at the given digit budget (Brent-McMillan accelerated
/// series), cached per budget.
Scalar euler_gamma(unsigned digits = 0);

/// Gamma on the complex plane (Spouge approximation, reflection for the left
/// half-plane). Accurate to roughly the argument's digit budget.
Complex gamma(const Complex& z);

/// log Gamma, principal value on the right half-plane Re(z) > 0.
Complex log_gamma_right(const Complex& z);

/// Riemann zeta on the complex plane (Borwein's globally convergent
/// alternating series with binomial-weight acceleration; functional equation
/// below Re(s) = 0.4). Throws near the pole s = 1.
Complex zeta(const Complex& s);

/// sin on the complex plane.
Complex sin(const Complex& z);

/// Bernoulli number B_{2k} for 1 <= k <= 15, at the given budget.
Scalar bernoulli2k(int k, unsigned digits = 0);

}  // namespace xim
