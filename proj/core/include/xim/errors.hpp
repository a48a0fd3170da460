#pragma once

#include <stdexcept>
#include <string>

#include "xim/scalar.hpp"

namespace xim {

enum class Errc {
  // numeric-core
  log_of_zero_constant_term,
  compose_nonzero_constant_term,
  order_mismatch,
  order_overflow,
  non_convergence,
  integrand_evaluation_failure,
  window_too_small,
  // theta-kernel
  domain_error,
  tail_budget_too_loose,
  // xi-function
  route_domain_error,
  series_truncation_error,
  near_zero_singularity,
  // airy
  contour_divergence,
  // fzzt-matrix
  confluence_unstable,
  // pq-model
  non_decaying_truncation,
  // arithmetic-bridge
  range_error,
  convergence_domain_error,
  // recip-gamma
  pole_at_zero,
  // ensemble-mc
  singular_resolvent,
  insufficient_samples,
  non_monotone_region,
  // cli
  unknown_key,
  type_error,
  missing_file,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
  Errc code() const { return code_; }

 private:
  Errc code_;
};

/// Non-convergent quadrature still reports its best value and estimate.
class NonConvergence : public Error {
 public:
  NonConvergence(Complex best, Scalar estimate, const std::string& what)
      : Error(Errc::non_convergence, what), best_(std::move(best)), estimate_(std::move(estimate)) {}
  const Complex& best() const { return best_; }
  const Scalar& estimate() const { return estimate_; }

 private:
  Complex best_;
  Scalar estimate_;
};

}  // namespace xim
