#pragma once

#include <complex>
#include <cstdint>
#include <vector>

namespace xim::ensemble {

/// One draw of the Gaussian Hermitian ensemble with density ~ e^{-Tr M^2}:
/// diagonal entries Normal(0, 1/2), off-diagonal real/imaginary parts
/// Normal(0, 1/4). Deterministic in (N, seed) via a counter-based generator,
/// so parallel workers on disjoint sample ranges reproduce bit-exactly.
struct EnsembleSample {
  int N = 0;
  std::vector<std::complex<double>> matrix;  // row-major N x N, exactly Hermitian
  std::uint64_t seed = 0;
  std::uint64_t sample_index = 0;
  const char* convention = "density exp(-Tr M^2)";
};

EnsembleSample sample_ensemble(int N, std::uint64_t seed, std::uint64_t sample_index = 0);

struct Observable {
  enum class Kind { det_shift, trace_power, resolvent };
  Kind kind = Kind::trace_power;
  std::complex<double> z;  // det_shift / resolvent argument
  int k = 2;               // trace power

  static Observable det_shift(std::complex<double> z);
  static Observable trace_power(int k);
  static Observable resolvent(std::complex<double> z);
};

struct McEstimate {
  std::complex<double> mean;
  double std_error = 0;  // sample standard deviation / sqrt(samples)
  long samples = 0;
  std::uint64_t seed = 0;
};

/// Monte Carlo expectation of det(zI - M), Tr M^k, or Tr (zI - M)^{-1}.
McEstimate expect_observable(int N, const Observable& obs, long samples, std::uint64_t seed);

/// Least-squares slope of log Var(Tr M^2 / N^2) against log N, with a
/// bootstrap confidence interval, plus the covariance of the two normalized
/// trace observables at the ends of the N range.
struct VarianceScaling {
  double slope = 0;
  double ci_low = 0, ci_high = 0;
  std::vector<std::pair<int, double>> variances;
  double covariance_first_N = 0;  // cov(Tr M^2/N^2, Tr M^4/N^3) at N_list.front()
  double covariance_last_N = 0;   // same at N_list.back()
};

VarianceScaling variance_scaling(const std::vector<int>& N_list, long samples,
                                 std::uint64_t seed);

/// Round trip of the functional-inverse relation for the normalized empirical
/// resolvent r(z) = <Tr (zI - M/sqrt(N))^{-1}>/N on a real grid outside the
/// spectral support: r is monotone there, is inverted by monotone cubic
/// interpolation, and the report is max |r(r^{-1}(y)) - y| over midpoints.
struct ResolventInverse {
  std::vector<double> grid;
  std::vector<double> r_values;
  double max_inversion_gap = 0;
};

ResolventInverse empirical_resolvent_inverse(int N, const std::vector<double>& z_grid,
                                             long samples, std::uint64_t seed);

}  // namespace xim::ensemble
