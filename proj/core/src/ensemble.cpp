#include "xim/ensemble.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>

#include "xim/errors.hpp"

namespace xim::ensemble {

namespace {

// ---------------------------------------------------------------------------
// Philox4x32-10 counter-based generator (Salmon et al. convention).

struct PhiloxBlock {
  std::uint32_t v[4];
};

inline void philox_round(std::uint32_t* ctr, const std::uint32_t* key) {
  constexpr std::uint64_t kMul0 = 0xD2511F53;
  constexpr std::uint64_t kMul1 = 0xCD9E8D57;
  std::uint64_t p0 = kMul0 * ctr[0];
  std::uint64_t p1 = kMul1 * ctr[2];
  std::uint32_t out[4];
  out[0] = static_cast<std::uint32_t>(p1 >> 32) ^ ctr[1] ^ key[0];
  out[1] = static_cast<std::uint32_t>(p1);
  out[2] = static_cast<std::uint32_t>(p0 >> 32) ^ ctr[3] ^ key[1];
  out[3] = static_cast<std::uint32_t>(p0);
  ctr[0] = out[0];
  ctr[1] = out[1];
  ctr[2] = out[2];
  ctr[3] = out[3];
}

PhiloxBlock philox(std::uint64_t key, std::uint64_t hi, std::uint64_t lo) {
  std::uint32_t ctr[4] = {static_cast<std::uint32_t>(lo), static_cast<std::uint32_t>(lo >> 32),
                          static_cast<std::uint32_t>(hi), static_cast<std::uint32_t>(hi >> 32)};
  std::uint32_t k[2] = {static_cast<std::uint32_t>(key), static_cast<std::uint32_t>(key >> 32)};
  constexpr std::uint32_t kWeyl0 = 0x9E3779B9;
  constexpr std::uint32_t kWeyl1 = 0xBB67AE85;
  for (int r = 0; r < 10; ++r) {
    philox_round(ctr, k);
    k[0] += kWeyl0;
    k[1] += kWeyl1;
  }
  return {{ctr[0], ctr[1], ctr[2], ctr[3]}};
}

/// Stream of standard gaussians: one Philox block per Box-Muller pair.
class GaussianStream {
 public:
  GaussianStream(std::uint64_t seed, std::uint64_t sample) : seed_(seed), sample_(sample) {}

  double next() {
    if (have_) {
      have_ = false;
      return spare_;
    }
    PhiloxBlock b = philox(seed_, sample_, ctr_++);
    // 53-bit uniforms in (0, 1]; u1 kept away from 0 for the log.
    double u1 = ((static_cast<std::uint64_t>(b.v[0]) << 21) ^ b.v[1]) * 0x1p-53 + 0x1p-54;
    double u2 = ((static_cast<std::uint64_t>(b.v[2]) << 21) ^ b.v[3]) * 0x1p-53;
    double r = std::sqrt(-2.0 * std::log(u1));
    double a = 6.283185307179586476925286766559 * u2;
    spare_ = r * std::sin(a);
    have_ = true;
    return r * std::cos(a);
  }

 private:
  std::uint64_t seed_, sample_;
  std::uint64_t ctr_ = 0;
  double spare_ = 0;
  bool have_ = false;
};

constexpr double kInvSqrt2 = 0.70710678118654752440084436210485;

using Matrix = Eigen::MatrixXcd;

Matrix sample_matrix(int N, std::uint64_t seed, std::uint64_t sample) {
  GaussianStream g(seed, sample);
  Matrix m(N, N);
  for (int i = 0; i < N; ++i) {
    m(i, i) = std::complex<double>(g.next() * kInvSqrt2, 0.0);
    for (int j = i + 1; j < N; ++j) {
      std::complex<double> e(g.next() * 0.5, g.next() * 0.5);
      m(i, j) = e;
      m(j, i) = std::conj(e);
    }
  }
  return m;
}

Eigen::VectorXd spectrum(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

std::complex<double> evaluate(const Observable& obs, const Eigen::VectorXd& lam) {
  switch (obs.kind) {
    case Observable::Kind::det_shift: {
      std::complex<double> d(1.0, 0.0);
      for (int i = 0; i < lam.size(); ++i) d *= obs.z - lam[i];
      return d;
    }
    case Observable::Kind::trace_power: {
      double t = 0;
      for (int i = 0; i < lam.size(); ++i) t += std::pow(lam[i], obs.k);
      return {t, 0.0};
    }
    case Observable::Kind::resolvent: {
      std::complex<double> r(0.0, 0.0);
      for (int i = 0; i < lam.size(); ++i) {
        std::complex<double> dz = obs.z - lam[i];
        if (std::abs(dz) < 1e-8)
          throw Error(Errc::singular_resolvent,
                      "sampled eigenvalue within 1e-8 of the resolvent argument");
        r += 1.0 / dz;
      }
      return r;
    }
  }
  return {};
}

void check_n(int N) {
  if (N < 1 || N > 64)
    throw Error(Errc::domain_error, "matrix size must satisfy 1 <= N <= 64, got " +
                                        std::to_string(N));
}

double slope_fit(const std::vector<double>& logn, const std::vector<double>& logv) {
  double n = static_cast<double>(logn.size());
  double sx = std::accumulate(logn.begin(), logn.end(), 0.0);
  double sy = std::accumulate(logv.begin(), logv.end(), 0.0);
  double sxx = 0, sxy = 0;
  for (size_t i = 0; i < logn.size(); ++i) {
    sxx += logn[i] * logn[i];
    sxy += logn[i] * logv[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace

Observable Observable::det_shift(std::complex<double> z) {
  Observable o;
  o.kind = Kind::det_shift;
  o.z = z;
  return o;
}

Observable Observable::trace_power(int k) {
  Observable o;
  o.kind = Kind::trace_power;
  o.k = k;
  return o;
}

Observable Observable::resolvent(std::complex<double> z) {
  Observable o;
  o.kind = Kind::resolvent;
  o.z = z;
  return o;
}

EnsembleSample sample_ensemble(int N, std::uint64_t seed, std::uint64_t sample_index) {
  check_n(N);
  Matrix m = sample_matrix(N, seed, sample_index);
  EnsembleSample out;
  out.N = N;
  out.seed = seed;
  out.sample_index = sample_index;
  out.matrix.resize(static_cast<size_t>(N) * N);
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) out.matrix[static_cast<size_t>(i) * N + j] = m(i, j);
  return out;
}

McEstimate expect_observable(int N, const Observable& obs, long samples, std::uint64_t seed) {
  check_n(N);
  if (samples < 1000)
    throw Error(Errc::insufficient_samples, "need at least 1000 samples, got " +
                                                std::to_string(samples));
  std::complex<double> sum(0, 0);
  std::vector<std::complex<double>> vals(static_cast<size_t>(samples));
  for (long s = 0; s < samples; ++s) {
    Eigen::VectorXd lam = spectrum(sample_matrix(N, seed, static_cast<std::uint64_t>(s)));
    vals[static_cast<size_t>(s)] = evaluate(obs, lam);
    sum += vals[static_cast<size_t>(s)];
  }
  McEstimate out;
  out.samples = samples;
  out.seed = seed;
  out.mean = sum / static_cast<double>(samples);
  double ss = 0;
  for (const auto& v : vals) ss += std::norm(v - out.mean);
  out.std_error = std::sqrt(ss / (samples - 1)) / std::sqrt(static_cast<double>(samples));
  return out;
}

VarianceScaling variance_scaling(const std::vector<int>& N_list, long samples,
                                 std::uint64_t seed) {
  if (N_list.size() < 4)
    throw Error(Errc::domain_error, "variance scaling needs at least 4 matrix sizes");
  for (size_t i = 0; i + 1 < N_list.size(); ++i)
    if (N_list[i] >= N_list[i + 1])
      throw Error(Errc::domain_error, "N_list must be strictly increasing");
  if (samples < 1000)
    throw Error(Errc::insufficient_samples, "need at least 1000 samples");

  VarianceScaling out;
  std::vector<double> logn, logv;
  // Per-(N, sample) values of the normalized observables, kept for bootstrap.
  std::vector<std::vector<double>> o2_all(N_list.size());
  for (size_t ni = 0; ni < N_list.size(); ++ni) {
    int N = N_list[ni];
    check_n(N);
    double nn = static_cast<double>(N);
    std::vector<double>& o2 = o2_all[ni];
    o2.resize(static_cast<size_t>(samples));
    std::vector<double> o4(static_cast<size_t>(samples));
    for (long s = 0; s < samples; ++s) {
      Eigen::VectorXd lam = spectrum(sample_matrix(N, seed, static_cast<std::uint64_t>(s)));
      double t2 = 0, t4 = 0;
      for (int i = 0; i < N; ++i) {
        double l2 = lam[i] * lam[i];
        t2 += l2;
        t4 += l2 * l2;
      }
      o2[static_cast<size_t>(s)] = t2 / (nn * nn);
      o4[static_cast<size_t>(s)] = t4 / (nn * nn * nn);
    }
    double m2 = std::accumulate(o2.begin(), o2.end(), 0.0) / samples;
    double m4 = std::accumulate(o4.begin(), o4.end(), 0.0) / samples;
    double var = 0, cov = 0;
    for (long s = 0; s < samples; ++s) {
      var += (o2[s] - m2) * (o2[s] - m2);
      cov += (o2[s] - m2) * (o4[s] - m4);
    }
    var /= (samples - 1);
    cov /= (samples - 1);
    out.variances.emplace_back(N, var);
    if (ni == 0) out.covariance_first_N = cov;
    if (ni + 1 == N_list.size()) out.covariance_last_N = cov;
    logn.push_back(std::log(nn));
    logv.push_back(std::log(var));
  }
  out.slope = slope_fit(logn, logv);

  // Bootstrap the slope by resampling the per-sample observable values.
  constexpr int kBoot = 60;
  std::vector<double> slopes;
  slopes.reserve(kBoot);
  for (int b = 0; b < kBoot; ++b) {
    std::vector<double> lv;
    for (size_t ni = 0; ni < N_list.size(); ++ni) {
      const std::vector<double>& o2 = o2_all[ni];
      double sum = 0, ss = 0;
      long n = samples;
      std::uint64_t ctr = 0;
      for (long s = 0; s < n; ++s) {
        PhiloxBlock blk = philox(seed ^ 0xB007B007B007B007ull,
                                 (static_cast<std::uint64_t>(b) << 32) | ni, ctr++);
        long idx = static_cast<long>(blk.v[0] % static_cast<std::uint32_t>(n));
        double v = o2[static_cast<size_t>(idx)];
        sum += v;
        ss += v * v;
      }
      double mean = sum / n;
      lv.push_back(std::log((ss - n * mean * mean) / (n - 1)));
    }
    slopes.push_back(slope_fit(logn, lv));
  }
  std::sort(slopes.begin(), slopes.end());
  out.ci_low = slopes[static_cast<size_t>(kBoot * 0.025)];
  out.ci_high = slopes[static_cast<size_t>(kBoot * 0.975)];
  if (out.ci_high - out.ci_low > 0.6)
    throw Error(Errc::insufficient_samples, "bootstrap CI on the variance slope wider than 0.6");
  return out;
}

ResolventInverse empirical_resolvent_inverse(int N, const std::vector<double>& z_grid,
                                             long samples, std::uint64_t seed) {
  check_n(N);
  if (z_grid.size() < 4)
    throw Error(Errc::domain_error, "resolvent inversion needs at least 4 grid points");
  if (samples < 1000)
    throw Error(Errc::insufficient_samples, "need at least 1000 samples");
  std::vector<double> grid = z_grid;
  std::sort(grid.begin(), grid.end());

  // Spectra of M/sqrt(N), whose support approaches [-sqrt(2), sqrt(2)].
  double scale = 1.0 / std::sqrt(static_cast<double>(N));
  std::vector<Eigen::VectorXd> spectra;
  spectra.reserve(static_cast<size_t>(samples));
  double lam_max = -1e300;
  for (long s = 0; s < samples; ++s) {
    Eigen::VectorXd lam = spectrum(sample_matrix(N, seed, static_cast<std::uint64_t>(s)));
    lam *= scale;
    lam_max = std::max(lam_max, lam[N - 1]);
    spectra.push_back(std::move(lam));
  }
  if (grid.front() < lam_max + 0.5)
    throw Error(Errc::non_monotone_region,
                "grid intrudes into the spectral support (margin 0.5)");

  auto r_of = [&](double z) {
    double acc = 0;
    for (const Eigen::VectorXd& lam : spectra)
      for (int i = 0; i < N; ++i) acc += 1.0 / (z - lam[i]);
    return acc / (static_cast<double>(N) * static_cast<double>(samples));
  };

  ResolventInverse out;
  out.grid = grid;
  for (double z : grid) out.r_values.push_back(r_of(z));

  // r decreases on the grid; invert it with a monotone (Fritsch-Carlson)
  // cubic through the (y, z) pairs, y ascending.
  size_t n = grid.size();
  std::vector<double> y(n), x(n);
  for (size_t i = 0; i < n; ++i) {
    y[i] = out.r_values[n - 1 - i];
    x[i] = grid[n - 1 - i];
  }
  for (size_t i = 0; i + 1 < n; ++i)
    if (y[i] >= y[i + 1])
      throw Error(Errc::non_monotone_region, "empirical resolvent not monotone on the grid");
  std::vector<double> h(n - 1), delta(n - 1), m(n);
  for (size_t i = 0; i + 1 < n; ++i) {
    h[i] = y[i + 1] - y[i];
    delta[i] = (x[i + 1] - x[i]) / h[i];
  }
  m[0] = delta[0];
  m[n - 1] = delta[n - 2];
  for (size_t i = 1; i + 1 < n; ++i) {
    if (delta[i - 1] * delta[i] <= 0) {
      m[i] = 0;
    } else {
      double w1 = 2 * h[i] + h[i - 1], w2 = h[i] + 2 * h[i - 1];
      m[i] = (w1 + w2) / (w1 / delta[i - 1] + w2 / delta[i]);
    }
  }
  auto inverse = [&](double yy) {
    size_t i = 0;
    while (i + 2 < n && yy > y[i + 1]) ++i;
    double t = (yy - y[i]) / h[i];
    double t2 = t * t, t3 = t2 * t;
    return (2 * t3 - 3 * t2 + 1) * x[i] + (t3 - 2 * t2 + t) * h[i] * m[i] +
           (-2 * t3 + 3 * t2) * x[i + 1] + (t3 - t2) * h[i] * m[i + 1];
  };

  double max_gap = 0;
  for (size_t i = 0; i + 1 < n; ++i) {
    double yy = 0.5 * (y[i] + y[i + 1]);
    double zz = inverse(yy);
    max_gap = std::max(max_gap, std::abs(r_of(zz) - yy));
  }
  out.max_inversion_gap = max_gap;
  return out;
}

}  // namespace xim::ensemble
