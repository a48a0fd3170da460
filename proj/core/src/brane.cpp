#include "xim/brane.hpp"

#include <algorithm>
#include <cmath>

#include "xim/errors.hpp"
#include "xim/quadrature.hpp"

namespace xim::brane {

namespace {

unsigned effective(unsigned digits) { return digits ? digits : Scalar::default_digits(); }

// n x n determinant by Gaussian elimination with partial pivoting.
Complex determinant(std::vector<std::vector<Complex>> a, unsigned dint) {
  const size_t n = a.size();
  Complex det(1L, dint);
  for (size_t c = 0; c < n; ++c) {
    size_t pivot = c;
    Scalar best = abs(a[c][c]);
    for (size_t r = c + 1; r < n; ++r) {
      Scalar mag = abs(a[r][c]);
      if (mag > best) {
        best = mag;
        pivot = r;
      }
    }
    if (best.is_zero()) return Complex(0L, dint);
    if (pivot != c) {
      std::swap(a[pivot], a[c]);
      det = -det;
    }
    det = det * a[c][c];
    Complex inv_p = inv(a[c][c]);
    for (size_t r = c + 1; r < n; ++r) {
      Complex factor = a[r][c] * inv_p;
      for (size_t k = c; k < n; ++k) a[r][k] = a[r][k] - factor * a[c][k];
    }
  }
  return det;
}

Complex i_pow(long k, unsigned dint) {
  Complex i(Scalar(0L, dint), Scalar(1L, dint));
  Complex r(1L, dint);
  long m = ((k % 4) + 4) % 4;
  for (long j = 0; j < m; ++j) r = r * i;
  return r;
}

Complex raw_moment(const KernelSpec& kernel, int m, const Complex& z, unsigned d) {
  if (m < 0 || m > 12) throw Error(Errc::domain_error, "moment order must be in [0, 12]");
  unsigned dint = d + 10;
  Complex zz{z.re.at_digits(dint), z.im.at_digits(dint)};
  Complex iz = Complex(Scalar(0L, dint), Scalar(1L, dint)) * zz;
  Scalar tol = pow10(-static_cast<long>(d) - 4, dint);
  QuadOptions opt;
  opt.digits = dint;
  opt.osc_frequency = std::fabs(z.re.to_double()) + std::fabs(z.im.to_double());

  if (kernel.contour == KernelSpec::Contour::airy_rays) {
    if (!kernel.eval_complex)
      throw Error(Errc::contour_divergence, "airy_rays contour needs eval_complex");
    Complex ray1 = cis(pi(dint) / 6);
    Complex ray2 = cis(5 * pi(dint) / 6);
    Complex p1 = i_pow(0, dint), p2 = p1;
    for (int k = 0; k <= m; ++k) {
      p1 = p1 * ray1;
      p2 = p2 * ray2;
    }
    auto f = [&](const Scalar& t) -> Complex {
      Scalar tm = pow(t, Scalar(static_cast<long>(m), dint));
      return (p1 * kernel.eval_complex(ray1 * t) * exp(iz * (ray1 * t)) -
              p2 * kernel.eval_complex(ray2 * t) * exp(iz * (ray2 * t))) * tm;
    };
    QuadratureResult r = integrate_half_line(f, Scalar(0L, dint), tol, opt);
    return {r.value.re.at_digits(d), r.value.im.at_digits(d)};
  }

  if (!kernel.even)
    throw Error(Errc::domain_error,
                "moment_transform supports even real-line kernels or the ray contour");

  // Fold: int phi^m g e^{iz phi} = int_0^W u^m g(u) (e^{izu} + (-1)^m e^{-izu}) du.
  // Shrink the window tolerance by W_max^m to absorb the phi^m growth.
  Scalar wtol = tol;
  for (int k = 0; k < m; ++k) wtol = wtol / 30;
  Scalar w = fourier_window(kernel, z, wtol, Scalar(30L, dint));
  bool flip = (m % 2 == 1);
  auto f = [&](const Scalar& u) -> Complex {
    Scalar um = pow(u, Scalar(static_cast<long>(m), dint));
    Complex osc = exp(iz * u);
    Complex osc2 = exp(-(iz * u));
    return kernel.eval(u) * (flip ? osc - osc2 : osc + osc2) * um;
  };
  QuadratureResult r = integrate_finite(f, Scalar(0L, dint), w, tol, opt);
  // Even kernel, real z: even moments are real, odd moments purely imaginary.
  if (z.im.is_zero()) {
    if (flip) return Complex(Scalar(0L, d), r.value.im.at_digits(d));
    return Complex(r.value.re.at_digits(d), Scalar(0L, d));
  }
  return {r.value.re.at_digits(d), r.value.im.at_digits(d)};
}

}  // namespace

Complex moment_transform(const KernelSpec& kernel, int m, const Complex& z, unsigned digits) {
  return raw_moment(kernel, m, z, effective(digits));
}

MomentTable::MomentTable(KernelSpec kernel, unsigned digits)
    : kernel_(std::move(kernel)), name_(kernel_.name()), digits_(effective(digits)) {}

Complex MomentTable::get(int m, const Complex& z) {
  auto key = std::make_pair(m, std::make_pair(z.re.str(digits_ + 5), z.im.str(digits_ + 5)));
  {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = entries_.find(key);
    if (it != entries_.end()) return it->second;
  }
  Complex v = raw_moment(kernel_, m, z, digits_);
  std::lock_guard<std::mutex> lock(mutex_);
  max_m_ = std::max(max_m_, m);
  return entries_.emplace(key, v).first->second;
}

namespace {

struct Group {
  Complex rep;                  // representative (mean)
  std::vector<size_t> members;  // indices into the eigenvalue list
  Scalar spread;                // max distance of a member to another member
};

std::vector<Group> cluster(const std::vector<Complex>& zs, const Scalar& thresh, unsigned dint) {
  const size_t n = zs.size();
  std::vector<int> label(n, -1);
  std::vector<Group> groups;
  for (size_t i = 0; i < n; ++i) {
    if (label[i] >= 0) continue;
    Group g;
    g.members.push_back(i);
    label[i] = static_cast<int>(groups.size());
    // Transitive closure at the threshold.
    bool grew = true;
    while (grew) {
      grew = false;
      for (size_t j = 0; j < n; ++j) {
        if (label[j] >= 0) continue;
        for (size_t k : g.members) {
          if (abs(zs[j] - zs[k]) < thresh) {
            g.members.push_back(j);
            label[j] = label[i];
            grew = true;
            break;
          }
        }
      }
    }
    Complex sum(0L, dint);
    for (size_t k : g.members) sum += zs[k];
    g.rep = sum * (1 / Scalar(static_cast<long>(g.members.size()), dint));
    g.spread = Scalar(0L, dint);
    for (size_t a : g.members)
      for (size_t b : g.members)
        g.spread = max(g.spread, abs(zs[a] - zs[b]));
    groups.push_back(std::move(g));
  }
  return groups;
}

// Direct branch: det[G_{j-1}(z_i)] / prod_{i<j}(z_j - z_i).
Complex partition_direct(MomentTable& table, const std::vector<Complex>& zs, unsigned dint) {
  const size_t n = zs.size();
  std::vector<std::vector<Complex>> mat(n, std::vector<Complex>(n));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) mat[i][j] = table.get(static_cast<int>(j), zs[i]);
  Complex det = determinant(std::move(mat), dint);
  Complex vdm(1L, dint);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 1; j < n; ++j) vdm = vdm * (zs[j] - zs[i]);
  return det * inv(vdm);
}

// Confluent branch: rows (1/r!) d^r/dz^r G_{j-1}(rep) = (i^r / r!) G_{j-1+r}(rep)
// per group, cross-group Vandermonde factors (rep_l - rep_k)^{g_k g_l}.
Complex partition_confluent(MomentTable& table, const std::vector<Group>& groups, size_t n,
                            unsigned dint) {
  std::vector<std::vector<Complex>> mat;
  mat.reserve(n);
  for (const Group& g : groups) {
    Scalar rfact(1L, dint);
    for (size_t r = 0; r < g.members.size(); ++r) {
      if (r > 0) rfact *= static_cast<long>(r);
      std::vector<Complex> row(n);
      Complex scale = i_pow(static_cast<long>(r), dint) * (1 / rfact);
      for (size_t j = 0; j < n; ++j)
        row[j] = table.get(static_cast<int>(j + r), g.rep) * scale;
      mat.push_back(std::move(row));
    }
  }
  Complex det = determinant(std::move(mat), dint);
  Complex vdm(1L, dint);
  for (size_t k = 0; k < groups.size(); ++k)
    for (size_t l = k + 1; l < groups.size(); ++l) {
      Complex diff = groups[l].rep - groups[k].rep;
      long e = static_cast<long>(groups[k].members.size() * groups[l].members.size());
      for (long q = 0; q < e; ++q) vdm = vdm * diff;
    }
  return det * inv(vdm);
}

}  // namespace

Complex brane_partition(const KernelSpec& kernel, const BraneConfig& config, unsigned digits) {
  unsigned d = effective(digits);
  unsigned dint = d + 10;
  const size_t n = config.eigenvalues.size();
  if (n < 1 || n > 4) throw Error(Errc::domain_error, "brane_partition supports 1 <= n <= 4");

  std::vector<Complex> zs;
  zs.reserve(n);
  for (const Complex& z : config.eigenvalues)
    zs.push_back({z.re.at_digits(dint), z.im.at_digits(dint)});

  MomentTable table(kernel, dint);
  Complex phase = i_pow(-static_cast<long>(n * (n - 1) / 2), dint);

  if (n == 1) {
    Complex v = table.get(0, zs[0]);
    return {v.re.at_digits(d), v.im.at_digits(d)};
  }

  Scalar conf_tol = config.confluence_tol.is_zero() ? pow10(-6, dint)
                                                    : config.confluence_tol.at_digits(dint);
  Scalar group_thresh = pow10(-3, dint);
  std::vector<Group> groups = cluster(zs, group_thresh, dint);
  bool has_groups = groups.size() < n;

  Complex result;
  if (!has_groups) {
    result = partition_direct(table, zs, dint);
  } else {
    // Minimum nonzero spacing inside groups decides which branches are viable.
    Scalar eps_min(-1L, dint);
    bool exact_dup = false;
    for (const Group& g : groups)
      for (size_t a : g.members)
        for (size_t b : g.members) {
          if (a >= b) continue;
          Scalar sp = abs(zs[a] - zs[b]);
          if (sp.is_zero()) exact_dup = true;
          else if (eps_min < 0 || sp < eps_min) eps_min = sp;
        }

    if (exact_dup || (eps_min >= 0 && eps_min < conf_tol)) {
      result = partition_confluent(table, groups, n, dint);
    } else {
      // Near-coincident band: evaluate both and keep the better-conditioned
      // one. Direct loses ~|log10 eps| digits to Vandermonde cancellation;
      // confluent truncates the Taylor rows at O(spread^2).
      Complex direct = partition_direct(table, zs, dint);
      Complex confl = partition_confluent(table, groups, n, dint);
      Scalar err_direct = pow10(-static_cast<long>(d) - 4, dint) / eps_min;
      Scalar spread(0L, dint);
      for (const Group& g : groups) spread = max(spread, g.spread);
      Scalar err_confl = spread * spread;
      if (err_direct > pow10(-8, dint) && err_confl > pow10(-8, dint))
        throw Error(Errc::confluence_unstable,
                    "both branches exceed tolerance at spacing " + eps_min.str(4));
      result = (err_direct < err_confl) ? direct : confl;
    }
  }

  result = result * phase;
  // Even kernel, all-real configuration: the value is real by symmetry.
  bool all_real = true;
  for (const Complex& z : zs) all_real = all_real && z.im.is_zero();
  if (kernel.even && all_real) return Complex(result.re.at_digits(d), Scalar(0L, d));
  return {result.re.at_digits(d), result.im.at_digits(d)};
}

BruteCheck brane_brute_check(const KernelSpec& kernel, const BraneConfig& config,
                             unsigned digits) {
  unsigned d = effective(digits);
  unsigned dint = d + 10;
  if (config.eigenvalues.size() != 2)
    throw Error(Errc::domain_error, "brane_brute_check requires n = 2");
  bool rays = kernel.contour == KernelSpec::Contour::airy_rays;
  if (!rays && (kernel.contour != KernelSpec::Contour::real_line || !kernel.even))
    throw Error(Errc::domain_error,
                "brane_brute_check requires an even real-line or rotated-ray kernel");

  BruteCheck out;
  out.reduced = brane_partition(kernel, config, d);

  Complex z1{config.eigenvalues[0].re.at_digits(dint), config.eigenvalues[0].im.at_digits(dint)};
  Complex z2{config.eigenvalues[1].re.at_digits(dint), config.eigenvalues[1].im.at_digits(dint)};
  Complex i(Scalar(0L, dint), Scalar(1L, dint));
  Scalar tol = pow10(-static_cast<long>(d) - 2, dint);

  if (rays) {
    // Nested contour quadrature along the two rotated rays; the inner integral
    // is recomputed at every outer node so no moment identity is reused.
    if (!kernel.eval_complex)
      throw Error(Errc::contour_divergence, "airy_rays contour needs eval_complex");
    QuadOptions opt;
    opt.digits = dint;
    opt.osc_frequency = std::fabs(z1.re.to_double()) + std::fabs(z2.re.to_double());
    Complex ray1 = cis(pi(dint) / 6);
    Complex ray2 = cis(5 * pi(dint) / 6);
    auto along = [&](const std::function<Complex(const Complex&)>& f) -> Complex {
      auto leg = [&](const Complex& ray) {
        return integrate_half_line([&](const Scalar& t) { return f(ray * t) * ray; },
                                   Scalar(0L, dint), tol, opt)
            .value;
      };
      return leg(ray1) - leg(ray2);
    };
    Complex I = along([&](const Complex& p1) {
      Complex g1 = kernel.eval_complex(p1);
      Complex inner = along([&](const Complex& p2) {
        Complex det_e = exp(i * (z1 * p1 + z2 * p2)) - exp(i * (z1 * p2 + z2 * p1));
        return det_e * kernel.eval_complex(p2) * (p1 - p2);
      });
      return g1 * inner;
    });
    Complex vdm = z2 - z1;
    Complex direct = I * i_pow(-1, dint) * Scalar(-0.5, dint) * inv(vdm);
    out.direct = {direct.re.at_digits(d), direct.im.at_digits(d)};
    out.discrepancy = abs(out.direct - out.reduced).at_digits(d);
    return out;
  }

  Scalar w = fourier_window(kernel, z1, tol, Scalar(30L, dint));
  Scalar w2 = fourier_window(kernel, z2, tol, Scalar(30L, dint));
  w = max(w, w2);

  QuadOptions opt;
  opt.digits = dint;
  opt.osc_frequency = std::fabs(z1.re.to_double()) + std::fabs(z2.re.to_double());
  QuadOptions inner_opt = opt;

  // I = int int (phi1 - phi2) det[e^{i z_i phi_j}] g(phi1) g(phi2); the
  // reduction identity gives det[G_{j-1}(z_i)] = -I/2, so the shared
  // normalization is direct = -phase * I / (2 Delta).
  auto outer = [&](const Scalar& p1) -> Complex {
    Complex g1 = kernel.eval(p1);
    auto inner = [&](const Scalar& p2) -> Complex {
      Complex det_e = exp(i * (z1 * p1 + z2 * p2)) - exp(i * (z1 * p2 + z2 * p1));
      return det_e * kernel.eval(p2) * (p1 - p2);
    };
    QuadratureResult ri = integrate_finite(inner, -w, w, tol, inner_opt);
    return g1 * ri.value;
  };
  QuadratureResult r = integrate_finite(outer, -w, w, tol, opt);
  Complex vdm = z2 - z1;
  Complex phase = i_pow(-1, dint);
  Complex direct = r.value * phase * Scalar(-0.5, dint) * inv(vdm);
  out.direct = {direct.re.at_digits(d), direct.im.at_digits(d)};
  out.discrepancy = abs(out.direct - out.reduced).at_digits(d);
  return out;
}

}  // namespace xim::brane
