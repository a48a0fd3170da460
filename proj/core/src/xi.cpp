#include "xim/xi.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

#include "xim/errors.hpp"
#include "xim/quadrature.hpp"
#include "xim/special.hpp"
#include "xim/theta.hpp"

namespace xim::xi {

namespace {

unsigned effective(unsigned digits) { return digits ? digits : Scalar::default_digits(); }

// Half s(s-1) pi^{-s/2} Gamma(s/2) zeta(s) at s = iz + 1/2, at internal digits.
Complex reference_raw(const Complex& z, unsigned dint) {
  Complex zz{z.re.at_digits(dint), z.im.at_digits(dint)};
  Complex i(Scalar(0L, dint), Scalar(1L, dint));
  Complex s = i * zz + Complex(Scalar(0.5, dint));
  Complex half_s = s * Scalar(0.5, dint);

  // Guard the Gamma poles at s = 0, -2, -4, ...; the analytic cancellations
  // that keep Xi entire there are numerically unstable in this product form.
  double re = half_s.re.to_double(), im = half_s.im.to_double();
  if (re < 0.25 && std::fabs(im) < 1e-6 && std::fabs(re - std::round(re)) < 1e-6)
    throw Error(Errc::route_domain_error,
                "z too close to a pole of the Gamma factor (s = " + s.re.str(6) + ")");

  Complex pref = s * (s - Complex(1L, dint)) * Scalar(0.5, dint);
  Complex pi_pow = exp(log(Complex(pi(dint))) * (-half_s));
  return pref * pi_pow * gamma(half_s) * zeta(s);
}

Complex reference(const Complex& z, unsigned d) {
  Complex v = reference_raw(z, d + 10);
  if (z.im.is_zero()) return Complex(v.re.at_digits(d), Scalar(0L, d));
  return {v.re.at_digits(d), v.im.at_digits(d)};
}

std::mutex cache_mutex;

const KernelSpec& xi_kernel(unsigned d) {
  static std::map<unsigned, KernelSpec> cache;
  std::lock_guard<std::mutex> lock(cache_mutex);
  auto it = cache.find(d);
  if (it == cache.end()) it = cache.emplace(d, theta::make_xi_kernel(d)).first;
  return it->second;
}

Scalar fourier_raw(const Complex& z, unsigned d) {
  QuadOptions opt;
  opt.digits = d;
  QuadratureResult r = fourier_transform(xi_kernel(d), z, pow10(-static_cast<long>(d) - 2, d), opt);
  return r.value.re;  // even real kernel; complex z handled below
}

Complex fourier_raw_complex(const Complex& z, unsigned d) {
  QuadOptions opt;
  opt.digits = d;
  QuadratureResult r = fourier_transform(xi_kernel(d), z, pow10(-static_cast<long>(d) - 2, d), opt);
  return r.value;
}

// Calibration constant of the fourier route, fixed once at z = 0 against the
// reference route. (Analytically it equals 2 with this kernel normalization;
// calibrating instead of hard-coding keeps the route independent.)
Scalar calibration(unsigned d) {
  static std::map<unsigned, Scalar> cache;
  {
    std::lock_guard<std::mutex> lock(cache_mutex);
    auto it = cache.find(d);
    if (it != cache.end()) return it->second;
  }
  Scalar ref0 = reference(Complex(0L, d), d).re;
  Scalar raw0 = fourier_raw(Complex(0L, d), d);
  Scalar c = ref0 / raw0;
  std::lock_guard<std::mutex> lock(cache_mutex);
  cache.emplace(d, c);
  return c;
}

Scalar xi0(unsigned d) { return reference(Complex(0L, d), d).re; }

}  // namespace

Scalar fourier_calibration(unsigned digits) { return calibration(effective(digits)); }

Scalar a2n(int n, unsigned digits) {
  unsigned d = effective(digits);
  if (n < 0) throw Error(Errc::domain_error, "a2n requires n >= 0");
  static std::map<std::pair<unsigned, int>, Scalar> cache;
  {
    std::lock_guard<std::mutex> lock(cache_mutex);
    auto it = cache.find({d, n});
    if (it != cache.end()) return it->second;
  }
  unsigned dint = d + 10;
  const KernelSpec& k = xi_kernel(dint);
  // 4 int_0^inf Phi(u) u^{2n} du; the kernel is below 1e-digits past the
  // window found from its decay bound, so a finite interval suffices.
  Scalar tol = pow10(-static_cast<long>(d) - 4, dint);
  Scalar w = fourier_window(k, Complex(0L, dint), tol, Scalar(30L, dint));
  QuadOptions opt;
  opt.digits = dint;
  auto f = [&](const Scalar& u) -> Complex { return k.eval(u) * pow(u, Scalar(2L * n, dint)); };
  QuadratureResult r = integrate_finite(f, Scalar(0L, dint), w, tol, opt);
  Scalar v = (r.value.re * 4).at_digits(d);
  std::lock_guard<std::mutex> lock(cache_mutex);
  cache.emplace(std::make_pair(d, n), v);
  return v;
}

XiValue xi_eval(const Complex& z, Route route, int order, unsigned digits) {
  unsigned d = effective(digits);
  XiValue out;
  out.z = z;
  out.route = route;
  out.precision = d;

  switch (route) {
    case Route::reference:
      out.value = reference(z, d);
      return out;

    case Route::fourier: {
      if (abs(z.im) > 2)
        throw Error(Errc::route_domain_error,
                    "fourier route restricted to |Im z| <= 2, got " + z.im.str(6));
      Scalar c = calibration(d);
      if (z.im.is_zero()) {
        out.value = Complex((c * fourier_raw(z, d)).at_digits(d), Scalar(0L, d));
      } else {
        Complex v = fourier_raw_complex(z, d);
        out.value = {(v.re * c).at_digits(d), (v.im * c).at_digits(d)};
      }
      return out;
    }

    case Route::series: {
      unsigned dint = d + 10;
      Scalar az = abs(z);
      Scalar tol = pow10(-static_cast<long>(d) - 2, dint);
      int max_order = (order >= 0) ? order : 80;
      Complex z2 = z * z;
      Complex acc(0L, dint);
      Complex term_z(1L, dint);  // z^{2n}
      Scalar fact(1L, dint);     // (2n)!
      Scalar est(1L, dint);
      int n = 0;
      bool converged = false;
      for (; n <= max_order; ++n) {
        Scalar a = a2n(n, dint);
        Complex term = term_z * (a / fact);
        if (n % 2 == 1) term = -term;
        acc += term;
        // Truncation estimate: next term magnitude (the tail alternates and
        // its magnitude is eventually decreasing once (2n)^2 > |z|^2).
        Scalar next_a = a2n(n + 1, dint);
        est = next_a * pow(az, Scalar(2L * (n + 1), dint)) /
              (fact * Scalar((2L * n + 1) * (2L * n + 2), dint));
        if (est < tol && 2 * n > az.to_double()) {
          converged = true;
          break;
        }
        term_z = term_z * z2;
        fact *= (2L * n + 1);
        fact *= (2L * n + 2);
      }
      if (!converged && order >= 0) {
        // Caller pinned the order; report the estimate if it is too loose.
        if (est > pow10(-static_cast<long>(d) + 10, dint))
          throw Error(Errc::series_truncation_error,
                      "series order " + std::to_string(order) +
                          " leaves truncation estimate " + est.str(4));
      } else if (!converged) {
        throw Error(Errc::series_truncation_error,
                    "|z| = " + az.str(6) + " too large for maximum series order");
      }
      if (z.im.is_zero())
        out.value = Complex(acc.re.at_digits(d), Scalar(0L, d));
      else
        out.value = {acc.re.at_digits(d), acc.im.at_digits(d)};
      return out;
    }
  }
  throw Error(Errc::route_domain_error, "unknown route");
}

ZeroList find_zeros(const Scalar& T, const Scalar& step, unsigned digits) {
  unsigned d = effective(digits);
  if (!(T > 0)) throw Error(Errc::domain_error, "scan height must be positive");
  if (step > Scalar(0.25, d)) throw Error(Errc::domain_error, "scan step must be <= 0.25");

  ZeroList list;
  list.scan_height = T.at_digits(d);
  list.complete = !(step > Scalar(0.05, d));
  if (!list.complete) list.warnings.push_back("ScanStepTooCoarse");

  auto f = [&](const Scalar& x) { return reference(Complex(x), d).re; };

  Scalar x0(0L, d);
  Scalar f0 = f(x0);
  while (x0 < T) {
    Scalar x1 = min(x0 + step, T);
    Scalar f1 = f(x1);
    if ((f0 > 0) != (f1 > 0)) {
      // Bisection to width 1e-6.
      Scalar lo = x0, hi = x1, flo = f0;
      Scalar width_target = pow10(-6, d);
      while (hi - lo > width_target) {
        Scalar mid = (lo + hi) / 2;
        Scalar fm = f(mid);
        if ((flo > 0) != (fm > 0)) {
          hi = mid;
        } else {
          lo = mid;
          flo = fm;
        }
      }
      // Secant refinement to 1e-10.
      Scalar a = lo, b = hi, fa = f(a), fb = f(b);
      Scalar stop = pow10(-10, d);
      for (int it = 0; it < 60 && abs(b - a) > stop; ++it) {
        if ((fb - fa).is_zero()) break;
        Scalar c = b - fb * (b - a) / (fb - fa);
        if (c < lo || c > hi) c = (a + b) / 2;  // keep inside the bracket
        a = b; fa = fb;
        b = c; fb = f(c);
      }
      list.zeros.push_back(b.at_digits(d));
      list.brackets.push_back({lo.at_digits(d), hi.at_digits(d)});
      list.residuals.push_back(abs(fb).at_digits(d));
    }
    x0 = x1;
    f0 = f1;
  }
  return list;
}

ZeroList merge(const ZeroList& a, const ZeroList& b) {
  struct Entry {
    Scalar z;
    Bracket br;
    Scalar res;
  };
  std::vector<Entry> all;
  for (size_t i = 0; i < a.zeros.size(); ++i) all.push_back({a.zeros[i], a.brackets[i], a.residuals[i]});
  for (size_t i = 0; i < b.zeros.size(); ++i) all.push_back({b.zeros[i], b.brackets[i], b.residuals[i]});
  std::sort(all.begin(), all.end(), [](const Entry& x, const Entry& y) { return x.z < y.z; });

  ZeroList out;
  out.scan_height = max(a.scan_height, b.scan_height);
  out.complete = a.complete && b.complete;
  out.warnings = a.warnings;
  out.warnings.insert(out.warnings.end(), b.warnings.begin(), b.warnings.end());
  unsigned d = out.scan_height.digits();
  Scalar dedupe = pow10(-8, d);
  for (const Entry& e : all) {
    if (!out.zeros.empty() && abs(e.z - out.zeros.back()) < dedupe) {
      if (e.res < out.residuals.back()) {  // keep the better-refined copy
        out.zeros.back() = e.z;
        out.brackets.back() = e.br;
        out.residuals.back() = e.res;
      }
      continue;
    }
    out.zeros.push_back(e.z);
    out.brackets.push_back(e.br);
    out.residuals.push_back(e.res);
  }
  return out;
}

Complex product_reconstruct(const Complex& z, const ZeroList& zeros, unsigned digits) {
  unsigned d = effective(digits);
  unsigned dint = d + 10;
  Complex zz{z.re.at_digits(dint), z.im.at_digits(dint)};
  Complex z2 = zz * zz;
  Complex prod(xi0(dint));
  for (const Scalar& l : zeros.zeros) {
    Scalar l2 = l.at_digits(dint) * l.at_digits(dint);
    prod = prod * (Complex(1L, dint) - z2 / l2);
  }
  return {prod.re.at_digits(d), prod.im.at_digits(d)};
}

namespace {

// log of the smooth prefactor (1/2) s(s-1) pi^{-s/2} Gamma(s/2) relating
// log Xi and log zeta; principal branches, valid near the critical line.
Complex log_prefactor(const Complex& z, unsigned dint) {
  Complex zz{z.re.at_digits(dint), z.im.at_digits(dint)};
  Complex i(Scalar(0L, dint), Scalar(1L, dint));
  Complex s = i * zz + Complex(Scalar(0.5, dint));
  Complex half_s = s * Scalar(0.5, dint);
  return log(s * (s - Complex(1L, dint)) * Scalar(0.5, dint)) -
         half_s * log(Complex(pi(dint))) + log(gamma(half_s));
}

void check_distance_to_zeros(const Complex& z, const ZeroList& zeros, unsigned d) {
  Scalar guard = pow10(-6, d);
  for (const Scalar& l : zeros.zeros) {
    if (abs(z - Complex(l)) < guard || abs(z + Complex(l)) < guard)
      throw Error(Errc::near_zero_singularity, "z within 1e-6 of zero at " + l.str(12));
  }
}

}  // namespace

LoopObservables loop_observables(const Complex& z, const ZeroList& zeros, unsigned digits) {
  unsigned d = effective(digits);
  unsigned dint = d + 10;
  check_distance_to_zeros(z, zeros, d);

  auto w_of = [&](const Complex& x) -> Complex {
    Complex i(Scalar(0L, dint), Scalar(1L, dint));
    Complex s = i * Complex(x.re.at_digits(dint), x.im.at_digits(dint)) +
                Complex(Scalar(0.5, dint));
    return log(zeta(s));
  };

  LoopObservables out;
  Complex w = w_of(z);
  out.W = {w.re.at_digits(d), w.im.at_digits(d)};

  // Central difference with step 10^{-d/3}: rounding and truncation errors
  // balance near 10^{-2d/3}.
  long he = static_cast<long>(d) / 3;
  Scalar h = pow10(-he, dint);
  Complex dw = (w_of(z + Complex(h)) - w_of(z - Complex(h))) * (1 / (2 * h));
  out.R = {dw.re.at_digits(d), dw.im.at_digits(d)};
  return out;
}

Complex resolvent_zero_sum(const Complex& z, const ZeroList& zeros, unsigned digits) {
  unsigned d = effective(digits);
  unsigned dint = d + 10;
  check_distance_to_zeros(z, zeros, d);
  Complex zz{z.re.at_digits(dint), z.im.at_digits(dint)};
  Complex z2 = zz * zz;
  Complex acc(0L, dint);
  for (const Scalar& l : zeros.zeros) {
    Scalar l2 = l.at_digits(dint) * l.at_digits(dint);
    acc += (zz * Scalar(2L, dint)) / (z2 - Complex(l2));
  }
  // Compensate the truncated tail with the zero-counting density
  // dN ~ log(t/2pi)/(2pi) dt: sum_{lambda > T} 2z/(z^2 - lambda^2)
  // ~ -2z (log(T/2pi) + 1) / (2 pi T) for |z| well below T.
  Scalar T = zeros.scan_height.at_digits(dint);
  if (T > 0 && !zeros.zeros.empty()) {
    Scalar density_tail = (log(T / (2 * pi(dint))) + 1) / (2 * pi(dint) * T);
    acc += zz * (-2 * density_tail);
  }
  // Subtract the z-derivative of the smooth log-prefactor (central
  // differences; the prefactor is analytic away from the Gamma poles).
  long he = static_cast<long>(d) / 3;
  Scalar h = pow10(-he, dint);
  Complex dpre = (log_prefactor(z + Complex(h), dint) - log_prefactor(z - Complex(h), dint)) *
                 (1 / (2 * h));
  Complex r = acc - dpre;
  return {r.re.at_digits(d), r.im.at_digits(d)};
}

}  // namespace xim::xi
