#include "xim/pq.hpp"

#include <algorithm>
#include <cmath>

#include "xim/errors.hpp"
#include "xim/quadrature.hpp"
#include "xim/theta.hpp"
#include "xim/xi.hpp"

namespace xim::pq {

namespace {

unsigned effective(unsigned digits) { return digits ? digits : Scalar::default_digits(); }

Complex i_pow(long k, unsigned d) {
  long m = ((k % 4) + 4) % 4;
  switch (m) {
    case 0: return Complex(1L, d);
    case 1: return Complex(Scalar(0L, d), Scalar(1L, d));
    case 2: return Complex(-1L, d);
    default: return Complex(Scalar(0L, d), Scalar(-1L, d));
  }
}

PowerSeries log_kernel_series(int order, unsigned d, const KernelSpec* kernel) {
  PowerSeries base = kernel ? kernel->taylor(order) : theta::kernel_series(order, d);
  if (!kernel) return series_log(base);
  // Re-budget a foreign kernel's series to the requested digits.
  PowerSeries at_d(order, d);
  for (int k = 0; k <= order; ++k)
    at_d[k] = Complex(base[k].re.at_digits(d), base[k].im.at_digits(d));
  return series_log(at_d);
}

void check_admissible(int p, const PowerSeries& L) {
  if (p < 1 || p % 2 == 0)
    throw Error(Errc::domain_error, "p must be odd and >= 1 (p + 1 even), got " +
                                        std::to_string(p));
  if (!(L[p + 1].re < 0))
    throw Error(Errc::non_decaying_truncation,
                "coefficient of phi^" + std::to_string(p + 1) + " in the log kernel is " +
                    L[p + 1].re.str(6) + " >= 0; choose a different p");
}

// Decay window of the truncation: smallest W (in 0.25 steps) with
// Re T(W) below -(digits + 10) ln 10 - |Im z| W.
Scalar window_for(const PowerSeries& T, const Complex& z, unsigned dint) {
  Scalar target = -(Scalar(static_cast<long>(dint) + 10, dint) * log(Scalar(10L, dint)) + 5);
  for (Scalar w(1L, dint);; w += Scalar(0.25, dint)) {
    if (w > Scalar(40L, dint))
      throw Error(Errc::window_too_small, "truncated model does not decay within |phi| <= 40");
    Scalar t = T.eval(Complex(w)).re + abs(z.im) * w;
    if (t < target) return w;
  }
}

}  // namespace

PowerSeries truncated_log(int p, unsigned digits, const KernelSpec* kernel) {
  unsigned d = effective(digits);
  PowerSeries L = log_kernel_series(p + 1, d, kernel);
  check_admissible(p, L);
  return L;
}

CouplingSet extract_sk(int p, unsigned digits, const KernelSpec* kernel) {
  unsigned d = effective(digits);
  PowerSeries L = truncated_log(p, d, kernel);
  CouplingSet out;
  out.p = p;
  out.leading_coeff = L[p + 1].re;
  for (int k = 1; k <= p - 2; ++k) {
    out.s[k] = L[k + 1] * Scalar(static_cast<long>(k) + 1, d) * i_pow(-(k + 1), d);
    out.s_derivative[k] = L[k] * i_pow(-(k + 1), d);
  }
  return out;
}

Complex xi_p_eval(const Complex& z, int p, unsigned digits, const KernelSpec* kernel) {
  unsigned d = effective(digits);
  unsigned dint = d + 10;
  PowerSeries T = truncated_log(p, dint, kernel);
  Scalar w = window_for(T, z, dint);
  Complex zz{z.re.at_digits(dint), z.im.at_digits(dint)};
  Complex iz = Complex(Scalar(0L, dint), Scalar(1L, dint)) * zz;

  QuadOptions opt;
  opt.digits = dint;
  opt.osc_frequency = std::fabs(z.re.to_double()) + std::fabs(z.im.to_double());
  Scalar tol = pow10(-static_cast<long>(d) - 4, dint);
  // T is even, so fold to [0, W] with a complex cosine.
  auto f = [&](const Scalar& u) -> Complex {
    Complex osc = (exp(iz * u) + exp(-(iz * u))) * Scalar(0.5, dint);
    return exp(T.eval(Complex(u))) * osc;
  };
  QuadratureResult r = integrate_finite(f, Scalar(0L, dint), w, tol, opt);
  Scalar c = kernel ? Scalar(1L, dint) : xi::fourier_calibration(dint);
  Complex v = r.value * (2 * c);
  if (z.im.is_zero()) return Complex(v.re.at_digits(d), Scalar(0L, d));
  return {v.re.at_digits(d), v.im.at_digits(d)};
}

Scalar gen_airy_residual(const Complex& z, int p, unsigned digits, const KernelSpec* kernel,
                         int perturb_k, const Scalar& perturb) {
  unsigned d = effective(digits);
  unsigned dint = d + 10;
  PowerSeries T = truncated_log(p, dint, kernel);
  PowerSeries Tp = series_differentiate(T);
  if (perturb_k >= 0 && perturb_k <= Tp.order())
    Tp[perturb_k] = Tp[perturb_k] + Complex(perturb.at_digits(dint));

  Scalar w = window_for(T, z, dint);
  Complex zz{z.re.at_digits(dint), z.im.at_digits(dint)};
  Complex i(Scalar(0L, dint), Scalar(1L, dint));
  Complex iz = i * zz;

  QuadOptions opt;
  opt.digits = dint;
  opt.osc_frequency = std::fabs(z.re.to_double()) + std::fabs(z.im.to_double());
  Scalar tol = pow10(-static_cast<long>(d) - 4, dint);
  auto f = [&](const Scalar& u) -> Complex {
    Complex eT = exp(T.eval(Complex(u)) + iz * u);
    return (i * Tp.eval(Complex(u)) - zz) * eT;
  };
  QuadratureResult r = integrate_finite(f, -w, w, tol, opt);

  Complex at_w = exp(T.eval(Complex(w)) + iz * w);
  Complex at_mw = exp(T.eval(Complex(-w)) - iz * w);
  Complex boundary = i * (at_w - at_mw);
  return abs(r.value - boundary).at_digits(d);
}

PowerSeries limit_potential(const CouplingSet& couplings, int order, unsigned digits) {
  unsigned d = effective(digits);
  PowerSeries v(order, d);
  for (const auto& [k, sk] : couplings.s) {
    // V_k(y) = sum_{j=1}^{k} (y^j - 1)/j.
    for (int j = 1; j <= k; ++j) {
      Complex inc = sk * (1 / Scalar(static_cast<long>(j), d));
      if (j <= order) v[j] = v[j] + inc;
      v[0] = v[0] - inc;
    }
  }
  return v;
}

PowerSeries orth_poly(int n, const PowerSeries& potential) {
  if (n < 0 || n > 12) throw Error(Errc::domain_error, "orth_poly supports 0 <= n <= 12");
  unsigned d = potential[0].re.digits() ? potential[0].re.digits() : Scalar::default_digits();
  int work_order = std::max(n, potential.order());

  // Shift: V(y+1) via Horner in series arithmetic over y.
  PowerSeries shifted = PowerSeries::constant(potential[potential.order()], work_order);
  PowerSeries y_plus_1(work_order, d);
  y_plus_1[0] = Complex(1L, d);
  if (work_order >= 1) y_plus_1[1] = Complex(1L, d);
  for (int k = potential.order() - 1; k >= 0; --k) {
    shifted = shifted * y_plus_1;
    shifted[0] = shifted[0] + potential[k];
  }
  PowerSeries a = series_exp(-shifted);  // A(y) = exp(-V(y+1))

  // B_n(z) = n! sum_{m=0}^{n} A_{n-m} (2z)^m / m!.
  PowerSeries b(n, d);
  Scalar nfact(1L, d);
  for (long j = 2; j <= n; ++j) nfact *= j;
  Scalar mfact(1L, d);
  Scalar two_m(1L, d);
  for (int m = 0; m <= n; ++m) {
    if (m > 0) {
      mfact *= m;
      two_m *= 2L;
    }
    b[m] = a[n - m] * (nfact * two_m / mfact);
  }
  return b;
}

}  // namespace xim::pq
