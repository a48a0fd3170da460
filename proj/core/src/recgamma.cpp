#include "xim/recgamma.hpp"

#include <cmath>

#include "xim/errors.hpp"
#include "xim/quadrature.hpp"
#include "xim/special.hpp"

namespace xim::recgamma {

namespace {

unsigned effective(unsigned digits) { return digits ? digits : Scalar::default_digits(); }

/// Tail sum_{n >= a} n^{-k} for integer k >= 2 by Euler-Maclaurin:
/// a^{1-k}/(k-1) + a^{-k}/2 + sum_j B_{2j}/(2j)! (k)_{2j-1} a^{-k-2j+1}.
Scalar hurwitz_tail(long k, long a, unsigned d) {
  Scalar sa(a, d);
  Scalar inv_a = 1 / sa;
  Scalar a_pow = pow(inv_a, k - 1);  // a^{1-k}
  Scalar acc = a_pow / (k - 1) + a_pow * inv_a / 2;
  Scalar cutoff = pow10(-static_cast<long>(d) - 10, d);
  Scalar rising(1L, d);  // (k)(k+1)...(k+2j-2), built incrementally
  Scalar fact(1L, d);    // (2j)!
  Scalar a_shift = a_pow;  // a^{-k-2j+1} tracker, starts at a^{1-k}
  for (int j = 1; j <= 15; ++j) {
    rising *= (j == 1) ? Scalar(k, d) : Scalar(k + 2 * j - 3, d) * Scalar(k + 2 * j - 2, d);
    fact *= (2 * j) * (2 * j - 1);
    a_shift = a_shift * inv_a * inv_a;
    Scalar term = bernoulli2k(j, d) / fact * rising * a_shift;
    acc += term;
    if (abs(term) < cutoff) break;
  }
  return acc;
}

RecFactValue product_route(const Complex& z, long n_terms, unsigned d) {
  unsigned dint = d + 10;
  Complex zz{z.re.at_digits(dint), z.im.at_digits(dint)};

  Complex prod(1L, dint);
  Scalar harmonic(0L, dint);
  for (long n = 1; n <= n_terms; ++n) {
    prod *= Complex(Scalar(1L, dint), Scalar(0L, dint)) + zz / Scalar(n, dint);
    harmonic += 1 / Scalar(n, dint);
  }

  // Tail of the log-product: sum_{k>=2} (-1)^{k+1} z^k zeta(k, N+1) / k.
  Complex tail(0L, dint);
  Scalar az = abs(zz);
  Scalar ratio = az / Scalar(n_terms + 1, dint);
  Scalar cutoff = pow10(-static_cast<long>(dint) - 5, dint);
  Scalar bound = Scalar(1L, dint);
  Complex z_pow = zz;
  long k = 1;
  while (true) {
    ++k;
    z_pow *= zz;
    Scalar zt = hurwitz_tail(k, n_terms + 1, dint);
    Complex term = z_pow * (zt / Scalar(k, dint));
    if (k % 2 == 0) term = -term;
    tail += term;
    bound = abs(term) * ratio / (1 - ratio);
    if (abs(term) < cutoff || k > 200) break;
  }

  Scalar g = euler_gamma(dint);
  Complex log_smooth = zz * (g - harmonic) + tail;
  Complex v = prod * exp(log_smooth);

  RecFactValue out;
  out.z = z;
  out.route = Route::product;
  out.terms = n_terms;
  out.tail_bound = bound.at_digits(d);
  if (prod.is_zero()) {
    out.value = Complex(0L, d);  // exact zero from a vanishing factor
  } else if (z.im.is_zero()) {
    out.value = Complex(v.re.at_digits(d), Scalar(0L, d));
  } else {
    out.value = Complex(v.re.at_digits(d), v.im.at_digits(d));
  }
  return out;
}

RecFactValue reference_route(const Complex& z, unsigned d) {
  unsigned dint = d + 10;
  RecFactValue out;
  out.z = z;
  out.route = Route::reference;
  out.terms = 0;
  out.tail_bound = Scalar(0L, d);
  // 1/Gamma is entire with zeros exactly at z+1 = 0, -1, -2, ...
  if (z.im.is_zero()) {
    Scalar r = z.re;
    if (r < 0 && abs(r - floor(r + Scalar(0.5, dint))) .is_zero()) {
      out.value = Complex(0L, d);
      return out;
    }
  }
  Complex g = gamma(Complex(z.re.at_digits(dint), z.im.at_digits(dint)) + Scalar(1L, dint));
  Complex v = inv(g);
  if (z.im.is_zero()) {
    out.value = Complex(v.re.at_digits(d), Scalar(0L, d));
  } else {
    out.value = Complex(v.re.at_digits(d), v.im.at_digits(d));
  }
  return out;
}

}  // namespace

RecFactValue recfact_eval(const Complex& z, Route route, long terms, unsigned digits) {
  unsigned d = effective(digits);
  if (route == Route::reference) return reference_route(z, d);
  if (terms < 100)
    throw Error(Errc::domain_error, "product route needs at least 100 terms, got " +
                                        std::to_string(terms));
  return product_route(z, terms, d);
}

LiouvilleValue liouville_fourier(const Complex& z, unsigned digits) {
  unsigned d = effective(digits);
  unsigned dint = d + 10;
  if (z.is_zero())
    throw Error(Errc::pole_at_zero, "the transform equals Gamma(iz), which has a pole at z = 0");
  if (z.im > 0)
    throw Error(Errc::domain_error, "transform requires Im z <= 0 for absolute convergence");

  Complex zz{z.re.at_digits(dint), z.im.at_digits(dint)};
  Complex iz = Complex(Scalar(0L, dint), Scalar(1L, dint)) * zz;

  // Shifted integral: Gamma(iz+1) = int e^{iz phi} e^{phi - e^phi} dphi,
  // absolutely convergent on the whole line for Im z <= 0.
  QuadOptions opt;
  opt.digits = dint;
  opt.osc_frequency = std::fabs(z.re.to_double());
  Scalar tol = pow10(-static_cast<long>(d) - 4, dint);
  auto f = [&](const Scalar& phi) -> Complex {
    return exp(iz * phi + Complex(phi - exp(phi)));
  };
  QuadratureResult r = integrate_real_line(f, tol, opt);

  LiouvilleValue out;
  out.z = z;
  Complex v = r.value / iz;
  Complex ref = gamma(iz + Scalar(1L, dint)) / iz;
  out.value = Complex(v.re.at_digits(d), v.im.at_digits(d));
  out.reference = Complex(ref.re.at_digits(d), ref.im.at_digits(d));
  out.gap = abs(out.value - out.reference).at_digits(d);
  return out;
}

}  // namespace xim::recgamma
