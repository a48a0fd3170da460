#include "xim/airy.hpp"

#include <cmath>

#include "xim/errors.hpp"
#include "xim/quadrature.hpp"
#include "xim/special.hpp"
#include "xim/theta.hpp"

namespace xim::airy {

namespace {

unsigned effective(unsigned digits) { return digits ? digits : Scalar::default_digits(); }

// Maclaurin pair: Ai(z) = c1 f(z) - c2 g(z) with
//   f = sum 3^k (1/3)_k z^{3k}/(3k)!,  g = sum 3^k (2/3)_k z^{3k+1}/(3k+1)!
// The partial sums cancel like e^{(2/3)|z|^{3/2}} against results as small as
// e^{-(2/3)|z|^{3/2}}, so work with a boost of ~0.6 |z|^{3/2} digits.
Complex maclaurin(const Complex& z, unsigned d) {
  double az = abs(z).to_double();
  unsigned boost = static_cast<unsigned>(std::ceil(0.6 * std::pow(az, 1.5))) + 10;
  unsigned dint = d + boost;

  Complex zz{z.re.at_digits(dint), z.im.at_digits(dint)};
  Complex z3 = zz * zz * zz;
  Scalar third(1L, dint);
  third /= 3;

  Complex c1 = inv(Complex(pow(Scalar(3L, dint), 2 * third) * gamma(Complex(2 * third))));
  Complex c2 = inv(Complex(pow(Scalar(3L, dint), third) * gamma(Complex(third))));

  Scalar tiny = pow10(-static_cast<long>(dint) - 5, dint);
  Complex f(1L, dint), tf(1L, dint);
  Complex g = zz, tg = zz;
  for (long k = 1; k < 100000; ++k) {
    tf = tf * z3 * (1 / Scalar(3 * k * (3 * k - 1), dint));
    tg = tg * z3 * (1 / Scalar(3 * k * (3 * k + 1), dint));
    f += tf;
    g += tg;
    if (abs(tf) < tiny && abs(tg) < tiny) break;
  }
  Complex v = c1 * f - c2 * g;
  return {v.re.at_digits(d), v.im.at_digits(d)};
}

// Asymptotic coefficients u_k = u_{k-1} (6k-5)(6k-3)(6k-1) / (216 k (2k-1)).
Scalar u_next(const Scalar& u_prev, long k, unsigned dint) {
  return u_prev * Scalar((6 * k - 5) * (6 * k - 3) * (6 * k - 1), dint) /
         Scalar(216 * k * (2 * k - 1), dint);
}

// Exponential asymptotics for real z, |z| beyond the switchover radius.
Scalar asymptotic_real(const Scalar& x, unsigned d) {
  unsigned dint = d + 15;
  Scalar ax = abs(x).at_digits(dint);
  Scalar zeta = 2 * pow(ax, Scalar(1.5, dint)) / 3;
  Scalar root_pi = sqrt(pi(dint));
  Scalar x14 = pow(ax, Scalar(0.25, dint));

  if (x > 0) {
    // Ai(x) ~ e^{-zeta} / (2 sqrt(pi) x^{1/4}) sum (-1)^k u_k zeta^{-k}
    Scalar sum(1L, dint), u(1L, dint), best = sum;
    Scalar prev_mag(1L, dint);
    for (long k = 1; k < 1000; ++k) {
      u = u_next(u, k, dint);
      Scalar term = u / pow(zeta, Scalar(k, dint));
      if (term > prev_mag) break;  // divergent tail reached
      prev_mag = term;
      sum += (k % 2 ? -term : term);
      if (term < pow10(-static_cast<long>(dint), dint)) break;
    }
    return (exp(-zeta) / (2 * root_pi * x14) * sum).at_digits(d);
  }

  // Ai(-t) ~ (1/(sqrt(pi) t^{1/4})) [sin(zeta + pi/4) * S_even
  //                                  - cos(zeta + pi/4) * S_odd]
  // with S_even = sum (-1)^k u_{2k} zeta^{-2k},
  //      S_odd = sum (-1)^k u_{2k+1} zeta^{-2k-1}.
  Scalar se(1L, dint), so(0L, dint);
  Scalar u(1L, dint), prev_mag(1L, dint);
  for (long k = 1; k < 1000; ++k) {
    u = u_next(u, k, dint);
    Scalar term = u / pow(zeta, Scalar(k, dint));
    if (term > prev_mag) break;
    prev_mag = term;
    long pairs = k / 2;  // index within the even/odd subsum
    Scalar signed_term = (pairs % 2 ? -term : term);
    if (k % 2 == 0) se += signed_term; else so += signed_term;
    if (term < pow10(-static_cast<long>(dint), dint)) break;
  }
  Scalar phase = zeta + pi(dint) / 4;
  return ((sin(phase) * se - cos(phase) * so) / (root_pi * x14)).at_digits(d);
}

Complex reference(const Complex& z, unsigned d) {
  double az = abs(z).to_double();
  double switchover = std::pow(0.75 * (d + 10) * std::log(10.0), 2.0 / 3.0);
  if (az <= switchover) return maclaurin(z, d);
  if (z.im.is_zero()) return Complex(asymptotic_real(z.re, d));
  if (az <= 1.5 * switchover) return maclaurin(z, d);  // still affordable
  throw Error(Errc::route_domain_error,
              "reference route supports complex z only up to |z| ~ " +
                  std::to_string(1.5 * switchover));
}

Complex kontsevich(const Complex& z, unsigned d) {
  if (abs(z.im) > 1)
    throw Error(Errc::route_domain_error,
                "kontsevich route restricted to |Im z| <= 1, got " + z.im.str(6));
  unsigned dint = d + 10;
  KernelSpec k = theta::make_airy_kernel(dint);
  QuadOptions opt;
  opt.digits = dint;
  Scalar tol = pow10(-static_cast<long>(d) - 4, dint);
  QuadratureResult r = fourier_transform(k, z, tol, opt);
  Complex v = r.value * (1 / (2 * pi(dint)));
  if (z.im.is_zero()) return Complex(v.re.at_digits(d), Scalar(0L, d));
  return {v.re.at_digits(d), v.im.at_digits(d)};
}

}  // namespace

AiryValue airy_eval(const Complex& z, Route route, unsigned digits) {
  unsigned d = effective(digits);
  AiryValue out;
  out.z = z;
  out.route = route;
  out.value = (route == Route::reference) ? reference(z, d) : kontsevich(z, d);
  return out;
}

xi::ZeroList airy_zeros(int n, unsigned digits) {
  unsigned d = effective(digits);
  if (n < 0 || n > 20) throw Error(Errc::domain_error, "airy_zeros supports 1 <= n <= 20");

  xi::ZeroList list;
  list.complete = true;
  auto f = [&](const Scalar& x) { return reference(Complex(x), d).re; };

  Scalar step(0.05, d);
  Scalar x0(0L, d);
  Scalar f0 = f(x0);
  // The 20th zero sits near -20.54; scan down to -21 at most.
  Scalar floor_x(-21L, d);
  while (static_cast<int>(list.zeros.size()) < n && x0 > floor_x) {
    Scalar x1 = x0 - step;
    Scalar f1 = f(x1);
    if ((f0 > 0) != (f1 > 0)) {
      Scalar lo = x1, hi = x0, flo = f1;  // lo < hi on the negative axis
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
      Scalar a = lo, b = hi, fa = f(a), fb = f(b);
      Scalar stop = pow10(-10, d);
      for (int it = 0; it < 60 && abs(b - a) > stop; ++it) {
        if ((fb - fa).is_zero()) break;
        Scalar c = b - fb * (b - a) / (fb - fa);
        if (c < lo || c > hi) c = (a + b) / 2;
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
  list.scan_height = abs(x0).at_digits(d);
  return list;
}

Scalar ode_residual(const Complex& z, unsigned digits) {
  unsigned d = effective(digits);
  unsigned dint = d + 20;
  Complex zz{z.re.at_digits(dint), z.im.at_digits(dint)};
  Scalar h = pow10(-5, dint);
  auto ai = [&](const Complex& x) { return reference(x, dint).re; };
  // 5-point second derivative, truncation O(h^4).
  Scalar d2 = (-ai(zz - Complex(2 * h)) + 16 * ai(zz - Complex(h)) - 30 * ai(zz) +
               16 * ai(zz + Complex(h)) - ai(zz + Complex(2 * h))) / (12 * h * h);
  return abs(d2 - zz.re * ai(zz)).at_digits(d);
}

}  // namespace xim::airy
