#include "xim/theta.hpp"

#include <cmath>

#include "xim/errors.hpp"

namespace xim {

std::string KernelSpec::name() const {
  switch (id) {
    case Id::xi_derived: return "xi_derived";
    case Id::xi_paper_literal: return "xi_paper_literal";
    case Id::airy: return "airy";
    case Id::liouville: return "liouville";
    case Id::truncated_log: return "truncated_log(" + std::to_string(p) + ")";
    case Id::custom: return "custom";
  }
  return "?";
}

namespace theta {

namespace {

unsigned effective(unsigned digits) { return digits ? digits : Scalar::default_digits(); }

// One q-term of the requested variant at the given point.
Scalar term(Variant v, long q, const Scalar& point, const Scalar& p) {
  Scalar q2(q * q, point.digits());
  switch (v) {
    case Variant::f_of_ell: {
      const Scalar& l = point;
      return (p * p * q2 * q2 * l - Scalar(1.5, l.digits()) * p * q2) * sqrt(l) * exp(-p * q2 * l);
    }
    case Variant::phi_derived: {
      const Scalar& u = point;
      return (2 * p * p * q2 * q2 * exp(u * Scalar(4.5, u.digits())) -
              3 * p * q2 * exp(u * Scalar(2.5, u.digits()))) *
             exp(-p * q2 * exp(2 * u));
    }
    case Variant::phi_paper_literal: {
      const Scalar& phi = point;
      Scalar ex = exp(phi);
      return (p * p * q2 * q2 * ex * ex - Scalar(1.5, phi.digits()) * p * q2 * ex) *
             exp(-p * q2 * ex);
    }
  }
  return Scalar();
}

// Positive envelope of a q-term (prefactors added, not subtracted), used for
// the rigorous tail majorant.
Scalar term_envelope(Variant v, long q, const Scalar& point, const Scalar& p) {
  Scalar q2(q * q, point.digits());
  switch (v) {
    case Variant::f_of_ell: {
      const Scalar& l = point;
      return (p * p * q2 * q2 * l + Scalar(1.5, l.digits()) * p * q2) * sqrt(l) * exp(-p * q2 * l);
    }
    case Variant::phi_derived: {
      const Scalar& u = point;
      return (2 * p * p * q2 * q2 * exp(u * Scalar(4.5, u.digits())) +
              3 * p * q2 * exp(u * Scalar(2.5, u.digits()))) *
             exp(-p * q2 * exp(2 * u));
    }
    case Variant::phi_paper_literal: {
      const Scalar& phi = point;
      Scalar ex = exp(phi);
      return (p * p * q2 * q2 * ex * ex + Scalar(1.5, phi.digits()) * p * q2 * ex) *
             exp(-p * q2 * ex);
    }
  }
  return Scalar();
}

// Decay argument of the exponential for the variant: e^{-pi q^2 * decay_arg}.
double decay_arg(Variant v, double region_min) {
  switch (v) {
    case Variant::f_of_ell: return region_min;                 // l itself
    case Variant::phi_derived: return std::exp(2 * region_min);
    case Variant::phi_paper_literal: return std::exp(region_min);
  }
  return 1.0;
}

// Extra working digits needed to absorb the theta-modularity cancellation of
// the derived kernel at negative u: the summands are O(1) there while the sum
// is O(e^{-pi e^{2|u|}}), so direct summation loses ~pi e^{2|u|}/ln 10 digits.
unsigned cancel_digits(Variant v, double point) {
  if (v != Variant::phi_derived || point >= 0) return 0;
  double a = -point;
  return static_cast<unsigned>(
      std::ceil((M_PI * std::exp(2 * a) + 4.5 * a) / std::log(10.0))) + 6;
}

}  // namespace

ThetaTailBudget make_budget(Variant v, const Scalar& region_min, unsigned digits,
                            int margin_digits) {
  unsigned d = effective(digits);
  double rm = region_min.to_double();
  double arg = decay_arg(v, rm);
  if (v == Variant::f_of_ell && region_min < 1)
    throw Error(Errc::domain_error, "f_of_ell requires l >= 1");
  double target = (d + margin_digits + cancel_digits(v, rm)) * std::log(10.0) + 20.0;
  long k = static_cast<long>(std::ceil(std::sqrt(target / (M_PI * arg))));
  if (k < 3) k = 3;

  unsigned dint = d + 10;
  ThetaTailBudget b;
  b.K = static_cast<int>(k);
  // Each omitted term is dominated by the (K+1)-st envelope term times a
  // geometric series with ratio e^{-pi (2K+2) arg} * 16 < 1/2.
  Scalar p = pi(dint);
  b.tail_bound = 2 * term_envelope(v, k + 1, region_min.at_digits(dint), p);
  return b;
}

ThetaTailBudget make_series_budget(int order, unsigned digits, int margin_digits) {
  unsigned d = effective(digits);
  // The order-n Taylor coefficient of a q-term is bounded by
  // (2 pi q^2)^n e^{-pi q^2} / n!; grow K until that is negligible.
  double target = -(static_cast<double>(d) + margin_digits) * std::log(10.0);
  double lfact = std::lgamma(order + 1.0);
  long k = 3;
  while (true) {
    double q2 = static_cast<double>(k) * k;
    double bound = order * std::log(2 * M_PI * q2) - M_PI * q2 - lfact;
    if (bound < target) break;
    ++k;
  }
  ThetaTailBudget b;
  b.K = static_cast<int>(k);
  b.tail_bound = pow10(-static_cast<long>(d) - margin_digits, d);
  return b;
}

Scalar kernel_eval(Variant v, const Scalar& point, const ThetaTailBudget& budget) {
  if (v == Variant::f_of_ell && point < 1)
    throw Error(Errc::domain_error, "f_of_ell requires l >= 1, got " + point.str(8));
  unsigned d = point.digits() ? point.digits() : Scalar::default_digits();
  unsigned dint = d + 10 + cancel_digits(v, point.to_double());
  if (budget.K < 1) throw Error(Errc::tail_budget_too_loose, "budget has no retained terms");
  Scalar p = pi(dint);
  Scalar x = point.at_digits(dint);
  Scalar acc(0L, dint);
  for (long q = 1; q <= budget.K; ++q) acc += term(v, q, x, p);
  return acc.at_digits(d);
}

PowerSeries kernel_series(int order, unsigned digits) {
  unsigned d = effective(digits);
  if (order > PowerSeries::kMaxOrder)
    throw Error(Errc::order_overflow, "kernel series order " + std::to_string(order));
  ThetaTailBudget budget = make_series_budget(order, d);
  // Intermediate exp-series terms peak near e^{order/2} for the worst q.
  unsigned dint = d + static_cast<unsigned>(std::ceil(0.22 * order)) + 15;

  Scalar p = pi(dint);
  // Series of e^{c u} to the requested order.
  auto exp_series = [&](const Scalar& c) {
    PowerSeries s(order, dint);
    Complex t(Scalar(1L, dint));
    s[0] = t;
    for (int k = 1; k <= order; ++k) {
      t = t * Complex(c / Scalar(static_cast<long>(k), dint));
      s[k] = t;
    }
    return s;
  };
  PowerSeries e2 = exp_series(Scalar(2L, dint));
  PowerSeries e92 = exp_series(Scalar(4.5, dint));
  PowerSeries e52 = exp_series(Scalar(2.5, dint));

  PowerSeries acc(order, dint);
  for (long q = 1; q <= budget.K; ++q) {
    Scalar q2(q * q, dint);
    // exp(-pi q^2 e^{2u}) = e^{-pi q^2} exp(-pi q^2 (e^{2u} - 1))
    PowerSeries arg = e2 * Complex(-p * q2);
    Complex c0 = arg[0];
    arg[0] = Complex(0L, dint);
    PowerSeries gauss = series_exp(arg) * exp(c0);
    PowerSeries pre = e92 * Complex(2 * p * p * q2 * q2) - e52 * Complex(3 * p * q2);
    acc = acc + pre * gauss;
  }

  PowerSeries out(order, d);
  for (int k = 0; k <= order; ++k)
    out[k] = Complex(acc[k].re.at_digits(d), acc[k].im.at_digits(d));
  return out;
}

KernelSpec make_xi_kernel(unsigned digits) {
  unsigned d = effective(digits);
  KernelSpec k;
  k.id = KernelSpec::Id::xi_derived;
  k.even = true;
  k.contour = KernelSpec::Contour::real_line;
  k.eval = [d](const Scalar& u) -> Complex {
    unsigned dd = u.digits() > d ? u.digits() : d;
    ThetaTailBudget b = make_budget(Variant::phi_derived, u, dd);
    return Complex(kernel_eval(Variant::phi_derived, u.at_digits(dd), b));
  };
  k.decay_bound = [d](const Scalar& r) -> Scalar {
    // sum_q (2 pi^2 q^4 + 3 pi q^2) e^{-pi (q^2 - 1)} < 40 for the q >= 2 tail,
    // so 40 e^{9R/2} e^{-pi e^{2R}} dominates |Phi| for R >= 0.
    Scalar rr = max(r, Scalar(0L, d));
    return Scalar(40L, d) * exp(Scalar(4.5, d) * rr - pi(d) * exp(2 * rr));
  };
  k.taylor = [d](int order) { return kernel_series(order, d); };
  return k;
}

KernelSpec make_xi_paper_literal_kernel(unsigned digits) {
  unsigned d = effective(digits);
  KernelSpec k;
  k.id = KernelSpec::Id::xi_paper_literal;
  k.even = false;  // the printed kernel is not even in phi
  k.contour = KernelSpec::Contour::real_line;
  k.eval = [d](const Scalar& phi) -> Complex {
    unsigned dd = phi.digits() > d ? phi.digits() : d;
    ThetaTailBudget b = make_budget(Variant::phi_paper_literal, phi, dd);
    return Complex(kernel_eval(Variant::phi_paper_literal, phi.at_digits(dd), b));
  };
  // No two-sided decay bound: the printed kernel loses its double-exponential
  // falloff toward phi -> -infinity, so windowed Fourier use is not offered.
  return k;
}

KernelSpec make_airy_kernel(unsigned digits) {
  unsigned d = effective(digits);
  KernelSpec k;
  k.id = KernelSpec::Id::airy;
  k.even = false;
  k.contour = KernelSpec::Contour::airy_rays;
  auto eval = [d](const Complex& phi) -> Complex {
    unsigned dd = phi.digits() > d ? phi.digits() : d;
    Complex i(Scalar(0L, dd), Scalar(1L, dd));
    Complex p3 = pow(phi, 3);
    return exp(i * p3 / Scalar(3L, dd));
  };
  k.eval_complex = eval;
  k.eval = [eval](const Scalar& x) { return eval(Complex(x)); };
  k.taylor = [d](int order) {
    PowerSeries arg(order, d);
    if (order >= 3) arg[3] = Complex(Scalar(0L, d), Scalar(1L, d) / 3);
    return series_exp(arg);
  };
  return k;
}

KernelSpec make_liouville_kernel(unsigned digits) {
  unsigned d = effective(digits);
  KernelSpec k;
  k.id = KernelSpec::Id::liouville;
  k.even = false;
  k.contour = KernelSpec::Contour::real_line;
  k.eval = [d](const Scalar& phi) -> Complex {
    unsigned dd = phi.digits() > d ? phi.digits() : d;
    return Complex(exp(-exp(phi.at_digits(dd))));
  };
  // Decays only toward +infinity; Fourier use goes through the t = e^phi
  // substitution in the reciprocal-factorial module instead.
  return k;
}

KernelSpec make_gaussian_kernel(unsigned digits) {
  unsigned d = effective(digits);
  KernelSpec k;
  k.id = KernelSpec::Id::custom;
  k.even = true;
  k.contour = KernelSpec::Contour::real_line;
  k.eval = [d](const Scalar& x) -> Complex {
    unsigned dd = x.digits() > d ? x.digits() : d;
    Scalar xx = x.at_digits(dd);
    return Complex(exp(-xx * xx));
  };
  k.eval_complex = [d](const Complex& z) -> Complex { return exp(-(z * z)); };
  k.decay_bound = [d](const Scalar& r) -> Scalar {
    Scalar rr = max(r, Scalar(0L, d));
    return exp(-rr * rr);
  };
  k.taylor = [d](int order) {
    PowerSeries arg(order, d);
    if (order >= 2) arg[2] = Complex(Scalar(-1L, d));
    return series_exp(arg);
  };
  return k;
}

}  // namespace theta
}  // namespace xim
