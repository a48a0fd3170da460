#include "xim/quadrature.hpp"

#include <cmath>
#include <vector>

#include "xim/errors.hpp"

namespace xim {

namespace {

unsigned effective(unsigned digits) { return digits ? digits : Scalar::default_digits(); }

// One node of a transformed trapezoid rule: abscissa and weight.
struct Node {
  Scalar x;
  Scalar w;
};

// t -> node mapping for the three double-exponential transforms.
class Transform {
 public:
  enum class Kind { tanh_sinh, exp_sinh, sinh_sinh };

  Transform(Kind kind, Scalar a, Scalar b, unsigned dint)
      : kind_(kind), a_(std::move(a)), b_(std::move(b)), dint_(dint),
        half_pi_(pi(dint) / 2) {
    if (kind_ == Kind::tanh_sinh) {
      center_ = (a_ + b_) / 2;
      halfwidth_ = (b_ - a_) / 2;
    }
  }

  Node at(const Scalar& t) const {
    Scalar u = half_pi_ * sinh(t);
    switch (kind_) {
      case Kind::tanh_sinh: {
        Scalar sech = 1 / cosh(u);
        // Form the abscissa as endpoint + distance so nodes never collapse
        // onto a or b: 1 -+ tanh(u) = 2 e^{-+2u} / (1 + e^{-+2u}).
        Scalar e2 = exp(-2 * abs(u));
        Scalar dist = halfwidth_ * 2 * e2 / (1 + e2);
        Scalar x = (t < 0) ? a_ + dist : b_ - dist;
        return {x, halfwidth_ * half_pi_ * cosh(t) * sech * sech};
      }
      case Kind::exp_sinh: {
        Scalar ex = exp(u);
        return {a_ + ex, half_pi_ * cosh(t) * ex};
      }
      case Kind::sinh_sinh:
        return {sinh(u), half_pi_ * cosh(t) * cosh(u)};
    }
    return {Scalar(0L, dint_), Scalar(0L, dint_)};
  }

  // dx/dt at t = 0; sets the node spacing near the center of the domain.
  double center_scale() const {
    switch (kind_) {
      case Kind::tanh_sinh: return std::fabs(halfwidth_.to_double()) * M_PI / 2;
      case Kind::exp_sinh: return M_PI / 2;
      case Kind::sinh_sinh: return M_PI / 2;
    }
    return 1.0;
  }

  // |t| beyond which no node can still contribute. Sized for integrable
  // endpoint singularities as strong as dist^{-1/2}, where the product of
  // weight and integrand decays like e^{-u} rather than e^{-2u}.
  double t_cap() const {
    double target = 2.0 * (dint_ + 12) * std::log(10.0);
    if (kind_ == Kind::tanh_sinh) return std::asinh(target / M_PI) + 1.0;
    return 6.5;  // exp/sinh-sinh rely on the integrand's own decay
  }

 private:
  Kind kind_;
  Scalar a_, b_;
  unsigned dint_;
  Scalar half_pi_;
  Scalar center_, halfwidth_;
};

QuadratureResult run(const Transform& map, const Integrand& f, const Scalar& tol,
                     const QuadOptions& opt) {
  unsigned d = effective(opt.digits);
  unsigned dint = d + 10;
  double t_cap = map.t_cap();
  Scalar floor_mag = pow10(-static_cast<long>(dint) - 8, dint);

  std::size_t nodes = 0;
  auto eval_at = [&](double td) -> Complex {
    Scalar t(td, dint);
    Node n = map.at(t);
    ++nodes;
    Complex fx;
    try {
      fx = f(n.x);
    } catch (const Error&) {
      throw;
    } catch (const std::exception& e) {
      throw Error(Errc::integrand_evaluation_failure,
                  std::string("integrand failed at x = ") + n.x.str(8) + ": " + e.what());
    }
    if (!(fx.re.is_finite() && fx.im.is_finite()))
      throw Error(Errc::integrand_evaluation_failure, "non-finite integrand at x = " + n.x.str(8));
    return fx * n.w;
  };

  int level0 = opt.min_level;
  if (opt.osc_frequency > 0) {
    // >= 8 nodes per oscillation period across the center of the domain.
    double need_h = (M_PI / 4.0) / (opt.osc_frequency * map.center_scale());
    while (std::ldexp(1.0, -level0) > need_h && level0 < opt.max_level) ++level0;
  }

  double h0 = std::ldexp(1.0, -level0);
  // Level 0: all multiples of h0 within the cap.
  Complex sum = eval_at(0.0);
  for (int sgn : {-1, 1}) {
    int misses = 0;
    for (long k = 1;; ++k) {
      double t = sgn * k * h0;
      if (std::fabs(t) > t_cap) break;
      Complex v = eval_at(t);
      Scalar mag = abs(v);
      sum += v;
      if (mag < floor_mag) {
        if (++misses >= 4 && std::fabs(t) > 2.0) break;
      } else {
        misses = 0;
      }
    }
  }

  Complex integral = sum * Scalar(h0, dint);
  Scalar err_prev(0L, dint);
  Scalar err(1L, dint);
  bool have_prev = false;

  for (int level = level0 + 1; level <= opt.max_level + level0; ++level) {
    double h = std::ldexp(1.0, -level);
    Complex add(0L, dint);
    for (int sgn : {-1, 1}) {
      int misses = 0;
      for (long k = 1;; k += 2) {  // odd multiples only
        double t = sgn * k * h;
        if (std::fabs(t) > t_cap) break;
        Complex v = eval_at(t);
        Scalar mag = abs(v);
        add += v;
        if (mag < floor_mag) {
          if (++misses >= 4 && std::fabs(t) > 2.0) break;
        } else {
          misses = 0;
        }
      }
    }
    Complex next = (sum + add) * Scalar(h, dint);
    sum += add;
    Scalar diff = abs(next - integral);
    integral = next;

    // Richardson-style estimate: the DE rule roughly squares its accuracy per
    // level, so project the next difference from the last two.
    Scalar estimate = diff;
    if (have_prev && err_prev > 0 && diff < err_prev) {
      Scalar proj = diff * diff / err_prev;
      estimate = max(proj, diff * pow10(-static_cast<long>(d), dint));
    }
    err_prev = diff;
    have_prev = true;
    err = estimate;

    if (estimate <= tol || diff.is_zero()) {
      return {{integral.re.at_digits(d), integral.im.at_digits(d)},
              estimate.at_digits(d), nodes, true};
    }
  }

  QuadratureResult best{{integral.re.at_digits(d), integral.im.at_digits(d)},
                        err.at_digits(d), nodes, false};
  if (!opt.allow_nonconverged)
    throw NonConvergence(best.value, best.error_estimate,
                         "quadrature stalled at estimate " + best.error_estimate.str(6));
  return best;
}

}  // namespace

QuadratureResult integrate_finite(const Integrand& f, const Scalar& a, const Scalar& b,
                                  const Scalar& tol, const QuadOptions& opt) {
  unsigned dint = effective(opt.digits) + 10;
  return run(Transform(Transform::Kind::tanh_sinh, a.at_digits(dint), b.at_digits(dint), dint), f,
             tol, opt);
}

QuadratureResult integrate_half_line(const Integrand& f, const Scalar& a, const Scalar& tol,
                                     const QuadOptions& opt) {
  unsigned dint = effective(opt.digits) + 10;
  return run(Transform(Transform::Kind::exp_sinh, a.at_digits(dint), Scalar(0L, dint), dint), f,
             tol, opt);
}

QuadratureResult integrate_real_line(const Integrand& f, const Scalar& tol,
                                     const QuadOptions& opt) {
  unsigned dint = effective(opt.digits) + 10;
  return run(Transform(Transform::Kind::sinh_sinh, Scalar(0L, dint), Scalar(0L, dint), dint), f,
             tol, opt);
}

Scalar fourier_window(const KernelSpec& kernel, const Complex& z, const Scalar& tol,
                      const Scalar& w_max) {
  if (!kernel.decay_bound)
    throw Error(Errc::window_too_small, "kernel " + kernel.name() + " has no decay bound");
  unsigned d = tol.digits();
  Scalar growth = abs(z.im);
  for (Scalar w(1L, d);; w += Scalar(0.25, d)) {
    if (w > w_max)
      throw Error(Errc::window_too_small,
                  "decay bound cannot meet tol " + tol.str(4) + " within window " + w_max.str(4));
    Scalar bound = kernel.decay_bound(w) * exp(growth * w) * (2 * w + 1);
    if (bound * 4 <= tol) return w;
  }
}

QuadratureResult fourier_transform(const KernelSpec& kernel, const Complex& z, const Scalar& tol,
                                   const QuadOptions& opt) {
  unsigned d = effective(opt.digits);
  unsigned dint = d + 10;
  QuadOptions o = opt;
  o.digits = d;
  o.osc_frequency = std::fabs(z.re.to_double()) + std::fabs(z.im.to_double());

  if (kernel.contour == KernelSpec::Contour::airy_rays) {
    if (!kernel.eval_complex)
      throw Error(Errc::contour_divergence, "airy_rays contour needs eval_complex");
    Complex ray1 = cis(pi(dint) / 6);
    Complex ray2 = cis(5 * pi(dint) / 6);
    Complex zi = {z.re.at_digits(dint), z.im.at_digits(dint)};
    Complex i_z1 = Complex(Scalar(0L, dint), Scalar(1L, dint)) * zi * ray1;
    Complex i_z2 = Complex(Scalar(0L, dint), Scalar(1L, dint)) * zi * ray2;
    auto f = [&](const Scalar& t) -> Complex {
      Complex t1 = ray1 * Scalar(t), t2 = ray2 * Scalar(t);
      return ray1 * kernel.eval_complex(t1) * exp(i_z1 * Scalar(t)) -
             ray2 * kernel.eval_complex(t2) * exp(i_z2 * Scalar(t));
    };
    return integrate_half_line(f, Scalar(0L, dint), tol, o);
  }

  Scalar w_cap(30L, dint);
  Scalar w = fourier_window(kernel, z, tol.at_digits(dint), w_cap);

  Complex zi = {z.re.at_digits(dint), z.im.at_digits(dint)};
  Complex iz = Complex(Scalar(0L, dint), Scalar(1L, dint)) * zi;

  if (kernel.even) {
    // Fold to [0, W]: the transform equals 2 int_0^W g(u) cos(zu) du, which
    // also sidesteps the kernel's negative-u cancellation regime.
    bool real_z = z.im.is_zero();
    auto f = [&](const Scalar& u) -> Complex {
      Complex osc = (exp(iz * Scalar(u)) + exp(-(iz * Scalar(u)))) * Scalar(0.5, dint);
      return kernel.eval(u) * osc;
    };
    QuadratureResult r = integrate_finite(f, Scalar(0L, dint), w, tol / 2, o);
    r.value = Complex((r.value.re * 2).at_digits(d),
                      real_z ? Scalar(0L, d) : (r.value.im * 2).at_digits(d));
    r.error_estimate = (r.error_estimate * 2).at_digits(d);
    return r;
  }

  auto f = [&](const Scalar& u) -> Complex { return kernel.eval(u) * exp(iz * Scalar(u)); };
  return integrate_finite(f, -w, w, tol, o);
}

}  // namespace xim
