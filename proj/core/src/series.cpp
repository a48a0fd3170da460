#include "xim/series.hpp"

#include "xim/errors.hpp"

namespace xim {

namespace {
void check_orders(const PowerSeries& a, const PowerSeries& b) {
  if (a.order() != b.order())
    throw Error(Errc::order_mismatch, "series orders " + std::to_string(a.order()) + " and " +
                                          std::to_string(b.order()) + " are incompatible");
}
}  // namespace

PowerSeries::PowerSeries(int order, unsigned digits) {
  if (order < 0 || order > kMaxOrder)
    throw Error(Errc::order_overflow, "order " + std::to_string(order) + " outside [0, " +
                                          std::to_string(kMaxOrder) + "]");
  coeffs_.assign(static_cast<size_t>(order) + 1, Complex(0L, digits));
}

PowerSeries PowerSeries::constant(const Complex& c, int order) {
  PowerSeries s(order, c.digits());
  s[0] = c;
  return s;
}

Complex PowerSeries::eval(const Complex& x) const {
  Complex acc = coeffs_.back();
  for (int k = order() - 1; k >= 0; --k) acc = acc * x + coeffs_[static_cast<size_t>(k)];
  return acc;
}

PowerSeries operator+(const PowerSeries& a, const PowerSeries& b) {
  check_orders(a, b);
  PowerSeries r(a.order());
  for (int k = 0; k <= a.order(); ++k) r[k] = a[k] + b[k];
  return r;
}

PowerSeries operator-(const PowerSeries& a, const PowerSeries& b) {
  check_orders(a, b);
  PowerSeries r(a.order());
  for (int k = 0; k <= a.order(); ++k) r[k] = a[k] - b[k];
  return r;
}

PowerSeries operator*(const PowerSeries& a, const PowerSeries& b) {
  check_orders(a, b);
  int n = a.order();
  PowerSeries r(n);
  for (int i = 0; i <= n; ++i) {
    if (a[i].is_zero()) continue;
    for (int j = 0; i + j <= n; ++j) r[i + j] += a[i] * b[j];
  }
  return r;
}

PowerSeries PowerSeries::operator*(const Complex& c) const {
  PowerSeries r(order());
  for (int k = 0; k <= order(); ++k) r[k] = coeffs_[static_cast<size_t>(k)] * c;
  return r;
}

PowerSeries PowerSeries::operator*(const Scalar& c) const { return *this * Complex(c); }

PowerSeries PowerSeries::operator-() const {
  PowerSeries r(order());
  for (int k = 0; k <= order(); ++k) r[k] = -coeffs_[static_cast<size_t>(k)];
  return r;
}

PowerSeries series_exp(const PowerSeries& a) {
  int n = a.order();
  PowerSeries e(n);
  // E' = (a - a0)' E with E(0) = 1, then scale by exp(a0).
  e[0] = Complex(1L, a[0].digits());
  for (int m = 1; m <= n; ++m) {
    Complex acc(0L, a[0].digits());
    for (int k = 1; k <= m; ++k) acc += a[k] * e[m - k] * Scalar(static_cast<long>(k));
    e[m] = acc / Scalar(static_cast<long>(m));
  }
  if (!a[0].is_zero()) {
    Complex scale = exp(a[0]);
    for (int k = 0; k <= n; ++k) e[k] = e[k] * scale;
  }
  return e;
}

PowerSeries series_log(const PowerSeries& a) {
  if (a[0].is_zero())
    throw Error(Errc::log_of_zero_constant_term, "series log requires nonzero constant term");
  int n = a.order();
  PowerSeries l(n);
  l[0] = log(a[0]);
  // n a_n = sum_{k=1}^{n} k L_k a_{n-k}
  for (int m = 1; m <= n; ++m) {
    Complex acc = a[m] * Scalar(static_cast<long>(m));
    for (int k = 1; k < m; ++k) acc -= l[k] * a[m - k] * Scalar(static_cast<long>(k));
    l[m] = acc / (a[0] * Scalar(static_cast<long>(m)));
  }
  return l;
}

PowerSeries series_compose(const PowerSeries& a, const PowerSeries& b) {
  check_orders(a, b);
  if (!b[0].is_zero())
    throw Error(Errc::compose_nonzero_constant_term,
                "series composition requires zero constant term in the inner series");
  int n = a.order();
  // Horner: r = a_n; r = r*b + a_k
  PowerSeries r = PowerSeries::constant(a[n], n);
  for (int k = n - 1; k >= 0; --k) {
    r = r * b;
    r[0] += a[k];
  }
  return r;
}

PowerSeries series_differentiate(const PowerSeries& a) {
  int n = a.order();
  PowerSeries r(n);
  for (int k = 1; k <= n; ++k) r[k - 1] = a[k] * Scalar(static_cast<long>(k));
  return r;
}

PowerSeries series_op(SeriesOp kind, const PowerSeries& a, const PowerSeries* b) {
  switch (kind) {
    case SeriesOp::add:
      if (!b) throw Error(Errc::order_mismatch, "add needs two operands");
      return a + *b;
    case SeriesOp::mul:
      if (!b) throw Error(Errc::order_mismatch, "mul needs two operands");
      return a * *b;
    case SeriesOp::exp: return series_exp(a);
    case SeriesOp::log: return series_log(a);
    case SeriesOp::compose:
      if (!b) throw Error(Errc::order_mismatch, "compose needs two operands");
      return series_compose(a, *b);
    case SeriesOp::differentiate: return series_differentiate(a);
  }
  throw Error(Errc::type_error, "unknown series op");
}

}  // namespace xim
