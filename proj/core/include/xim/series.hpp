#pragma once

#include <vector>

#include "xim/scalar.hpp"

namespace xim {

/// Truncated formal power series with Complex coefficients. Index k holds the
/// coefficient of x^k; the truncation order is inclusive and never silently
/// exceeded.
class PowerSeries {
 public:
  static constexpr int kDefaultOrder = 64;
  static constexpr int kMaxOrder = 256;

  explicit PowerSeries(int order, unsigned digits = 0);
  static PowerSeries constant(const Complex& c, int order);

  int order() const { return static_cast<int>(coeffs_.size()) - 1; }
  const Complex& operator[](int k) const { return coeffs_[static_cast<size_t>(k)]; }
  Complex& operator[](int k) { return coeffs_[static_cast<size_t>(k)]; }
  const std::vector<Complex>& coeffs() const { return coeffs_; }

  Complex eval(const Complex& x) const;  // Horner

  friend PowerSeries operator+(const PowerSeries& a, const PowerSeries& b);
  friend PowerSeries operator-(const PowerSeries& a, const PowerSeries& b);
  friend PowerSeries operator*(const PowerSeries& a, const PowerSeries& b);
  PowerSeries operator*(const Complex& c) const;
  PowerSeries operator*(const Scalar& c) const;
  PowerSeries operator-() const;

 private:
  std::vector<Complex> coeffs_;
};

/// exp of a series (any constant term; the constant factor is exponentiated
/// separately).
PowerSeries series_exp(const PowerSeries& a);
/// log of a series; requires a nonzero constant term.
PowerSeries series_log(const PowerSeries& a);
/// a(b(x)); requires b to have zero constant term.
PowerSeries series_compose(const PowerSeries& a, const PowerSeries& b);
/// Formal derivative, order reduced by one... kept at the same order with a
/// zero top coefficient so orders stay compatible.
PowerSeries series_differentiate(const PowerSeries& a);

enum class SeriesOp { add, mul, exp, log, compose, differentiate };

/// Uniform dispatcher used by the CLI layer; b is ignored by unary kinds.
PowerSeries series_op(SeriesOp kind, const PowerSeries& a, const PowerSeries* b = nullptr);

}  // namespace xim
