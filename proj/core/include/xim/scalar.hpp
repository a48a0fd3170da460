#pragma once

#include <mpfr.h>

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>

namespace xim {

/// Extended-precision real value. Wraps an mpfr_t and records the decimal
/// digit budget it was computed with. Arithmetic between operands of
/// different budgets promotes the result to the larger budget.
class Scalar {
 public:
  static constexpr unsigned kMinDigits = 30;

  static unsigned default_digits();
  static void set_default_digits(unsigned digits);
  static mpfr_prec_t bits_for(unsigned digits);

  Scalar();
  explicit Scalar(long v, unsigned digits = 0);
  explicit Scalar(int v, unsigned digits = 0) : Scalar(static_cast<long>(v), digits) {}
  explicit Scalar(double v, unsigned digits = 0);
  Scalar(const Scalar& o);
  Scalar(Scalar&& o) noexcept;
  Scalar& operator=(const Scalar& o);
  Scalar& operator=(Scalar&& o) noexcept;
  ~Scalar();

  /// Parse a decimal literal at the given digit budget (0 = default).
  static Scalar parse(std::string_view s, unsigned digits = 0);

  unsigned digits() const { return digits_; }
  /// Same numeric value carried at a different digit budget.
  Scalar at_digits(unsigned digits) const;

  mpfr_ptr raw() { return v_; }
  mpfr_srcptr raw() const { return v_; }

  double to_double() const;
  long to_long() const;
  std::string str(int significant = -1) const;  // -1: full budget

  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  bool is_negative() const { return mpfr_sgn(v_) < 0; }
  int sign() const { return mpfr_sgn(v_); }
  bool is_finite() const { return mpfr_number_p(v_) != 0; }

  Scalar operator-() const;

  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);
  Scalar& operator+=(long o) { return *this = *this + o; }
  Scalar& operator-=(long o) { return *this = *this - o; }
  Scalar& operator*=(long o) { return *this = *this * o; }
  Scalar& operator/=(long o) { return *this = *this / o; }

  friend Scalar operator+(const Scalar& a, const Scalar& b);
  friend Scalar operator-(const Scalar& a, const Scalar& b);
  friend Scalar operator*(const Scalar& a, const Scalar& b);
  friend Scalar operator/(const Scalar& a, const Scalar& b);

  friend Scalar operator+(const Scalar& a, long b);
  friend Scalar operator-(const Scalar& a, long b);
  friend Scalar operator*(const Scalar& a, long b);
  friend Scalar operator/(const Scalar& a, long b);
  friend Scalar operator+(long a, const Scalar& b);
  friend Scalar operator-(long a, const Scalar& b);
  friend Scalar operator*(long a, const Scalar& b);
  friend Scalar operator/(long a, const Scalar& b);

  friend bool operator==(const Scalar& a, const Scalar& b) { return mpfr_cmp(a.v_, b.v_) == 0; }
  friend bool operator!=(const Scalar& a, const Scalar& b) { return mpfr_cmp(a.v_, b.v_) != 0; }
  friend bool operator<(const Scalar& a, const Scalar& b) { return mpfr_cmp(a.v_, b.v_) < 0; }
  friend bool operator<=(const Scalar& a, const Scalar& b) { return mpfr_cmp(a.v_, b.v_) <= 0; }
  friend bool operator>(const Scalar& a, const Scalar& b) { return mpfr_cmp(a.v_, b.v_) > 0; }
  friend bool operator>=(const Scalar& a, const Scalar& b) { return mpfr_cmp(a.v_, b.v_) >= 0; }
  friend bool operator<(const Scalar& a, long b) { return mpfr_cmp_si(a.v_, b) < 0; }
  friend bool operator<=(const Scalar& a, long b) { return mpfr_cmp_si(a.v_, b) <= 0; }
  friend bool operator>(const Scalar& a, long b) { return mpfr_cmp_si(a.v_, b) > 0; }
  friend bool operator>=(const Scalar& a, long b) { return mpfr_cmp_si(a.v_, b) >= 0; }
  friend bool operator==(const Scalar& a, long b) { return mpfr_cmp_si(a.v_, b) == 0; }

  /// NaN-initialised value carried at the given budget; for use as an mpfr
  /// output operand.
  static Scalar make(unsigned digits);

 private:
  struct Uninit {};
  Scalar(Uninit, unsigned digits);

  mpfr_t v_;
  unsigned digits_;

  friend Scalar abs(const Scalar&);
  friend Scalar sqrt(const Scalar&);
  friend Scalar exp(const Scalar&);
  friend Scalar expm1(const Scalar&);
  friend Scalar log(const Scalar&);
  friend Scalar log1p(const Scalar&);
  friend Scalar sin(const Scalar&);
  friend Scalar cos(const Scalar&);
  friend Scalar tan(const Scalar&);
  friend Scalar atan(const Scalar&);
  friend Scalar atan2(const Scalar&, const Scalar&);
  friend Scalar sinh(const Scalar&);
  friend Scalar cosh(const Scalar&);
  friend Scalar tanh(const Scalar&);
  friend Scalar pow(const Scalar&, const Scalar&);
  friend Scalar pow(const Scalar&, long);
  friend Scalar floor(const Scalar&);
  friend Scalar ceil(const Scalar&);
  friend Scalar gamma(const Scalar&);
  friend Scalar min(const Scalar&, const Scalar&);
  friend Scalar max(const Scalar&, const Scalar&);
};

Scalar abs(const Scalar& x);
Scalar sqrt(const Scalar& x);
Scalar exp(const Scalar& x);
Scalar expm1(const Scalar& x);
Scalar log(const Scalar& x);
Scalar log1p(const Scalar& x);
Scalar sin(const Scalar& x);
Scalar cos(const Scalar& x);
Scalar tan(const Scalar& x);
Scalar atan(const Scalar& x);
Scalar atan2(const Scalar& y, const Scalar& x);
Scalar sinh(const Scalar& x);
Scalar cosh(const Scalar& x);
Scalar tanh(const Scalar& x);
Scalar pow(const Scalar& b, const Scalar& e);
Scalar pow(const Scalar& b, long e);
Scalar floor(const Scalar& x);
Scalar ceil(const Scalar& x);
Scalar gamma(const Scalar& x);  // real Gamma via mpfr
Scalar min(const Scalar& a, const Scalar& b);
Scalar max(const Scalar& a, const Scalar& b);

/// pi at the given digit budget (0 = default), cached per budget.
Scalar pi(unsigned digits = 0);
/// 10^-e at the given budget; convenience for tolerances.
Scalar pow10(long e, unsigned digits = 0);

/// Extended-precision complex value built from two Scalars.
struct Complex {
  Scalar re, im;

  Complex() = default;
  Complex(Scalar r, Scalar i) : re(std::move(r)), im(std::move(i)) {}
  explicit Complex(Scalar r) : re(std::move(r)), im(Scalar(0L, re.digits())) {}
  explicit Complex(long r, unsigned digits = 0) : re(r, digits), im(0L, digits) {}
  explicit Complex(double r, unsigned digits = 0) : re(r, digits), im(0L, digits) {}

  unsigned digits() const { return re.digits() > im.digits() ? re.digits() : im.digits(); }
  bool is_zero() const { return re.is_zero() && im.is_zero(); }

  Complex operator-() const { return {-re, -im}; }
  Complex conj() const { return {re, -im}; }

  Complex& operator+=(const Complex& o);
  Complex& operator-=(const Complex& o);
  Complex& operator*=(const Complex& o);
  Complex& operator/=(const Complex& o);

  friend Complex operator+(const Complex& a, const Complex& b) { return {a.re + b.re, a.im + b.im}; }
  friend Complex operator-(const Complex& a, const Complex& b) { return {a.re - b.re, a.im - b.im}; }
  friend Complex operator*(const Complex& a, const Complex& b);
  friend Complex operator/(const Complex& a, const Complex& b);
  friend Complex operator*(const Complex& a, const Scalar& b) { return {a.re * b, a.im * b}; }
  friend Complex operator*(const Scalar& b, const Complex& a) { return a * b; }
  friend Complex operator/(const Complex& a, const Scalar& b) { return {a.re / b, a.im / b}; }
  friend Complex operator+(const Complex& a, const Scalar& b) { return {a.re + b, a.im}; }
  friend Complex operator-(const Complex& a, const Scalar& b) { return {a.re - b, a.im}; }
  friend Complex operator-(const Scalar& a, const Complex& b) { return {a - b.re, -b.im}; }

  std::string str(int significant = -1) const;
};

Scalar abs(const Complex& z);
Scalar norm(const Complex& z);  // |z|^2
Scalar arg(const Complex& z);
Complex exp(const Complex& z);
Complex log(const Complex& z);  // principal branch
Complex sqrt(const Complex& z);
Complex pow(const Complex& b, long e);
Complex polar(const Scalar& r, const Scalar& theta);
/// e^{i t}
Complex cis(const Scalar& t);
Complex inv(const Complex& z);

}  // namespace xim
