#include "xim/scalar.hpp"

#include <atomic>
#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>
#include <vector>

namespace xim {

namespace {
std::atomic<unsigned> g_default_digits{50};

unsigned effective(unsigned digits) {
  unsigned d = digits ? digits : g_default_digits.load(std::memory_order_relaxed);
  return d < Scalar::kMinDigits ? Scalar::kMinDigits : d;
}
}  // namespace

unsigned Scalar::default_digits() { return g_default_digits.load(std::memory_order_relaxed); }

void Scalar::set_default_digits(unsigned digits) {
  g_default_digits.store(digits < kMinDigits ? kMinDigits : digits, std::memory_order_relaxed);
}

mpfr_prec_t Scalar::bits_for(unsigned digits) {
  return static_cast<mpfr_prec_t>(std::ceil(digits * 3.3219280948873626)) + 16;
}

Scalar::Scalar(Uninit, unsigned digits) : digits_(effective(digits)) {
  mpfr_init2(v_, bits_for(digits_));
}

Scalar Scalar::make(unsigned digits) { return Scalar(Uninit{}, digits); }

Scalar::Scalar() : Scalar(Uninit{}, 0) { mpfr_set_zero(v_, 1); }

Scalar::Scalar(long v, unsigned digits) : Scalar(Uninit{}, digits) { mpfr_set_si(v_, v, MPFR_RNDN); }

Scalar::Scalar(double v, unsigned digits) : Scalar(Uninit{}, digits) { mpfr_set_d(v_, v, MPFR_RNDN); }

Scalar::Scalar(const Scalar& o) : digits_(o.digits_) {
  mpfr_init2(v_, mpfr_get_prec(o.v_));
  mpfr_set(v_, o.v_, MPFR_RNDN);
}

Scalar::Scalar(Scalar&& o) noexcept : digits_(o.digits_) {
  v_[0] = o.v_[0];
  mpfr_init2(o.v_, MPFR_PREC_MIN);  // leave the source in a destructible state
}

Scalar& Scalar::operator=(const Scalar& o) {
  if (this != &o) {
    mpfr_set_prec(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
    digits_ = o.digits_;
  }
  return *this;
}

Scalar& Scalar::operator=(Scalar&& o) noexcept {
  if (this != &o) {
    mpfr_swap(v_, o.v_);
    digits_ = o.digits_;
  }
  return *this;
}

Scalar::~Scalar() { mpfr_clear(v_); }

Scalar Scalar::parse(std::string_view s, unsigned digits) {
  Scalar r = make(digits);
  std::string tmp(s);
  if (mpfr_set_str(r.v_, tmp.c_str(), 10, MPFR_RNDN) != 0)
    throw std::invalid_argument("Scalar::parse: malformed decimal literal: " + tmp);
  return r;
}

Scalar Scalar::at_digits(unsigned digits) const {
  Scalar r = make(digits);
  mpfr_set(r.v_, v_, MPFR_RNDN);
  return r;
}

double Scalar::to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

long Scalar::to_long() const { return mpfr_get_si(v_, MPFR_RNDN); }

std::string Scalar::str(int significant) const {
  int n = significant > 0 ? significant : static_cast<int>(digits_);
  char* buf = nullptr;
  if (mpfr_asprintf(&buf, "%.*R*g", n, MPFR_RNDN, v_) < 0) return "<format-error>";
  std::string out(buf);
  mpfr_free_str(buf);
  return out;
}

Scalar Scalar::operator-() const {
  Scalar r = make(digits_);
  mpfr_neg(r.v_, v_, MPFR_RNDN);
  return r;
}

namespace {
inline unsigned join(const Scalar& a, const Scalar& b) {
  return a.digits() > b.digits() ? a.digits() : b.digits();
}
}  // namespace

#define XIM_BINOP(op, fn)                                    \
  Scalar operator op(const Scalar& a, const Scalar& b) {     \
    Scalar r = Scalar::make(join(a, b));                     \
    fn(r.v_, a.v_, b.v_, MPFR_RNDN);                         \
    return r;                                                \
  }                                                          \
  Scalar operator op(const Scalar& a, long b) {              \
    Scalar r = Scalar::make(a.digits());                     \
    fn##_si(r.v_, a.v_, b, MPFR_RNDN);                       \
    return r;                                                \
  }

XIM_BINOP(+, mpfr_add)
XIM_BINOP(-, mpfr_sub)
XIM_BINOP(*, mpfr_mul)
XIM_BINOP(/, mpfr_div)
#undef XIM_BINOP

Scalar operator+(long a, const Scalar& b) { return b + a; }
Scalar operator*(long a, const Scalar& b) { return b * a; }
Scalar operator-(long a, const Scalar& b) {
  Scalar r = Scalar::make(b.digits());
  mpfr_si_sub(r.raw(), a, b.raw(), MPFR_RNDN);
  return r;
}
Scalar operator/(long a, const Scalar& b) {
  Scalar r = Scalar::make(b.digits());
  mpfr_si_div(r.raw(), a, b.raw(), MPFR_RNDN);
  return r;
}

Scalar& Scalar::operator+=(const Scalar& o) { return *this = *this + o; }
Scalar& Scalar::operator-=(const Scalar& o) { return *this = *this - o; }
Scalar& Scalar::operator*=(const Scalar& o) { return *this = *this * o; }
Scalar& Scalar::operator/=(const Scalar& o) { return *this = *this / o; }

#define XIM_UNFN(name, fn)              \
  Scalar name(const Scalar& x) {        \
    Scalar r = Scalar::make(x.digits_); \
    fn(r.v_, x.v_, MPFR_RNDN);          \
    return r;                           \
  }

XIM_UNFN(abs, mpfr_abs)
XIM_UNFN(sqrt, mpfr_sqrt)
XIM_UNFN(exp, mpfr_exp)
XIM_UNFN(expm1, mpfr_expm1)
XIM_UNFN(log, mpfr_log)
XIM_UNFN(log1p, mpfr_log1p)
XIM_UNFN(sin, mpfr_sin)
XIM_UNFN(cos, mpfr_cos)
XIM_UNFN(tan, mpfr_tan)
XIM_UNFN(atan, mpfr_atan)
XIM_UNFN(sinh, mpfr_sinh)
XIM_UNFN(cosh, mpfr_cosh)
XIM_UNFN(tanh, mpfr_tanh)
XIM_UNFN(gamma, mpfr_gamma)
#undef XIM_UNFN

Scalar floor(const Scalar& x) {
  Scalar r = Scalar::make(x.digits_);
  mpfr_floor(r.v_, x.v_);
  return r;
}

Scalar ceil(const Scalar& x) {
  Scalar r = Scalar::make(x.digits_);
  mpfr_ceil(r.v_, x.v_);
  return r;
}

Scalar atan2(const Scalar& y, const Scalar& x) {
  Scalar r = Scalar::make(join(y, x));
  mpfr_atan2(r.v_, y.v_, x.v_, MPFR_RNDN);
  return r;
}

Scalar pow(const Scalar& b, const Scalar& e) {
  Scalar r = Scalar::make(join(b, e));
  mpfr_pow(r.v_, b.v_, e.v_, MPFR_RNDN);
  return r;
}

Scalar pow(const Scalar& b, long e) {
  Scalar r = Scalar::make(b.digits());
  mpfr_pow_si(r.v_, b.v_, e, MPFR_RNDN);
  return r;
}

Scalar min(const Scalar& a, const Scalar& b) { return a <= b ? a : b; }
Scalar max(const Scalar& a, const Scalar& b) { return a >= b ? a : b; }

Scalar pi(unsigned digits) {
  Scalar r = Scalar::make(digits);
  mpfr_const_pi(r.raw(), MPFR_RNDN);
  return r;
}

Scalar pow10(long e, unsigned digits) {
  Scalar r = Scalar::make(digits);
  mpfr_set_si(r.raw(), 10, MPFR_RNDN);
  mpfr_pow_si(r.raw(), r.raw(), e, MPFR_RNDN);
  return r;
}

// ---------------------------------------------------------------------------
// Complex

Complex& Complex::operator+=(const Complex& o) { return *this = *this + o; }
Complex& Complex::operator-=(const Complex& o) { return *this = *this - o; }
Complex& Complex::operator*=(const Complex& o) { return *this = *this * o; }
Complex& Complex::operator/=(const Complex& o) { return *this = *this / o; }

Complex operator*(const Complex& a, const Complex& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

Complex operator/(const Complex& a, const Complex& b) {
  Scalar d = norm(b);
  return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
}

std::string Complex::str(int significant) const {
  return "(" + re.str(significant) + ", " + im.str(significant) + ")";
}

Scalar norm(const Complex& z) { return z.re * z.re + z.im * z.im; }

Scalar abs(const Complex& z) {
  Scalar r = Scalar::make(z.digits());
  mpfr_hypot(r.raw(), z.re.raw(), z.im.raw(), MPFR_RNDN);
  return r;
}

Scalar arg(const Complex& z) { return atan2(z.im, z.re); }

Complex exp(const Complex& z) {
  Scalar m = exp(z.re);
  return {m * cos(z.im), m * sin(z.im)};
}

Complex log(const Complex& z) { return {log(abs(z)), arg(z)}; }

Complex sqrt(const Complex& z) {
  if (z.is_zero()) return Complex(0L, z.digits());
  Scalar r = abs(z);
  Scalar half(0.5, z.digits());
  return polar(sqrt(r), arg(z) * half);
}

Complex pow(const Complex& b, long e) {
  if (e == 0) return Complex(1L, b.digits());
  if (e < 0) return inv(pow(b, -e));
  Complex acc(1L, b.digits());
  Complex base = b;
  long n = e;
  while (n > 0) {
    if (n & 1) acc *= base;
    if (n >>= 1) base *= base;
  }
  return acc;
}

Complex polar(const Scalar& r, const Scalar& theta) { return {r * cos(theta), r * sin(theta)}; }

Complex cis(const Scalar& t) { return {cos(t), sin(t)}; }

Complex inv(const Complex& z) {
  Scalar d = norm(z);
  return {z.re / d, -z.im / d};
}

}  // namespace xim
