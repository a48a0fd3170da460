#include "xim/special.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

#include "xim/errors.hpp"

namespace xim {

namespace {

std::mutex g_cache_mutex;

unsigned effective(unsigned digits) { return digits ? digits : Scalar::default_digits(); }

}  // namespace

// ---------------------------------------------------------------------------
// Euler's constant, Brent-McMillan series:
//   gamma = A(n)/B(n) - ln n + O(e^{-4n}),
//   A = sum (n^k/k!)^2 H_k,  B = sum (n^k/k!)^2.
Scalar euler_gamma(unsigned digits) {
  unsigned d = effective(digits);
  static std::map<unsigned, Scalar> cache;
  {
    std::lock_guard<std::mutex> lock(g_cache_mutex);
    auto it = cache.find(d);
    if (it != cache.end()) return it->second;
  }

  long n = static_cast<long>(std::ceil((d + 10) * std::log(10.0) / 4.0)) + 2;
  // Terms peak near e^{2n}; pad the working precision accordingly.
  unsigned dint = d + static_cast<unsigned>(std::ceil(0.8686 * n)) + 10;

  Scalar a(0L, dint), b(0L, dint), h(0L, dint);
  Scalar t(1L, dint);  // (n^k/k!)^2
  Scalar nn(n, dint);
  Scalar cutoff = pow10(-static_cast<long>(dint) - 5, dint);
  b = t;
  for (long k = 1; k < 20 * n; ++k) {
    t *= nn * nn / (Scalar(k, dint) * Scalar(k, dint));
    h += 1 / Scalar(k, dint);
    a += t * h;
    b += t;
    if (k > 2 * n && t < cutoff * b) break;
  }
  Scalar g = (a / b - log(nn)).at_digits(d);

  std::lock_guard<std::mutex> lock(g_cache_mutex);
  cache.emplace(d, g);
  return g;
}

// ---------------------------------------------------------------------------
// Spouge approximation for Gamma.

namespace spouge {

struct Table {
  long a = 0;
  unsigned dint = 0;
  std::vector<Scalar> c;  // c[0] = sqrt(2 pi), c[k] for 1..a-1
};

const Table& table_for(unsigned d) {
  static std::mutex m;
  static std::map<unsigned, Table> cache;
  std::lock_guard<std::mutex> lock(m);
  auto it = cache.find(d);
  if (it != cache.end()) return it->second;

  Table t;
  t.a = static_cast<long>(std::ceil((d + 10) * std::log(10.0) / std::log(2 * M_PI))) + 2;
  t.dint = d + static_cast<unsigned>(std::ceil(0.4343 * t.a)) + 10;
  t.c.reserve(t.a);
  Scalar two_pi = 2 * pi(t.dint);
  t.c.push_back(sqrt(two_pi));
  Scalar fact(1L, t.dint);  // (k-1)!
  for (long k = 1; k < t.a; ++k) {
    if (k > 1) fact *= (k - 1);
    Scalar ak = Scalar(t.a - k, t.dint);
    Scalar ck = pow(ak, Scalar(k, t.dint) - Scalar(0.5, t.dint)) * exp(ak) / fact;
    if (k % 2 == 0) ck = -ck;
    t.c.push_back(ck);
  }
  return cache.emplace(d, std::move(t)).first->second;
}

// Gamma(z) for Re(z) >= 1/2.
Complex right_half(const Complex& z, unsigned d) {
  const Table& t = table_for(d);
  Complex w = {z.re.at_digits(t.dint) - 1, z.im.at_digits(t.dint)};  // Gamma(w+1)
  Complex s(t.c[0]);
  for (long k = 1; k < t.a; ++k) s += Complex(t.c[k]) / (w + Scalar(k, t.dint));
  Complex wa = w + Scalar(t.a, t.dint);
  Complex r = exp((w + Scalar(0.5, t.dint)) * log(wa) - wa) * s;
  return {r.re.at_digits(d), r.im.at_digits(d)};
}

}  // namespace spouge

Complex sin(const Complex& z) {
  return {xim::sin(z.re) * cosh(z.im), cos(z.re) * sinh(z.im)};
}

Complex gamma(const Complex& z) {
  unsigned d = z.digits();
  if (z.im.is_zero()) {
    if (z.re <= 0 && z.re == floor(z.re))
      throw Error(Errc::pole_at_zero, "Gamma pole at non-positive integer " + z.re.str(6));
    return Complex(gamma(z.re));
  }
  if (z.re >= Scalar(0.5, d)) return spouge::right_half(z, d);
  // Reflection: Gamma(z) = pi / (sin(pi z) Gamma(1 - z)).
  unsigned dint = d + 10;
  Complex zi = {z.re.at_digits(dint), z.im.at_digits(dint)};
  Scalar p = pi(dint);
  Complex one(1L, dint);
  Complex r = Complex(p) / (sin(Complex(p) * zi) * spouge::right_half(one - zi, dint));
  return {r.re.at_digits(d), r.im.at_digits(d)};
}

Complex log_gamma_right(const Complex& z) {
  if (!(z.re > 0)) throw Error(Errc::domain_error, "log_gamma_right requires Re(z) > 0");
  return log(gamma(z));
}

// ---------------------------------------------------------------------------
// Borwein's alternating series for zeta.

namespace borwein {

struct Table {
  long n = 0;
  unsigned dint = 0;
  std::vector<Scalar> d;  // d_0 .. d_n
};

const Table& table_for(long n, unsigned dint) {
  static std::mutex m;
  static std::map<std::pair<long, unsigned>, Table> cache;
  std::lock_guard<std::mutex> lock(m);
  auto key = std::make_pair(n, dint);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;

  // d_k = n * sum_{j<=k} (n+j-1)! 4^j / ((n-j)! (2j)!); all terms positive,
  // magnitudes ~ (3+sqrt 8)^n, so pad precision by that factor.
  unsigned dd = dint + static_cast<unsigned>(std::ceil(0.766 * n)) + 10;
  Table t;
  t.n = n;
  t.dint = dint;
  Scalar term(1L, dd);  // j = 0 term: n * (n-1)!/n! = 1
  Scalar acc = term;
  std::vector<Scalar> d;
  d.reserve(n + 1);
  d.push_back(acc.at_digits(dint));
  for (long j = 1; j <= n; ++j) {
    // term_j = term_{j-1} * 4 (n+j-1)(n-j+1) / ((2j-1)(2j))
    term *= Scalar(4 * (n + j - 1), dd) * Scalar(n - j + 1, dd) /
            (Scalar(2 * j - 1, dd) * Scalar(2 * j, dd));
    acc += term;
    d.push_back(acc.at_digits(dint));
  }
  t.d = std::move(d);
  return cache.emplace(key, std::move(t)).first->second;
}

Complex sum(const Complex& s, unsigned d) {
  double tmag = std::fabs(s.im.to_double());
  long n = static_cast<long>(std::ceil(((d + 10) * std::log(10.0) + M_PI * tmag / 2 +
                                        std::log1p(2 * tmag) + 5) /
                                       std::log(3 + 2 * std::sqrt(2.0)))) +
           20;
  unsigned dint = d + 15;
  const Table& t = table_for(n, dint);
  Complex si = {s.re.at_digits(dint), s.im.at_digits(dint)};
  Complex acc(0L, dint);
  const Scalar& dn = t.d[n];
  for (long k = 0; k < n; ++k) {
    // (-1)^k (d_k - d_n) (k+1)^{-s}
    Complex term = exp(Complex(-si.re, -si.im) * Complex(log(Scalar(k + 1, dint))));
    term = term * (t.d[k] - dn);
    if (k % 2) term = -term;
    acc += term;
  }
  Complex one(1L, dint);
  Complex two_pow = exp((one - si) * Complex(log(Scalar(2L, dint))));
  Complex z = -acc / (Complex(dn) * (one - two_pow));
  return {z.re.at_digits(d), z.im.at_digits(d)};
}

}  // namespace borwein

Complex zeta(const Complex& s) {
  unsigned d = s.digits();
  Scalar dist = abs(s - Scalar(1L, d));
  if (dist < pow10(-8, d))
    throw Error(Errc::domain_error, "zeta pole at s = 1 (|s-1| = " + dist.str(6) + ")");
  if (s.re >= Scalar(0.4, d)) return borwein::sum(s, d);
  // Functional equation: zeta(s) = 2^s pi^{s-1} sin(pi s/2) Gamma(1-s) zeta(1-s).
  unsigned dint = d + 10;
  Complex si = {s.re.at_digits(dint), s.im.at_digits(dint)};
  Complex one(1L, dint);
  Scalar p = pi(dint);
  Complex pref = exp(si * Complex(log(Scalar(2L, dint)))) *
                 exp((si - one) * Complex(log(p))) *
                 sin(si * Complex(p / 2)) * gamma(one - si);
  Complex z = pref * borwein::sum(one - si, dint);
  return {z.re.at_digits(d), z.im.at_digits(d)};
}

// ---------------------------------------------------------------------------

Scalar bernoulli2k(int k, unsigned digits) {
  // B_2 .. B_30 as exact rationals.
  static const long num[] = {1, -1, 1,  -1, 5,  -691, 7,  -3617,
                             43867, -174611, 854513, -236364091, 8553103, -23749461029L,
                             8615841276005L};
  static const long den[] = {6, 30, 42, 30, 66, 2730, 6, 510,
                             798, 330, 138, 2730, 6, 870, 14322};
  if (k < 1 || k > 15) throw Error(Errc::range_error, "bernoulli2k supports 1 <= k <= 15");
  unsigned d = effective(digits);
  return Scalar(num[k - 1], d) / Scalar(den[k - 1], d);
}

}  // namespace xim
