#include "xim/arith.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <mutex>
#include <vector>

#include "xim/errors.hpp"
#include "xim/quadrature.hpp"

namespace xim::arith {

namespace {

constexpr long kSieveLimit = 1000000;

unsigned effective(unsigned digits) { return digits ? digits : Scalar::default_digits(); }

const std::vector<long>& primes() {
  static std::once_flag once;
  static std::vector<long> list;
  std::call_once(once, [] {
    std::vector<uint8_t> composite(kSieveLimit + 1, 0);
    for (long p = 2; p * p <= kSieveLimit; ++p)
      if (!composite[p])
        for (long q = p * p; q <= kSieveLimit; q += p) composite[q] = 1;
    for (long p = 2; p <= kSieveLimit; ++p)
      if (!composite[p]) list.push_back(p);
  });
  return list;
}

/// Prime powers p^n <= limit, sorted, each with its weight denominator n.
std::vector<std::pair<long, int>> prime_powers_upto(long limit) {
  std::vector<std::pair<long, int>> out;
  for (long p : primes()) {
    if (p > limit) break;
    long q = p;
    int n = 1;
    while (true) {
      out.emplace_back(q, n);
      if (q > limit / p) break;
      q *= p;
      ++n;
      if (q > limit) break;
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

PrimePowerCount prime_side(const Scalar& l, unsigned digits) {
  unsigned d = effective(digits);
  if (l < 2 || l > kSieveLimit)
    throw Error(Errc::range_error, "prime_side requires 2 <= l <= 10^6, got " + l.str(8));
  long limit = l.to_long() + 1;
  PrimePowerCount out;
  out.l = l.at_digits(d);
  Scalar strict(0L, d), weak(0L, d);
  for (const auto& [q, n] : prime_powers_upto(limit)) {
    Scalar w = 1 / Scalar(n, d);
    if (Scalar(q, d) < l) strict += w;
    if (Scalar(q, d) <= l) weak += w;
  }
  out.strict_count = strict;
  out.weak_count = weak;
  out.average = (strict + weak) / 2;
  return out;
}

Scalar w_loop(const Scalar& l, const xi::ZeroList& zeros, int cesaro_m, unsigned digits) {
  unsigned d = effective(digits);
  if (!(l > 1) || abs(log(l.at_digits(d))) < pow10(-6, d))
    throw Error(Errc::domain_error, "w_loop requires l > 1 with log l away from 0");
  unsigned dint = d + 5;
  Scalar ll = l.at_digits(dint);
  Scalar lg = log(ll);
  Scalar amp = 1 / (sqrt(ll) * lg);

  Scalar acc(0L, dint);
  if (cesaro_m > 0 && static_cast<size_t>(cesaro_m) <= zeros.zeros.size()) {
    // Average of the last m partial sums of the conditionally convergent sum.
    size_t n = zeros.zeros.size();
    Scalar partial(0L, dint);
    Scalar window(0L, dint);
    for (size_t j = 0; j < n; ++j) {
      partial += 2 * cos(zeros.zeros[j].at_digits(dint) * lg) * amp;
      if (j + static_cast<size_t>(cesaro_m) >= n) window += partial;
    }
    acc = window / cesaro_m;
  } else {
    for (const Scalar& lam : zeros.zeros) acc += 2 * cos(lam.at_digits(dint) * lg) * amp;
  }

  Scalar v = 1 / lg - acc - 1 / (ll * (ll * ll - 1) * lg);
  return v.at_digits(d);
}

ExplicitCheck explicit_check(const Scalar& l, const xi::ZeroList& zeros, unsigned digits) {
  unsigned d = effective(digits);
  if (l < Scalar(2.5, d))
    throw Error(Errc::domain_error, "explicit_check requires l >= 2.5");
  if (zeros.scan_height < 100)
    throw Error(Errc::domain_error, "explicit_check needs zeros scanned to height >= 100");

  // Split [2, l] at the prime powers, where the compared count jumps.
  std::vector<Scalar> cuts;
  cuts.push_back(Scalar(2L, d));
  for (const auto& [q, n] : prime_powers_upto(l.to_long() + 1)) {
    (void)n;
    if (q > 2 && Scalar(q, d) < l) cuts.push_back(Scalar(q, d));
  }
  cuts.push_back(l.at_digits(d));

  double freq = zeros.zeros.empty() ? 0.0 : zeros.zeros.back().to_double() / 2.0;
  QuadOptions opt;
  opt.digits = d;
  opt.osc_frequency = freq;
  Scalar tol = pow10(-10, d);
  auto f = [&](const Scalar& x) -> Complex {
    return Complex(w_loop(x, zeros, 10, d));
  };
  Scalar total(0L, d);
  for (size_t i = 0; i + 1 < cuts.size(); ++i) {
    QuadratureResult r = integrate_finite(f, cuts[i], cuts[i + 1], tol, opt);
    total += r.value.re;
  }

  ExplicitCheck out;
  // The averaged count jumps by 1 at the lower endpoint 2; integrating from 2
  // captures only the density above it, so the endpoint carries its normalized
  // half-weight.
  out.loop_integral = total + Scalar(0.5, d);
  out.prime_average = prime_side(l, d).average;
  out.gap = abs(out.loop_integral - out.prime_average);
  return out;
}

EulerLogZeta euler_log_zeta(const Complex& z, long p_max, unsigned digits) {
  unsigned d = effective(digits);
  if (!(z.im < Scalar(-0.5, d)))
    throw Error(Errc::convergence_domain_error,
                "euler_log_zeta requires Im z < -1/2 (Re s > 1)");
  if (p_max < 100 || p_max > kSieveLimit)
    throw Error(Errc::domain_error, "euler_log_zeta requires 100 <= p_max <= 10^6");

  unsigned dint = d + 10;
  Complex zz{z.re.at_digits(dint), z.im.at_digits(dint)};
  Complex s = Complex(Scalar(0L, dint), Scalar(1L, dint)) * zz + Scalar(0.5, dint);
  Scalar sigma = s.re;  // > 1

  Complex acc(0L, dint);
  double sig = sigma.to_double();
  long n_cut_base = static_cast<long>(std::ceil((d + 8) * std::log(10.0) / sig)) + 1;
  for (long p : primes()) {
    if (p > p_max) break;
    Complex pw = exp(-(s * Complex(log(Scalar(p, dint)))));  // p^{-s}
    long n_cut = std::max<long>(1, n_cut_base / static_cast<long>(std::log2(double(p)) + 1) + 1);
    Complex pn = pw;
    for (long n = 1; n <= n_cut; ++n) {
      acc += pn / Scalar(n, dint);
      if (abs(pn) < pow10(-static_cast<long>(d) - 8, dint)) break;
      pn *= pw;
    }
  }

  EulerLogZeta out;
  out.p_max = p_max;
  // Tail majorant: sum_{m > p_max} m^{-sigma} <= p_max^{1-sigma}/(sigma - 1),
  // doubled to cover the n >= 2 contributions of the omitted primes and the
  // per-prime n-truncation.
  out.tail_bound = (2 * pow(Scalar(p_max, dint), 1 - sigma) / (sigma - 1)).at_digits(d);
  if (z.re.is_zero()) {
    out.value = Complex(acc.re.at_digits(d), Scalar(0L, d));
  } else {
    out.value = Complex(acc.re.at_digits(d), acc.im.at_digits(d));
  }
  return out;
}

}  // namespace xim::arith
