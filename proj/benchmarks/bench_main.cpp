#include <benchmark/benchmark.h>

#include "xim/airy.hpp"
#include "xim/ensemble.hpp"
#include "xim/quadrature.hpp"
#include "xim/series.hpp"
#include "xim/theta.hpp"
#include "xim/xi.hpp"

using namespace xim;

namespace {

void BM_quadrature_gaussian(benchmark::State& state) {
  const unsigned d = static_cast<unsigned>(state.range(0));
  Scalar tol = pow10(-static_cast<long>(d) + 4, d);
  QuadOptions opt;
  opt.digits = d;
  for (auto _ : state) {
    QuadratureResult r = integrate_real_line(
        [&](const Scalar& x) { return Complex(exp(-(x * x))); }, tol, opt);
    benchmark::DoNotOptimize(r.value);
  }
}
BENCHMARK(BM_quadrature_gaussian)->Arg(30)->Arg(50)->Arg(100);

void BM_theta_kernel_eval(benchmark::State& state) {
  const unsigned d = static_cast<unsigned>(state.range(0));
  ThetaTailBudget budget = theta::make_budget(theta::Variant::phi_derived, Scalar(-3L, d), d);
  Scalar u(0.75, d);
  for (auto _ : state) {
    Scalar v = theta::kernel_eval(theta::Variant::phi_derived, u, budget);
    benchmark::DoNotOptimize(v);
  }
}
BENCHMARK(BM_theta_kernel_eval)->Arg(30)->Arg(50)->Arg(100);

void BM_theta_kernel_series(benchmark::State& state) {
  const unsigned d = 30;
  const int order = static_cast<int>(state.range(0));
  for (auto _ : state) {
    PowerSeries s = theta::kernel_series(order, d);
    benchmark::DoNotOptimize(s[order]);
  }
}
BENCHMARK(BM_theta_kernel_series)->Arg(8)->Arg(16);

void BM_xi_reference(benchmark::State& state) {
  const unsigned d = static_cast<unsigned>(state.range(0));
  Complex z(Scalar(5L, d));
  for (auto _ : state) {
    xi::XiValue v = xi::xi_eval(z, xi::Route::reference, -1, d);
    benchmark::DoNotOptimize(v.value);
  }
}
BENCHMARK(BM_xi_reference)->Arg(30)->Arg(50);

void BM_xi_fourier(benchmark::State& state) {
  const unsigned d = static_cast<unsigned>(state.range(0));
  Complex z(Scalar(5L, d));
  xi::fourier_calibration(d);  // cached; excluded from the loop
  for (auto _ : state) {
    xi::XiValue v = xi::xi_eval(z, xi::Route::fourier, -1, d);
    benchmark::DoNotOptimize(v.value);
  }
}
BENCHMARK(BM_xi_fourier)->Arg(30)->Arg(50);

void BM_xi_series_route(benchmark::State& state) {
  const unsigned d = static_cast<unsigned>(state.range(0));
  Complex z(Scalar(5L, d));
  xi::xi_eval(z, xi::Route::series, -1, d);  // warm the coefficient cache
  for (auto _ : state) {
    xi::XiValue v = xi::xi_eval(z, xi::Route::series, -1, d);
    benchmark::DoNotOptimize(v.value);
  }
}
BENCHMARK(BM_xi_series_route)->Arg(30)->Arg(50);

void BM_airy_eval(benchmark::State& state) {
  const unsigned d = static_cast<unsigned>(state.range(0));
  Complex z(Scalar(-2L, d));
  for (auto _ : state) {
    airy::AiryValue v = airy::airy_eval(z, airy::Route::reference, d);
    benchmark::DoNotOptimize(v.value);
  }
}
BENCHMARK(BM_airy_eval)->Arg(30)->Arg(50);

void BM_series_exp(benchmark::State& state) {
  const unsigned d = 50;
  const int order = static_cast<int>(state.range(0));
  PowerSeries s(order, d);
  for (int k = 1; k <= order; ++k) s[k] = Complex(Scalar(1L, d) / (k * k + 1));
  for (auto _ : state) {
    PowerSeries e = series_exp(s);
    benchmark::DoNotOptimize(e[order]);
  }
}
BENCHMARK(BM_series_exp)->Arg(16)->Arg(64);

void BM_series_mul(benchmark::State& state) {
  const unsigned d = 50;
  const int order = static_cast<int>(state.range(0));
  PowerSeries s(order, d);
  for (int k = 0; k <= order; ++k) s[k] = Complex(Scalar(1L, d) / (k + 1));
  for (auto _ : state) {
    PowerSeries p = s * s;
    benchmark::DoNotOptimize(p[order]);
  }
}
BENCHMARK(BM_series_mul)->Arg(16)->Arg(64);

void BM_ensemble_sample(benchmark::State& state) {
  const int N = static_cast<int>(state.range(0));
  std::uint64_t index = 0;
  for (auto _ : state) {
    ensemble::EnsembleSample s = ensemble::sample_ensemble(N, 12345, index++);
    benchmark::DoNotOptimize(s.matrix.data());
  }
}
BENCHMARK(BM_ensemble_sample)->Arg(8)->Arg(32);

}  // namespace

BENCHMARK_MAIN();
