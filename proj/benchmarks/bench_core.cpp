#include <benchmark/benchmark.h>

#include <complex>
#include <vector>

#include "otd/engine.hpp"
#include "otd/models/kolmogorov.hpp"
#include "otd/models/mnls.hpp"
#include "otd/numerics/eigs.hpp"
#include "otd/numerics/fft.hpp"
#include "otd/numerics/gram_schmidt.hpp"
#include "otd/numerics/rng.hpp"

namespace {

void bench_fft_r2c_128(benchmark::State& state) {
    const std::size_t n = 128;
    otd::fft::AlignedArray<double> in(n * n);
    otd::fft::AlignedArray<std::complex<double>> out(n * (n / 2 + 1));
    otd::SplitMix64 rng(7);
    for (std::size_t i = 0; i < n * n; ++i) in[i] = rng.next_double() - 0.5;
    for (auto _ : state) {
        otd::fft::r2c_2d(n, in.data(), out.data());
        benchmark::DoNotOptimize(out.data());
    }
}
BENCHMARK(bench_fft_r2c_128);

void bench_kolmogorov_rhs(benchmark::State& state) {
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    otd::KolmogorovSystem sys({n, 40.0, 4});
    auto ws = sys.make_workspace();
    const std::vector<double> u = sys.random_initial_condition(0.3, 11);
    std::vector<double> du(sys.dim());
    for (auto _ : state) {
        sys.rhs(0.0, u, du, *ws);
        benchmark::DoNotOptimize(du.data());
    }
}
BENCHMARK(bench_kolmogorov_rhs)->Arg(32)->Arg(128);

void bench_kolmogorov_linearized(benchmark::State& state) {
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    otd::KolmogorovSystem sys({n, 40.0, 4});
    auto ws = sys.make_workspace();
    const std::vector<double> u = sys.random_initial_condition(0.3, 11);
    const std::vector<double> v = sys.random_initial_condition(0.1, 13);
    std::vector<double> lv(sys.dim());
    sys.prepare_linearization(0.0, u, *ws);
    for (auto _ : state) {
        sys.apply_linearized(v, lv, *ws);
        benchmark::DoNotOptimize(lv.data());
    }
}
BENCHMARK(bench_kolmogorov_linearized)->Arg(32)->Arg(128);

void bench_mnls_rhs(benchmark::State& state) {
    otd::MnlsSystem sys(otd::MnlsParams{});
    auto ws = sys.make_workspace();
    const std::vector<double> u = sys.gaussian_initial_condition(5);
    std::vector<double> du(sys.dim());
    for (auto _ : state) {
        sys.rhs(0.0, u, du, *ws);
        benchmark::DoNotOptimize(du.data());
    }
}
BENCHMARK(bench_mnls_rhs);

void bench_otd_rhs_kolmogorov(benchmark::State& state) {
    otd::KolmogorovSystem sys({32, 40.0, 4});
    auto ws = sys.make_workspace();
    const std::vector<double> u = sys.random_initial_condition(0.3, 11);
    otd::OtdBasis basis = otd::OtdBasis::from_modes(sys.otd_initial_modes(4));
    for (auto _ : state) {
        auto dv = otd::otd_rhs(sys, 0.0, u, basis, *ws);
        benchmark::DoNotOptimize(dv.data());
    }
}
BENCHMARK(bench_otd_rhs_kolmogorov);

void bench_symmetric_eigs(benchmark::State& state) {
    const std::size_t m = static_cast<std::size_t>(state.range(0));
    otd::DenseMatrix a(m, m);
    otd::SplitMix64 rng(3);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i; j < m; ++j) a(i, j) = a(j, i) = rng.next_double() - 0.5;
    for (auto _ : state) {
        auto e = otd::symmetric_eigs(a);
        benchmark::DoNotOptimize(e.values.data());
    }
}
BENCHMARK(bench_symmetric_eigs)->Arg(8)->Arg(32);

void bench_gram_schmidt(benchmark::State& state) {
    const std::size_t r = 8, dim = 4096;
    otd::SplitMix64 rng(17);
    std::vector<double> flat(r * dim);
    for (auto& x : flat) x = rng.next_double() - 0.5;
    auto inner = [](std::span<const double> a, std::span<const double> b) {
        double s = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
        return s;
    };
    std::vector<double> work = flat;
    for (auto _ : state) {
        work = flat;
        std::vector<std::span<double>> modes;
        for (std::size_t i = 0; i < r; ++i)
            modes.emplace_back(work.data() + i * dim, dim);
        otd::modified_gram_schmidt(modes, inner);
        benchmark::DoNotOptimize(work.data());
    }
}
BENCHMARK(bench_gram_schmidt);

}  // namespace

BENCHMARK_MAIN();
