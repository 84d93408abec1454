#include <benchmark/benchmark.h>

#include <random>

#include "sigmak/solver.hpp"

using namespace sigmak;

namespace {

Eigen::MatrixXd random_symmetric(int m, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> nd;
    Eigen::MatrixXd a(m, m);
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j <= i; ++j) a(i, j) = a(j, i) = nd(rng);
    }
    return a;
}

SigmaProblem problem(int N) {
    return {2, beta0(3, 2), WarpedBackground::perturbed(3, 0.01), make_grid(16.0, N)};
}

}  // namespace

static void BM_SigmaK(benchmark::State& state) {
    const int m = static_cast<int>(state.range(0));
    std::vector<double> s(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) s[static_cast<std::size_t>(i)] = 0.1 * (i + 1) - 0.3;
    for (auto _ : state) {
        for (int k = 1; k <= m; ++k) benchmark::DoNotOptimize(sigma_k(s, k));
    }
}
BENCHMARK(BM_SigmaK)->Arg(4)->Arg(7)->Arg(13);

static void BM_SigmaKMatrix(benchmark::State& state) {
    const SymMatrix b(random_symmetric(static_cast<int>(state.range(0)), 1));
    for (auto _ : state) benchmark::DoNotOptimize(sigma_k_matrix(b, 2));
}
BENCHMARK(BM_SigmaKMatrix)->Arg(4)->Arg(6)->Arg(8);

static void BM_NewtonTransform(benchmark::State& state) {
    const int m = static_cast<int>(state.range(0));
    const SymMatrix b(random_symmetric(m, 2));
    for (auto _ : state) benchmark::DoNotOptimize(newton_transform(b, m - 1));
}
BENCHMARK(BM_NewtonTransform)->Arg(4)->Arg(7);

static void BM_EigsFromSigmas(benchmark::State& state) {
    const std::vector<double> sig{-2.0, 1.5, -0.5, 0.0625};
    for (auto _ : state) benchmark::DoNotOptimize(eigs_from_sigmas(sig));
}
BENCHMARK(BM_EigsFromSigmas);

static void BM_Residual(benchmark::State& state) {
    const auto p = problem(static_cast<int>(state.range(0)));
    const auto u = GridFunction::sample(p.grid_ptr(), [](double t) { return 0.01 * std::exp(-t * t); });
    for (auto _ : state) benchmark::DoNotOptimize(residual(p, u));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Residual)->Arg(1000)->Arg(4000)->Arg(16000)->Complexity();

static void BM_LinearizeSolve(benchmark::State& state) {
    const auto p = problem(static_cast<int>(state.range(0)));
    const auto u = GridFunction::sample(p.grid_ptr(), [](double t) { return 0.01 * std::exp(-t * t); });
    const auto f = residual(p, u);
    const std::vector<double> rhs(f.values().begin(), f.values().end() - 1);
    for (auto _ : state) benchmark::DoNotOptimize(linearize(p, u).solve(rhs));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_LinearizeSolve)->Arg(1000)->Arg(4000)->Arg(16000)->Complexity();

static void BM_NewtonSolve(benchmark::State& state) {
    const auto p = problem(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(newton_solve(p, {}, GridFunction(p.grid_ptr())));
}
BENCHMARK(BM_NewtonSolve)->Arg(1000)->Arg(4000)->Unit(benchmark::kMillisecond);

static void BM_FredholmProbe(benchmark::State& state) {
    const SigmaProblem p(2, beta0(3, 2), WarpedBackground::hyperbolic(3), make_grid(16.0, 4000));
    for (auto _ : state) benchmark::DoNotOptimize(fredholm_probe(p, 1.5));
}
BENCHMARK(BM_FredholmProbe)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
