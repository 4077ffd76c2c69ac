// Serial vs OpenMP kernels on operator-sized inputs.

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "adr/kernels.hpp"
#include "adr/linalg.hpp"

using adr::Matrix;
namespace kernels = adr::kernels;

namespace {

Matrix random_matrix(std::size_t r, std::size_t c, unsigned seed)
{
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Matrix m(r, c);
    for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = 0; j < c; ++j) {
            m(i, j) = u(rng);
        }
    }
    return m;
}

std::vector<double> random_vector(std::size_t n, unsigned seed)
{
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<double> v(n);
    for (double& x : v) {
        x = u(rng);
    }
    return v;
}

template <auto Fn>
void bm_matvec(benchmark::State& state)
{
    const auto n = static_cast<std::size_t>(state.range(0));
    const Matrix a = random_matrix(n, n, 1);
    const auto x = random_vector(n, 2);
    std::vector<double> y(n);
    for (auto _ : state) {
        Fn(a, x, y);
        benchmark::DoNotOptimize(y.data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<long>(n * n));
}

template <auto Fn>
void bm_matmul(benchmark::State& state)
{
    const auto n = static_cast<std::size_t>(state.range(0));
    const Matrix a = random_matrix(n, n, 3);
    const Matrix b = random_matrix(n, n, 4);
    Matrix c(n, n);
    for (auto _ : state) {
        Fn(a, b, c);
        benchmark::DoNotOptimize(c.data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<long>(n * n * n));
}

template <auto Fn>
void bm_lines(benchmark::State& state)
{
    const auto n = static_cast<std::size_t>(state.range(0));
    const Matrix op = random_matrix(n, n, 5);
    const auto in = random_vector(n * n, 6);
    std::vector<double> out(n * n);
    for (auto _ : state) {
        Fn(op, 1.0, in, out, n, n);
        benchmark::DoNotOptimize(out.data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<long>(n * n * n));
}

} // namespace

BENCHMARK(bm_matvec<kernels::serial::matvec>)->Name("matvec/serial")->Arg(256)->Arg(1001);
BENCHMARK(bm_matvec<kernels::omp::matvec>)->Name("matvec/omp")->Arg(256)->Arg(1001);
BENCHMARK(bm_matmul<kernels::serial::matmul>)->Name("matmul/serial")->Arg(128)->Arg(256);
BENCHMARK(bm_matmul<kernels::omp::matmul>)->Name("matmul/omp")->Arg(128)->Arg(256);
BENCHMARK(bm_lines<kernels::serial::apply_along_x>)->Name("along_x/serial")->Arg(100)->Arg(200);
BENCHMARK(bm_lines<kernels::omp::apply_along_x>)->Name("along_x/omp")->Arg(100)->Arg(200);
BENCHMARK(bm_lines<kernels::serial::apply_along_y>)->Name("along_y/serial")->Arg(100)->Arg(200);
BENCHMARK(bm_lines<kernels::omp::apply_along_y>)->Name("along_y/omp")->Arg(100)->Arg(200);

BENCHMARK_MAIN();
