#include <benchmark/benchmark.h>

#include <cstdint>
#include <vector>

#include <flagstab/enumerate.hpp>
#include <flagstab/liealg.hpp>
#include <flagstab/limits.hpp>
#include <flagstab/matrix.hpp>
#include <flagstab/pairing.hpp>
#include <flagstab/subspace.hpp>

using namespace flagstab;

namespace {

struct Rng {
    std::uint64_t state;
    explicit Rng(std::uint64_t seed) : state(seed ^ 0x9e3779b97f4a7c15ull) {}
    std::uint64_t next() {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        return state;
    }
};

Matrix random_matrix(Rng& rng, std::size_t rows, std::size_t cols) {
    Matrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c)
            m.at(r, c) = Rational(static_cast<long>(rng.next() % 19) - 9) /
                         Rational(1 + static_cast<long>(rng.next() % 3));
    return m;
}

void BM_rref(benchmark::State& state) {
    Rng rng(11);
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    Matrix m = random_matrix(rng, n, n);
    for (auto _ : state) {
        Matrix copy = m;
        benchmark::DoNotOptimize(copy.rref());
    }
}
BENCHMARK(BM_rref)->Arg(4)->Arg(8)->Arg(16)->Arg(32);

void BM_kernel(benchmark::State& state) {
    Rng rng(13);
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    Matrix m = random_matrix(rng, n / 2, n);
    for (auto _ : state) benchmark::DoNotOptimize(m.kernel());
}
BENCHMARK(BM_kernel)->Arg(8)->Arg(16)->Arg(32);

void BM_char_poly(benchmark::State& state) {
    Rng rng(17);
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    Matrix m = random_matrix(rng, n, n);
    for (auto _ : state) benchmark::DoNotOptimize(m.char_poly());
}
BENCHMARK(BM_char_poly)->Arg(4)->Arg(8);

void BM_stabilizer_brute(benchmark::State& state) {
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    GeneralizedFlag f = coordinate_maximal_flags(n).front();
    Ambient a = make_ambient(AmbientKind::gl, n);
    for (auto _ : state)
        benchmark::DoNotOptimize(stabilizer(f, a, StabilizerMode::brute).dim());
}
BENCHMARK(BM_stabilizer_brute)->Arg(3)->Arg(4)->Arg(5)->Arg(6);

void BM_stabilizer_formula(benchmark::State& state) {
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    GeneralizedFlag f = coordinate_maximal_flags(n).front();
    Ambient a = make_ambient(AmbientKind::gl, n);
    for (auto _ : state)
        benchmark::DoNotOptimize(stabilizer(f, a, StabilizerMode::formula).dim());
}
BENCHMARK(BM_stabilizer_formula)->Arg(3)->Arg(4)->Arg(5)->Arg(6);

void BM_stabilizer_formula_so(benchmark::State& state) {
    Pairing p = Pairing::split_symmetric(static_cast<std::size_t>(state.range(0)));
    GeneralizedFlag f = basis_aligned_isotropic_flags(p).front();
    Ambient a = make_ambient(AmbientKind::so, p);
    for (auto _ : state)
        benchmark::DoNotOptimize(stabilizer(f, a, StabilizerMode::formula).dim());
}
BENCHMARK(BM_stabilizer_formula_so)->Arg(6)->Arg(8)->Arg(10);

void BM_derived_series(benchmark::State& state) {
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    GeneralizedFlag f = coordinate_maximal_flags(n).front();
    Ambient a = make_ambient(AmbientKind::gl, n);
    LieSubalgebra b = stabilizer(f, a, StabilizerMode::formula);
    for (auto _ : state) benchmark::DoNotOptimize(derived_series(b).size());
}
BENCHMARK(BM_derived_series)->Arg(4)->Arg(6)->Arg(8);

void BM_closure_certified(benchmark::State& state) {
    Scenario dense = builtin("dense_hyperplane");
    LimitsDescriptor d(*dense.seq);
    const long level = state.range(0);
    for (auto _ : state)
        benchmark::DoNotOptimize(
            closure_certified(d, PairingKind::standard_dual, level, 1).space.dim());
}
BENCHMARK(BM_closure_certified)->Arg(4)->Arg(8)->Arg(16);

}  // namespace

BENCHMARK_MAIN();
