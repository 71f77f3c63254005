// Serial vs OpenMP sparse triple products on the QYBE factors of the B3 spin module.

#include <benchmark/benchmark.h>

#include "qgw/kernels.hpp"
#include "qgw/rmatrix.hpp"

using namespace qgw;

namespace {

struct Factors {
    SMat r12, r13, r23;
};

const Factors& factors()
{
    static const Factors f = [] {
        RMatrixBundle b = build_rvv(builtin_b3_spin(), builtin_roots("b3-spin"));
        return Factors{embed12(b.r_std).m, embed13(b.r_std).m, embed23(b.r_std).m};
    }();
    return f;
}

void BM_TripleSerial(benchmark::State& st)
{
    const Factors& f = factors();
    for (auto _ : st)
        benchmark::DoNotOptimize(triple_product_serial(f.r12, f.r13, f.r23));
}

void BM_TripleParallel(benchmark::State& st)
{
    const Factors& f = factors();
    st.counters["threads"] = kernel_threads();
    for (auto _ : st)
        benchmark::DoNotOptimize(triple_product_parallel(f.r12, f.r13, f.r23));
}

void BM_SpgemmSerial(benchmark::State& st)
{
    const Factors& f = factors();
    for (auto _ : st)
        benchmark::DoNotOptimize(spgemm_serial(f.r12, f.r13));
}

void BM_SpgemmParallel(benchmark::State& st)
{
    const Factors& f = factors();
    for (auto _ : st)
        benchmark::DoNotOptimize(spgemm_parallel(f.r12, f.r13));
}

}  // namespace

BENCHMARK(BM_TripleSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TripleParallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SpgemmSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SpgemmParallel)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
