#include "qgw/kernels.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

#include <algorithm>

namespace qgw {

namespace {

// Dense scratch row; touched columns are remembered so clearing is cheap.
struct Accumulator {
    std::vector<CoeffElem> val;
    std::vector<char> used;
    std::vector<uint32_t> touched;

    explicit Accumulator(size_t n) : val(n), used(n, 0) {}

    void add(uint32_t c, const CoeffElem& x)
    {
        if (!used[c]) {
            used[c] = 1;
            touched.push_back(c);
            val[c] = x;
        } else {
            val[c] += x;
        }
    }

    void flush(SMat::Row& out)
    {
        std::sort(touched.begin(), touched.end());
        out.clear();
        for (uint32_t c : touched) {
            if (!val[c].is_zero())
                out.emplace_back(c, std::move(val[c]));
            val[c] = CoeffElem();
            used[c] = 0;
        }
        touched.clear();
    }
};

void row_product(const SMat& a, const SMat& b, size_t i, Accumulator& acc, SMat::Row& out)
{
    for (const auto& [k, aik] : a.row(i))
        for (const auto& [j, bkj] : b.row(k))
            acc.add(j, aik * bkj);
    acc.flush(out);
}

void check_sizes(const SMat& a, const SMat& b)
{
    if (a.size() != b.size())
        throw DimensionMismatch("product of " + std::to_string(a.size()) + " and " +
                                std::to_string(b.size()) + " matrices");
}

}  // namespace

SMat spgemm_serial(const SMat& a, const SMat& b)
{
    check_sizes(a, b);
    const size_t n = a.size();
    SMat out(n);
    Accumulator acc(n);
    for (size_t i = 0; i < n; ++i)
        row_product(a, b, i, acc, out.row(i));
    return out;
}

SMat spgemm_parallel(const SMat& a, const SMat& b)
{
    check_sizes(a, b);
    const long n = static_cast<long>(a.size());
    SMat out(a.size());
#pragma omp parallel
    {
        Accumulator acc(a.size());
#pragma omp for schedule(dynamic, 8)
        for (long i = 0; i < n; ++i)
            row_product(a, b, static_cast<size_t>(i), acc, out.row(i));
    }
    return out;
}

SMat spgemm(const SMat& a, const SMat& b, Exec e)
{
    return e == Exec::Parallel ? spgemm_parallel(a, b) : spgemm_serial(a, b);
}

SMat triple_product_serial(const SMat& a, const SMat& b, const SMat& c)
{
    return spgemm_serial(spgemm_serial(a, b), c);
}

SMat triple_product_parallel(const SMat& a, const SMat& b, const SMat& c)
{
    check_sizes(a, b);
    check_sizes(b, c);
    const long n = static_cast<long>(a.size());
    SMat out(a.size());
    // fused: row i of (a*b) is formed and immediately multiplied by c
#pragma omp parallel
    {
        Accumulator acc(a.size());
        SMat::Row ab;
#pragma omp for schedule(dynamic, 8)
        for (long i = 0; i < n; ++i) {
            row_product(a, b, static_cast<size_t>(i), acc, ab);
            for (const auto& [k, x] : ab)
                for (const auto& [j, y] : c.row(k))
                    acc.add(j, x * y);
            acc.flush(out.row(i));
        }
    }
    return out;
}

SMat triple_product(const SMat& a, const SMat& b, const SMat& c, Exec e)
{
    return e == Exec::Parallel ? triple_product_parallel(a, b, c) : triple_product_serial(a, b, c);
}

int kernel_threads()
{
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

}  // namespace qgw
