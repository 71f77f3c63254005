#pragma once

// Sparse square matrices over CoeffElem, and the tensor-indexed views used for
// R-matrices on V(x)V and V(x)V(x)V.
//
// Index convention: M(v_j (x) v_l) = sum M^{ik}_{jl} v_i (x) v_k, row (ik), column (jl),
// flattened as (i-1)*dim + (k-1). Public accessors take 1-based indices.

#include <cstdint>
#include <functional>
#include <string>
#include <tuple>
#include <vector>

#include "qgw/qfield.hpp"

namespace qgw {

struct DimensionMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct SingularMatrix : std::domain_error {
    using std::domain_error::domain_error;
};

enum class Exec { Serial, Parallel };

// Process-wide default for the product kernels.
Exec default_exec();
void set_default_exec(Exec e);

class SMat {
public:
    using Entry = std::pair<uint32_t, CoeffElem>;
    using Row = std::vector<Entry>;  // sorted by column, no zeros

    SMat() = default;
    explicit SMat(size_t n) : n_(n), rows_(n) {}

    static SMat identity(size_t n);
    static SMat scalar(size_t n, const CoeffElem& c);
    static SMat from_triplets(size_t n, std::vector<std::tuple<uint32_t, uint32_t, CoeffElem>> t);

    size_t size() const { return n_; }
    const Row& row(size_t i) const { return rows_[i]; }
    Row& row(size_t i) { return rows_[i]; }
    const CoeffElem* find(size_t r, size_t c) const;
    CoeffElem get(size_t r, size_t c) const;
    // overwrites (or erases when c is zero); keeps the row sorted
    void set(size_t r, size_t c, const CoeffElem& v);
    size_t nnz() const;
    bool is_zero() const { return nnz() == 0; }
    bool is_diagonal() const;

    SMat transposed() const;
    SMat scaled(const CoeffElem& c) const;
    SMat operator-() const { return scaled(CoeffElem(-1)); }
    friend SMat operator+(const SMat& a, const SMat& b);
    friend SMat operator-(const SMat& a, const SMat& b);
    friend SMat operator*(const SMat& a, const SMat& b);
    friend bool operator==(const SMat& a, const SMat& b);
    friend bool operator!=(const SMat& a, const SMat& b) { return !(a == b); }

    // first (row, col) where the matrices differ, or nullopt-like (-1,-1)
    static std::pair<long, long> first_difference(const SMat& a, const SMat& b);

private:
    size_t n_ = 0;
    std::vector<Row> rows_;
};

// Kronecker product (A (x) B), row (a,b) -> a*size(B)+b
SMat kron(const SMat& a, const SMat& b);

// Exact inverse over the fraction field. Entries must come back Laurent, otherwise
// DomainError; singular input raises SingularMatrix.
SMat invert(const SMat& m);

struct TensorMatrix {
    int dim = 0;
    SMat m;

    TensorMatrix() = default;
    TensorMatrix(int d, SMat mat);
    explicit TensorMatrix(int d) : dim(d), m(static_cast<size_t>(d) * d) {}

    size_t flat(int i, int k) const { return static_cast<size_t>(i - 1) * dim + (k - 1); }
    CoeffElem at(int i, int k, int j, int l) const { return m.get(flat(i, k), flat(j, l)); }
    void set(int i, int k, int j, int l, const CoeffElem& c) { m.set(flat(i, k), flat(j, l), c); }

    friend bool operator==(const TensorMatrix& a, const TensorMatrix& b)
    {
        return a.dim == b.dim && a.m == b.m;
    }
};

struct TripleMatrix {
    int dim = 0;
    SMat m;

    TripleMatrix() = default;
    TripleMatrix(int d, SMat mat);
    size_t flat(int i, int k, int m3) const
    {
        return (static_cast<size_t>(i - 1) * dim + (k - 1)) * dim + (m3 - 1);
    }
    friend bool operator==(const TripleMatrix& a, const TripleMatrix& b)
    {
        return a.dim == b.dim && a.m == b.m;
    }
};

TensorMatrix identity(int dim);
TensorMatrix permutation(int dim);
TensorMatrix k0(int dim);

TensorMatrix transpose_t(const TensorMatrix& M);
TensorMatrix transpose_t1(const TensorMatrix& M);
TensorMatrix transpose_t2(const TensorMatrix& M);

TensorMatrix matrix_mul(const TensorMatrix& a, const TensorMatrix& b);
TensorMatrix matrix_add(const TensorMatrix& a, const TensorMatrix& b);
TensorMatrix matrix_sub(const TensorMatrix& a, const TensorMatrix& b);
TensorMatrix matrix_scale(const TensorMatrix& a, const CoeffElem& c);
TensorMatrix invert(const TensorMatrix& M);
// P M P
TensorMatrix conjugate_p(const TensorMatrix& M);

TripleMatrix embed12(const TensorMatrix& M);
TripleMatrix embed13(const TensorMatrix& M);
TripleMatrix embed23(const TensorMatrix& M);
TripleMatrix triple_mul(const TripleMatrix& a, const TripleMatrix& b);

// (tr2 M)^i_j = sum_a M^{ia}_{ja}; result is dim x dim
SMat trace2(const TensorMatrix& M);

// R12 R13 R23 - R23 R13 R12
TripleMatrix qybe_residual(const TensorMatrix& R, Exec e = default_exec());

json to_json(const SMat& m);  // plain square matrix record with 0-based-free 1-based indices
SMat smat_from_json(const json& j);
json to_json(const TensorMatrix& M);
TensorMatrix tensor_from_json(const json& j);
json to_json(const TripleMatrix& M);
TripleMatrix triple_from_json(const json& j);

// short stable fingerprint of the entries, for reports
std::string fingerprint(const SMat& m);

}  // namespace qgw
