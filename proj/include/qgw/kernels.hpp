#pragma once

// Sparse product kernels. The serial versions are the reference; the OpenMP
// versions split work by output row and produce identical results.

#include "qgw/tensor.hpp"

namespace qgw {

SMat spgemm_serial(const SMat& a, const SMat& b);
SMat spgemm_parallel(const SMat& a, const SMat& b);
SMat spgemm(const SMat& a, const SMat& b, Exec e);

// a * b * c, the shape of every Yang-Baxter-type check
SMat triple_product_serial(const SMat& a, const SMat& b, const SMat& c);
SMat triple_product_parallel(const SMat& a, const SMat& b, const SMat& c);
SMat triple_product(const SMat& a, const SMat& b, const SMat& c, Exec e);

int kernel_threads();

}  // namespace qgw
