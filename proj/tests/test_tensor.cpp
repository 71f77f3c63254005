#include <gtest/gtest.h>

#include "qgw/kernels.hpp"
#include "qgw/tensor.hpp"
#include "support.hpp"

using namespace qgw;
using namespace qgw::testing_support;

TEST(Tensor, TransposeInvolutions)
{
    Rng g(11);
    for (int it = 0; it < 30; ++it) {
        TensorMatrix M = random_tensor(g, 2 + it % 3);
        EXPECT_EQ(transpose_t(transpose_t(M)), M);
        EXPECT_EQ(transpose_t1(transpose_t1(M)), M);
        EXPECT_EQ(transpose_t2(transpose_t2(M)), M);
        EXPECT_EQ(transpose_t1(transpose_t2(M)), transpose_t(M));
        EXPECT_EQ(conjugate_p(conjugate_p(M)), M);
    }
}

TEST(Tensor, PermutationSquaresToIdentity)
{
    for (int d = 1; d <= 4; ++d)
        EXPECT_EQ(matrix_mul(permutation(d), permutation(d)), identity(d));
}

TEST(Tensor, SerialAndParallelKernelsAgree)
{
    Rng g(12345);
    for (int it = 0; it < 10; ++it) {
        SMat a = random_smat(g, 27, 0.15), b = random_smat(g, 27, 0.15), c = random_smat(g, 27, 0.15);
        EXPECT_EQ(spgemm_serial(a, b), spgemm_parallel(a, b));
        SMat s = triple_product_serial(a, b, c);
        EXPECT_EQ(s, triple_product_parallel(a, b, c));
        EXPECT_EQ(s, spgemm_serial(spgemm_serial(a, b), c));
    }
}

TEST(Tensor, InverseOfUnitriangular)
{
    Rng g(5);
    for (int it = 0; it < 10; ++it) {
        SMat m = SMat::identity(9);
        for (size_t r = 0; r < 9; ++r)
            for (size_t c = r + 1; c < 9; ++c)
                if ((r + c + it) % 3 == 0)
                    m.set(r, c, random_coeff(g));
        TensorMatrix M(3, m);
        EXPECT_EQ(matrix_mul(M, invert(M)), identity(3));
    }
    EXPECT_THROW(invert(TensorMatrix(2)), SingularMatrix);
}

TEST(Tensor, EmbeddingsAreMultiplicative)
{
    Rng g(3);
    TensorMatrix A = random_tensor(g, 2, 0.5);
    TensorMatrix B = random_tensor(g, 2, 0.5);
    EXPECT_EQ(triple_mul(embed12(A), embed12(B)), embed12(matrix_mul(A, B)));
    EXPECT_EQ(triple_mul(embed23(A), embed23(B)), embed23(matrix_mul(A, B)));
    EXPECT_EQ(triple_mul(embed13(A), embed13(B)), embed13(matrix_mul(A, B)));
}

TEST(Tensor, MismatchedDimensionsThrow)
{
    EXPECT_THROW(matrix_mul(identity(2), identity(3)), DimensionMismatch);
}

TEST(Tensor, JsonRoundTrip)
{
    Rng g(77);
    for (int it = 0; it < 20; ++it) {
        TensorMatrix M = random_tensor(g, 2 + it % 3);
        json j = to_json(M);
        TensorMatrix back = tensor_from_json(j);
        EXPECT_EQ(back, M);
        EXPECT_EQ(to_json(back).dump(), j.dump());
        EXPECT_EQ(fingerprint(back.m), fingerprint(M.m));
    }
}
