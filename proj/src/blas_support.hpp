#pragma once

// Internal helpers for the flattened dense-matrix path: BLAS-backed real GEMM
// and a full-rank-Cholesky pseudoinverse, fast enough for bcirc images in the
// thousands. Not part of the public API.

#include "t3/tensor.hpp"

namespace t3::detail {

/// C = op_a(A) * op_b(B), op in {'N', 'T'}; dgemm underneath.
RealMatrix blas_mul(const RealMatrix& a, const RealMatrix& b, char op_a = 'N', char op_b = 'N');

/// Real pn x qn block-circulant image of a Real tensor.
RealMatrix bcirc_real(const Tensor3& t);

/// Moore-Penrose inverse of a real matrix via pivoted Cholesky of A^T A
/// (full-rank Cholesky route); GEMM-dominated, rank-revealing.
RealMatrix real_pinv_cholesky(const RealMatrix& a);

/// Numerical rank from the pivoted-QR diagonal decay of a real matrix.
long real_rank_qr(const RealMatrix& a, double rel_tol);

} // namespace t3::detail
