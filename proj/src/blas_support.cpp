#include "blas_support.hpp"

#include <lapacke.h>

#include <Eigen/Dense>

#include <string>
#include <vector>

extern "C" {
void dgemm_(const char*, const char*, const int*, const int*, const int*,
            const double*, const double*, const int*, const double*, const int*,
            const double*, double*, const int*);
}

namespace t3::detail {

RealMatrix blas_mul(const RealMatrix& a, const RealMatrix& b, char op_a, char op_b) {
    const int m = static_cast<int>(op_a == 'N' ? a.rows() : a.cols());
    const int k = static_cast<int>(op_a == 'N' ? a.cols() : a.rows());
    const int kb = static_cast<int>(op_b == 'N' ? b.rows() : b.cols());
    const int n = static_cast<int>(op_b == 'N' ? b.cols() : b.rows());
    if (k != kb) throw DimensionMismatch("blas_mul: inner dimensions disagree");
    RealMatrix c(m, n);
    const double one = 1.0, zero = 0.0;
    const int lda = static_cast<int>(a.rows()), ldb = static_cast<int>(b.rows());
    dgemm_(&op_a, &op_b, &m, &n, &k, &one, a.data(), &lda, b.data(), &ldb, &zero, c.data(), &m);
    return c;
}

RealMatrix bcirc_real(const Tensor3& t) {
    if (!t.is_real()) throw DimensionMismatch("bcirc_real: tensor must be Real");
    const Index p = t.rows(), q = t.cols(), n = t.slices();
    RealMatrix out(p * n, q * n);
    std::vector<RealMatrix> slices(static_cast<size_t>(n));
    for (Index k = 0; k < n; ++k) slices[static_cast<size_t>(k)] = t.slice(k).real();
    for (Index bi = 0; bi < n; ++bi)
        for (Index bj = 0; bj < n; ++bj)
            out.block(bi * p, bj * q, p, q) = slices[static_cast<size_t>(((bi - bj) % n + n) % n)];
    return out;
}

RealMatrix real_pinv_cholesky(const RealMatrix& a) {
    const int m = static_cast<int>(a.rows());
    const int n = static_cast<int>(a.cols());
    RealMatrix g = blas_mul(a, a, 'T', 'N'); // n x n PSD

    std::vector<int> piv(static_cast<size_t>(n));
    int rank = 0;
    const int info = LAPACKE_dpstrf(LAPACK_COL_MAJOR, 'L', n, g.data(), n, piv.data(), &rank,
                                    -1.0);
    if (info < 0)
        throw Error("real_pinv_cholesky: dpstrf failed with info " + std::to_string(info));
    if (rank == 0) return RealMatrix::Zero(n, m);

    // Undo the pivoting: row piv[i]-1 of the unpermuted factor is row i of L.
    RealMatrix l = RealMatrix::Zero(n, rank);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < std::min(i + 1, rank); ++j) l(piv[static_cast<size_t>(i)] - 1, j) = g(i, j);

    const RealMatrix msmall = blas_mul(l, l, 'T', 'N'); // rank x rank
    const RealMatrix k = blas_mul(a, l);                // m x rank
    Eigen::LLT<RealMatrix> llt(msmall);
    RealMatrix z = llt.solve(k.transpose());
    z = llt.solve(z);
    return blas_mul(l, z); // n x m
}

long real_rank_qr(const RealMatrix& a, double rel_tol) {
    Eigen::ColPivHouseholderQR<RealMatrix> qr(a);
    const RealMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    const Index diag = std::min(r.rows(), r.cols());
    if (diag == 0) return 0;
    const double head = std::abs(r(0, 0));
    long rank = 0;
    for (Index i = 0; i < diag; ++i) {
        if (std::abs(r(i, i)) <= rel_tol * head) break;
        ++rank;
    }
    return rank;
}

} // namespace t3::detail
