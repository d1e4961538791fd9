#include "t3/slice_linalg.hpp"

#include <Eigen/Dense>

#include <algorithm>

namespace t3 {

namespace {

// Jacobi is the more accurate choice for tiny slices, divide-and-conquer
// scales better above that.
constexpr Index kBdcThreshold = 32;

struct ThinSvd {
    Matrix u;
    Eigen::VectorXd sigma;
    Matrix v;
};

ThinSvd thin_svd(const Eigen::Ref<const Matrix>& a) {
    if (std::max(a.rows(), a.cols()) < kBdcThreshold) {
        Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
        return {svd.matrixU(), svd.singularValues(), svd.matrixV()};
    }
    Eigen::BDCSVD<Matrix> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
    return {svd.matrixU(), svd.singularValues(), svd.matrixV()};
}

} // namespace

Matrix PivotedQr::permutation() const {
    const Index n = perm.size();
    Matrix p = Matrix::Zero(n, n);
    for (Index j = 0; j < n; ++j) p(perm(j), j) = Complex(1, 0);
    return p;
}

Eigen::VectorXd singular_values(const Eigen::Ref<const Matrix>& a) {
    if (std::max(a.rows(), a.cols()) < kBdcThreshold)
        return Eigen::JacobiSVD<Matrix>(a).singularValues();
    return Eigen::BDCSVD<Matrix>(a).singularValues();
}

long svd_rank(const Eigen::Ref<const Matrix>& a, const RankTolerance& tol, double sigma_ref) {
    const Eigen::VectorXd sv = singular_values(a);
    if (sv.size() == 0) return 0;
    const double threshold = tol.threshold(a.rows(), a.cols(), sigma_ref < 0 ? sv(0) : sigma_ref);
    long rank = 0;
    for (Index i = 0; i < sv.size(); ++i)
        if (sv(i) > threshold) ++rank;
    return rank;
}

Matrix pinv(const Eigen::Ref<const Matrix>& a, const RankTolerance& tol, double sigma_ref) {
    const ThinSvd svd = thin_svd(a);
    if (svd.sigma.size() == 0) return Matrix::Zero(a.cols(), a.rows());
    const double threshold =
        tol.threshold(a.rows(), a.cols(), sigma_ref < 0 ? svd.sigma(0) : sigma_ref);
    Eigen::VectorXd inv = Eigen::VectorXd::Zero(svd.sigma.size());
    for (Index i = 0; i < svd.sigma.size(); ++i)
        if (svd.sigma(i) > threshold) inv(i) = 1.0 / svd.sigma(i);
    return svd.v * inv.asDiagonal() * svd.u.adjoint();
}

Matrix one_inverse(const Eigen::Ref<const Matrix>& a, const RankTolerance& tol,
                   double sigma_ref) {
    return pinv(a, tol, sigma_ref);
}

Matrix lu_inverse(const Eigen::Ref<const Matrix>& a) {
    if (a.rows() != a.cols()) throw DimensionMismatch("lu_inverse: matrix must be square");
    Eigen::FullPivLU<Matrix> lu(a);
    if (!lu.isInvertible())
        throw Singular("lu_inverse: matrix numerically singular (rank " +
                       std::to_string(lu.rank()) + " of " + std::to_string(a.rows()) + ")");
    return lu.inverse();
}

Matrix lu_solve(const Eigen::Ref<const Matrix>& a, const Eigen::Ref<const Matrix>& b) {
    if (a.rows() != a.cols()) throw DimensionMismatch("lu_solve: matrix must be square");
    if (a.rows() != b.rows()) throw DimensionMismatch("lu_solve: right-hand side rows mismatch");
    Eigen::FullPivLU<Matrix> lu(a);
    if (!lu.isInvertible())
        throw Singular("lu_solve: matrix numerically singular (rank " +
                       std::to_string(lu.rank()) + " of " + std::to_string(a.rows()) + ")");
    return lu.solve(b);
}

PivotedQr qrcp(const Eigen::Ref<const Matrix>& a, const RankTolerance& tol, double sigma_ref) {
    const Index m = a.rows(), n = a.cols();
    Eigen::ColPivHouseholderQR<Matrix> qr(a);
    PivotedQr out;
    out.q = qr.householderQ() * Matrix::Identity(m, m);
    out.r = qr.matrixQR().triangularView<Eigen::Upper>();
    // Eigen stores P(indices(j), j) = 1, so (A*P).col(j) == A.col(indices(j)).
    out.perm = qr.colsPermutation().indices();
    const Index diag = std::min(m, n);
    const double head = diag > 0 ? std::abs(out.r(0, 0)) : 0.0;
    const double threshold = tol.threshold(m, n, sigma_ref < 0 ? head : sigma_ref);
    out.s = 0;
    for (Index i = 0; i < diag; ++i) {
        if (std::abs(out.r(i, i)) <= threshold) break; // first drop ends the rank block
        ++out.s;
    }
    return out;
}

PivotedQr rand_qrcp(const Eigen::Ref<const Matrix>& a, Index k, const RealMatrix& omega) {
    const Index m = a.rows(), n = a.cols();
    if (k < 1 || k > std::min(m, n))
        throw InvalidRank("rand_qrcp: target rank " + std::to_string(k) +
                          " outside [1, " + std::to_string(std::min(m, n)) + "]");
    if (omega.cols() != m)
        throw DimensionMismatch("rand_qrcp: sketch has " + std::to_string(omega.cols()) +
                                " columns, expected " + std::to_string(m));
    const Matrix sketch = omega.cast<Complex>() * a;
    Eigen::ColPivHouseholderQR<Matrix> pilot(sketch);
    const Eigen::VectorXi perm = pilot.colsPermutation().indices();

    Matrix pivoted(m, n);
    for (Index j = 0; j < n; ++j) pivoted.col(j) = a.col(perm(j));
    Eigen::HouseholderQR<Matrix> qr(pivoted);
    PivotedQr out;
    out.q = qr.householderQ() * Matrix::Identity(m, m);
    out.r = qr.matrixQR().triangularView<Eigen::Upper>();
    out.perm = perm;
    out.s = k;
    return out;
}

PivotedQr rand_qrcp(const Eigen::Ref<const Matrix>& a, Index k, Index oversample,
                    std::uint64_t seed) {
    if (k < 1 || k > std::min(a.rows(), a.cols()))
        throw InvalidRank("rand_qrcp: target rank " + std::to_string(k) +
                          " outside [1, " + std::to_string(std::min(a.rows(), a.cols())) + "]");
    GaussianSampler gauss(seed);
    return rand_qrcp(a, k, gauss.matrix(k + oversample, a.rows()));
}

} // namespace t3
