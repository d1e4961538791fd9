#pragma once

#include "t3/config.hpp"
#include "t3/errors.hpp"

#include <cstdint>

namespace t3 {

/// Column-pivoted QR triple A * P = Q * R with the numerical rank s revealed
/// by the |R_ii| decay. perm[j] is the source column of A placed at pivoted
/// position j, i.e. (A*P).col(j) == A.col(perm[j]).
struct PivotedQr {
    Matrix q;            // m x m unitary
    Matrix r;            // m x n upper trapezoidal
    Eigen::VectorXi perm;
    Index s = 0;

    /// Dense n x n permutation matrix P.
    Matrix permutation() const;
};

/// Singular values of a (descending).
Eigen::VectorXd singular_values(const Eigen::Ref<const Matrix>& a);

/// Count of singular values above the rank threshold. sigma_ref < 0 anchors
/// the threshold at the matrix's own largest singular value.
long svd_rank(const Eigen::Ref<const Matrix>& a,
              const RankTolerance& tol = RankTolerance::global(),
              double sigma_ref = -1.0);

/// Moore-Penrose inverse via SVD truncated at the rank threshold.
Matrix pinv(const Eigen::Ref<const Matrix>& a,
            const RankTolerance& tol = RankTolerance::global(),
            double sigma_ref = -1.0);

/// A {1}-inverse of a (here the Moore-Penrose inverse, which is a
/// {1,2,3,4}-inverse and makes downstream results deterministic).
Matrix one_inverse(const Eigen::Ref<const Matrix>& a,
                   const RankTolerance& tol = RankTolerance::global(),
                   double sigma_ref = -1.0);

/// LU-based inverse/solve for square numerically nonsingular a; throws Singular.
Matrix lu_inverse(const Eigen::Ref<const Matrix>& a);
Matrix lu_solve(const Eigen::Ref<const Matrix>& a, const Eigen::Ref<const Matrix>& b);

/// Householder QR with Businger-Golub column pivoting. s is set where |R_ii|
/// first drops to or below the threshold anchored at sigma_ref (default |R_11|).
PivotedQr qrcp(const Eigen::Ref<const Matrix>& a,
               const RankTolerance& tol = RankTolerance::global(),
               double sigma_ref = -1.0);

/// Randomized QRCP: pivot order taken from a QRCP of the sketch omega * a,
/// then an unpivoted Householder QR of the pivoted columns of a; s = k.
/// omega must be (k + oversample) x rows(a) with iid N(0,1) entries.
PivotedQr rand_qrcp(const Eigen::Ref<const Matrix>& a, Index k, const RealMatrix& omega);

/// Same, drawing the sketch from a seeded generator; throws InvalidRank for
/// k outside [1, min(m, n)].
PivotedQr rand_qrcp(const Eigen::Ref<const Matrix>& a, Index k, Index oversample,
                    std::uint64_t seed);

} // namespace t3
