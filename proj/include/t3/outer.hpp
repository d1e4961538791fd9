#pragma once

#include "t3/fourier.hpp"
#include "t3/tensor.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace t3 {

enum class Method { Direct, Qr, RandQr };

/// Which range/kernel prescription produced an outer inverse.
struct Prescription {
    enum class Kind { RangeOnly, NullOnly, RangeNull, QrFrom, MoorePenrose, Group, Drazin };
    Kind kind;
    int drazin_index = 0; // k for Kind::Drazin / Kind::Group

    std::string describe() const;
};

/// Computed outer inverse plus the evidence behind it: every rank equality the
/// governing existence condition demanded (recorded pairs are equal on
/// success), the absolute rank threshold used, and — when the construction
/// yields one — the witness W with inverse == T*W (range side) or W*T (null
/// side).
struct OuterResult {
    Tensor3 inverse;
    Prescription prescription;
    std::vector<std::pair<std::string, long>> ranks_checked;
    double tolerance_used = 0.0;
    Method method = Method::Direct;
    std::optional<Tensor3> range_witness;
    std::optional<Tensor3> null_witness;
};

/// Rank-s t-QR partition of a tensor with uniform Fourier-slice rank s:
/// qtil * rtil * t_transpose(perm) reconstructs the input and
/// t_transpose(qtil) * qtil is the s x s identity tensor.
struct TqrPartition {
    Tensor3 qtil;
    Tensor3 rtil;
    Tensor3 perm;
    Index s = 0;
};

/// Parameters of the randomized t-QR path: target rank k per slice (or a
/// per-slice override), Gaussian sketch size k + oversample, explicit seed.
struct RandQrOptions {
    Index k = 0;
    Index oversample = 10;
    std::uint64_t seed = 0;
    std::vector<Index> per_slice_k = {};
};

/// rank_t(s * t) == rank_t(t): existence of the outer inverse with range
/// prescribed by t.
bool exists_range(const Tensor3& s, const Tensor3& t,
                  const RankTolerance& tol = RankTolerance::global());

/// rank_t(t * s) == rank_t(t): existence of the outer inverse with kernel
/// prescribed by t.
bool exists_null(const Tensor3& s, const Tensor3& t,
                 const RankTolerance& tol = RankTolerance::global());

/// X = t * (s*t)^(1) with range(X) = range(t); throws ExistenceFailed when the
/// rank condition fails.
OuterResult outer_range(const Tensor3& s, const Tensor3& t,
                        const RankTolerance& tol = RankTolerance::global());

/// X = (t*s)^(1) * t with null(X) = null(t).
OuterResult outer_null(const Tensor3& s, const Tensor3& t,
                       const RankTolerance& tol = RankTolerance::global());

/// X = b * (c*t*b)^(1) * c with range(X) = range(b), null(X) = null(c);
/// requires rank_t(c*t*b) == rank_t(b) == rank_t(c).
OuterResult outer_range_null(const Tensor3& t, const Tensor3& b, const Tensor3& c,
                             const RankTolerance& tol = RankTolerance::global());

/// Member of the range-prescribed outer-inverse family for an arbitrary z:
/// t*(s*t)^(1) + t*z - t*z*s*t*(s*t)^(1).
Tensor3 representation_range(const Tensor3& s, const Tensor3& t, const Tensor3& z,
                             const RankTolerance& tol = RankTolerance::global());

/// Null-side dual: (t*s)^(1)*t + z*t - (t*s)^(1)*t*s*z*t.
Tensor3 representation_null(const Tensor3& s, const Tensor3& t, const Tensor3& z,
                            const RankTolerance& tol = RankTolerance::global());

/// Moore-Penrose inverse: per-Fourier-slice pinv; equals
/// outer_range_null(s, t_transpose(s), t_transpose(s)).
OuterResult moore_penrose(const Tensor3& s,
                          const RankTolerance& tol = RankTolerance::global());

/// Drazin inverse: k = t_index(t), X = outer_range_null(t, t^k, t^k).
OuterResult drazin(const Tensor3& t, const RankTolerance& tol = RankTolerance::global());

/// Group inverse (Drazin with t_index(t) <= 1); throws IndexTooLarge otherwise.
OuterResult group_inverse(const Tensor3& t,
                          const RankTolerance& tol = RankTolerance::global());

/// Deterministic t-QR with column pivoting: per-slice QRCP in the Fourier
/// domain, partitioned at the uniform slice rank s. Throws NonUniformRank
/// (with the per-slice rank vector) when slices disagree.
TqrPartition t_qrcp(const Tensor3& t, const RankTolerance& tol = RankTolerance::global());

/// Randomized t-QR: pivot orders from per-slice Gaussian sketches (one shared
/// sketch matrix, so real inputs keep conjugate symmetry); s = options.k.
TqrPartition t_qrcp(const Tensor3& t, const RandQrOptions& options);

/// Outer inverse with range and kernel both prescribed by t, via the t-QR
/// partition: X = qtil * (qtil^T * t * s * qtil)^-1 * qtil^T * t. The middle
/// inverse is taken per Fourier slice; a singular middle slice means the
/// prescription is not realizable and raises ExistenceFailed.
OuterResult outer_qr(const Tensor3& s, const Tensor3& t,
                     const RankTolerance& tol = RankTolerance::global());

/// Randomized variant (Gaussian-sketched pivot selection, target rank k).
OuterResult outer_qr(const Tensor3& s, const Tensor3& t, const RandQrOptions& options,
                     const RankTolerance& tol = RankTolerance::global());

/// Equivalent form through the triangular factor,
/// X = qtil * (rtil * P^T * s * qtil)^-1 * rtil * P^T; kept as a second
/// algebraic route for cross-validation.
Tensor3 outer_qr_via_triangular(const Tensor3& s, const TqrPartition& part,
                                const RankTolerance& tol = RankTolerance::global());

} // namespace t3
