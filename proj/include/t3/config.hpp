#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <functional>
#include <random>

namespace t3 {

using Index = Eigen::Index;
using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using RealMatrix = Eigen::MatrixXd;

enum class ScalarKind { Real, Complex };

/// Numerical-rank tolerance policy.
///
/// A singular value (or pivoted-QR diagonal) counts toward the rank when it
/// exceeds threshold(rows, cols, sigma_ref). `rel < 0` selects the default
/// max(rows, cols) * eps scaling; otherwise `rel` is the relative factor.
/// sigma_ref is the spectral scale the decision is anchored to: slice kernels
/// default to the matrix's own largest singular value, tensor-level operations
/// pass the largest singular value over all Fourier slices so that slice ranks
/// stay consistent with rank(bcirc).
struct RankTolerance {
    double rel = -1.0;

    double threshold(Index rows, Index cols, double sigma_ref) const;

    /// Process-wide default, settable from the CLI (--tol) or T3_RANK_TOL.
    static RankTolerance& global();
};

namespace config {

/// Worker-thread count for slicewise loops: 1 = serial (default), 0 = auto.
int& threads();

} // namespace config

/// Runs fn(0..count-1), possibly on several threads. Exceptions thrown by fn
/// are captured and rethrown on the calling thread (first one wins).
void parallel_for(Index count, const std::function<void(Index)>& fn);

/// Deterministic standard-normal sampler. The mt19937_64 bit stream is fixed
/// by the standard; Box-Muller is applied here because std::normal_distribution
/// is implementation-defined and not reproducible across standard libraries.
class GaussianSampler {
public:
    explicit GaussianSampler(std::uint64_t seed);

    double operator()();

    /// rows x cols matrix of iid N(0,1) draws, column-major fill order.
    RealMatrix matrix(Index rows, Index cols);

    /// Uniform draw in [0, 1) from the raw bit stream.
    double uniform01();

private:
    std::mt19937_64 engine_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

} // namespace t3
