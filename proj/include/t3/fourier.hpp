#pragma once

#include "t3/tensor.hpp"

#include <vector>

namespace t3 {

/// The n complex p x q matrices D_1..D_n obtained by the unnormalized DFT
/// along mode 3; blockdiag(D_1..D_n) is the unitary-DFT similarity image of
/// bcirc of the source tensor. origin_kind records the source scalar kind;
/// for Real origin the slices satisfy D_{n+2-k} = conj(D_k), k = 2..n.
class FourierStack {
public:
    FourierStack() = default;
    FourierStack(Index rows, Index cols, Index count, ScalarKind origin);

    Index rows() const { return p_; }
    Index cols() const { return q_; }
    Index count() const { return n_; }
    ScalarKind origin_kind() const { return origin_; }

    const Matrix& slice(Index k) const { return slices_.at(static_cast<size_t>(k)); }
    Matrix& slice(Index k) { return slices_.at(static_cast<size_t>(k)); }

    /// Root-sum-square of all slice entries.
    double fro_norm() const;

    /// max over k = 2..n of ||D_{n+2-k} - conj(D_k)||_F / (1 + ||D_k||_F);
    /// zero for n == 1.
    double conjugate_symmetry_error() const;

private:
    Index p_ = 0, q_ = 0, n_ = 0;
    ScalarKind origin_ = ScalarKind::Complex;
    std::vector<Matrix> slices_;
};

/// Mode-3 forward DFT (unnormalized, fft(T,[],3) convention).
FourierStack to_fourier(const Tensor3& t);

/// Inverse mode-3 DFT (1/n scaling). For Real-origin stacks, imaginary
/// residues below cleanup_tol are zeroed and the result is marked Real;
/// residues above it raise RealnessViolated. cleanup_tol < 0 selects the
/// default 1e-9 * (1 + fro_norm of the stack).
Tensor3 from_fourier(const FourierStack& f, double cleanup_tol = -1.0);

} // namespace t3
