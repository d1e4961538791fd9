#pragma once

#include "t3/config.hpp"
#include "t3/errors.hpp"

#include <vector>

namespace t3 {

/// Dense third-order tensor of shape p x q x n over real or complex scalars.
///
/// Storage is slice-major with column-major entries inside each frontal slice,
/// so slice(k) is a contiguous zero-copy view and the length-n fibers along
/// mode 3 are strided by p*q. Entries are held as complex doubles; when
/// kind() == ScalarKind::Real every stored imaginary part is exactly zero.
/// Values are immutable in spirit: all operations below are pure functions.
class Tensor3 {
public:
    Tensor3() = default;

    /// Zero tensor of the given shape.
    Tensor3(Index rows, Index cols, Index slices, ScalarKind kind = ScalarKind::Real);

    /// Identity tensor: slice 1 is I_m, slices 2..n are zero.
    static Tensor3 identity(Index m, Index slices);

    /// Builds a tensor from explicit frontal slices (all of one shape).
    static Tensor3 from_slices(const std::vector<Matrix>& slices,
                               ScalarKind kind = ScalarKind::Complex);
    static Tensor3 from_real_slices(const std::vector<RealMatrix>& slices);

    Index rows() const { return p_; }
    Index cols() const { return q_; }
    Index slices() const { return n_; }
    Index size() const { return p_ * q_ * n_; }
    ScalarKind kind() const { return kind_; }
    bool is_real() const { return kind_ == ScalarKind::Real; }

    const Complex& operator()(Index i, Index j, Index k) const;
    Complex& operator()(Index i, Index j, Index k);

    /// Contiguous view of frontal slice k (0-based).
    Eigen::Map<const Matrix> slice(Index k) const;
    Eigen::Map<Matrix> slice(Index k);

    /// Overwrites slice k; enforces the zero-imaginary invariant for Real tensors.
    void set_slice(Index k, const Eigen::Ref<const Matrix>& values);

    const std::vector<Complex>& data() const { return data_; }
    std::vector<Complex>& data() { return data_; }

    /// Marks the tensor Complex (no value change) or, when every imaginary
    /// part is exactly zero, Real.
    void set_kind(ScalarKind kind);

    bool same_shape(const Tensor3& other) const {
        return p_ == other.p_ && q_ == other.q_ && n_ == other.n_;
    }

private:
    Index p_ = 0, q_ = 0, n_ = 0;
    ScalarKind kind_ = ScalarKind::Real;
    std::vector<Complex> data_;
};

Tensor3 operator+(const Tensor3& a, const Tensor3& b);
Tensor3 operator-(const Tensor3& a, const Tensor3& b);
Tensor3 operator*(Complex scalar, const Tensor3& t);
Tensor3 operator*(double scalar, const Tensor3& t);

/// Dense matrix carrying the (p, q, n) provenance of the tensor it was
/// flattened from; block_count == 0 means no provenance.
struct BlockMatrix {
    Matrix entries;
    Index block_rows = 0;
    Index block_cols = 0;
    Index block_count = 0;

    Index rows() const { return entries.rows(); }
    Index cols() const { return entries.cols(); }
};

/// pn x qn block-circulant matrix: first block column stacks the frontal
/// slices, block column j is the cyclic downshift of column j-1.
BlockMatrix bcirc(const Tensor3& t);

/// Stacks the frontal slices vertically into a pn x q matrix.
BlockMatrix unfold(const Tensor3& t);

/// Inverse of unfold; m must be pn x q.
Tensor3 fold(const BlockMatrix& m, Index p, Index q, Index n);
Tensor3 fold(const Eigen::Ref<const Matrix>& m, Index p, Index q, Index n);

/// Reads the first block column of a pn x qn matrix back into a tensor.
/// With strict = true the remaining block columns are checked against the
/// circulant structure and a deviation above tol (Frobenius, relative)
/// raises DimensionMismatch.
Tensor3 bcirc_inv(const BlockMatrix& m, Index p, Index q, Index n,
                  bool strict = false, double tol = 1e-12);
Tensor3 bcirc_inv(const Eigen::Ref<const Matrix>& m, Index p, Index q, Index n,
                  bool strict = false, double tol = 1e-12);

/// t-product fold(bcirc(a) * unfold(b)), computed slicewise in the Fourier
/// domain.
Tensor3 tprod(const Tensor3& a, const Tensor3& b);

/// Tensor adjoint: bcirc(t_transpose(t)) == bcirc(t)^H. Conjugate-transposes
/// every slice and reverses the order of slices 2..n.
Tensor3 t_transpose(const Tensor3& t);

Tensor3 identity_tensor(Index m, Index slices);

/// Inverse tensor of a square-sliced t (every Fourier slice nonsingular).
/// Throws Singular otherwise.
Tensor3 t_inverse(const Tensor3& t, const RankTolerance& tol = RankTolerance::global());

/// Entrywise Frobenius norm (no sqrt(n) factor; note
/// fro_norm(t) * sqrt(n) == ||bcirc(t)||_F).
double fro_norm(const Tensor3& t);

/// Largest singular value over the Fourier slices == ||bcirc(t)||_2.
double spec_norm(const Tensor3& t);

/// spec_norm(t) * spec_norm(t_inverse(t)); throws Singular with t_inverse.
double cond(const Tensor3& t, const RankTolerance& tol = RankTolerance::global());

/// Sum of the numerical ranks of the Fourier slices == rank(bcirc(t)),
/// all slices ranked against the shared spectral anchor.
long t_rank(const Tensor3& t, const RankTolerance& tol = RankTolerance::global());

/// max_k ind(D_k) == ind(bcirc(t)); per-slice index by power-rank stagnation,
/// capped at the slice dimension.
int t_index(const Tensor3& t, const RankTolerance& tol = RankTolerance::global());

/// Repeated t-product; k == 0 yields the identity tensor.
Tensor3 t_power(const Tensor3& t, int k);

} // namespace t3
