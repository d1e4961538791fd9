#pragma once

// Shared test oracles: naive flattened-path implementations kept independent
// of the FFT-slicewise code they check, plus seeded random builders.

#include "t3/fourier.hpp"
#include "t3/outer.hpp"
#include "t3/slice_linalg.hpp"
#include "t3/tensor.hpp"

#include <Eigen/Dense>

#include <complex>
#include <random>

namespace support {

using t3::Complex;
using t3::Index;
using t3::Matrix;
using t3::RealMatrix;
using t3::Tensor3;

// ---- independent flattened-path kernels ----

/// fold(bcirc(a) * unfold(b)): the definition-level product, no FFT involved.
inline Tensor3 naive_tprod(const Tensor3& a, const Tensor3& b) {
    const Matrix prod = t3::bcirc(a).entries * t3::unfold(b).entries;
    Tensor3 out = t3::fold(prod, a.rows(), b.cols(), a.slices());
    if (a.is_real() && b.is_real()) {
        for (Complex& z : out.data()) z = Complex(z.real(), 0.0);
        out.set_kind(t3::ScalarKind::Real);
    }
    return out;
}

/// Unitary DFT matrix (1/sqrt(n), omega = exp(-2*pi*i/n)).
inline Matrix dft_unitary(Index n) {
    Matrix f(n, n);
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    for (Index r = 0; r < n; ++r)
        for (Index c = 0; c < n; ++c) {
            const double angle = -2.0 * M_PI * static_cast<double>(r * c) / static_cast<double>(n);
            f(r, c) = scale * Complex(std::cos(angle), std::sin(angle));
        }
    return f;
}

inline Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Index i = 0; i < a.rows(); ++i)
        for (Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

inline Matrix blockdiag(const t3::FourierStack& f) {
    Matrix out = Matrix::Zero(f.rows() * f.count(), f.cols() * f.count());
    for (Index k = 0; k < f.count(); ++k)
        out.block(k * f.rows(), k * f.cols(), f.rows(), f.cols()) = f.slice(k);
    return out;
}

/// Pseudoinverse by complete orthogonal decomposition — an algorithmically
/// different route from the SVD-based library pinv.
inline Matrix cod_pinv(const Matrix& a) {
    Eigen::CompleteOrthogonalDecomposition<Matrix> cod(a);
    return cod.pseudoInverse();
}

inline long mat_rank(const Matrix& a) {
    if (a.size() == 0) return 0;
    Eigen::JacobiSVD<Matrix> svd(a);
    const auto& sv = svd.singularValues();
    if (sv.size() == 0 || sv(0) == 0.0) return 0;
    const double tol = static_cast<double>(std::max(a.rows(), a.cols())) *
                       std::numeric_limits<double>::epsilon() * sv(0);
    long r = 0;
    for (Index i = 0; i < sv.size(); ++i)
        if (sv(i) > tol) ++r;
    return r;
}

inline int mat_index(const Matrix& a, int cap = 64) {
    long prev = a.rows();
    Matrix power = a;
    for (int k = 0; k <= cap; ++k) {
        const long next = mat_rank(power);
        if (next == prev) return k;
        prev = next;
        power = power * a;
    }
    return cap;
}

inline Matrix mat_drazin(const Matrix& a) {
    const int k = std::max(mat_index(a), 1);
    Matrix ak = Matrix::Identity(a.rows(), a.cols());
    for (int j = 0; j < k; ++j) ak = ak * a;
    return ak * cod_pinv(ak * a * ak) * ak;
}

/// Largest principal angle (radians) between the column spaces of a and b.
inline double principal_angle(const Matrix& a, const Matrix& b) {
    Eigen::HouseholderQR<Matrix> qa(a), qb(b);
    const Matrix ua = Matrix(qa.householderQ()).leftCols(a.cols());
    const Matrix ub = Matrix(qb.householderQ()).leftCols(b.cols());
    Eigen::JacobiSVD<Matrix> svd(ua.adjoint() * ub);
    const double c = std::min(1.0, svd.singularValues().minCoeff());
    return std::acos(c);
}

// ---- seeded builders ----

struct Rng {
    std::mt19937_64 engine;
    explicit Rng(std::uint64_t seed) : engine(seed) {}
    double uniform() { return 2.0 * (static_cast<double>(engine() >> 11) * 0x1.0p-53) - 1.0; }
};

inline Tensor3 random_real(Index p, Index q, Index n, std::uint64_t seed) {
    Rng rng(seed);
    Tensor3 t(p, q, n, t3::ScalarKind::Real);
    for (Complex& z : t.data()) z = Complex(rng.uniform(), 0.0);
    return t;
}

inline Tensor3 random_complex(Index p, Index q, Index n, std::uint64_t seed) {
    Rng rng(seed);
    Tensor3 t(p, q, n, t3::ScalarKind::Complex);
    for (Complex& z : t.data()) z = Complex(rng.uniform(), rng.uniform());
    return t;
}

/// Rank-deficient real tensor: t-product of p x r x n and r x q x n factors.
inline Tensor3 random_rank_deficient(Index p, Index q, Index r, Index n, std::uint64_t seed) {
    return t3::tprod(random_real(p, r, n, seed), random_real(r, q, n, seed ^ 0xabcdef));
}

/// Real tensor whose Fourier slices all have exact rank s (zero tail), with
/// conjugate symmetry enforced so the tensor is real.
inline Tensor3 uniform_rank_tensor(Index m, Index s, Index n, std::uint64_t seed) {
    Rng rng(seed);
    auto random_unitary = [&](bool real_valued) {
        Matrix g(m, m);
        for (Index j = 0; j < m; ++j)
            for (Index i = 0; i < m; ++i)
                g(i, j) = real_valued ? Complex(rng.uniform(), 0)
                                      : Complex(rng.uniform(), rng.uniform());
        return Matrix(Eigen::HouseholderQR<Matrix>(g).householderQ());
    };
    auto gap_slice = [&](bool real_valued) {
        const Matrix u = random_unitary(real_valued);
        const Matrix v = random_unitary(real_valued);
        Eigen::VectorXd sv = Eigen::VectorXd::Zero(m);
        for (Index i = 0; i < s; ++i)
            sv(i) = 1.0 + static_cast<double>(s - i) / static_cast<double>(s);
        return Matrix(u * sv.asDiagonal() * v.adjoint());
    };
    t3::FourierStack f(m, m, n, t3::ScalarKind::Real);
    f.slice(0) = gap_slice(true);
    for (Index k = 1; 2 * k < n + 1; ++k) {
        if (2 * k == n) {
            f.slice(k) = gap_slice(true); // self-conjugate slice for even n
        } else {
            f.slice(k) = gap_slice(false);
            f.slice(n - k) = f.slice(k).conjugate();
        }
    }
    return t3::from_fourier(f);
}

/// Real square tensor with known Drazin inverse, built per Fourier slice as
/// V * blkdiag(diag(d), nilpotent shift) * V^-1. Returns {tensor, drazin}.
inline std::pair<Tensor3, Tensor3> jordan_pair(Index m, Index core, Index nil_index,
                                               Index n, std::uint64_t seed) {
    Rng rng(seed);
    auto build = [&](bool real_valued) -> std::pair<Matrix, Matrix> {
        Matrix v = Matrix::Identity(m, m);
        for (Index j = 0; j < m; ++j)
            for (Index i = 0; i < m; ++i)
                v(i, j) += 0.3 * (real_valued ? Complex(rng.uniform(), 0)
                                              : Complex(rng.uniform(), rng.uniform()));
        Matrix d = Matrix::Zero(m, m);
        Matrix dz = Matrix::Zero(m, m);
        for (Index i = 0; i < core; ++i) {
            const double val = 0.5 + (static_cast<double>(i) + 1.0) / static_cast<double>(core);
            d(i, i) = val;
            dz(i, i) = 1.0 / val;
        }
        for (Index i = core; i + 1 < core + nil_index && i + 1 < m; ++i) d(i, i + 1) = 1.0;
        const Matrix vinv = v.partialPivLu().inverse();
        return {v * d * vinv, v * dz * vinv};
    };
    t3::FourierStack fa(m, m, n, t3::ScalarKind::Real);
    t3::FourierStack fd(m, m, n, t3::ScalarKind::Real);
    auto assign = [&](Index k, bool real_valued) {
        auto [a, dz] = build(real_valued);
        fa.slice(k) = a;
        fd.slice(k) = dz;
    };
    assign(0, true);
    for (Index k = 1; 2 * k < n + 1; ++k) {
        if (2 * k == n) {
            assign(k, true);
        } else {
            assign(k, false);
            fa.slice(n - k) = fa.slice(k).conjugate();
            fd.slice(n - k) = fd.slice(k).conjugate();
        }
    }
    return {t3::from_fourier(fa), t3::from_fourier(fd)};
}

inline double rel_scale(const Tensor3& s, const Tensor3& x) {
    return 1.0 + t3::fro_norm(s) + t3::fro_norm(x) + t3::fro_norm(s) * t3::fro_norm(x);
}

inline double max_abs_diff(const Tensor3& a, const Tensor3& b) {
    double worst = 0.0;
    for (size_t i = 0; i < a.data().size(); ++i)
        worst = std::max(worst, std::abs(a.data()[i] - b.data()[i]));
    return worst;
}

} // namespace support
