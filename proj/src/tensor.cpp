#include "t3/tensor.hpp"

#include "t3/fourier.hpp"
#include "t3/slice_linalg.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace t3 {

namespace {

void require(bool cond, const std::string& msg) {
    if (!cond) throw DimensionMismatch(msg);
}

std::string shape_str(const Tensor3& t) {
    std::ostringstream os;
    os << t.rows() << "x" << t.cols() << "x" << t.slices();
    return os.str();
}

bool all_imag_zero(const std::vector<Complex>& data) {
    for (const Complex& z : data)
        if (z.imag() != 0.0) return false;
    return true;
}

} // namespace

Tensor3::Tensor3(Index rows, Index cols, Index slices, ScalarKind kind)
    : p_(rows), q_(cols), n_(slices), kind_(kind),
      data_(static_cast<size_t>(rows * cols * slices), Complex(0, 0)) {
    if (rows <= 0 || cols <= 0 || slices <= 0)
        throw DimensionMismatch("tensor dimensions must be positive");
}

Tensor3 Tensor3::identity(Index m, Index slices) {
    Tensor3 t(m, m, slices, ScalarKind::Real);
    for (Index i = 0; i < m; ++i) t(i, i, 0) = Complex(1, 0);
    return t;
}

Tensor3 Tensor3::from_slices(const std::vector<Matrix>& slices, ScalarKind kind) {
    if (slices.empty()) throw DimensionMismatch("at least one frontal slice required");
    const Index p = slices.front().rows(), q = slices.front().cols();
    Tensor3 t(p, q, static_cast<Index>(slices.size()), ScalarKind::Complex);
    for (size_t k = 0; k < slices.size(); ++k)
        t.set_slice(static_cast<Index>(k), slices[k]);
    t.set_kind(kind);
    return t;
}

Tensor3 Tensor3::from_real_slices(const std::vector<RealMatrix>& slices) {
    if (slices.empty()) throw DimensionMismatch("at least one frontal slice required");
    std::vector<Matrix> complex_slices;
    complex_slices.reserve(slices.size());
    for (const auto& s : slices) complex_slices.push_back(s.cast<Complex>());
    return from_slices(complex_slices, ScalarKind::Real);
}

const Complex& Tensor3::operator()(Index i, Index j, Index k) const {
    return data_[static_cast<size_t>(k * p_ * q_ + j * p_ + i)];
}

Complex& Tensor3::operator()(Index i, Index j, Index k) {
    return data_[static_cast<size_t>(k * p_ * q_ + j * p_ + i)];
}

Eigen::Map<const Matrix> Tensor3::slice(Index k) const {
    return {data_.data() + k * p_ * q_, p_, q_};
}

Eigen::Map<Matrix> Tensor3::slice(Index k) {
    return {data_.data() + k * p_ * q_, p_, q_};
}

void Tensor3::set_slice(Index k, const Eigen::Ref<const Matrix>& values) {
    require(values.rows() == p_ && values.cols() == q_, "slice shape mismatch");
    if (kind_ == ScalarKind::Real && (values.imag().array() != 0.0).any())
        throw DimensionMismatch("nonzero imaginary part assigned to a Real tensor");
    slice(k) = values;
}

void Tensor3::set_kind(ScalarKind kind) {
    if (kind == ScalarKind::Real && !all_imag_zero(data_))
        throw DimensionMismatch("cannot mark tensor Real: imaginary parts present");
    kind_ = kind;
}

Tensor3 operator+(const Tensor3& a, const Tensor3& b) {
    if (!a.same_shape(b)) throw DimensionMismatch("tensor addition shape mismatch");
    Tensor3 out(a.rows(), a.cols(), a.slices(),
                (a.is_real() && b.is_real()) ? ScalarKind::Real : ScalarKind::Complex);
    for (size_t i = 0; i < out.data().size(); ++i) out.data()[i] = a.data()[i] + b.data()[i];
    return out;
}

Tensor3 operator-(const Tensor3& a, const Tensor3& b) {
    if (!a.same_shape(b)) throw DimensionMismatch("tensor subtraction shape mismatch");
    Tensor3 out(a.rows(), a.cols(), a.slices(),
                (a.is_real() && b.is_real()) ? ScalarKind::Real : ScalarKind::Complex);
    for (size_t i = 0; i < out.data().size(); ++i) out.data()[i] = a.data()[i] - b.data()[i];
    return out;
}

Tensor3 operator*(Complex scalar, const Tensor3& t) {
    Tensor3 out(t.rows(), t.cols(), t.slices(),
                (t.is_real() && scalar.imag() == 0.0) ? ScalarKind::Real : ScalarKind::Complex);
    for (size_t i = 0; i < out.data().size(); ++i) out.data()[i] = scalar * t.data()[i];
    return out;
}

Tensor3 operator*(double scalar, const Tensor3& t) { return Complex(scalar, 0) * t; }

BlockMatrix bcirc(const Tensor3& t) {
    const Index p = t.rows(), q = t.cols(), n = t.slices();
    BlockMatrix out{Matrix(p * n, q * n), p, q, n};
    for (Index bi = 0; bi < n; ++bi)
        for (Index bj = 0; bj < n; ++bj)
            out.entries.block(bi * p, bj * q, p, q) = t.slice(((bi - bj) % n + n) % n);
    return out;
}

BlockMatrix unfold(const Tensor3& t) {
    const Index p = t.rows(), q = t.cols(), n = t.slices();
    BlockMatrix out{Matrix(p * n, q), p, q, n};
    for (Index k = 0; k < n; ++k) out.entries.block(k * p, 0, p, q) = t.slice(k);
    return out;
}

Tensor3 fold(const Eigen::Ref<const Matrix>& m, Index p, Index q, Index n) {
    require(m.rows() == p * n && m.cols() == q, "fold: matrix must be (p*n) x q");
    Tensor3 t(p, q, n, ScalarKind::Complex);
    for (Index k = 0; k < n; ++k) t.slice(k) = m.block(k * p, 0, p, q);
    if (m.imag().isZero(0.0)) t.set_kind(ScalarKind::Real);
    return t;
}

Tensor3 fold(const BlockMatrix& m, Index p, Index q, Index n) {
    return fold(Eigen::Ref<const Matrix>(m.entries), p, q, n);
}

Tensor3 bcirc_inv(const Eigen::Ref<const Matrix>& m, Index p, Index q, Index n,
                  bool strict, double tol) {
    require(m.rows() == p * n && m.cols() == q * n, "bcirc_inv: matrix must be (p*n) x (q*n)");
    Tensor3 t(p, q, n, ScalarKind::Complex);
    for (Index k = 0; k < n; ++k) t.slice(k) = m.block(k * p, 0, p, q);
    if (strict) {
        double dev = 0.0;
        for (Index bi = 0; bi < n; ++bi)
            for (Index bj = 1; bj < n; ++bj) {
                const Matrix expected = t.slice(((bi - bj) % n + n) % n);
                dev = std::max(dev, (m.block(bi * p, bj * q, p, q) - expected).norm());
            }
        const double scale = 1.0 + m.norm();
        if (dev > tol * scale)
            throw DimensionMismatch("bcirc_inv: matrix is not block-circulant (deviation " +
                                    std::to_string(dev) + ")");
    }
    if (m.imag().isZero(0.0)) t.set_kind(ScalarKind::Real);
    return t;
}

Tensor3 bcirc_inv(const BlockMatrix& m, Index p, Index q, Index n, bool strict, double tol) {
    return bcirc_inv(Eigen::Ref<const Matrix>(m.entries), p, q, n, strict, tol);
}

Tensor3 tprod(const Tensor3& a, const Tensor3& b) {
    require(a.cols() == b.rows(),
            "tprod: inner dimensions disagree (" + shape_str(a) + " * " + shape_str(b) + ")");
    require(a.slices() == b.slices(),
            "tprod: slice counts disagree (" + shape_str(a) + " * " + shape_str(b) + ")");
    const FourierStack fa = to_fourier(a);
    const FourierStack fb = to_fourier(b);
    FourierStack fc(a.rows(), b.cols(), a.slices(),
                    (a.is_real() && b.is_real()) ? ScalarKind::Real : ScalarKind::Complex);
    parallel_for(a.slices(), [&](Index k) { fc.slice(k) = fa.slice(k) * fb.slice(k); });
    return from_fourier(fc);
}

Tensor3 t_transpose(const Tensor3& t) {
    const Index n = t.slices();
    Tensor3 out(t.cols(), t.rows(), n, t.kind());
    out.slice(0) = t.slice(0).adjoint();
    for (Index k = 1; k < n; ++k) out.slice(k) = t.slice(n - k).adjoint();
    return out;
}

Tensor3 identity_tensor(Index m, Index slices) { return Tensor3::identity(m, slices); }

Tensor3 t_inverse(const Tensor3& t, const RankTolerance& tol) {
    require(t.rows() == t.cols(), "t_inverse: slices must be square");
    const Index m = t.rows(), n = t.slices();
    const FourierStack f = to_fourier(t);

    std::vector<double> sigma_max(static_cast<size_t>(n), 0.0);
    std::vector<Eigen::VectorXd> sigmas(static_cast<size_t>(n));
    parallel_for(n, [&](Index k) {
        sigmas[static_cast<size_t>(k)] = singular_values(f.slice(k));
        sigma_max[static_cast<size_t>(k)] =
            sigmas[static_cast<size_t>(k)].size() ? sigmas[static_cast<size_t>(k)](0) : 0.0;
    });
    const double anchor = *std::max_element(sigma_max.begin(), sigma_max.end());
    const double threshold = tol.threshold(m, m, anchor);
    for (Index k = 0; k < n; ++k) {
        const auto& sv = sigmas[static_cast<size_t>(k)];
        if (sv.size() == 0 || sv(sv.size() - 1) <= threshold) {
            long rank = 0;
            for (Index i = 0; i < sv.size(); ++i)
                if (sv(i) > threshold) ++rank;
            throw Singular("t_inverse: fourier slice " + std::to_string(k + 1) +
                           " has numerical rank " + std::to_string(rank) + " < " +
                           std::to_string(m));
        }
    }
    FourierStack fx(m, m, n, t.kind());
    parallel_for(n, [&](Index k) { fx.slice(k) = pinv(f.slice(k), tol, anchor); });
    return from_fourier(fx);
}

double fro_norm(const Tensor3& t) {
    double sum = 0.0;
    for (const Complex& z : t.data()) sum += std::norm(z);
    return std::sqrt(sum);
}

double spec_norm(const Tensor3& t) {
    const FourierStack f = to_fourier(t);
    std::vector<double> top(static_cast<size_t>(t.slices()), 0.0);
    parallel_for(t.slices(), [&](Index k) {
        const Eigen::VectorXd sv = singular_values(f.slice(k));
        top[static_cast<size_t>(k)] = sv.size() ? sv(0) : 0.0;
    });
    return *std::max_element(top.begin(), top.end());
}

double cond(const Tensor3& t, const RankTolerance& tol) {
    return spec_norm(t) * spec_norm(t_inverse(t, tol));
}

long t_rank(const Tensor3& t, const RankTolerance& tol) {
    const FourierStack f = to_fourier(t);
    std::vector<Eigen::VectorXd> sigmas(static_cast<size_t>(t.slices()));
    parallel_for(t.slices(), [&](Index k) { sigmas[static_cast<size_t>(k)] = singular_values(f.slice(k)); });
    double anchor = 0.0;
    for (const auto& sv : sigmas)
        if (sv.size()) anchor = std::max(anchor, sv(0));
    const double threshold = tol.threshold(t.rows(), t.cols(), anchor);
    long rank = 0;
    for (const auto& sv : sigmas)
        for (Index i = 0; i < sv.size(); ++i)
            if (sv(i) > threshold) ++rank;
    return rank;
}

int t_index(const Tensor3& t, const RankTolerance& tol) {
    require(t.rows() == t.cols(), "t_index: slices must be square");
    const Index m = t.rows(), n = t.slices();
    const FourierStack f = to_fourier(t);
    std::vector<int> indices(static_cast<size_t>(n), 0);
    parallel_for(n, [&](Index k) {
        // smallest j with rank(D^j) == rank(D^{j+1}), capped at m
        long prev = m; // rank of D^0 = I
        Matrix power = f.slice(k);
        int ind = static_cast<int>(m);
        for (int j = 0; j <= static_cast<int>(m); ++j) {
            const long next = svd_rank(power, tol);
            if (next == prev) {
                ind = j;
                break;
            }
            prev = next;
            power = power * f.slice(k);
        }
        indices[static_cast<size_t>(k)] = ind;
    });
    return *std::max_element(indices.begin(), indices.end());
}

Tensor3 t_power(const Tensor3& t, int k) {
    require(t.rows() == t.cols(), "t_power: slices must be square");
    if (k < 0) throw DimensionMismatch("t_power: exponent must be nonnegative");
    if (k == 0) return identity_tensor(t.rows(), t.slices());
    if (k == 1) return t;
    const FourierStack f = to_fourier(t);
    FourierStack out(t.rows(), t.cols(), t.slices(), t.kind());
    parallel_for(t.slices(), [&](Index s) {
        Matrix acc = f.slice(s);
        for (int j = 1; j < k; ++j) acc = acc * f.slice(s);
        out.slice(s) = acc;
    });
    return from_fourier(out);
}

} // namespace t3
