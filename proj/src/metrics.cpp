#include "t3/metrics.hpp"

#include "blas_support.hpp"

#include <cstring>

namespace t3 {

namespace {

std::uint64_t fnv1a(std::uint64_t hash, const void* bytes, size_t count) {
    const auto* p = static_cast<const unsigned char*>(bytes);
    for (size_t i = 0; i < count; ++i) {
        hash ^= p[i];
        hash *= 0x100000001b3ull;
    }
    return hash;
}

std::uint64_t digest_tensor(std::uint64_t hash, const Tensor3& t) {
    const std::uint64_t dims[3] = {static_cast<std::uint64_t>(t.rows()),
                                   static_cast<std::uint64_t>(t.cols()),
                                   static_cast<std::uint64_t>(t.slices())};
    hash = fnv1a(hash, dims, sizeof(dims));
    return fnv1a(hash, t.data().data(), t.data().size() * sizeof(Complex));
}

double fro(const Matrix& m) { return m.norm(); }

} // namespace

std::uint64_t tensor_pair_digest(const Tensor3& s, const Tensor3& x) {
    return digest_tensor(digest_tensor(0xcbf29ce484222325ull, s), x);
}

ErrorReport residuals(const Tensor3& s, const Tensor3& x, std::optional<int> k,
                      ResidualPath path) {
    if (s.rows() != x.cols() || s.cols() != x.rows() || s.slices() != x.slices())
        throw DimensionMismatch("residuals: X must have the transposed shape of S");
    if (k && (*k < 1 || s.rows() != s.cols()))
        throw DimensionMismatch("residuals: e1k needs k >= 1 and square slices");
    if (k && *k > std::min(s.rows(), s.cols()))
        throw DimensionMismatch("residuals: k exceeds the slice dimension");

    ErrorReport report;
    report.path = path;
    report.k = k.value_or(0);
    report.inputs_digest = tensor_pair_digest(s, x);

    if (path == ResidualPath::Tensor) {
        const Tensor3 sx = tprod(s, x);
        const Tensor3 xs = tprod(x, s);
        report.e1 = fro_norm(s - tprod(sx, s));
        report.e2 = fro_norm(x - tprod(xs, x));
        report.e3 = fro_norm(sx - t_transpose(sx));
        report.e4 = fro_norm(xs - t_transpose(xs));
        if (s.rows() == s.cols()) report.e5 = fro_norm(sx - xs);
        if (k) {
            const Tensor3 sk = t_power(s, *k);
            report.e1k = fro_norm(tprod(x, t_power(s, *k + 1)) - sk);
        }
    } else if (s.is_real() && x.is_real()) {
        // BLAS-backed real path; bcirc images get large quickly.
        using detail::blas_mul;
        const RealMatrix sm = detail::bcirc_real(s);
        const RealMatrix xm = detail::bcirc_real(x);
        const RealMatrix sx = blas_mul(sm, xm);
        const RealMatrix xs = blas_mul(xm, sm);
        report.e1 = (sm - blas_mul(sx, sm)).norm();
        report.e2 = (xm - blas_mul(xs, xm)).norm();
        report.e3 = (sx - sx.transpose()).norm();
        report.e4 = (xs - xs.transpose()).norm();
        if (s.rows() == s.cols()) report.e5 = (sx - xs).norm();
        if (k) {
            RealMatrix sk = RealMatrix::Identity(sm.rows(), sm.cols());
            for (int j = 0; j < *k; ++j) sk = blas_mul(sk, sm);
            report.e1k = (blas_mul(xm, blas_mul(sk, sm)) - sk).norm();
        }
    } else {
        const Matrix sm = bcirc(s).entries;
        const Matrix xm = bcirc(x).entries;
        const Matrix sx = sm * xm;
        const Matrix xs = xm * sm;
        report.e1 = fro(sm - sx * sm);
        report.e2 = fro(xm - xs * xm);
        report.e3 = fro(sx - sx.adjoint());
        report.e4 = fro(xs - xs.adjoint());
        if (s.rows() == s.cols()) report.e5 = fro(sx - xs);
        if (k) {
            Matrix sk = Matrix::Identity(sm.rows(), sm.cols());
            for (int j = 0; j < *k; ++j) sk = sk * sm;
            report.e1k = fro(xm * (sk * sm) - sk);
        }
    }
    return report;
}

} // namespace t3
