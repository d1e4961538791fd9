#include "t3/fourier.hpp"

#include <fftw3.h>

#include <cmath>
#include <cstring>
#include <mutex>
#include <vector>

namespace t3 {

FourierStack::FourierStack(Index rows, Index cols, Index count, ScalarKind origin)
    : p_(rows), q_(cols), n_(count), origin_(origin),
      slices_(static_cast<size_t>(count), Matrix::Zero(rows, cols)) {
    if (rows <= 0 || cols <= 0 || count <= 0)
        throw DimensionMismatch("fourier stack dimensions must be positive");
}

double FourierStack::fro_norm() const {
    double sum = 0.0;
    for (const Matrix& s : slices_) sum += s.squaredNorm();
    return std::sqrt(sum);
}

double FourierStack::conjugate_symmetry_error() const {
    double worst = 0.0;
    for (Index k = 1; k < n_; ++k) {
        const Matrix& a = slice(k);
        const Matrix& b = slice(n_ - k); // index n+2-k in 1-based terms
        const double err = (b - a.conjugate()).norm() / (1.0 + a.norm());
        worst = std::max(worst, err);
    }
    return worst;
}

namespace {

// FFTW plan creation is not thread safe; execution of distinct plans is.
std::mutex& fftw_plan_mutex() {
    static std::mutex m;
    return m;
}

void mode3_dft(std::vector<Complex>& buffer, Index fiber_count, Index n, int sign) {
    if (n == 1) return;
    const int nn = static_cast<int>(n);
    auto* data = reinterpret_cast<fftw_complex*>(buffer.data());
    fftw_plan plan = nullptr;
    {
        std::lock_guard<std::mutex> lock(fftw_plan_mutex());
        plan = fftw_plan_many_dft(1, &nn, static_cast<int>(fiber_count),
                                  data, nullptr, static_cast<int>(fiber_count), 1,
                                  data, nullptr, static_cast<int>(fiber_count), 1,
                                  sign, FFTW_ESTIMATE);
    }
    fftw_execute(plan);
    {
        std::lock_guard<std::mutex> lock(fftw_plan_mutex());
        fftw_destroy_plan(plan);
    }
}

} // namespace

FourierStack to_fourier(const Tensor3& t) {
    const Index p = t.rows(), q = t.cols(), n = t.slices();
    std::vector<Complex> buffer = t.data();
    mode3_dft(buffer, p * q, n, FFTW_FORWARD);
    FourierStack out(p, q, n, t.kind());
    for (Index k = 0; k < n; ++k)
        out.slice(k) = Eigen::Map<const Matrix>(buffer.data() + k * p * q, p, q);
    return out;
}

Tensor3 from_fourier(const FourierStack& f, double cleanup_tol) {
    const Index p = f.rows(), q = f.cols(), n = f.count();
    std::vector<Complex> buffer(static_cast<size_t>(p * q * n));
    for (Index k = 0; k < n; ++k)
        Eigen::Map<Matrix>(buffer.data() + k * p * q, p, q) = f.slice(k);
    mode3_dft(buffer, p * q, n, FFTW_BACKWARD);
    const double scale = 1.0 / static_cast<double>(n);
    for (Complex& z : buffer) z *= scale;

    Tensor3 out(p, q, n, ScalarKind::Complex);
    out.data() = std::move(buffer);
    if (f.origin_kind() == ScalarKind::Real) {
        if (cleanup_tol < 0) cleanup_tol = 1e-9 * (1.0 + f.fro_norm());
        double worst = 0.0;
        for (const Complex& z : out.data()) worst = std::max(worst, std::abs(z.imag()));
        if (worst > cleanup_tol)
            throw RealnessViolated("from_fourier: imaginary residue " + std::to_string(worst) +
                                   " exceeds cleanup tolerance " + std::to_string(cleanup_tol) +
                                   " for a Real-origin stack");
        for (Complex& z : out.data()) z = Complex(z.real(), 0.0);
        out.set_kind(ScalarKind::Real);
    }
    return out;
}

} // namespace t3
