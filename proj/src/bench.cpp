#include "t3/bench.hpp"

#include "blas_support.hpp"
#include "t3/fourier.hpp"
#include "t3/slice_linalg.hpp"

#include <Eigen/Dense>

#include <chrono>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace t3 {

namespace {

using detail::blas_mul;

double now_seconds() {
    return std::chrono::duration<double>(
               std::chrono::steady_clock::now().time_since_epoch())
        .count();
}

std::uint64_t matrix_digest(const RealMatrix& a, const RealMatrix& b) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    auto mix = [&h](const RealMatrix& m) {
        const auto* bytes = reinterpret_cast<const unsigned char*>(m.data());
        const size_t count = static_cast<size_t>(m.size()) * sizeof(double);
        for (size_t i = 0; i < count; ++i) {
            h ^= bytes[i];
            h *= 0x100000001b3ull;
        }
    };
    mix(a);
    mix(b);
    return h;
}

ErrorReport matrix_residuals(const RealMatrix& s, const RealMatrix& x, std::optional<int> k) {
    ErrorReport report;
    report.path = ResidualPath::FlattenedMatrix;
    report.k = k.value_or(0);
    report.inputs_digest = matrix_digest(s, x);
    const RealMatrix sx = blas_mul(s, x);
    const RealMatrix xs = blas_mul(x, s);
    report.e1 = (s - blas_mul(sx, s)).norm();
    report.e2 = (x - blas_mul(xs, x)).norm();
    report.e3 = (sx - sx.transpose()).norm();
    report.e4 = (xs - xs.transpose()).norm();
    if (s.rows() == s.cols()) report.e5 = (sx - xs).norm();
    if (k) {
        RealMatrix sk = RealMatrix::Identity(s.rows(), s.cols());
        for (int j = 0; j < *k; ++j) sk = blas_mul(sk, s);
        report.e1k = (blas_mul(x, blas_mul(sk, s)) - sk).norm();
    }
    return report;
}

int matrix_index(const RealMatrix& a, double rel_tol) {
    const Index m = a.rows();
    long prev = static_cast<long>(m);
    RealMatrix power = a;
    for (int j = 0; j <= static_cast<int>(m); ++j) {
        const long next = detail::real_rank_qr(power, rel_tol);
        if (next == prev) return j;
        prev = next;
        power = blas_mul(power, a);
    }
    return static_cast<int>(m);
}

/// Matrix-level QR route: partition a pivoted QR of T at rank r, then
/// X = Q~ (Q~^T T S Q~)^-1 Q~^T T.
RealMatrix matrix_qr_outer(const RealMatrix& s, const RealMatrix& t, Index rank_hint,
                           double rel_tol) {
    Eigen::ColPivHouseholderQR<RealMatrix> qr(t);
    const RealMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    Index rank = rank_hint;
    if (rank <= 0) {
        const Index diag = std::min(r.rows(), r.cols());
        const double head = diag ? std::abs(r(0, 0)) : 0.0;
        rank = 0;
        for (Index i = 0; i < diag; ++i) {
            if (std::abs(r(i, i)) <= rel_tol * head) break;
            ++rank;
        }
    }
    if (rank == 0) return RealMatrix::Zero(t.cols(), t.rows());
    const RealMatrix qfull = qr.householderQ() * RealMatrix::Identity(t.rows(), t.rows());
    const RealMatrix qtil = qfull.leftCols(rank);
    const RealMatrix middle =
        blas_mul(qtil, blas_mul(t, blas_mul(s, qtil)), 'T', 'N');
    const RealMatrix inv = middle.partialPivLu().inverse();
    return blas_mul(qtil, blas_mul(inv, blas_mul(qtil, t, 'T', 'N')));
}

RealMatrix matrix_rqr_outer(const RealMatrix& s, const RealMatrix& t, Index k,
                            Index oversample, std::uint64_t seed) {
    GaussianSampler gauss(seed);
    const RealMatrix omega = gauss.matrix(k + oversample, t.rows());
    const RealMatrix sketch = blas_mul(omega, t);
    Eigen::ColPivHouseholderQR<RealMatrix> pilot(sketch);
    const Eigen::VectorXi perm = pilot.colsPermutation().indices();
    RealMatrix pivoted(t.rows(), t.cols());
    for (Index j = 0; j < t.cols(); ++j) pivoted.col(j) = t.col(perm(j));
    Eigen::HouseholderQR<RealMatrix> qr(pivoted);
    const RealMatrix qfull = qr.householderQ() * RealMatrix::Identity(t.rows(), t.rows());
    const RealMatrix qtil = qfull.leftCols(k);
    const RealMatrix middle =
        blas_mul(qtil, blas_mul(t, blas_mul(s, qtil)), 'T', 'N');
    const RealMatrix inv = middle.partialPivLu().inverse();
    return blas_mul(qtil, blas_mul(inv, blas_mul(qtil, t, 'T', 'N')));
}

/// Uniform Fourier-slice rank of t, or -1 when slices disagree.
Index uniform_slice_rank(const Tensor3& t, const RankTolerance& tol) {
    const FourierStack f = to_fourier(t);
    std::vector<Eigen::VectorXd> sigmas(static_cast<size_t>(f.count()));
    for (Index k = 0; k < f.count(); ++k) sigmas[static_cast<size_t>(k)] = singular_values(f.slice(k));
    double anchor = 0.0;
    for (const auto& sv : sigmas)
        if (sv.size()) anchor = std::max(anchor, sv(0));
    const double threshold = tol.threshold(f.rows(), f.cols(), anchor);
    Index rank = -1;
    for (const auto& sv : sigmas) {
        Index r = 0;
        for (Index i = 0; i < sv.size(); ++i)
            if (sv(i) > threshold) ++r;
        if (rank < 0) rank = r;
        else if (rank != r) return -1;
    }
    return rank;
}

} // namespace

BenchOp parse_bench_op(const std::string& name) {
    if (name == "mp") return BenchOp::Mp;
    if (name == "drazin") return BenchOp::Drazin;
    if (name == "group") return BenchOp::Group;
    if (name == "outer-range") return BenchOp::OuterRange;
    if (name == "outer-null") return BenchOp::OuterNull;
    if (name == "outer-bc") return BenchOp::OuterBc;
    if (name == "qr") return BenchOp::Qr;
    if (name == "rqr") return BenchOp::Rqr;
    throw std::invalid_argument(
        "unknown bench op '" + name +
        "' (expected mp|drazin|group|outer-range|outer-null|outer-bc|qr|rqr)");
}

std::string bench_op_name(BenchOp op) {
    switch (op) {
        case BenchOp::Mp: return "mp";
        case BenchOp::Drazin: return "drazin";
        case BenchOp::Group: return "group";
        case BenchOp::OuterRange: return "outer-range";
        case BenchOp::OuterNull: return "outer-null";
        case BenchOp::OuterBc: return "outer-bc";
        case BenchOp::Qr: return "qr";
        case BenchOp::Rqr: return "rqr";
    }
    return "?";
}

std::string BenchRecord::size_tensor() const {
    std::ostringstream os;
    os << problem.rows << "x" << problem.cols << "x" << problem.n;
    return os.str();
}

std::string BenchRecord::size_matrix() const {
    std::ostringstream os;
    os << problem.rows * problem.n << "x" << problem.cols * problem.n;
    return os.str();
}

BenchRecord run_bench(const GallerySpec& spec, BenchOp op, int trials, std::uint64_t seed,
                      RandQrOptions rand) {
    if (trials < 3) throw std::invalid_argument("run_bench: trials must be >= 3");
    BenchRecord record;
    record.problem = spec;
    record.op = op;
    record.trials = trials;

    const RankTolerance& tol = RankTolerance::global();

    try {
        const Tensor3 s = generate(spec);
        const Tensor3 st = t_transpose(s);
        if (rand.seed == 0) rand.seed = seed ? seed : 0x7261646f6du; // "random"
        if (op == BenchOp::Rqr && rand.k <= 0) {
            const Index r = uniform_slice_rank(st, tol);
            if (r <= 0)
                throw NonUniformRank(
                    "run_bench: prescription tensor has no uniform positive slice rank",
                    {});
            rand.k = r;
        }

        std::optional<int> residual_k;
        Tensor3 tensor_result;
        auto tensor_run = [&]() {
            switch (op) {
                case BenchOp::Mp: tensor_result = moore_penrose(s, tol).inverse; break;
                case BenchOp::Drazin: {
                    OuterResult r = drazin(s, tol);
                    record.drazin_k = r.prescription.drazin_index;
                    tensor_result = std::move(r.inverse);
                    break;
                }
                case BenchOp::Group: {
                    OuterResult r = group_inverse(s, tol);
                    record.drazin_k = r.prescription.drazin_index;
                    tensor_result = std::move(r.inverse);
                    break;
                }
                case BenchOp::OuterRange: tensor_result = outer_range(s, st, tol).inverse; break;
                case BenchOp::OuterNull: tensor_result = outer_null(s, st, tol).inverse; break;
                case BenchOp::OuterBc:
                    tensor_result = outer_range_null(s, st, st, tol).inverse;
                    break;
                case BenchOp::Qr: tensor_result = outer_qr(s, st, tol).inverse; break;
                case BenchOp::Rqr: tensor_result = outer_qr(s, st, rand, tol).inverse; break;
            }
        };

        RealMatrix matrix_result;
        auto matrix_run = [&]() {
            const RealMatrix a = detail::bcirc_real(s);
            const double rel =
                static_cast<double>(std::max(a.rows(), a.cols())) *
                std::numeric_limits<double>::epsilon();
            switch (op) {
                case BenchOp::Mp: matrix_result = detail::real_pinv_cholesky(a); break;
                case BenchOp::Drazin:
                case BenchOp::Group: {
                    const int k = matrix_index(a, rel);
                    if (op == BenchOp::Group && k > 1)
                        throw IndexTooLarge("run_bench: matrix index " + std::to_string(k) +
                                            " exceeds 1");
                    RealMatrix ak = RealMatrix::Identity(a.rows(), a.cols());
                    for (int j = 0; j < k; ++j) ak = blas_mul(ak, a);
                    const RealMatrix core = blas_mul(ak, blas_mul(a, ak));
                    matrix_result = blas_mul(ak, blas_mul(detail::real_pinv_cholesky(core), ak));
                    break;
                }
                case BenchOp::OuterRange: {
                    const RealMatrix t = a.transpose();
                    matrix_result = blas_mul(t, detail::real_pinv_cholesky(blas_mul(a, t)));
                    break;
                }
                case BenchOp::OuterNull: {
                    const RealMatrix t = a.transpose();
                    matrix_result = blas_mul(detail::real_pinv_cholesky(blas_mul(t, a)), t);
                    break;
                }
                case BenchOp::OuterBc: {
                    const RealMatrix t = a.transpose();
                    const RealMatrix g = blas_mul(t, blas_mul(a, t));
                    matrix_result = blas_mul(t, blas_mul(detail::real_pinv_cholesky(g), t));
                    break;
                }
                case BenchOp::Qr:
                    matrix_result = matrix_qr_outer(a, a.transpose(), 0, rel);
                    break;
                case BenchOp::Rqr:
                    matrix_result = matrix_rqr_outer(a, a.transpose(), rand.k, rand.oversample,
                                                     rand.seed + 1);
                    break;
            }
        };

        auto mean_time = [&](auto&& fn) {
            fn(); // warm-up
            double total = 0.0;
            for (int i = 0; i < trials; ++i) {
                const double t0 = now_seconds();
                fn();
                total += now_seconds() - t0;
            }
            return total / trials;
        };

        record.mt_tensor = mean_time(tensor_run);
        record.mt_matrix = mean_time(matrix_run);

        if (op == BenchOp::Drazin || op == BenchOp::Group)
            residual_k = std::max(record.drazin_k, 1);
        record.report_tensor = residuals(s, tensor_result, residual_k, ResidualPath::Tensor);
        record.report_matrix =
            matrix_residuals(detail::bcirc_real(s), matrix_result, residual_k);
    } catch (const std::exception& e) {
        record.failed = true;
        record.failure = e.what();
    }
    return record;
}

} // namespace t3
