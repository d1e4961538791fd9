#include "t3/gallery.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace t3 {

namespace {

RealMatrix chow_matrix(Index n, double alpha, double delta) {
    RealMatrix a = RealMatrix::Zero(n, n);
    for (Index i = 0; i < n; ++i)
        for (Index j = 0; j < n; ++j)
            if (i - j >= -1) a(i, j) = std::pow(alpha, static_cast<double>(i - j + 1));
    a.diagonal().array() += delta;
    return a;
}

RealMatrix kahan_matrix(Index rows, Index cols, double theta, double pert) {
    const double s = std::sin(theta), c = std::cos(theta);
    RealMatrix a = RealMatrix::Zero(rows, cols);
    const Index diag = std::min(rows, cols);
    for (Index i = 0; i < diag; ++i) {
        const double scale = std::pow(s, static_cast<double>(i));
        a(i, i) = scale;
        for (Index j = i + 1; j < cols; ++j) a(i, j) = -c * scale;
    }
    // standard tie-break perturbation, decreasing down the diagonal
    for (Index i = 0; i < diag; ++i)
        a(i, i) += pert * std::numeric_limits<double>::epsilon() *
                   static_cast<double>(diag - i);
    return a;
}

RealMatrix cycol_matrix(Index rows, Index cols, Index cycle_len, GaussianSampler& gauss) {
    RealMatrix block = gauss.matrix(rows, cycle_len);
    RealMatrix a(rows, cols);
    for (Index j = 0; j < cols; ++j) a.col(j) = block.col(j % cycle_len);
    return a;
}

RealMatrix gear_matrix(Index n, long i, long j) {
    RealMatrix a = RealMatrix::Zero(n, n);
    for (Index r = 0; r + 1 < n; ++r) {
        a(r, r + 1) = 1.0;
        a(r + 1, r) = 1.0;
    }
    a(0, std::labs(i) - 1) = i >= 0 ? 1.0 : -1.0;
    a(n - 1, std::labs(j) - 1) = j >= 0 ? 1.0 : -1.0;
    return a;
}

} // namespace

GallerySpec::Family GallerySpec::parse_family(const std::string& name) {
    if (name == "chow") return Family::Chow;
    if (name == "kahan") return Family::Kahan;
    if (name == "cycol") return Family::Cycol;
    if (name == "gearmat") return Family::Gearmat;
    throw std::invalid_argument("unknown gallery family '" + name +
                                "' (expected chow|kahan|cycol|gearmat)");
}

std::string GallerySpec::family_name(Family f) {
    switch (f) {
        case Family::Chow: return "chow";
        case Family::Kahan: return "kahan";
        case Family::Cycol: return "cycol";
        case Family::Gearmat: return "gearmat";
    }
    return "?";
}

std::string GallerySpec::describe() const {
    std::ostringstream os;
    os << family_name(family);
    switch (family) {
        case Family::Chow: os << "(alpha=" << alpha << ";delta=" << delta << ")"; break;
        case Family::Kahan: os << "(theta=" << theta << ";pert=" << pert << ")"; break;
        case Family::Cycol: os << "(cycle=" << (cycle_len > 0 ? cycle_len : std::max<Index>(cols / 4, 1)) << ")"; break;
        case Family::Gearmat:
            os << "(i=" << (gear_i ? gear_i : rows) << ";j=" << (gear_j ? gear_j : -1) << ")";
            break;
    }
    os << " " << rows << "x" << cols << "x" << n;
    os << (slice_rule == SliceRule::Replicate ? " replicate" : " perturb");
    if (slice_rule == SliceRule::SeededPerturb) os << "(mag=" << perturb_magnitude << ")";
    os << " seed=" << seed;
    return os.str();
}

RealMatrix gallery_base(const GallerySpec& spec) {
    if (spec.rows <= 0 || spec.cols <= 0 || spec.n <= 0)
        throw std::invalid_argument("gallery: dimensions must be positive");
    switch (spec.family) {
        case GallerySpec::Family::Chow:
            if (spec.rows != spec.cols)
                throw std::invalid_argument("chow: matrix must be square");
            return chow_matrix(spec.rows, spec.alpha, spec.delta);
        case GallerySpec::Family::Kahan:
            if (!(spec.theta > 0.0 && spec.theta < M_PI / 2))
                throw std::invalid_argument("kahan: theta must lie in (0, pi/2)");
            return kahan_matrix(spec.rows, spec.cols, spec.theta, spec.pert);
        case GallerySpec::Family::Cycol: {
            const Index cycle = spec.cycle_len > 0 ? spec.cycle_len
                                                   : std::max<Index>(spec.cols / 4, 1);
            if (cycle > spec.cols)
                throw std::invalid_argument("cycol: cycle length exceeds column count");
            GaussianSampler gauss(spec.seed);
            return cycol_matrix(spec.rows, spec.cols, cycle, gauss);
        }
        case GallerySpec::Family::Gearmat: {
            if (spec.rows != spec.cols)
                throw std::invalid_argument("gearmat: matrix must be square");
            const long gi = spec.gear_i ? spec.gear_i : static_cast<long>(spec.rows);
            const long gj = spec.gear_j ? spec.gear_j : -1;
            if (std::labs(gi) < 1 || std::labs(gi) > spec.rows || std::labs(gj) < 1 ||
                std::labs(gj) > spec.rows)
                throw std::invalid_argument("gearmat: corner indices out of range");
            return gear_matrix(spec.rows, gi, gj);
        }
    }
    throw std::invalid_argument("gallery: unknown family");
}

Tensor3 generate(const GallerySpec& spec) {
    const RealMatrix base = gallery_base(spec);
    std::vector<RealMatrix> slices(static_cast<size_t>(spec.n), base);
    if (spec.slice_rule == GallerySpec::SliceRule::SeededPerturb) {
        // one stream for all slices keeps the tensor a deterministic function
        // of (seed, shape); the cycol base block consumed the same stream first
        GaussianSampler gauss(spec.seed ^ 0x5eed5eed5eed5eedull);
        for (auto& s : slices) s += spec.perturb_magnitude * gauss.matrix(spec.rows, spec.cols);
    }
    return Tensor3::from_real_slices(slices);
}

} // namespace t3
