#include "t3/outer.hpp"

#include "t3/slice_linalg.hpp"

#include <algorithm>
#include <sstream>

namespace t3 {

namespace {

void require(bool cond, const std::string& msg) {
    if (!cond) throw DimensionMismatch(msg);
}

ScalarKind combined_kind(std::initializer_list<const Tensor3*> tensors) {
    for (const Tensor3* t : tensors)
        if (!t->is_real()) return ScalarKind::Complex;
    return ScalarKind::Real;
}

struct RankInfo {
    std::vector<long> slice_ranks;
    long total = 0;
    double anchor = 0.0;   // largest singular value over all slices
    double threshold = 0.0;
};

RankInfo fourier_ranks(const FourierStack& f, const RankTolerance& tol) {
    const Index n = f.count();
    std::vector<Eigen::VectorXd> sigmas(static_cast<size_t>(n));
    parallel_for(n, [&](Index k) { sigmas[static_cast<size_t>(k)] = singular_values(f.slice(k)); });
    RankInfo info;
    for (const auto& sv : sigmas)
        if (sv.size()) info.anchor = std::max(info.anchor, sv(0));
    info.threshold = tol.threshold(f.rows(), f.cols(), info.anchor);
    info.slice_ranks.reserve(static_cast<size_t>(n));
    for (const auto& sv : sigmas) {
        long r = 0;
        for (Index i = 0; i < sv.size(); ++i)
            if (sv(i) > info.threshold) ++r;
        info.slice_ranks.push_back(r);
        info.total += r;
    }
    return info;
}

FourierStack product_stack(const FourierStack& a, const FourierStack& b, ScalarKind kind) {
    FourierStack out(a.rows(), b.cols(), a.count(), kind);
    parallel_for(a.count(), [&](Index k) { out.slice(k) = a.slice(k) * b.slice(k); });
    return out;
}

FourierStack pinv_stack(const FourierStack& f, const RankTolerance& tol, double anchor,
                        ScalarKind kind) {
    FourierStack out(f.cols(), f.rows(), f.count(), kind);
    parallel_for(f.count(), [&](Index k) { out.slice(k) = pinv(f.slice(k), tol, anchor); });
    return out;
}

} // namespace

std::string Prescription::describe() const {
    switch (kind) {
        case Kind::RangeOnly:    return "range";
        case Kind::NullOnly:     return "null";
        case Kind::RangeNull:    return "range+null";
        case Kind::QrFrom:       return "qr";
        case Kind::MoorePenrose: return "moore-penrose";
        case Kind::Group:        return "group";
        case Kind::Drazin:       return "drazin(k=" + std::to_string(drazin_index) + ")";
    }
    return "?";
}

bool exists_range(const Tensor3& s, const Tensor3& t, const RankTolerance& tol) {
    require(s.cols() == t.rows() && s.slices() == t.slices(),
            "exists_range: S must be p x q x n and T q x k x n");
    return t_rank(tprod(s, t), tol) == t_rank(t, tol);
}

bool exists_null(const Tensor3& s, const Tensor3& t, const RankTolerance& tol) {
    require(t.cols() == s.rows() && s.slices() == t.slices(),
            "exists_null: S must be p x q x n and T k x p x n");
    return t_rank(tprod(t, s), tol) == t_rank(t, tol);
}

OuterResult outer_range(const Tensor3& s, const Tensor3& t, const RankTolerance& tol) {
    require(s.cols() == t.rows() && s.slices() == t.slices(),
            "outer_range: S must be p x q x n and T q x k x n");
    const ScalarKind kind = combined_kind({&s, &t});
    const FourierStack fs = to_fourier(s);
    const FourierStack ft = to_fourier(t);
    const FourierStack fz = product_stack(fs, ft, kind);

    const RankInfo rz = fourier_ranks(fz, tol);
    const RankInfo rt = fourier_ranks(ft, tol);
    std::vector<std::pair<std::string, long>> ranks = {
        {"rank_t(S*T)", rz.total}, {"rank_t(T)", rt.total}};
    if (rz.total != rt.total)
        throw ExistenceFailed("outer_range: rank_t(S*T) != rank_t(T)", ranks);

    const FourierStack fw = pinv_stack(fz, tol, rz.anchor, kind); // (S*T)^(1)
    const FourierStack fx = product_stack(ft, fw, kind);

    OuterResult out;
    out.inverse = from_fourier(fx);
    out.prescription = {Prescription::Kind::RangeOnly};
    out.ranks_checked = std::move(ranks);
    out.tolerance_used = rz.threshold;
    out.method = Method::Direct;
    out.range_witness = from_fourier(fw);
    return out;
}

OuterResult outer_null(const Tensor3& s, const Tensor3& t, const RankTolerance& tol) {
    require(t.cols() == s.rows() && s.slices() == t.slices(),
            "outer_null: S must be p x q x n and T k x p x n");
    const ScalarKind kind = combined_kind({&s, &t});
    const FourierStack fs = to_fourier(s);
    const FourierStack ft = to_fourier(t);
    const FourierStack fz = product_stack(ft, fs, kind);

    const RankInfo rz = fourier_ranks(fz, tol);
    const RankInfo rt = fourier_ranks(ft, tol);
    std::vector<std::pair<std::string, long>> ranks = {
        {"rank_t(T*S)", rz.total}, {"rank_t(T)", rt.total}};
    if (rz.total != rt.total)
        throw ExistenceFailed("outer_null: rank_t(T*S) != rank_t(T)", ranks);

    const FourierStack fw = pinv_stack(fz, tol, rz.anchor, kind); // (T*S)^(1)
    const FourierStack fx = product_stack(fw, ft, kind);

    OuterResult out;
    out.inverse = from_fourier(fx);
    out.prescription = {Prescription::Kind::NullOnly};
    out.ranks_checked = std::move(ranks);
    out.tolerance_used = rz.threshold;
    out.method = Method::Direct;
    out.null_witness = from_fourier(fw);
    return out;
}

OuterResult outer_range_null(const Tensor3& t, const Tensor3& b, const Tensor3& c,
                             const RankTolerance& tol) {
    require(t.cols() == b.rows() && c.cols() == t.rows(),
            "outer_range_null: T must be p x q x n, B q x k x n, C s x p x n");
    require(t.slices() == b.slices() && t.slices() == c.slices(),
            "outer_range_null: slice counts disagree");
    const ScalarKind kind = combined_kind({&t, &b, &c});
    const FourierStack ft = to_fourier(t);
    const FourierStack fb = to_fourier(b);
    const FourierStack fc = to_fourier(c);
    const FourierStack fg = product_stack(fc, product_stack(ft, fb, kind), kind); // C*T*B

    const RankInfo rg = fourier_ranks(fg, tol);
    const RankInfo rb = fourier_ranks(fb, tol);
    const RankInfo rc = fourier_ranks(fc, tol);
    std::vector<std::pair<std::string, long>> ranks = {
        {"rank_t(C*T*B)", rg.total}, {"rank_t(B)", rb.total}, {"rank_t(C)", rc.total}};
    if (rg.total != rb.total || rb.total != rc.total)
        throw ExistenceFailed("outer_range_null: rank_t(C*T*B), rank_t(B), rank_t(C) disagree",
                              ranks);

    const FourierStack fw = pinv_stack(fg, tol, rg.anchor, kind); // (C*T*B)^(1)
    const FourierStack fwc = product_stack(fw, fc, kind);
    const FourierStack fx = product_stack(fb, fwc, kind);

    OuterResult out;
    out.inverse = from_fourier(fx);
    out.prescription = {Prescription::Kind::RangeNull};
    out.ranks_checked = std::move(ranks);
    out.tolerance_used = rg.threshold;
    out.method = Method::Direct;
    out.range_witness = from_fourier(fwc);                       // X = B * witness
    out.null_witness = from_fourier(product_stack(fb, fw, kind)); // X = witness * C
    return out;
}

Tensor3 representation_range(const Tensor3& s, const Tensor3& t, const Tensor3& z,
                             const RankTolerance& tol) {
    OuterResult base = outer_range(s, t, tol); // throws ExistenceFailed if not realizable
    require(z.rows() == t.cols() && z.cols() == s.rows() && z.slices() == s.slices(),
            "representation_range: Z must be k x p x n");
    const Tensor3 tz = tprod(t, z);
    return base.inverse + tz - tprod(tz, tprod(s, base.inverse));
}

Tensor3 representation_null(const Tensor3& s, const Tensor3& t, const Tensor3& z,
                            const RankTolerance& tol) {
    OuterResult base = outer_null(s, t, tol);
    require(z.rows() == s.cols() && z.cols() == t.rows() && z.slices() == s.slices(),
            "representation_null: Z must be q x k x n");
    const Tensor3 zt = tprod(z, t);
    return base.inverse + zt - tprod(base.inverse, tprod(s, zt));
}

OuterResult moore_penrose(const Tensor3& s, const RankTolerance& tol) {
    const FourierStack fs = to_fourier(s);
    const RankInfo rs = fourier_ranks(fs, tol);
    const FourierStack fx = pinv_stack(fs, tol, rs.anchor, s.kind());

    OuterResult out;
    out.inverse = from_fourier(fx);
    out.prescription = {Prescription::Kind::MoorePenrose};
    out.tolerance_used = rs.threshold;
    out.method = Method::Direct;
    return out;
}

namespace {

OuterResult drazin_impl(const Tensor3& t, int k, Prescription::Kind kind,
                        const RankTolerance& tol) {
    const Tensor3 power = t_power(t, k);
    OuterResult out = outer_range_null(t, power, power, tol);
    out.prescription = {kind, k};
    return out;
}

} // namespace

OuterResult drazin(const Tensor3& t, const RankTolerance& tol) {
    require(t.rows() == t.cols(), "drazin: slices must be square");
    return drazin_impl(t, t_index(t, tol), Prescription::Kind::Drazin, tol);
}

OuterResult group_inverse(const Tensor3& t, const RankTolerance& tol) {
    require(t.rows() == t.cols(), "group_inverse: slices must be square");
    const int k = t_index(t, tol);
    if (k > 1)
        throw IndexTooLarge("group_inverse: t_index = " + std::to_string(k) +
                            " exceeds 1; the group inverse does not exist");
    OuterResult out = drazin_impl(t, k, Prescription::Kind::Group, tol);
    out.prescription.drazin_index = k;
    return out;
}

namespace {

struct FourierQr {
    std::vector<PivotedQr> factors;
    Index s = 0;
};

// Per-slice pivoted QR of the fourier slices with one rank decision shared
// across slices (anchored at the largest leading |R_11|).
FourierQr fourier_qrcp(const FourierStack& f, const RankTolerance& tol) {
    const Index n = f.count();
    FourierQr out;
    out.factors.resize(static_cast<size_t>(n));
    parallel_for(n, [&](Index k) { out.factors[static_cast<size_t>(k)] = qrcp(f.slice(k), tol); });

    double anchor = 0.0;
    for (const auto& qr : out.factors)
        if (std::min(qr.r.rows(), qr.r.cols()) > 0)
            anchor = std::max(anchor, std::abs(qr.r(0, 0)));
    const double threshold = tol.threshold(f.rows(), f.cols(), anchor);

    std::vector<long> slice_ranks;
    slice_ranks.reserve(static_cast<size_t>(n));
    for (auto& qr : out.factors) {
        Index s = 0;
        const Index diag = std::min(qr.r.rows(), qr.r.cols());
        for (Index i = 0; i < diag; ++i) {
            if (std::abs(qr.r(i, i)) <= threshold) break;
            ++s;
        }
        qr.s = s;
        slice_ranks.push_back(static_cast<long>(s));
    }
    const bool uniform =
        std::all_of(slice_ranks.begin(), slice_ranks.end(),
                    [&](long r) { return r == slice_ranks.front(); });
    if (!uniform)
        throw NonUniformRank("t_qrcp: fourier slices do not share one numerical rank",
                             slice_ranks);
    out.s = static_cast<Index>(slice_ranks.front());
    return out;
}

FourierQr fourier_qrcp_randomized(const FourierStack& f, const RandQrOptions& options) {
    const Index n = f.count();
    const Index min_dim = std::min(f.rows(), f.cols());
    if (options.k < 1 || options.k > min_dim)
        throw InvalidRank("randomized t-QR: target rank " + std::to_string(options.k) +
                          " outside [1, " + std::to_string(min_dim) + "]");
    if (!options.per_slice_k.empty() &&
        options.per_slice_k.size() != static_cast<size_t>(n))
        throw InvalidRank("randomized t-QR: per-slice rank list must have one entry per slice");
    Index sketch_k = options.k;
    for (Index k : options.per_slice_k) {
        if (k < 1 || k > min_dim)
            throw InvalidRank("randomized t-QR: per-slice rank outside [1, " +
                              std::to_string(min_dim) + "]");
        sketch_k = std::max(sketch_k, k);
    }

    // One sketch for every slice keeps conjugate symmetry between mirror
    // slices of a real tensor, so the assembled factors come out real.
    GaussianSampler gauss(options.seed);
    const RealMatrix omega = gauss.matrix(sketch_k + options.oversample, f.rows());

    FourierQr out;
    out.s = options.k;
    out.factors.resize(static_cast<size_t>(n));
    parallel_for(n, [&](Index k) {
        const Index slice_k =
            options.per_slice_k.empty() ? options.k : options.per_slice_k[static_cast<size_t>(k)];
        const RealMatrix sketch = omega.topRows(slice_k + options.oversample);
        out.factors[static_cast<size_t>(k)] = rand_qrcp(f.slice(k), slice_k, sketch);
        out.factors[static_cast<size_t>(k)].s = options.k; // partition width is uniform
    });
    return out;
}

TqrPartition assemble_partition(const FourierStack& f, const FourierQr& qr, ScalarKind kind) {
    const Index n = f.count(), s = qr.s;
    FourierStack fq(f.rows(), s, n, kind);
    FourierStack fr(s, f.cols(), n, kind);
    FourierStack fp(f.cols(), f.cols(), n, kind);
    for (Index k = 0; k < n; ++k) {
        const PivotedQr& slice_qr = qr.factors[static_cast<size_t>(k)];
        fq.slice(k) = slice_qr.q.leftCols(s);
        fr.slice(k) = slice_qr.r.topRows(s);
        fp.slice(k) = slice_qr.permutation();
    }
    return {from_fourier(fq), from_fourier(fr), from_fourier(fp), s};
}

OuterResult outer_qr_impl(const Tensor3& s, const Tensor3& t, const FourierQr& qr,
                          const FourierStack& ft, Method method, const RankTolerance& tol) {
    const ScalarKind kind = combined_kind({&s, &t});
    const FourierStack fs = to_fourier(s);
    const Index n = t.slices(), rank_s_width = qr.s;
    const long sn = static_cast<long>(rank_s_width) * static_cast<long>(n);

    const RankInfo rs = fourier_ranks(fs, tol);
    if (sn > rs.total)
        throw ExistenceFailed("outer_qr: rank_t(T) exceeds rank_t(S)",
                              {{"rank_t(T)", sn}, {"rank_t(S)", rs.total}});

    FourierStack fx(t.rows(), t.cols(), n, kind);
    try {
        parallel_for(n, [&](Index k) {
            const Matrix qtil = qr.factors[static_cast<size_t>(k)].q.leftCols(rank_s_width);
            const Matrix middle = qtil.adjoint() * ft.slice(k) * fs.slice(k) * qtil;
            const Matrix inv = lu_inverse(middle);
            fx.slice(k) = qtil * inv * qtil.adjoint() * ft.slice(k);
        });
    } catch (const Singular& e) {
        throw ExistenceFailed(std::string("outer_qr: middle tensor slice singular; the "
                                          "prescription is not realizable (") + e.what() + ")",
                              {{"rank_t(T)", sn}, {"rank_t(S)", rs.total}});
    }

    OuterResult out;
    out.inverse = from_fourier(fx);
    out.prescription = {Prescription::Kind::QrFrom};
    out.ranks_checked = {{"rank_t(Q~)", sn},
                         {"rank_t(R~*P^T)", sn},
                         {"rank_t(Q~^T*T*S*Q~)", sn}};
    out.tolerance_used = tol.threshold(t.rows(), t.cols(), rs.anchor);
    out.method = method;
    return out;
}

} // namespace

TqrPartition t_qrcp(const Tensor3& t, const RankTolerance& tol) {
    const FourierStack ft = to_fourier(t);
    return assemble_partition(ft, fourier_qrcp(ft, tol), t.kind());
}

TqrPartition t_qrcp(const Tensor3& t, const RandQrOptions& options) {
    const FourierStack ft = to_fourier(t);
    return assemble_partition(ft, fourier_qrcp_randomized(ft, options), t.kind());
}

OuterResult outer_qr(const Tensor3& s, const Tensor3& t, const RankTolerance& tol) {
    require(s.rows() == t.cols() && s.cols() == t.rows() && s.slices() == t.slices(),
            "outer_qr: S must be p x q x n and T q x p x n");
    const FourierStack ft = to_fourier(t);
    return outer_qr_impl(s, t, fourier_qrcp(ft, tol), ft, Method::Qr, tol);
}

OuterResult outer_qr(const Tensor3& s, const Tensor3& t, const RandQrOptions& options,
                     const RankTolerance& tol) {
    require(s.rows() == t.cols() && s.cols() == t.rows() && s.slices() == t.slices(),
            "outer_qr: S must be p x q x n and T q x p x n");
    const FourierStack ft = to_fourier(t);
    return outer_qr_impl(s, t, fourier_qrcp_randomized(ft, options), ft, Method::RandQr, tol);
}

Tensor3 outer_qr_via_triangular(const Tensor3& s, const TqrPartition& part,
                                const RankTolerance& tol) {
    const Tensor3 rp = tprod(part.rtil, t_transpose(part.perm));
    const Tensor3 middle = tprod(rp, tprod(s, part.qtil));
    return tprod(part.qtil, tprod(t_inverse(middle, tol), rp));
}

} // namespace t3
