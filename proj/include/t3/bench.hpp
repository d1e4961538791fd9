#pragma once

#include "t3/gallery.hpp"
#include "t3/metrics.hpp"
#include "t3/outer.hpp"

#include <string>

namespace t3 {

enum class BenchOp { Mp, Drazin, Group, OuterRange, OuterNull, OuterBc, Qr, Rqr };

BenchOp parse_bench_op(const std::string& name);
std::string bench_op_name(BenchOp op);

/// One benchmark run: the same generated problem solved on the tensor (FFT
/// slicewise) path and on the flattened dense-matrix path, with mean wall
/// times over `trials` runs (after one warm-up) and residual reports for both
/// results. A propagated library error marks the record failed instead of
/// throwing.
struct BenchRecord {
    GallerySpec problem;
    BenchOp op = BenchOp::Mp;
    double mt_tensor = 0.0;
    double mt_matrix = 0.0;
    ErrorReport report_tensor;
    ErrorReport report_matrix;
    int trials = 0;
    bool failed = false;
    std::string failure;
    int drazin_k = 0; // power used for the e1k residual, when applicable

    std::string size_tensor() const;
    std::string size_matrix() const;
};

/// Runs op on generate(spec); trials must be >= 3 (std::invalid_argument
/// otherwise). rand: randomized-QR parameters for BenchOp::Rqr (k == 0 means
/// "use the uniform Fourier-slice rank of the prescription tensor").
BenchRecord run_bench(const GallerySpec& spec, BenchOp op, int trials,
                      std::uint64_t seed, RandQrOptions rand = {});

} // namespace t3
