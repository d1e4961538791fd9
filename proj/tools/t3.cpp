// t3 — t-product tensor calculus and outer generalized inverses.
//
// Exit codes: 0 success, 2 usage error, 3 existence condition failed,
// 4 singular / non-uniform-rank input, 1 other failure.

#include "t3/bench.hpp"
#include "t3/io.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

namespace {

struct SizeSpec {
    t3::Index rows = 0, cols = 0, n = 0;
};

SizeSpec parse_size(const std::string& text) {
    SizeSpec s;
    char sep1 = 0, sep2 = 0;
    std::istringstream is(text);
    long long a = 0, b = 0, c = 0;
    if (!(is >> a >> sep1 >> b >> sep2 >> c) || sep1 != 'x' || sep2 != 'x' || a <= 0 || b <= 0 ||
        c <= 0)
        throw CLI::ValidationError("--size", "expected PxQxN, e.g. 8x8x4");
    s.rows = a;
    s.cols = b;
    s.n = c;
    return s;
}

void print_report_table(const t3::ErrorReport& t, const t3::ErrorReport& m) {
    auto line = [](const char* name, double a, double b) {
        std::printf("  %-6s % .10e  % .10e\n", name, a, b);
    };
    std::printf("  %-6s %-17s %-17s\n", "metric", "tensor", "matrix");
    line("E1", t.e1, m.e1);
    line("E2", t.e2, m.e2);
    line("E3", t.e3, m.e3);
    line("E4", t.e4, m.e4);
    line("E5", t.e5, m.e5);
    if (t.e1k && m.e1k) {
        const std::string name = "E1k";
        std::printf("  %-6s % .10e  % .10e   (k=%d)\n", name.c_str(), *t.e1k, *m.e1k, t.k);
    }
}

void print_ranks(const t3::OuterResult& result) {
    std::printf("prescription: %s\n", result.prescription.describe().c_str());
    for (const auto& [name, value] : result.ranks_checked)
        std::printf("  %s = %ld\n", name.c_str(), value);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"t-product tensor calculus: outer generalized inverses, t-QR, benchmarks"};
    app.require_subcommand(1);

    double tol_rel = -1.0;
    std::string threads = "1";
    app.add_option("--tol", tol_rel,
                   "relative rank tolerance (default max(m,n)*eps; env T3_RANK_TOL)")
        ->envname("T3_RANK_TOL");
    app.add_option("--threads", threads, "worker threads for slicewise loops: N or 'auto'");

    // ---- gen ----
    auto* gen = app.add_subcommand("gen", "generate a gallery test tensor");
    std::string gen_family, gen_size, gen_out, gen_rule = "replicate";
    std::uint64_t gen_seed = 0;
    double gen_alpha = 1.0, gen_delta = 0.0, gen_theta = 1.2, gen_pert = 25.0, gen_mag = 1e-3;
    long long gen_cycle = 0, gear_i = 0, gear_j = 0;
    gen->add_option("--family", gen_family, "chow|kahan|cycol|gearmat")->required();
    gen->add_option("--size", gen_size, "PxQxN")->required();
    gen->add_option("--seed", gen_seed, "seed for cycol / perturbed slices");
    gen->add_option("--alpha", gen_alpha, "chow alpha");
    gen->add_option("--delta", gen_delta, "chow diagonal shift");
    gen->add_option("--theta", gen_theta, "kahan angle in (0, pi/2)");
    gen->add_option("--pert", gen_pert, "kahan diagonal perturbation factor");
    gen->add_option("--cycle", gen_cycle, "cycol column period (default cols/4)");
    gen->add_option("--gear-i", gear_i, "gearmat corner index i (default rows)");
    gen->add_option("--gear-j", gear_j, "gearmat corner index j (default -1)");
    gen->add_option("--slice-rule", gen_rule, "replicate|perturb");
    gen->add_option("--perturb-magnitude", gen_mag, "perturbation scale for --slice-rule perturb");
    gen->add_option("-o,--output", gen_out, "output .t3 file")->required();

    // ---- tprod ----
    auto* tp = app.add_subcommand("tprod", "t-product of two tensors");
    std::string tp_a, tp_b, tp_out;
    tp->add_option("a", tp_a, "left tensor (.t3)")->required();
    tp->add_option("b", tp_b, "right tensor (.t3)")->required();
    tp->add_option("-o,--output", tp_out, "output .t3 file")->required();

    // ---- inv ----
    auto* inv = app.add_subcommand("inv", "generalized inverses");
    std::string inv_in, inv_out, inv_kind = "mp", inv_method = "direct";
    std::string range_path, null_path, b_path, c_path;
    long long inv_rank = 0, inv_oversample = 10;
    std::uint64_t inv_seed = 1;
    inv->add_option("a", inv_in, "input tensor (.t3)")->required();
    inv->add_option("--kind", inv_kind, "mp|group|drazin|outer");
    inv->add_option("--method", inv_method, "direct|qr|rqr");
    inv->add_option("--range", range_path, "range prescription tensor (.t3)");
    inv->add_option("--null", null_path, "kernel prescription tensor (.t3)");
    inv->add_option("--b", b_path, "range tensor B for --kind outer (.t3)");
    inv->add_option("--c", c_path, "kernel tensor C for --kind outer (.t3)");
    inv->add_option("--rank", inv_rank, "target rank k for --method rqr");
    inv->add_option("--oversample", inv_oversample, "sketch oversampling for rqr");
    inv->add_option("--seed", inv_seed, "sketch seed for rqr");
    inv->add_option("-o,--output", inv_out, "output .t3 file")->required();

    // ---- verify ----
    auto* verify = app.add_subcommand("verify", "residuals of a candidate inverse");
    std::string ver_s, ver_x, ver_csv, ver_json;
    long long ver_k = 0;
    verify->add_option("s", ver_s, "tensor S (.t3)")->required();
    verify->add_option("x", ver_x, "candidate inverse X (.t3)")->required();
    verify->add_option("--k", ver_k, "power for the E1k residual");
    verify->add_option("--csv", ver_csv, "write CSV report");
    verify->add_option("--json", ver_json, "write JSON report");

    // ---- bench ----
    auto* bench = app.add_subcommand("bench", "tensor path vs flattened matrix path");
    std::string be_family, be_size, be_op = "mp", be_csv, be_json, be_rule = "replicate";
    int be_trials = 5;
    std::uint64_t be_seed = 1;
    double be_alpha = 1.0, be_delta = 0.0, be_theta = 1.2, be_pert = 25.0, be_mag = 1e-3;
    long long be_cycle = 0, be_gi = 0, be_gj = 0, be_rank = 0, be_oversample = 10;
    bench->add_option("--family", be_family, "chow|kahan|cycol|gearmat")->required();
    bench->add_option("--size", be_size, "PxQxN")->required();
    bench->add_option("--op", be_op, "mp|drazin|group|outer-range|outer-null|outer-bc|qr|rqr");
    bench->add_option("--trials", be_trials, "timed runs per path (>= 3)");
    bench->add_option("--seed", be_seed, "seed (gallery + sketches)");
    bench->add_option("--alpha", be_alpha, "chow alpha");
    bench->add_option("--delta", be_delta, "chow diagonal shift");
    bench->add_option("--theta", be_theta, "kahan angle");
    bench->add_option("--pert", be_pert, "kahan perturbation factor");
    bench->add_option("--cycle", be_cycle, "cycol column period");
    bench->add_option("--gear-i", be_gi, "gearmat corner index i");
    bench->add_option("--gear-j", be_gj, "gearmat corner index j");
    bench->add_option("--slice-rule", be_rule, "replicate|perturb");
    bench->add_option("--perturb-magnitude", be_mag, "perturbation scale");
    bench->add_option("--rank", be_rank, "target rank for op rqr (default: slice rank)");
    bench->add_option("--oversample", be_oversample, "sketch oversampling for rqr");
    bench->add_option("--csv", be_csv, "write CSV record");
    bench->add_option("--json", be_json, "write JSON record");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2; // help/version exit 0, any parse problem is usage error
    }

    try {
        if (tol_rel > 0) t3::RankTolerance::global().rel = tol_rel;
        t3::config::threads() = threads == "auto" ? 0 : std::max(1, std::stoi(threads));

        if (*gen) {
            t3::GallerySpec spec;
            spec.family = t3::GallerySpec::parse_family(gen_family);
            const SizeSpec size = parse_size(gen_size);
            spec.rows = size.rows;
            spec.cols = size.cols;
            spec.n = size.n;
            spec.alpha = gen_alpha;
            spec.delta = gen_delta;
            spec.theta = gen_theta;
            spec.pert = gen_pert;
            spec.cycle_len = gen_cycle;
            spec.gear_i = gear_i;
            spec.gear_j = gear_j;
            spec.seed = gen_seed;
            if (gen_rule == "perturb") {
                spec.slice_rule = t3::GallerySpec::SliceRule::SeededPerturb;
                spec.perturb_magnitude = gen_mag;
            } else if (gen_rule != "replicate") {
                throw CLI::ValidationError("--slice-rule", "expected replicate|perturb");
            }
            t3::write_t3(gen_out, t3::generate(spec));
            std::printf("wrote %s (%s)\n", gen_out.c_str(), spec.describe().c_str());
        } else if (*tp) {
            const t3::Tensor3 a = t3::read_t3(tp_a);
            const t3::Tensor3 b = t3::read_t3(tp_b);
            t3::write_t3(tp_out, t3::tprod(a, b));
            std::printf("wrote %s\n", tp_out.c_str());
        } else if (*inv) {
            const t3::Tensor3 a = t3::read_t3(inv_in);
            t3::OuterResult result;
            t3::RandQrOptions rand;
            rand.k = static_cast<t3::Index>(inv_rank);
            rand.oversample = static_cast<t3::Index>(inv_oversample);
            rand.seed = inv_seed;

            auto qr_prescription = [&]() -> t3::Tensor3 {
                if (inv_kind == "mp") return t3::t_transpose(a);
                if (inv_kind == "drazin" || inv_kind == "group") {
                    const int k = t3::t_index(a);
                    if (inv_kind == "group" && k > 1)
                        throw t3::IndexTooLarge("group inverse needs t_index <= 1, got " +
                                                std::to_string(k));
                    return t3::t_power(a, std::max(k, 1));
                }
                if (!range_path.empty()) return t3::read_t3(range_path);
                throw CLI::ValidationError("--range",
                                           "qr/rqr with --kind outer needs a prescription tensor");
            };

            if (inv_method == "direct") {
                if (inv_kind == "mp") result = t3::moore_penrose(a);
                else if (inv_kind == "group") result = t3::group_inverse(a);
                else if (inv_kind == "drazin") result = t3::drazin(a);
                else if (inv_kind == "outer") {
                    const bool have_bc = !b_path.empty() && !c_path.empty();
                    if (have_bc && range_path.empty() && null_path.empty())
                        result = t3::outer_range_null(a, t3::read_t3(b_path), t3::read_t3(c_path));
                    else if (!range_path.empty() && null_path.empty() && !have_bc)
                        result = t3::outer_range(a, t3::read_t3(range_path));
                    else if (!null_path.empty() && range_path.empty() && !have_bc)
                        result = t3::outer_null(a, t3::read_t3(null_path));
                    else
                        throw CLI::ValidationError(
                            "--kind outer", "give exactly one of --range, --null, or --b with --c");
                } else {
                    throw CLI::ValidationError("--kind", "expected mp|group|drazin|outer");
                }
            } else if (inv_method == "qr") {
                result = t3::outer_qr(a, qr_prescription());
            } else if (inv_method == "rqr") {
                if (rand.k <= 0)
                    throw CLI::ValidationError("--rank", "rqr needs a positive target rank");
                result = t3::outer_qr(a, qr_prescription(), rand);
            } else {
                throw CLI::ValidationError("--method", "expected direct|qr|rqr");
            }

            t3::write_t3(inv_out, result.inverse);
            print_ranks(result);
            std::printf("wrote %s\n", inv_out.c_str());
        } else if (*verify) {
            const t3::Tensor3 s = t3::read_t3(ver_s);
            const t3::Tensor3 x = t3::read_t3(ver_x);
            std::optional<int> k;
            if (ver_k > 0) k = static_cast<int>(ver_k);
            const auto rt = t3::residuals(s, x, k, t3::ResidualPath::Tensor);
            const auto rm = t3::residuals(s, x, k, t3::ResidualPath::FlattenedMatrix);
            print_report_table(rt, rm);
            if (!ver_csv.empty()) t3::write_verify_csv(ver_csv, rt, rm);
            if (!ver_json.empty()) t3::write_verify_json(ver_json, rt, rm);
        } else if (*bench) {
            if (be_trials < 3) throw CLI::ValidationError("--trials", "must be >= 3");
            t3::GallerySpec spec;
            spec.family = t3::GallerySpec::parse_family(be_family);
            const SizeSpec size = parse_size(be_size);
            spec.rows = size.rows;
            spec.cols = size.cols;
            spec.n = size.n;
            spec.alpha = be_alpha;
            spec.delta = be_delta;
            spec.theta = be_theta;
            spec.pert = be_pert;
            spec.cycle_len = be_cycle;
            spec.gear_i = be_gi;
            spec.gear_j = be_gj;
            spec.seed = be_seed;
            if (be_rule == "perturb") {
                spec.slice_rule = t3::GallerySpec::SliceRule::SeededPerturb;
                spec.perturb_magnitude = be_mag;
            } else if (be_rule != "replicate") {
                throw CLI::ValidationError("--slice-rule", "expected replicate|perturb");
            }
            t3::RandQrOptions rand;
            rand.k = static_cast<t3::Index>(be_rank);
            rand.oversample = static_cast<t3::Index>(be_oversample);
            rand.seed = be_seed;
            const t3::BenchRecord record =
                t3::run_bench(spec, t3::parse_bench_op(be_op), be_trials, be_seed, rand);
            if (record.failed) {
                std::fprintf(stderr, "bench failed: %s\n", record.failure.c_str());
            } else {
                std::printf("%s op=%s trials=%d\n", record.problem.describe().c_str(),
                            t3::bench_op_name(record.op).c_str(), record.trials);
                std::printf("  mean time  tensor %.6fs   matrix %.6fs\n", record.mt_tensor,
                            record.mt_matrix);
                print_report_table(record.report_tensor, record.report_matrix);
            }
            if (!be_csv.empty()) t3::write_bench_csv(be_csv, record);
            if (!be_json.empty()) t3::write_bench_json(be_json, record);
            if (record.failed) return 1;
        }
        return 0;
    } catch (const CLI::ValidationError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const t3::ExistenceFailed& e) {
        std::fprintf(stderr, "existence failed: %s\n", e.what());
        return 3;
    } catch (const t3::NonUniformRank& e) {
        std::fprintf(stderr, "non-uniform slice ranks: %s\n", e.what());
        return 4;
    } catch (const t3::Singular& e) {
        std::fprintf(stderr, "singular: %s\n", e.what());
        return 4;
    } catch (const t3::IndexTooLarge& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
