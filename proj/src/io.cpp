#include "t3/io.hpp"

#include <nlohmann/json.hpp>

#include <array>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>

namespace t3 {

namespace {

constexpr char kMagic[4] = {'T', '3', 'v', '1'};

void put_u64(std::ostream& os, std::uint64_t v) {
    std::array<unsigned char, 8> b{};
    for (int i = 0; i < 8; ++i) b[static_cast<size_t>(i)] = static_cast<unsigned char>(v >> (8 * i));
    os.write(reinterpret_cast<const char*>(b.data()), 8);
}

std::uint64_t get_u64(std::istream& is) {
    std::array<unsigned char, 8> b{};
    is.read(reinterpret_cast<char*>(b.data()), 8);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(b[static_cast<size_t>(i)]) << (8 * i);
    return v;
}

void put_f64(std::ostream& os, double d) {
    std::uint64_t bits;
    std::memcpy(&bits, &d, 8);
    put_u64(os, bits);
}

double get_f64(std::istream& is) {
    const std::uint64_t bits = get_u64(is);
    double d;
    std::memcpy(&d, &bits, 8);
    return d;
}

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

void rows_for_report(std::vector<std::array<std::string, 3>>& rows, const ErrorReport& t,
                     const ErrorReport& m) {
    rows.push_back({"E1", fmt(t.e1), fmt(m.e1)});
    rows.push_back({"E2", fmt(t.e2), fmt(m.e2)});
    rows.push_back({"E3", fmt(t.e3), fmt(m.e3)});
    rows.push_back({"E4", fmt(t.e4), fmt(m.e4)});
    rows.push_back({"E5", fmt(t.e5), fmt(m.e5)});
    if (t.e1k || m.e1k)
        rows.push_back({"E1k(k=" + std::to_string(t.k) + ")",
                        t.e1k ? fmt(*t.e1k) : "", m.e1k ? fmt(*m.e1k) : ""});
}

void write_file(const std::string& path, const std::string& contents) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw IoError("cannot open '" + path + "' for writing");
    os << contents;
    if (!os) throw IoError("write to '" + path + "' failed");
}

nlohmann::json report_json(const ErrorReport& r) {
    nlohmann::json j{{"e1", r.e1}, {"e2", r.e2}, {"e3", r.e3}, {"e4", r.e4}, {"e5", r.e5},
                     {"path", r.path == ResidualPath::Tensor ? "tensor" : "matrix"},
                     {"inputs_digest", r.inputs_digest}};
    if (r.e1k) {
        j["e1k"] = *r.e1k;
        j["k"] = r.k;
    }
    return j;
}

} // namespace

void write_t3(const std::string& path, const Tensor3& t) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw IoError("cannot open '" + path + "' for writing");
    os.write(kMagic, 4);
    const char kind = t.is_real() ? 0 : 1;
    os.write(&kind, 1);
    put_u64(os, static_cast<std::uint64_t>(t.rows()));
    put_u64(os, static_cast<std::uint64_t>(t.cols()));
    put_u64(os, static_cast<std::uint64_t>(t.slices()));
    for (const Complex& z : t.data()) {
        put_f64(os, z.real());
        if (kind) put_f64(os, z.imag());
    }
    if (!os) throw IoError("write to '" + path + "' failed");
}

Tensor3 read_t3(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw IoError("cannot open '" + path + "'");
    char magic[4];
    is.read(magic, 4);
    if (!is || std::memcmp(magic, kMagic, 4) != 0)
        throw IoError("'" + path + "' is not a .t3 file (bad magic)");
    char kind = 0;
    is.read(&kind, 1);
    if (kind != 0 && kind != 1) throw IoError("'" + path + "' has an unknown scalar kind");
    const auto p = static_cast<Index>(get_u64(is));
    const auto q = static_cast<Index>(get_u64(is));
    const auto n = static_cast<Index>(get_u64(is));
    if (!is || p <= 0 || q <= 0 || n <= 0 || p * q * n > (Index(1) << 34))
        throw IoError("'" + path + "' has implausible dimensions");
    Tensor3 t(p, q, n, kind ? ScalarKind::Complex : ScalarKind::Real);
    for (Complex& z : t.data()) {
        const double re = get_f64(is);
        const double im = kind ? get_f64(is) : 0.0;
        z = Complex(re, im);
    }
    if (!is) throw IoError("'" + path + "' truncated");
    return t;
}

std::string verify_csv_string(const ErrorReport& tensor_report,
                              const ErrorReport& matrix_report) {
    std::vector<std::array<std::string, 3>> rows;
    rows_for_report(rows, tensor_report, matrix_report);
    std::ostringstream os;
    os << "metric,tensor_value,matrix_value\n";
    for (const auto& r : rows) os << r[0] << ',' << r[1] << ',' << r[2] << '\n';
    return os.str();
}

void write_verify_csv(const std::string& path, const ErrorReport& tensor_report,
                      const ErrorReport& matrix_report) {
    write_file(path, verify_csv_string(tensor_report, matrix_report));
}

std::string bench_csv_string(const BenchRecord& record) {
    std::ostringstream os;
    os << "problem,op,size_tensor,size_matrix,trials,mt_t,mt_m,metric,tensor_value,matrix_value\n";
    const std::string prefix = record.problem.describe() + "," + bench_op_name(record.op) + "," +
                               record.size_tensor() + "," + record.size_matrix() + "," +
                               std::to_string(record.trials) + "," + fmt(record.mt_tensor) +
                               "," + fmt(record.mt_matrix) + ",";
    if (record.failed) {
        os << prefix << "failed," << '"' << record.failure << '"' << ",\n";
        return os.str();
    }
    std::vector<std::array<std::string, 3>> rows;
    rows_for_report(rows, record.report_tensor, record.report_matrix);
    for (const auto& r : rows) os << prefix << r[0] << ',' << r[1] << ',' << r[2] << '\n';
    return os.str();
}

void write_bench_csv(const std::string& path, const BenchRecord& record) {
    write_file(path, bench_csv_string(record));
}

void write_verify_json(const std::string& path, const ErrorReport& tensor_report,
                       const ErrorReport& matrix_report) {
    nlohmann::json j{{"tensor", report_json(tensor_report)},
                     {"matrix", report_json(matrix_report)}};
    write_file(path, j.dump(2) + "\n");
}

void write_bench_json(const std::string& path, const BenchRecord& record) {
    nlohmann::json j{{"problem", record.problem.describe()},
                     {"op", bench_op_name(record.op)},
                     {"size_tensor", record.size_tensor()},
                     {"size_matrix", record.size_matrix()},
                     {"trials", record.trials},
                     {"mt_tensor", record.mt_tensor},
                     {"mt_matrix", record.mt_matrix}};
    if (record.failed) {
        j["failed"] = true;
        j["failure"] = record.failure;
    } else {
        j["report_tensor"] = report_json(record.report_tensor);
        j["report_matrix"] = report_json(record.report_matrix);
    }
    write_file(path, j.dump(2) + "\n");
}

} // namespace t3
