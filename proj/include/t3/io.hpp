#pragma once

#include "t3/bench.hpp"
#include "t3/metrics.hpp"
#include "t3/tensor.hpp"

#include <string>

namespace t3 {

/// .t3 binary tensor format: magic "T3v1", one scalar-kind byte (0 real,
/// 1 complex), three little-endian u64 dims p, q, n, then the payload as
/// IEEE-754 binary64 little-endian in slice-major column-major order
/// (complex entries interleaved re, im). Write-then-read round trips are
/// bit exact.
void write_t3(const std::string& path, const Tensor3& t);
Tensor3 read_t3(const std::string& path);

/// verify CSV: header metric,tensor_value,matrix_value, one row per residual.
void write_verify_csv(const std::string& path, const ErrorReport& tensor_report,
                      const ErrorReport& matrix_report);
std::string verify_csv_string(const ErrorReport& tensor_report,
                              const ErrorReport& matrix_report);

/// bench CSV: size/time columns repeated per residual row
/// (problem,op,size_tensor,size_matrix,trials,mt_t,mt_m,metric,tensor_value,matrix_value).
void write_bench_csv(const std::string& path, const BenchRecord& record);
std::string bench_csv_string(const BenchRecord& record);

/// JSON mirrors of the CSV reports.
void write_verify_json(const std::string& path, const ErrorReport& tensor_report,
                       const ErrorReport& matrix_report);
void write_bench_json(const std::string& path, const BenchRecord& record);

} // namespace t3
