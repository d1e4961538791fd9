#pragma once

#include "t3/tensor.hpp"

#include <cstdint>
#include <optional>

namespace t3 {

enum class ResidualPath { Tensor, FlattenedMatrix };

/// Frobenius residuals of the generalized-inverse equations for a candidate
/// inverse X of S:
///   e1 = ||S - S*X*S||    e2 = ||X - X*S*X||   e3 = ||S*X - (S*X)^T||
///   e4 = ||X*S - (X*S)^T||  e5 = ||S*X - X*S||  e1k = ||X*S^(k+1) - S^k||
/// evaluated either on the tensor path (t-products, t-transposes) or on the
/// bcirc images. e1k is present only when k >= 1 was requested and the slices
/// are square.
struct ErrorReport {
    double e1 = 0, e2 = 0, e3 = 0, e4 = 0, e5 = 0;
    std::optional<double> e1k;
    int k = 0;
    ResidualPath path = ResidualPath::Tensor;
    std::uint64_t inputs_digest = 0;
};

ErrorReport residuals(const Tensor3& s, const Tensor3& x,
                      std::optional<int> k = std::nullopt,
                      ResidualPath path = ResidualPath::Tensor);

/// FNV-1a content hash of (dims, payload) of both tensors, for traceability.
std::uint64_t tensor_pair_digest(const Tensor3& s, const Tensor3& x);

} // namespace t3
