#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace t3 {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Operand shapes do not conform (inner dimension, slice count, ...).
class DimensionMismatch : public Error {
public:
    using Error::Error;
};

/// A matrix or a Fourier slice required to be invertible is numerically rank deficient.
class Singular : public Error {
public:
    using Error::Error;
};

/// A rank equality demanded by an existence condition does not hold.
/// Carries the computed (name, value) rank tuple so callers can see which
/// equality failed.
class ExistenceFailed : public Error {
public:
    ExistenceFailed(const std::string& msg, std::vector<std::pair<std::string, long>> ranks)
        : Error(msg + rank_suffix(ranks)), ranks_(std::move(ranks)) {}

    const std::vector<std::pair<std::string, long>>& ranks() const { return ranks_; }

private:
    static std::string rank_suffix(const std::vector<std::pair<std::string, long>>& ranks);
    std::vector<std::pair<std::string, long>> ranks_;
};

/// The Fourier slices of a tensor do not share a single numerical rank,
/// which the QR partition requires. Carries the per-slice rank vector.
class NonUniformRank : public Error {
public:
    NonUniformRank(const std::string& msg, std::vector<long> slice_ranks)
        : Error(msg + rank_suffix(slice_ranks)), slice_ranks_(std::move(slice_ranks)) {}

    const std::vector<long>& slice_ranks() const { return slice_ranks_; }

private:
    static std::string rank_suffix(const std::vector<long>& ranks);
    std::vector<long> slice_ranks_;
};

/// Randomized factorization target rank outside [1, min(m, n)].
class InvalidRank : public Error {
public:
    using Error::Error;
};

/// A real-origin inverse transform produced imaginary parts above the
/// cleanup tolerance (upstream numerical corruption).
class RealnessViolated : public Error {
public:
    using Error::Error;
};

/// Group inverse requested for a tensor with t-index greater than one.
class IndexTooLarge : public Error {
public:
    using Error::Error;
};

/// File format or filesystem problem.
class IoError : public Error {
public:
    using Error::Error;
};

} // namespace t3
