#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cmauction {

// Every failure the library reports is one of these. The CLI maps each kind
// to its own exit code, so the numbering is part of the public contract.
enum class ErrorKind {
    kInvalidTypeSpace = 10,
    kNegativeMass = 11,
    kWrongLength = 12,
    kNotNormalized = 13,
    kZeroMarginal = 14,
    kHeterogeneousTypeSpaces = 15,
    kBadEps = 16,
    kBadH = 17,
    kInfeasibleSizes = 18,
    kDimensionOverflow = 20,
    kCmViolation = 21,
    kNoSolution = 22,
    kRankDeficient = 23,
    kProfileOutOfSupport = 24,
    kUnsupportedBidderCount = 25,
    kAllZeroLikelihood = 26,
    kInvalidArgument = 27,
    kParseError = 30,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

// Thrown when a lottery system is inconsistent; carries the least-squares residual.
class NoSolutionError : public Error {
public:
    NoSolutionError(std::size_t bidder, double residual);

    std::size_t bidder() const noexcept { return bidder_; }
    double residual() const noexcept { return residual_; }

private:
    std::size_t bidder_;
    double residual_;
};

} // namespace cmauction
