#include "cmauction/error.hpp"

namespace cmauction {

std::string_view to_string(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::kInvalidTypeSpace: return "InvalidTypeSpace";
    case ErrorKind::kNegativeMass: return "NegativeMass";
    case ErrorKind::kWrongLength: return "WrongLength";
    case ErrorKind::kNotNormalized: return "NotNormalized";
    case ErrorKind::kZeroMarginal: return "ZeroMarginal";
    case ErrorKind::kHeterogeneousTypeSpaces: return "HeterogeneousTypeSpaces";
    case ErrorKind::kBadEps: return "BadEps";
    case ErrorKind::kBadH: return "BadH";
    case ErrorKind::kInfeasibleSizes: return "InfeasibleSizes";
    case ErrorKind::kDimensionOverflow: return "DimensionOverflow";
    case ErrorKind::kCmViolation: return "CmViolation";
    case ErrorKind::kNoSolution: return "NoSolution";
    case ErrorKind::kRankDeficient: return "RankDeficient";
    case ErrorKind::kProfileOutOfSupport: return "ProfileOutOfSupport";
    case ErrorKind::kUnsupportedBidderCount: return "UnsupportedBidderCount";
    case ErrorKind::kAllZeroLikelihood: return "AllZeroLikelihood";
    case ErrorKind::kInvalidArgument: return "InvalidArgument";
    case ErrorKind::kParseError: return "ParseError";
    }
    return "Unknown";
}

NoSolutionError::NoSolutionError(std::size_t bidder, double residual)
    : Error(ErrorKind::kNoSolution, "lottery system for bidder " + std::to_string(bidder + 1) +
                                        " is inconsistent (residual " + std::to_string(residual) + ")"),
      bidder_(bidder), residual_(residual) {}

} // namespace cmauction
