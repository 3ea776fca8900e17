#ifndef PRESBIAS_ERROR_HPP
#define PRESBIAS_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace presbias {

enum class ErrorCode {
    ParseError,
    InvalidRational,
    InvalidGraph,
    InvalidInstance,
    UnknownVertex,
    NoPathToTarget,
    NoOutgoingEdge,
    UnreachableTarget,
    WalkExplosion,
    InvalidBeta,
    ZeroBeta,
    BetaNotSpecialCase,
    InvalidReward,
    InvalidBudget,
    NotMotivating,
    TooManyEdges,
    SearchSpaceTooLarge,
    InvalidEpsilon,
    EmptyFormula,
    UsageError,
};

constexpr std::string_view code_name(ErrorCode code) {
    switch (code) {
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::InvalidRational: return "InvalidRational";
    case ErrorCode::InvalidGraph: return "InvalidGraph";
    case ErrorCode::InvalidInstance: return "InvalidInstance";
    case ErrorCode::UnknownVertex: return "UnknownVertex";
    case ErrorCode::NoPathToTarget: return "NoPathToTarget";
    case ErrorCode::NoOutgoingEdge: return "NoOutgoingEdge";
    case ErrorCode::UnreachableTarget: return "UnreachableTarget";
    case ErrorCode::WalkExplosion: return "WalkExplosion";
    case ErrorCode::InvalidBeta: return "InvalidBeta";
    case ErrorCode::ZeroBeta: return "ZeroBeta";
    case ErrorCode::BetaNotSpecialCase: return "BetaNotSpecialCase";
    case ErrorCode::InvalidReward: return "InvalidReward";
    case ErrorCode::InvalidBudget: return "InvalidBudget";
    case ErrorCode::NotMotivating: return "NotMotivating";
    case ErrorCode::TooManyEdges: return "TooManyEdges";
    case ErrorCode::SearchSpaceTooLarge: return "SearchSpaceTooLarge";
    case ErrorCode::InvalidEpsilon: return "InvalidEpsilon";
    case ErrorCode::EmptyFormula: return "EmptyFormula";
    case ErrorCode::UsageError: return "UsageError";
    }
    return "Unknown";
}

/// Every failure raised by the library carries a machine-readable code.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

} // namespace presbias

#endif // PRESBIAS_ERROR_HPP
