#pragma once

#include <stdexcept>
#include <string>

namespace dimflow {

enum class Errc {
    UnsupportedSeries,
    TrivialFlow,
    DimensionMismatch,
    NonDominantWeight,
    GroupTooLarge,
    DimensionCapExceeded,
    NotUnimodular,
    TrivialFlowOnV,
    NegativeTau,
    ConditionFailed,
    OutOfRange,
    NoAdmissibleWeylTerm,
    ZeroKappa,
    DegenerateSequence,
    BadIndices,
    DimensionGuard,
    SingularBasis,
    ShortTrajectory,
    NonUnipotentInput,
    UnsupportedKind,
    MonteCarloGuard,
    TooFewPoints,
    NonPrimitiveBasis,
    ZeroVector,
    BudgetExceeded,
    NoAdmissibleVector,
    OutsideFamily,
    InvalidConfig,
    UnknownSuite,
};

const char* errc_name(Errc c);

// All library failures surface as this type; the code is machine-readable,
// the message is for humans.
class Error : public std::invalid_argument {
public:
    Error(Errc code, const std::string& what)
        : std::invalid_argument(std::string(errc_name(code)) + ": " + what), code_(code) {}
    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

}  // namespace dimflow
