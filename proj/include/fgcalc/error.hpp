#ifndef FGCALC_ERROR_HPP
#define FGCALC_ERROR_HPP

#include <atomic>
#include <stdexcept>
#include <string>

namespace fgcalc {

// Every library failure mode gets its own code so front-ends can map them
// to stable exit statuses and machine-readable names.
enum class ErrorCode {
    RingMismatch,
    VariableMismatch,
    NotAUnit,
    NotAlmostIdempotent,
    UnsupportedRing,
    NonNilpotentConstantTerm,
    NotACoordinate,
    AxiomViolation,
    NotAdditive,
    WrongCharacteristic,
    DerivativeNotZero,
    RequiresRationalCoefficients,
    NotWeierstrass,
    OrderTooLow,
    NotNilpotentRoot,
    NotConstantDegree,
    NotInvertible,
    NotNegatable,
    NotFiltered,
    AntipodeVerificationFailed,
    ParseError,
    Cancelled,
    InternalError,
};

inline const char* error_name(ErrorCode c) {
    switch (c) {
        case ErrorCode::RingMismatch: return "RingMismatch";
        case ErrorCode::VariableMismatch: return "VariableMismatch";
        case ErrorCode::NotAUnit: return "NotAUnit";
        case ErrorCode::NotAlmostIdempotent: return "NotAlmostIdempotent";
        case ErrorCode::UnsupportedRing: return "UnsupportedRing";
        case ErrorCode::NonNilpotentConstantTerm: return "NonNilpotentConstantTerm";
        case ErrorCode::NotACoordinate: return "NotACoordinate";
        case ErrorCode::AxiomViolation: return "AxiomViolation";
        case ErrorCode::NotAdditive: return "NotAdditive";
        case ErrorCode::WrongCharacteristic: return "WrongCharacteristic";
        case ErrorCode::DerivativeNotZero: return "DerivativeNotZero";
        case ErrorCode::RequiresRationalCoefficients: return "RequiresRationalCoefficients";
        case ErrorCode::NotWeierstrass: return "NotWeierstrass";
        case ErrorCode::OrderTooLow: return "OrderTooLow";
        case ErrorCode::NotNilpotentRoot: return "NotNilpotentRoot";
        case ErrorCode::NotConstantDegree: return "NotConstantDegree";
        case ErrorCode::NotInvertible: return "NotInvertible";
        case ErrorCode::NotNegatable: return "NotNegatable";
        case ErrorCode::NotFiltered: return "NotFiltered";
        case ErrorCode::AntipodeVerificationFailed: return "AntipodeVerificationFailed";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::Cancelled: return "Cancelled";
        case ErrorCode::InternalError: return "InternalError";
    }
    return "UnknownError";
}

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& msg)
        : std::runtime_error(std::string(error_name(code)) + ": " + msg), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void raise(ErrorCode code, const std::string& msg) {
    throw Error(code, msg);
}

// Cooperative cancellation for long-running extractions: set the flag from
// another thread; workers poll at safe points and raise Cancelled.
struct CancelToken {
    std::atomic<bool> cancelled{false};
};

inline void check_cancel(const CancelToken* token) {
    if (token && token->cancelled.load(std::memory_order_relaxed))
        raise(ErrorCode::Cancelled, "operation cancelled");
}

}  // namespace fgcalc

#endif
