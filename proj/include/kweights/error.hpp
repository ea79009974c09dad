#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace kweights {

enum class ErrorCode {
    NotSquare,
    SymbolOutOfRange,
    RepeatInRow,
    RepeatInColumn,
    DimensionMismatch,
    IntegerOverflow,
    ZeroK,
    OrderTooLarge,
    ElementOutOfRange,
    IOutOfRange,
    NotAPartialWeight,
    InvalidAnchor,
    EvenOrder,
    NotANearOneWeight,
    QDoesNotDivideOrder,
    InconsistentBlockStructure,
    KOutOfRange,
    ParseError,
};

inline const char* to_string(ErrorCode code) {
    switch (code) {
    case ErrorCode::NotSquare: return "NotSquare";
    case ErrorCode::SymbolOutOfRange: return "SymbolOutOfRange";
    case ErrorCode::RepeatInRow: return "RepeatInRow";
    case ErrorCode::RepeatInColumn: return "RepeatInColumn";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::IntegerOverflow: return "IntegerOverflow";
    case ErrorCode::ZeroK: return "ZeroK";
    case ErrorCode::OrderTooLarge: return "OrderTooLarge";
    case ErrorCode::ElementOutOfRange: return "ElementOutOfRange";
    case ErrorCode::IOutOfRange: return "IOutOfRange";
    case ErrorCode::NotAPartialWeight: return "NotAPartialWeight";
    case ErrorCode::InvalidAnchor: return "InvalidAnchor";
    case ErrorCode::EvenOrder: return "EvenOrder";
    case ErrorCode::NotANearOneWeight: return "NotANearOneWeight";
    case ErrorCode::QDoesNotDivideOrder: return "QDoesNotDivideOrder";
    case ErrorCode::InconsistentBlockStructure: return "InconsistentBlockStructure";
    case ErrorCode::KOutOfRange: return "KOutOfRange";
    case ErrorCode::ParseError: return "ParseError";
    }
    return "Unknown";
}

/// All library failures are reported as this exception; `code()` identifies
/// the failure class and `what()` carries the offending indices, if any.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& detail)
        : std::runtime_error(std::string(to_string(code)) + (detail.empty() ? "" : ": " + detail)),
          code_(code) {}
    explicit Error(ErrorCode code) : Error(code, "") {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

namespace checked {

inline std::int64_t add(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw Error(ErrorCode::IntegerOverflow);
    return r;
}

inline std::int64_t sub(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_sub_overflow(a, b, &r)) throw Error(ErrorCode::IntegerOverflow);
    return r;
}

inline std::int64_t mul(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw Error(ErrorCode::IntegerOverflow);
    return r;
}

} // namespace checked
} // namespace kweights
