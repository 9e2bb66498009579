#pragma once

#include <stdexcept>
#include <string>

namespace wspe {

enum class ErrorKind {
    DeadEndVertex,
    UnknownVertex,
    ArityMismatch,
    MixedObjectives,
    InvalidObjective,
    EmptySet,
    NotRealizable,
    UnsupportedObjective,
    PayoffAbsent,
    EmptyLabel,
    MissingLasso,
    BudgetExceeded,
    MalformedFormula,
    MalformedInput,
};

inline const char* to_string(ErrorKind k) {
    switch (k) {
    case ErrorKind::DeadEndVertex: return "DeadEndVertex";
    case ErrorKind::UnknownVertex: return "UnknownVertex";
    case ErrorKind::ArityMismatch: return "ArityMismatch";
    case ErrorKind::MixedObjectives: return "MixedObjectives";
    case ErrorKind::InvalidObjective: return "InvalidObjective";
    case ErrorKind::EmptySet: return "EmptySet";
    case ErrorKind::NotRealizable: return "NotRealizable";
    case ErrorKind::UnsupportedObjective: return "UnsupportedObjective";
    case ErrorKind::PayoffAbsent: return "PayoffAbsent";
    case ErrorKind::EmptyLabel: return "EmptyLabel";
    case ErrorKind::MissingLasso: return "MissingLasso";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::MalformedFormula: return "MalformedFormula";
    case ErrorKind::MalformedInput: return "MalformedInput";
    }
    return "Unknown";
}

/// All library failures are reported through this exception; `kind()` lets
/// callers (and tests) branch on the cause without parsing the message.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

} // namespace wspe
