#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qsearch {

enum class ErrorKind {
    InvalidParams,
    NonHermitian,
    DegenerateDynamics,
    StepCountTooSmall,
    NormDrift,
    NotEqualCoupling,
    ConditionViolated,
    InvalidRange,
};

std::string_view to_string(ErrorKind kind) noexcept;

// Base for every failure the library reports. The kind drives CLI exit codes.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

template <ErrorKind K>
class KindedError : public Error {
public:
    explicit KindedError(const std::string& what) : Error(K, what) {}
};

using InvalidParams = KindedError<ErrorKind::InvalidParams>;
using NonHermitian = KindedError<ErrorKind::NonHermitian>;
using DegenerateDynamics = KindedError<ErrorKind::DegenerateDynamics>;
using StepCountTooSmall = KindedError<ErrorKind::StepCountTooSmall>;
using NormDrift = KindedError<ErrorKind::NormDrift>;
using NotEqualCoupling = KindedError<ErrorKind::NotEqualCoupling>;
using ConditionViolated = KindedError<ErrorKind::ConditionViolated>;
using InvalidRange = KindedError<ErrorKind::InvalidRange>;

inline std::string_view to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::InvalidParams: return "InvalidParams";
        case ErrorKind::NonHermitian: return "NonHermitian";
        case ErrorKind::DegenerateDynamics: return "DegenerateDynamics";
        case ErrorKind::StepCountTooSmall: return "StepCountTooSmall";
        case ErrorKind::NormDrift: return "NormDrift";
        case ErrorKind::NotEqualCoupling: return "NotEqualCoupling";
        case ErrorKind::ConditionViolated: return "ConditionViolated";
        case ErrorKind::InvalidRange: return "InvalidRange";
    }
    return "Unknown";
}

}  // namespace qsearch
