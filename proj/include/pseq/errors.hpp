#pragma once

#include <stdexcept>
#include <string>

namespace pseq {

/// Failure classes surfaced by the library. Preconditions that callers can
/// always avoid (bad ranges, malformed arguments) throw std::invalid_argument
/// instead; these codes are for domain-level rejections that tests and the
/// CLI need to tell apart.
enum class Errc {
    NotPrime,
    WrongResidueClass,
    EvenDegree,
    ReducibleModulus,
    NotPrimitive,
    ScaleTooLarge,
    DivisionByZero,
    MixedFields,
    LogOfZero,
    ZeroBeta,
    BadPeriod,
    IndexOutOfRange,
    PeriodMismatch,
    MixedModulus,
    DegenerateG,
    DegreeDivisibleByP,
    TrivialCase,
    TrivialPair,
    UnsupportedD,
};

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

inline const char* errc_name(Errc c) noexcept {
    switch (c) {
        case Errc::NotPrime: return "NotPrime";
        case Errc::WrongResidueClass: return "WrongResidueClass";
        case Errc::EvenDegree: return "EvenDegree";
        case Errc::ReducibleModulus: return "ReducibleModulus";
        case Errc::NotPrimitive: return "NotPrimitive";
        case Errc::ScaleTooLarge: return "ScaleTooLarge";
        case Errc::DivisionByZero: return "DivisionByZero";
        case Errc::MixedFields: return "MixedFields";
        case Errc::LogOfZero: return "LogOfZero";
        case Errc::ZeroBeta: return "ZeroBeta";
        case Errc::BadPeriod: return "BadPeriod";
        case Errc::IndexOutOfRange: return "IndexOutOfRange";
        case Errc::PeriodMismatch: return "PeriodMismatch";
        case Errc::MixedModulus: return "MixedModulus";
        case Errc::DegenerateG: return "DegenerateG";
        case Errc::DegreeDivisibleByP: return "DegreeDivisibleByP";
        case Errc::TrivialCase: return "TrivialCase";
        case Errc::TrivialPair: return "TrivialPair";
        case Errc::UnsupportedD: return "UnsupportedD";
    }
    return "Unknown";
}

}  // namespace pseq
