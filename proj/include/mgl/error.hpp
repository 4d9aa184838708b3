#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace mgl {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

enum class Errc {
    ModeMismatch,
    DivisionByZero,
    DependentBasis,
    NonpositiveInput,
    PresentationMismatch,
    IllegalPower,
    NonIntegerExponent,
    ArityMismatch,
    MixedArity,
    DivisibleGroup,
    ShapeMismatch,
    SearchSpaceTooLarge,
    NoCandidates,
    UnsupportedVariety,
    NonRationalTorus,
    NotASubgroup,
    NotInGroup,
    ParseError,
    InvalidProblem,
    LimitExceeded,
};

inline const char* errc_name(Errc c) {
    switch (c) {
        case Errc::ModeMismatch: return "MODE_MISMATCH";
        case Errc::DivisionByZero: return "DIVISION_BY_ZERO";
        case Errc::DependentBasis: return "DEPENDENT_BASIS";
        case Errc::NonpositiveInput: return "NONPOSITIVE_INPUT";
        case Errc::PresentationMismatch: return "PRESENTATION_MISMATCH";
        case Errc::IllegalPower: return "ILLEGAL_POWER";
        case Errc::NonIntegerExponent: return "NON_INTEGER_EXPONENT";
        case Errc::ArityMismatch: return "ARITY_MISMATCH";
        case Errc::MixedArity: return "MIXED_ARITY";
        case Errc::DivisibleGroup: return "DIVISIBLE_GROUP";
        case Errc::ShapeMismatch: return "SHAPE_MISMATCH";
        case Errc::SearchSpaceTooLarge: return "SEARCH_SPACE_TOO_LARGE";
        case Errc::NoCandidates: return "NO_CANDIDATES";
        case Errc::UnsupportedVariety: return "UNSUPPORTED_VARIETY";
        case Errc::NonRationalTorus: return "NON_RATIONAL_TORUS";
        case Errc::NotASubgroup: return "NOT_A_SUBGROUP";
        case Errc::NotInGroup: return "NOT_IN_GROUP";
        case Errc::ParseError: return "PARSE_ERROR";
        case Errc::InvalidProblem: return "INVALID_PROBLEM";
        case Errc::LimitExceeded: return "LIMIT_EXCEEDED";
    }
    return "UNKNOWN";
}

/// Library error carrying a stable machine-readable code plus a human message.
class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& message)
        : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code) {}

    Errc code() const noexcept { return code_; }
    const char* code_name() const noexcept { return errc_name(code_); }

private:
    Errc code_;
};

/// Basis validation failure with an explicit integer dependence witness:
/// the product of the candidates raised to the witness exponents equals 1.
class DependentBasisError : public Error {
public:
    DependentBasisError(const std::string& message, std::vector<Int> witness)
        : Error(Errc::DependentBasis, message), witness_(std::move(witness)) {}

    const std::vector<Int>& witness() const noexcept { return witness_; }

private:
    std::vector<Int> witness_;
};

/// Input text failure with 1-based line/column of the offending byte.
class ParseFailure : public Error {
public:
    ParseFailure(const std::string& message, std::size_t line, std::size_t column)
        : Error(Errc::ParseError, message + " (line " + std::to_string(line) + ", column " +
                                      std::to_string(column) + ")"),
          line_(line), column_(column) {}

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_ = 0;
    std::size_t column_ = 0;
};

}  // namespace mgl
