#pragma once

#include <stdexcept>
#include <string>

namespace gpcalc {

enum class ErrorKind {
    unknown_vertex,
    empty_graph,
    too_many_vertices,
    non_reduced_input,
    invalid_target,
    weight_zero,
    invalid_state,
    non_tracial_input,
    nonconforming_matrix,
    invalid_linkset,
    mismatched_middle,
    missing_descriptor,
    hypothesis_violation,
    parse_error,
    invalid_argument,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

// Raised when a theorem hypothesis fails; `clause` names the failing condition.
class HypothesisViolation : public Error {
public:
    HypothesisViolation(std::string clause, const std::string& what)
        : Error(ErrorKind::hypothesis_violation, what), clause_(std::move(clause)) {}

    const std::string& clause() const noexcept { return clause_; }

private:
    std::string clause_;
};

class ParseError : public Error {
public:
    ParseError(std::size_t line, std::size_t column, const std::string& message)
        : Error(ErrorKind::parse_error,
                std::to_string(line) + ":" + std::to_string(column) + ": " + message),
          line_(line), column_(column) {}

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

}  // namespace gpcalc
