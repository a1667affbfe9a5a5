#pragma once

#include <stdexcept>
#include <string>

namespace rsum {

// Base class for all domain errors thrown by this library.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Input / construction errors.
struct EmptyVector : Error {
    explicit EmptyVector(const std::string& msg = "weight vector is empty") : Error(msg) {}
};
struct NotUnitNorm : Error {
    explicit NotUnitNorm(const std::string& msg) : Error(msg) {}
};
struct NegativeWeight : Error {
    explicit NegativeWeight(const std::string& msg) : Error(msg) {}
};
struct InvalidParameters : Error {
    explicit InvalidParameters(const std::string& msg) : Error(msg) {}
};
struct ParseError : Error {
    explicit ParseError(const std::string& msg) : Error(msg) {}
};
struct DimensionTooLarge : Error {
    explicit DimensionTooLarge(const std::string& msg) : Error(msg) {}
};

// Solver outcomes surfaced as errors.
struct Infeasible : Error {
    explicit Infeasible(const std::string& msg = "linear program is infeasible") : Error(msg) {}
};
struct Unbounded : Error {
    explicit Unbounded(const std::string& msg = "linear program is unbounded") : Error(msg) {}
};

// Assertion-style errors: these signal an implementation bug or a broken
// mathematical premise, never bad user input.
struct BoundViolated : Error {
    explicit BoundViolated(const std::string& msg) : Error(msg) {}
};
struct DominationViolated : Error {
    explicit DominationViolated(const std::string& msg) : Error(msg) {}
};
struct LemmaViolated : Error {
    explicit LemmaViolated(const std::string& msg) : Error(msg) {}
};
struct OutOfCaseRange : Error {
    explicit OutOfCaseRange(const std::string& msg) : Error(msg) {}
};

}  // namespace rsum
