#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace edsw {

// Base for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SyntaxError : Error {
    SyntaxError(const std::string& what, std::size_t offset)
        : Error(what + " (offset " + std::to_string(offset) + ")"), offset(offset) {}
    std::size_t offset;
};

struct UnknownIdentifier : Error {
    explicit UnknownIdentifier(const std::string& name, std::size_t offset = std::string::npos)
        : Error("unknown identifier '" + name + "'" +
                (offset == std::string::npos ? "" : " (offset " + std::to_string(offset) + ")")),
          name(name), offset(offset) {}
    std::string name;
    std::size_t offset;
};

// A symbolic zero-test survived structural simplification with elementary
// nodes left over; no boolean verdict is available.
struct Undecidable : Error {
    using Error::Error;
};

struct PoleError : Error {
    using Error::Error;
};

struct DomainError : Error {
    using Error::Error;
};

struct DegreeOverflow : Error {
    using Error::Error;
};

struct RankDeficient : Error {
    using Error::Error;
};

struct NonAffineInUx : Error {
    using Error::Error;
};

struct DegenerateReduction : Error {
    using Error::Error;
};

struct OrderTooLow : Error {
    using Error::Error;
};

// A combination of the supplied fields lies in ker Omega; `witness` is the
// vanishing combination printed in terms of the field labels.
struct NotDirectSum : Error {
    NotDirectSum(const std::string& what, std::string witness)
        : Error(what), witness(std::move(witness)) {}
    std::string witness;
};

struct NotProportional : Error {
    NotProportional(const std::string& what, int index, std::string residual)
        : Error(what), index(index), residual(std::move(residual)) {}
    int index;            // 1-based position of the violated Lie condition
    std::string residual;
};

struct NotClosed : Error {
    using Error::Error;
};

struct HypothesisFailed : Error {
    HypothesisFailed(const std::string& what, int index) : Error(what), index(index) {}
    int index;
};

struct NonPolynomial : Error {
    using Error::Error;
};

struct NotEigen : Error {
    using Error::Error;
};

struct NotAnnihilated : Error {
    NotAnnihilated(const std::string& what, std::string generator, std::string residual)
        : Error(what), generator(std::move(generator)), residual(std::move(residual)) {}
    std::string generator;
    std::string residual;
};

}  // namespace edsw
