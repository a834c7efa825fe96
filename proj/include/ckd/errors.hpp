#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace ckd {

// Input problems (bad JSON, letters out of range, shape mismatch) derive from
// std::invalid_argument; mathematical precondition failures from
// std::domain_error.  The CLI maps the first to exit code 2 and the second to 1.

struct ParseError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct ConstructionError : std::domain_error {
    using std::domain_error::domain_error;
};

struct StabilizationError : std::domain_error {
    StabilizationError(const std::string& what, std::vector<double> prof)
        : std::domain_error(what), profile(std::move(prof)) {}
    std::vector<double> profile;
};

struct PurityError : std::domain_error {
    PurityError(const std::string& what, std::vector<double> prof)
        : std::domain_error(what), profile(std::move(prof)) {}
    std::vector<double> profile;
};

} // namespace ckd
