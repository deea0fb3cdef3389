// errors.hpp: exception types shared by the stirlingq library.

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace stirlingq {

// Invalid medium, unsupported barrier configuration, bad series settings.
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A series did not meet its truncation tolerance within the term cap.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, double partial_sum, std::int64_t terms_used)
        : std::runtime_error(what), partial_sum_(partial_sum), terms_used_(terms_used) {}

    double partial_sum() const noexcept { return partial_sum_; }
    std::int64_t terms_used() const noexcept { return terms_used_; }

private:
    double partial_sum_;
    std::int64_t terms_used_;
};

// Optimizer or root finder could not bracket its target.
class AnalysisError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace stirlingq
