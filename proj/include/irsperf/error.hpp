// SPDX-License-Identifier: Apache-2.0
//
// irsperf: performance analysis of IRS-aided links over Nakagami-m fading.
// ------------------------------------------------------------------------

#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace irsperf {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// The analytic CDF path needs 2*m_v to be an integer.
class UnsupportedShapeError : public DomainError {
public:
    using DomainError::DomainError;
};

/// A closed-form evaluation produced a value that cannot be a probability.
class NumericalConsistencyError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Iterative search (optimizer, root finder) did not converge.
class ConvergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Aggregated configuration problems, one message per offending field.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(std::vector<std::string> problems);

    const std::vector<std::string>& problems() const noexcept { return problems_; }

private:
    std::vector<std::string> problems_;
};

}  // namespace irsperf
