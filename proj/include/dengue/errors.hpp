#pragma once

#include <stdexcept>
#include <string>

namespace dengue {

/// Parameter outside its admissible domain (negative rate, sigma <= 0, ...).
class DomainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A compartment went negative beyond tolerance during ODE integration.
class IntegrationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Bisection for the seasonal reproduction number found no sign change.
class BracketError : public std::runtime_error {
public:
    BracketError(const std::string& what, double rho_lo, double rho_hi)
        : std::runtime_error(what), rho_lo(rho_lo), rho_hi(rho_hi) {}
    double rho_lo;
    double rho_hi;
};

/// Malformed input file (CSV schema, gaps, negative counts).
class DataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Unknown or malformed configuration key.
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

}  // namespace dengue
