#ifndef GACLUTTER_ERRORS_HPP
#define GACLUTTER_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace gaclutter {

/// A requested moment (or quantile at t=1) does not exist as a finite value.
class infinite_moment_error : public std::domain_error {
public:
    explicit infinite_moment_error(const std::string& what) : std::domain_error(what) {}
};

/// Quantile evaluated at probability 1: the value is +infinity by definition.
class infinite_value_error : public std::domain_error {
public:
    explicit infinite_value_error(const std::string& what) : std::domain_error(what) {}
};

/// A target clutter correlation lies outside the attainable range for (alpha, looks).
class infeasible_correlation_error : public std::domain_error {
public:
    infeasible_correlation_error(const std::string& what, double rho_min, double rho_max)
        : std::domain_error(what), rho_min(rho_min), rho_max(rho_max) {}
    double rho_min;
    double rho_max;
};

/// The Gaussian correlation grid is not nonnegative-definite on the torus.
class invalid_correlation_structure_error : public std::runtime_error {
public:
    invalid_correlation_structure_error(const std::string& what, double min_value, long count)
        : std::runtime_error(what), min_value(min_value), negative_count(count) {}
    double min_value;      // most negative transform value found
    long negative_count;   // number of entries below tolerance
};

/// Sample moments admit no (alpha, gamma) solution with alpha < -1.
class no_moment_solution_error : public std::domain_error {
public:
    explicit no_moment_solution_error(const std::string& what) : std::domain_error(what) {}
};

} // namespace gaclutter

#endif
