#pragma once

#include <stdexcept>
#include <string>

namespace annuli {

// Thrown when an iterative scheme (adaptive quadrature, root finding)
// exhausts its budget. Carries the best estimate reached and its error
// bound so callers can decide whether the partial answer is usable.
class NonConvergenceError : public std::runtime_error {
public:
    NonConvergenceError(const std::string& what, double best_estimate, double error_estimate)
        : std::runtime_error(what), best_estimate_(best_estimate), error_estimate_(error_estimate) {}

    double best_estimate() const { return best_estimate_; }
    double error_estimate() const { return error_estimate_; }

private:
    double best_estimate_;
    double error_estimate_;
};

// Thrown when an integrand produces a NaN or infinity; identifies the
// offending abscissa.
class DomainError : public std::runtime_error {
public:
    DomainError(const std::string& what, double abscissa)
        : std::runtime_error(what), abscissa_(abscissa) {}

    double abscissa() const { return abscissa_; }

private:
    double abscissa_;
};

}  // namespace annuli
