#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace relzeta {

// Base class for all runtime numeric failures raised by this library.
struct numeric_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Evaluation requested exactly at (or too close to) a pole of the function.
struct pole_error : numeric_error {
    using numeric_error::numeric_error;
};

// The resolvent-trace denominator vanished: the spectral parameter sits on
// an eigenvalue of the perturbed operator.
struct eigenvalue_pole_error : pole_error {
    eigenvalue_pole_error(const std::string& msg, std::complex<double> where)
        : pole_error(msg), location(where) {}
    std::complex<double> location;
};

// Two evaluation routes that must agree (branch-cut limits, contour sums)
// diverged; usually signals a branch or sheet mishap.
struct branch_error : numeric_error {
    using numeric_error::numeric_error;
};

// An adaptive scheme ran out of refinement budget. Carries the best value
// reached and its estimated error so callers can decide what to do.
struct convergence_error : numeric_error {
    convergence_error(const std::string& msg, std::complex<double> best, double err)
        : numeric_error(msg), best_estimate(best), error_estimate(err) {}
    std::complex<double> best_estimate;
    double error_estimate;
};

}  // namespace relzeta
