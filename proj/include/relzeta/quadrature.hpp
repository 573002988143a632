#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <vector>

#include "relzeta/errors.hpp"

// Numeric integration layer: adaptive panels on finite intervals (with
// declared endpoint singularities), semi-infinite integrals with asymptotic
// tail subtraction, vertical-line contour integrals, and the Hankel-contour
// heat-trace evaluator. Integrand evaluators must be safe for concurrent
// calls; the routines themselves keep no shared state.

namespace relzeta::quadrature {

using cxd = std::complex<double>;

struct AccuracyBudget {
    double abs_tol = 1e-10;
    double rel_tol = 0.0;

    void validate() const {
        if (abs_tol < 0 || rel_tol < 0 || (abs_tol == 0 && rel_tol == 0)) {
            throw std::invalid_argument(
                "AccuracyBudget: tolerances must be >= 0 with at least one > 0");
        }
    }
    double target(double scale) const { return std::max(abs_tol, rel_tol * scale); }
};

enum class Singularity {
    none,
    log_left,        // integrand ~ log(v - a) near the left endpoint
    algebraic_left,  // integrand ~ (v - a)^p, p > -1, near the left endpoint
};

struct Integrand {
    std::function<cxd(double)> eval;
    Singularity kind = Singularity::none;
    double exponent = 0.0;  // p for algebraic_left
};

// One asymptotic term coefficient * v^exponent * log(v)^log_power.
struct TailTerm {
    double exponent = 0.0;
    int log_power = 0;
    double coefficient = 0.0;
};

struct TailModel {
    std::vector<TailTerm> terms;  // exponents non-increasing, log powers within a tie distinct
    // Decay exponent of the remainder f - sum(terms); used for the truncation
    // bound. Defaults to (smallest subtracted exponent) - 1/2, or is measured
    // from samples when no terms are given.
    std::optional<double> next_exponent;
};

struct IntegralResult {
    cxd value{0.0, 0.0};
    double error = 0.0;
    std::size_t evaluations = 0;
};

struct HankelResult {
    double value = 0.0;
    double imag_residual = 0.0;
    double error = 0.0;
};

// Adaptive integral of f over [a, b]. Error estimates are conservative in
// the embedded-pair sense. Throws convergence_error (carrying the best
// estimate) if the refinement depth limit (60) is exhausted.
IntegralResult integrate_finite(const Integrand& f, double a, double b,
                                const AccuracyBudget& budget);

// integral_a^inf [ f(v) - sum_j c_j v^(p_j) log^(h_j) v ] dv, a > 0.
// Throws numeric_error naming the offending exponent when the residual does
// not decay integrably.
IntegralResult integrate_tail(const Integrand& f, double a, const TailModel& tail,
                              const AccuracyBudget& budget);

// (1/2 pi i) * integral over the vertical line Re z = x0 of g(z) dz.
// g must decay in |Im z|; the truncation height adapts to the measured rate.
IntegralResult integrate_vertical_line(const std::function<cxd(cxd)>& g, double x0,
                                       const AccuracyBudget& budget);

struct HankelOptions {
    // Contour: horizontal rays Im(lambda) = +-ray_offset over [cap_center, inf),
    // closed by a semicircle of radius ray_offset around lambda = cap_center.
    // cap_center defaults to -1/t. Callers must shrink the contour when the
    // trace has poles on the negative axis (bound states).
    double ray_offset = 1.0;
    std::optional<double> cap_center;
};

// Relative heat trace (1/2 pi i) contour-integral of e^(-lambda t) r(kappa)
// around the spectrum [0, inf), counterclockwise, with kappa = sqrt(-lambda).
// The result must be real; an imaginary residual beyond the budget raises
// branch_error.
HankelResult hankel_heat_trace(const std::function<cxd(cxd)>& trace_kappa, double t,
                               const AccuracyBudget& budget, const HankelOptions& opts = {});

}  // namespace relzeta::quadrature
