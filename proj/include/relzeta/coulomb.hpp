#pragma once

#include <complex>
#include <optional>

#include "relzeta/expansion.hpp"
#include "relzeta/quadrature.hpp"

// The concrete operator pair: a 3d Laplacian with repulsive Coulomb coupling
// gamma/|x|, perturbed by a point interaction of strength alpha at the
// origin. Everything here is a closed form in digamma/trigamma of the
// reduced variable z = gamma / (2 kappa), kappa = sqrt(-lambda), Re kappa >= 0.

namespace relzeta::coulomb {

using cxd = std::complex<double>;

struct ModelParams {
    double gamma = 0.0;  // Coulomb coupling, >= 0 (attractive case out of scope)
    double alpha = 0.0;  // point-interaction strength

    void validate() const {
        if (!(gamma >= 0.0)) {
            throw std::invalid_argument("ModelParams: gamma must be >= 0");
        }
        if (!std::isfinite(gamma) || !std::isfinite(alpha)) {
            throw std::invalid_argument("ModelParams: parameters must be finite");
        }
    }
};

// psi(1+z) - log z - 1/(2z) - psi(1) - psi(2), the effective coupling that
// balances 4 pi alpha in the s-wave eigenvalue equation (gamma > 0 branch;
// principal log). The gamma < 0 branch replaces log z by log(-z) and is out
// of scope here.
cxd coupling_function(cxd z);

// 1 - 2z + 2 psi'(1+z) z^2: closed form of the contour integral that reduces
// the Whittaker-function trace integral.
cxd trace_integral_closed(cxd z);

// The same quantity evaluated as (z / 2 pi i) * integral over a vertical
// line of (1-s)s / ((s+z)(s-1+z)) * pi^2/sin^2(pi s) ds. Requires Re z > 0
// (the line must separate the poles). Serves as the independent oracle for
// trace_integral_closed.
cxd trace_integral_contour(cxd z, const quadrature::AccuracyBudget& budget);

// Trace of the relative resolvent r(lambda; H_alpha, H_0) as a function of
// kappa = sqrt(-lambda), Re kappa >= 0, kappa != 0, extended continuously to
// the imaginary axis. gamma = 0 uses the point-interaction limit
// r = -1 / (2 kappa (4 pi alpha + kappa)). Throws eigenvalue_pole_error when
// the denominator vanishes.
cxd resolvent_trace(const ModelParams& params, cxd kappa);

// Small-lambda expansion sum b_k (-lambda)^(beta_k). Orders 0 and 1 come
// from closed forms; order 2 is a Richardson finite-difference estimate.
Expansion small_lambda_expansion(const ModelParams& params, int order = 1);

// Large-lambda expansion sum a_{j,k} (-lambda)^(-j/2) log^k(-lambda): the
// exact -1 and -3/2 groups (plus the -2 term for the pure point interaction,
// where it is elementary).
Expansion large_lambda_expansion(const ModelParams& params);

// alpha* = -gamma (psi(1)+psi(2)) / (4 pi); one negative eigenvalue exists
// iff alpha < alpha*.
double bound_state_threshold(double gamma);

// The unique negative eigenvalue E when alpha < bound_state_threshold(gamma),
// found by bracketing in x = sqrt(-E); nullopt otherwise.
std::optional<double> find_bound_state(const ModelParams& params);

}  // namespace relzeta::coulomb
