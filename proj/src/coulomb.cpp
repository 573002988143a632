#include "relzeta/coulomb.hpp"

#include <cmath>
#include <string>

#include "relzeta/specfun.hpp"

namespace relzeta::coulomb {

namespace {

using specfun::euler_gamma;
using specfun::pi;

// psi(1) + psi(2) = 1 - 2C
constexpr double kPsi1PlusPsi2 = 1.0 - 2.0 * euler_gamma;

bool near_negative_integer(cxd z) {
    if (z.imag() != 0.0) return false;
    const double r = std::round(z.real());
    return r <= 0.0 && z.real() == r;
}

}  // namespace

cxd coupling_function(cxd z) {
    if (z == cxd(0.0, 0.0) || near_negative_integer(z + 1.0)) {
        throw pole_error("coupling_function: pole at z=(" + std::to_string(z.real()) + "," +
                         std::to_string(z.imag()) + ")");
    }
    return specfun::digamma(1.0 + z) - std::log(z) - 0.5 / z - kPsi1PlusPsi2;
}

cxd trace_integral_closed(cxd z) {
    if (near_negative_integer(z + 1.0)) {
        throw pole_error("trace_integral_closed: pole at negative integer z");
    }
    // The direct form loses ~|2z| eps to cancellation (the value decays like
    // 1/(3z)); for large |z| sum the Bernoulli series of the same quantity,
    // I(z) = 2 sum_k B_2k z^(1-2k), instead.
    if (std::abs(z) >= 16.0) {
        const cxd inv2 = 1.0 / (z * z);
        cxd p = 1.0 / z;
        cxd acc = 0.0;
        for (int k = 1; k <= 8; ++k) {
            acc += specfun::bernoulli(2 * k) * p;
            p *= inv2;
        }
        return 2.0 * acc;
    }
    return 1.0 - 2.0 * z + 2.0 * specfun::trigamma(1.0 + z) * z * z;
}

cxd trace_integral_contour(cxd z, const quadrature::AccuracyBudget& budget) {
    if (!(z.real() > 0.0)) {
        throw std::invalid_argument("trace_integral_contour: requires Re z > 0");
    }
    // The line must keep {1, 2, ...} on its right and {0, -1, ...} together
    // with {1-z, -z, -1-z, ...} on its left.
    const double x0 = 0.5 * (std::max(0.0, 1.0 - z.real()) + 1.0);
    auto g = [z](cxd s) {
        return (1.0 - s) * s / ((s + z) * (s - 1.0 + z)) * pi * pi * specfun::csc_pi_sq(s);
    };
    return z * quadrature::integrate_vertical_line(g, x0, budget).value;
}

cxd resolvent_trace(const ModelParams& params, cxd kappa) {
    params.validate();
    if (kappa == cxd(0.0, 0.0)) {
        throw std::invalid_argument("resolvent_trace: kappa = 0 is outside the domain");
    }
    const double four_pi_alpha = 4.0 * pi * params.alpha;
    if (params.gamma == 0.0) {
        // gamma F_gamma(gamma / 2 kappa) -> -kappa, z I(z) / gamma -> 1 / (2 kappa)
        const cxd den = four_pi_alpha + kappa;
        if (std::abs(den) < 1e-12 * (1.0 + std::abs(kappa))) {
            throw eigenvalue_pole_error("resolvent_trace: eigenvalue pole (gamma = 0)",
                                        -kappa * kappa);
        }
        return -1.0 / (2.0 * kappa * den);
    }
    const cxd z = params.gamma / (2.0 * kappa);
    const cxd gF = params.gamma * coupling_function(z);
    const cxd den = four_pi_alpha - gF;
    if (std::abs(den) < 1e-12 * (1.0 + std::abs(gF))) {
        throw eigenvalue_pole_error("resolvent_trace: eigenvalue pole", -kappa * kappa);
    }
    return -z * trace_integral_closed(z) / (params.gamma * den);
}

Expansion small_lambda_expansion(const ModelParams& params, int order) {
    params.validate();
    if (order < 0 || order > 2) {
        throw std::invalid_argument("small_lambda_expansion: order must be in [0, 2]");
    }
    Expansion out;
    out.variable = ExpansionVariable::minus_lambda;
    if (params.gamma == 0.0) {
        // r = -1/(2 kappa (4 pi alpha + kappa)): half-integer powers,
        // b_n = (-1)^(n+1) / (2 (4 pi alpha)^(n+1)) at exponent (n-1)/2.
        const double m = 4.0 * pi * params.alpha;
        if (m == 0.0) {
            throw std::invalid_argument(
                "small_lambda_expansion: gamma = alpha = 0 has no valid expansion "
                "(leading exponents coincide)");
        }
        double denom = 2.0 * m;
        double sign = -1.0;
        for (int n = 0; n <= 2 * order + 2; ++n) {
            out.terms.emplace_back((n - 1.0) / 2.0, 0, sign / denom);
            denom *= m;
            sign = -sign;
        }
        out.require_small_lambda_order();
        return out;
    }
    const double g = params.gamma;
    const double d0 = 4.0 * pi * params.alpha + g - 2.0 * euler_gamma * g;
    if (d0 == 0.0) {
        throw std::invalid_argument(
            "small_lambda_expansion: leading coefficient undefined (4 pi alpha = (2C-1) gamma)");
    }
    const double b0 = -1.0 / (3.0 * g * d0);
    out.terms.emplace_back(0.0, 0, b0);
    if (order >= 1) {
        const double b1 =
            ((17.0 - 24.0 * euler_gamma) * g + 48.0 * pi * params.alpha) /
            (45.0 * g * g * g * d0 * d0);
        out.terms.emplace_back(1.0, 0, b1);
        if (order >= 2) {
            // No printed closed form beyond b_1: estimate b_2 by Richardson
            // differencing of the remainder at small (-lambda).
            auto rem = [&](double ml) {
                const cxd r = resolvent_trace(params, std::sqrt(cxd(ml, 0.0)));
                return (r.real() - b0 - b1 * ml) / (ml * ml);
            };
            const double h = 1e-3;
            const double b2 = (4.0 * rem(h / 2.0) - rem(h)) / 3.0;
            out.terms.emplace_back(2.0, 0, b2);
        }
    }
    out.require_small_lambda_order();
    return out;
}

Expansion large_lambda_expansion(const ModelParams& params) {
    params.validate();
    Expansion out;
    out.variable = ExpansionVariable::minus_lambda;
    out.terms.emplace_back(-1.0, 0, -0.5);
    const double g = params.gamma;
    if (g == 0.0) {
        const double m = 4.0 * pi * params.alpha;
        out.terms.emplace_back(-1.5, 0, 0.5 * m);
        out.terms.emplace_back(-1.5, 1, 0.0);
        out.terms.emplace_back(-2.0, 0, -0.5 * m * m);
    } else {
        const double a30 =
            0.5 * (4.0 * pi * params.alpha + (2.0 - euler_gamma) * g +
                   g * (std::log(g) - std::log(2.0)));
        out.terms.emplace_back(-1.5, 0, a30);
        out.terms.emplace_back(-1.5, 1, -0.25 * g);
    }
    out.require_large_lambda_order();
    return out;
}

double bound_state_threshold(double gamma) {
    if (!(gamma >= 0.0)) throw std::invalid_argument("bound_state_threshold: gamma must be >= 0");
    return -gamma * kPsi1PlusPsi2 / (4.0 * pi);
}

std::optional<double> find_bound_state(const ModelParams& params) {
    params.validate();
    const double threshold = bound_state_threshold(params.gamma);
    if (params.alpha >= threshold) return std::nullopt;
    if (params.gamma == 0.0) {
        // 4 pi alpha = -sqrt(-E)
        const double x = -4.0 * pi * params.alpha;
        return -x * x;
    }
    // Solve h(x) = 4 pi alpha - gamma F(gamma / 2x) = 0 in x = sqrt(-E).
    // h < 0 as x -> 0+ (below threshold) and h -> +infinity as x -> infinity.
    auto h = [&](double x) {
        return 4.0 * pi * params.alpha -
               params.gamma * coupling_function(cxd(params.gamma / (2.0 * x), 0.0)).real();
    };
    double lo = 1e-8;
    double f_lo = h(lo);
    if (f_lo >= 0.0) {
        // Root is below the smallest probe: tighten toward zero.
        while (f_lo >= 0.0 && lo > 1e-300) {
            lo *= 1e-2;
            f_lo = h(lo);
        }
        if (f_lo >= 0.0) throw numeric_error("find_bound_state: failed to bracket near x = 0");
    }
    double hi = std::max(1.0, 4.0 * lo);
    double f_hi = h(hi);
    int grow = 0;
    while (f_hi < 0.0) {
        hi *= 4.0;
        f_hi = h(hi);
        if (++grow > 400) throw numeric_error("find_bound_state: failed to bracket at large x");
    }
    for (int it = 0; it < 200 && hi - lo > 1e-16 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double f_mid = h(mid);
        if (f_mid < 0.0) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
            f_hi = f_mid;
        }
    }
    const double x = 0.5 * (lo + hi);
    return -x * x;
}

}  // namespace relzeta::coulomb
