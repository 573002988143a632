#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "relzeta/coulomb.hpp"
#include "relzeta/spectral.hpp"
#include "relzeta/specfun.hpp"

using namespace relzeta;
using namespace relzeta::spectral;
using specfun::euler_gamma;
using specfun::pi;

namespace {
TraceFn coulomb_trace(double g, double a) {
    coulomb::ModelParams p{g, a};
    return [p](cxd kappa) { return coulomb::resolvent_trace(p, kappa); };
}

// Exact density of the pure point interaction (gamma = 0, alpha > 0):
// e(v) = 4 alpha / (v^2 + (4 pi alpha)^2).
double delta_density(double alpha, double v) {
    const double m = 4.0 * pi * alpha;
    return 4.0 * alpha / (v * v + m * m);
}

double e30_closed(double g, double a) {
    return (8.0 * pi * a - 2.0 * euler_gamma * g + 4.0 * g + g * std::log(g * g / 4.0)) /
           (2.0 * pi);
}
}  // namespace

TEST_CASE("zero trace gives zero measure") {
    auto zero = [](cxd) { return cxd(0.0, 0.0); };
    for (double v : {0.1, 1.0, 10.0}) CHECK(spectral_measure(zero, v) == 0.0);
}

TEST_CASE("branch-cut measure reproduces the exact point-interaction density") {
    const double alpha = 1.0;
    auto trace = coulomb_trace(0.0, alpha);
    for (double v : {1e-3, 0.1, 1.0, 10.0, 100.0}) {
        const double e = spectral_measure(trace, v);
        CHECK(e == doctest::Approx(delta_density(alpha, v)).epsilon(1e-10));
    }
}

TEST_CASE("coulomb measure vanishes at the origin and follows the printed tail") {
    auto trace = coulomb_trace(1.0, 0.0);
    // O(v^k), k > 0 at the origin; for the repulsive pair the decay is in
    // fact super-polynomial.
    CHECK(std::abs(spectral_measure(trace, 1e-2)) < 1e-6);
    CHECK(std::abs(spectral_measure(trace, 1e-3)) < 1e-8);

    // Two-term tail prediction: the relative deviation is set by the next
    // group ~ log(v)/v and shrinks accordingly from v=100 to v=1000.
    const double e31 = -1.0 / pi, e30 = e30_closed(1.0, 0.0);
    auto rel_dev = [&](double v) {
        const double predicted = (e31 * std::log(v) + e30) / (v * v);
        return std::abs(spectral_measure(trace, v) - predicted) / std::abs(predicted);
    };
    const double at_1e2 = rel_dev(100.0);
    const double at_1e3 = rel_dev(1000.0);
    CHECK(at_1e2 < 0.05);
    CHECK(at_1e3 < 0.01);
    CHECK(at_1e3 < 0.2 * at_1e2);
}

TEST_CASE("small-v coefficient transform") {
    Expansion small;
    small.variable = ExpansionVariable::minus_lambda;
    small.terms = {{-0.5, 0, 1.0}, {0.0, 0, 2.5}, {1.0, 0, -3.0}};
    auto cs = small_v_coefficients(small);
    REQUIRE(cs.size() == 3);
    // b = 1 at beta = -1/2: c = 2 sin(-pi/2)/pi = -2/pi, fixed by the exact
    // delta-model density (the printed general formula has the sign flipped).
    CHECK(cs[0].coefficient == doctest::Approx(-2.0 / pi).epsilon(1e-14));
    CHECK(cs[1].coefficient == 0.0);  // integer exponents vanish exactly
    CHECK(cs[2].coefficient == 0.0);
}

TEST_CASE("small-v transform matches the delta-model density at the origin") {
    const double alpha = 0.8;
    auto cs = small_v_coefficients(coulomb::small_lambda_expansion({0.0, alpha}, 2));
    // Leading term: beta = -1/2, v-power 0, value e(0) = 1/(4 pi^2 alpha).
    REQUIRE(!cs.empty());
    CHECK(cs[0].beta == -0.5);
    CHECK(cs[0].coefficient == doctest::Approx(delta_density(alpha, 0.0)).epsilon(1e-13));
}

TEST_CASE("large-v coefficients reproduce the worked-out values") {
    auto coeffs = large_v_coefficients(coulomb::large_lambda_expansion({1.0, 0.0}));
    double e20 = 0.0, e30 = 0.0, e31 = 0.0;
    for (const auto& t : coeffs.large_v) {
        if (t.alpha == -1.0 && t.log_power == 0) e20 = t.coefficient;
        if (t.alpha == -1.5 && t.log_power == 0) e30 = t.coefficient;
        if (t.alpha == -1.5 && t.log_power == 1) e31 = t.coefficient;
    }
    CHECK(e20 == 0.0);
    CHECK(e31 == doctest::Approx(-1.0 / pi).epsilon(1e-14));
    CHECK(e30 == doctest::Approx(e30_closed(1.0, 0.0)).epsilon(1e-14));
    CHECK(e30 == doctest::Approx((4.0 - 2.0 * euler_gamma - std::log(4.0)) / (2.0 * pi))
                     .epsilon(1e-14));

    // Raw triples: e_{3,1,1} = -gamma/(2 pi), e_{3,1,0} = 0.
    for (const auto& rt : coeffs.raw_large_v) {
        if (rt.alpha == -1.5 && rt.k == 1 && rt.h == 1) {
            CHECK(rt.coefficient == doctest::Approx(-0.5 / pi).epsilon(1e-14));
        }
        if (rt.alpha == -1.5 && rt.k == 1 && rt.h == 0) CHECK(rt.coefficient == 0.0);
    }
}

TEST_CASE("tail fit recovers an exact synthetic tail") {
    auto density = [](double v) { return (3.0 * std::log(v) - 2.0) / (v * v); };
    const TailFit fit = fit_tail_coefficients(density, 10.0, 1e4);
    CHECK(std::abs(fit.log_coeff - 3.0) < 1e-10);
    CHECK(std::abs(fit.const_coeff + 2.0) < 1e-10);
    CHECK(fit.residual < 1e-12);
}

TEST_CASE("tail fit pins the sign and magnitude of the coulomb tail") {
    for (double g : {0.5, 1.0, 2.0}) {
        for (double a : {0.0, 0.5}) {
            auto trace = coulomb_trace(g, a);
            auto density = [&](double v) { return spectral_measure(trace, v); };
            const TailFit fit = fit_tail_coefficients_extended(density, 1e2, 1e4);
            CHECK(std::abs(std::abs(fit.log_coeff) - g / pi) < 1e-3 * (g / pi));
            CHECK(fit.log_coeff < 0.0);  // measured sign: -gamma/pi
            CHECK(std::abs(fit.const_coeff - e30_closed(g, a)) <
                  1e-3 * std::max(1.0, std::abs(e30_closed(g, a))));
        }
    }
}

TEST_CASE("tail fit of the pure point interaction has no log term") {
    // The delta density is rational with corrections in 1/v^2 only; far
    // enough out the fitted log coefficient vanishes below 1e-6.
    auto trace = coulomb_trace(0.0, 1.0);
    auto density = [&](double v) { return spectral_measure(trace, v); };
    const TailFit fit = fit_tail_coefficients_extended(density, 1e4, 1e6);
    CHECK(std::abs(fit.log_coeff) < 1e-6);
    CHECK(fit.const_coeff == doctest::Approx(4.0).epsilon(1e-9));  // e_30 = 8 pi alpha/(2 pi)
    // On the near range the plain two-column fit still pins sign and rough size.
    const TailFit near = fit_tail_coefficients(density, 1e2, 1e4);
    CHECK(near.const_coeff == doctest::Approx(4.0).epsilon(0.05));
}

TEST_CASE("fit grid preconditions") {
    auto density = [](double v) { return 1.0 / (v * v); };
    CHECK_THROWS_AS(fit_tail_coefficients(density, 5.0, 1e3), std::invalid_argument);
    CHECK_THROWS_AS(fit_tail_coefficients(density, 10.0, 50.0), std::invalid_argument);
}
