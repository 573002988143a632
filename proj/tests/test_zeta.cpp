#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "relzeta/quadrature.hpp"
#include "relzeta/specfun.hpp"
#include "relzeta/zeta.hpp"

using namespace relzeta;
using namespace relzeta::zeta;
using specfun::euler_gamma;
using specfun::pi;

namespace {
const AccuracyBudget kTol{1e-9, 0.0};

RelativeModel delta_model(double alpha) { return coulomb_delta_model({0.0, alpha}); }

// Exact relative zeta of the pure point interaction with m = 4 pi alpha:
// zeta(s) = m^(-2s) sec(pi s) / 2, from e(v) = 4 alpha / (v^2 + m^2).
double delta_zeta_exact(double alpha, double s) {
    const double m = 4.0 * pi * alpha;
    return 0.5 * std::pow(m, -2.0 * s) / std::cos(pi * s);
}
}  // namespace

TEST_CASE("zero model gives identically zero zeta") {
    auto model = make_density_model("zero", [](double) { return 0.0; });
    for (double s : {-0.75, -0.5, -0.25, 0.25}) {
        CHECK(zeta_continued(model, s, kTol) == 0.0);
    }
}

TEST_CASE("compactly supported synthetic density has an elementary zeta") {
    auto model = make_density_model("bump", [](double v) { return v <= 1.0 ? v : 0.0; });
    for (double s : {-0.75, -0.25, 0.25}) {
        CHECK(std::abs(zeta_continued(model, s, kTol) - 1.0 / (2.0 - 2.0 * s)) < 1e-9);
    }
}

TEST_CASE("delta-model zeta matches the closed form across the strip") {
    const double alpha = 1.0;
    auto model = delta_model(alpha);
    for (double s : {-0.75, -0.4, -0.25, -0.1, 0.2}) {
        const double z = zeta_continued(model, s, kTol);
        CHECK(std::abs(z - delta_zeta_exact(alpha, s)) < 1e-7);
    }
}

TEST_CASE("delta-model laurent data at s=-1/2 matches the closed form") {
    const double alpha = 1.0;
    const double m = 4.0 * pi * alpha;
    auto model = delta_model(alpha);
    const LaurentData l = laurent_at_minus_half(model, kTol);
    CHECK(l.res2 == 0.0);
    CHECK(std::abs(l.res1 - 2.0 * alpha) < 1e-12);
    // Finite part of m^(1-2x)/(2 sin(pi x)/pi ...) at x = s + 1/2:
    // res0 = -(m/pi) log m * pi = -4 alpha log m.
    CHECK(std::abs(l.res0 + 4.0 * alpha * std::log(m)) < 1e-7);
}

TEST_CASE("coulomb laurent data: double pole from the log term") {
    auto model = coulomb_delta_model({1.0, 0.0});
    const LaurentData l = laurent_at_minus_half(model, kTol);
    CHECK(l.res2 == doctest::Approx(-1.0 / (4.0 * pi)).epsilon(1e-12));
    const double e30 = (-2.0 * euler_gamma + 4.0 + std::log(0.25)) / (2.0 * pi);
    CHECK(l.res1 == doctest::Approx(0.5 * e30).epsilon(1e-12));
}

TEST_CASE("laurent ring fit against the direct continuation") {
    for (auto [g, a] : {std::pair{1.0, 0.0}, {0.5, 0.2}, {0.0, 1.0}}) {
        auto model = coulomb_delta_model({g, a});
        const LaurentData l = laurent_at_minus_half(model, kTol);
        const LaurentData fit = laurent_ring_fit(model, kTol);
        CHECK(std::abs(fit.res2 - l.res2) < 1e-5);
        CHECK(std::abs(fit.res1 - l.res1) < 1e-5);
        CHECK(std::abs(fit.res0 - l.res0) < 1e-5 * std::max(1.0, std::abs(l.res0)));
    }
}

TEST_CASE("zeta continuation cross-checked by brute-force truncation") {
    auto model = coulomb_delta_model({1.0, 0.0});
    const double s = -0.25;
    const double engine = zeta_continued(model, s, kTol);

    // Raw integral over [0, V] plus the closed-form tail of the two known
    // terms; the neglected remainder is O(V^(-3/2) log V).
    const double V = 1e6;
    quadrature::Integrand f{
        [&](double v) { return std::complex<double>(std::pow(v, -2.0 * s) * model.density(v), 0.0); },
        quadrature::Singularity::none, 0.0};
    double brute = 0.0;
    double lo = 0.0, hi = 1.0;
    while (lo < V) {
        brute += quadrature::integrate_finite(f, lo, std::min(hi, V), AccuracyBudget{1e-8, 0.0})
                     .value.real();
        lo = hi;
        hi *= 2.0;
    }
    double e31 = 0.0, e30 = 0.0;
    for (const auto& t : model.coefficients.large_v) {
        if (t.alpha == -1.5 && t.log_power == 1) e31 = t.coefficient;
        if (t.alpha == -1.5 && t.log_power == 0) e30 = t.coefficient;
    }
    // integral_V^inf v^(-2s) (e31 log v + e30)/v^2 dv, exponent q = -2s-2:
    const double q = -2.0 * s - 2.0;
    const double tail = -std::pow(V, q + 1.0) / (q + 1.0) *
                            (e30 + e31 * (std::log(V) - 1.0 / (q + 1.0)));
    brute += tail;
    CHECK(std::abs(engine - brute) < 1e-5);
}

TEST_CASE("pole bookkeeping raises near excluded points") {
    auto model = coulomb_delta_model({1.0, 0.0});
    CHECK_THROWS_AS(zeta_continued(model, -0.5, kTol), pole_error);
    CHECK_THROWS_AS(zeta_continued(model, -0.5 + 5e-7, kTol), pole_error);
    auto delta = delta_model(1.0);
    CHECK_THROWS_AS(zeta_continued(delta, 0.5 - 1e-9, kTol), pole_error);
}

TEST_CASE("admissibility validation rejects alpha0 >= beta0") {
    Expansion small, large;
    small.terms = {{-1.0, 0, 1.0}};
    large.terms = {{-1.0, 0, -0.5}};
    auto trace = [](std::complex<double> k) { return -0.5 / (k * k); };
    CHECK_THROWS_AS(make_trace_model("bad", trace, small, large), std::invalid_argument);
    // gamma = alpha = 0 degenerates the same way at the expansion level.
    CHECK_THROWS_AS(coulomb_delta_model({0.0, 0.0}), std::invalid_argument);
}

TEST_CASE("subtraction robustness: an extra convergent term is compensated exactly") {
    auto model = coulomb_delta_model({1.0, 0.0});
    const double base = zeta_continued(model, -0.25, kTol);
    RelativeModel extended = model;
    // Append a fabricated alpha = -5/2 term: subtracted numerically and
    // compensated in closed form, so the value must not move.
    extended.coefficients.large_v.push_back({-2.5, 0, 0.37});
    const double with_extra = zeta_continued(extended, -0.25, kTol);
    CHECK(std::abs(base - with_extra) < 1e-9);
}

TEST_CASE("log eta: synthetic density against a brute-force grid") {
    auto model = make_density_model("expdecay", [](double v) { return v * std::exp(-v); });
    const double tau = 1.0;
    const double engine = log_eta(model, tau, AccuracyBudget{1e-10, 0.0});
    // Trapezoid on a fine grid, singular first cell handled by the
    // integrable log(tau v) * v bound.
    const double h = 1e-5;
    long double acc = 0.0L;
    for (int i = 1; i <= 4000000; ++i) {
        const double v = h * i;
        const double w = (i == 4000000) ? 0.5 : 1.0;
        acc += w * std::log1p(-std::exp(-tau * v)) * v * std::exp(-v);
    }
    const double brute = static_cast<double>(acc) * h;
    CHECK(std::abs(engine - brute) < 1e-8);
    CHECK(engine < 0.0);
}

TEST_CASE("log eta vanishes at high temperature ratio") {
    // For a density linear at the origin the decay is log(tau)/tau^2, so
    // each factor 10 in tau shrinks |log eta| by roughly two decades.
    auto model = make_density_model("expdecay", [](double v) { return v * std::exp(-v); });
    const double at_1 = std::abs(log_eta(model, 1.0, kTol));
    const double at_20 = std::abs(log_eta(model, 20.0, kTol));
    const double at_200 = std::abs(log_eta(model, 200.0, kTol));
    CHECK(at_20 < 0.03 * at_1);
    CHECK(at_200 < 0.03 * at_20);
    auto zero = make_density_model("zero", [](double) { return 0.0; });
    CHECK(log_eta(zero, 1.0, kTol) == 0.0);
}

TEST_CASE("heat trace: delta model against the erfc closed form") {
    const double alpha = 1.0;
    const double m = 4.0 * pi * alpha;
    auto model = delta_model(alpha);
    for (double t : {0.5, 1.0, 2.0}) {
        const double exact = 0.5 * std::exp(m * m * t) * std::erfc(m * std::sqrt(t));
        CHECK(std::abs(heat_trace(model, t, AccuracyBudget{1e-10, 0.0}) - exact) < 1e-8);
    }
}

TEST_CASE("heat trace decays in t") {
    auto model = coulomb_delta_model({1.0, 0.0});
    const double t1 = heat_trace(model, 1.0, kTol);
    const double t50 = heat_trace(model, 50.0, kTol);
    CHECK(std::abs(t50) < std::abs(t1) * 1e-3);
}

TEST_CASE("hankel and spectral heat traces agree (cross-oracle)") {
    auto model = coulomb_delta_model({1.0, 0.0});
    for (double t : {0.5, 1.0, 2.0}) {
        const double spectral_side = heat_trace(model, t, AccuracyBudget{1e-8, 0.0});
        const auto hankel = hankel_heat_trace(model, t, AccuracyBudget{1e-8, 0.0});
        CHECK(std::abs(spectral_side - hankel.value) < 1e-6);
    }
}

TEST_CASE("residua at s=0: generic assembly equals the specialized closed forms") {
    const double one_minus_log2 = 1.0 - std::log(2.0);
    for (double g : {0.5, 1.0, 2.0}) {
        for (double a : {0.0, 0.3, 1.0}) {
            auto model = coulomb_delta_model({g, a});
            const LaurentData l = laurent_at_minus_half(model, kTol);
            for (double beta : {1.0, 2.0 * pi}) {
                const Residues r = residua_L(model, beta, kTol);
                // Closed forms of the specialized corollary:
                const double e31 = -g / pi;
                const double e30 =
                    (8.0 * pi * a - 2.0 * euler_gamma * g + 4.0 * g + g * std::log(g * g / 4.0)) /
                    (2.0 * pi);
                CHECK(std::abs(r.res1_at_0 - g * beta / (4.0 * pi)) < 1e-10);
                const double res0_closed = -0.5 * e30 * beta + one_minus_log2 * g * beta / (2.0 * pi);
                CHECK(std::abs(r.res0_at_0 - res0_closed) < 1e-10);
                const double res0p_closed =
                    -beta * l.res0 - one_minus_log2 * e30 * beta +
                    (2.0 + pi * pi / 6.0 + 2.0 * one_minus_log2 * one_minus_log2) * g * beta /
                        (4.0 * pi) -
                    2.0 * log_eta(model, beta, kTol);
                CHECK(std::abs(r.res0_prime_at_0 - res0p_closed) < 1e-10);
            }
        }
    }
}

TEST_CASE("partition function: scale identity and assembly invariant") {
    auto model = coulomb_delta_model({0.0, 1.0});
    const double beta = 1.0;
    const PartitionResult p1 = log_partition(model, beta, 1.0, kTol);
    const PartitionResult p2 = log_partition(model, beta, 3.0, kTol);
    // log Z_R(l2) - log Z_R(l1) = -res0 * log(l2/l1), exactly as computed.
    CHECK(p2.log_ZR - p1.log_ZR ==
          doctest::Approx(-p1.res0_zeta_L * std::log(3.0)).epsilon(1e-12));
    CHECK(p1.log_ZR == 0.5 * p1.res0_zeta_prime_L - 0.5 * p1.res0_zeta_L * std::log(1.0));
    CHECK(p2.log_ZR ==
          0.5 * p2.res0_zeta_prime_L - 0.5 * p2.res0_zeta_L * std::log(9.0));

    // Bound-state information is carried through diagnostics.
    auto bound = coulomb_delta_model({1.0, 0.0});
    const PartitionResult p3 = log_partition(bound, 1.0, 1.0, kTol);
    CHECK(p3.diagnostics.bound_state_energy.has_value());
    CHECK(p3.diagnostics.sign_record.performed);
    CHECK(!p3.diagnostics.sign_record.flipped_log);
}
