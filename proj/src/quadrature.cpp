#include "relzeta/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>

namespace relzeta::quadrature {

namespace {

constexpr int kMaxDepth = 60;
constexpr double kEps = std::numeric_limits<double>::epsilon();

// Gauss-Legendre nodes/weights on [-1, 1], generated once by Newton
// iteration on P_n (cos initial guesses, standard gauleg scheme).
template <int N>
struct GaussRule {
    std::array<double, N> x{};
    std::array<double, N> w{};

    GaussRule() {
        const int m = (N + 1) / 2;
        for (int i = 0; i < m; ++i) {
            double xi = std::cos(M_PI * (i + 0.75) / (N + 0.5));
            double dp = 0.0;
            for (int it = 0; it < 100; ++it) {
                double p0 = 1.0, p1 = xi;
                for (int k = 2; k <= N; ++k) {
                    const double p2 = ((2.0 * k - 1.0) * xi * p1 - (k - 1.0) * p0) / k;
                    p0 = p1;
                    p1 = p2;
                }
                dp = N * (xi * p1 - p0) / (xi * xi - 1.0);
                const double dx = p1 / dp;
                xi -= dx;
                if (std::abs(dx) < 1e-16) break;
            }
            x[static_cast<std::size_t>(i)] = -xi;
            x[static_cast<std::size_t>(N - 1 - i)] = xi;
            const double wi = 2.0 / ((1.0 - xi * xi) * dp * dp);
            w[static_cast<std::size_t>(i)] = wi;
            w[static_cast<std::size_t>(N - 1 - i)] = wi;
        }
    }
};

const GaussRule<7>& rule7() {
    static const GaussRule<7> r;
    return r;
}
const GaussRule<15>& rule15() {
    static const GaussRule<15> r;
    return r;
}

struct PanelEval {
    cxd coarse;
    cxd fine;
    double max_abs = 0.0;
};

PanelEval eval_panel(const std::function<cxd(double)>& f, double a, double b) {
    PanelEval out;
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    const auto& g7 = rule7();
    const auto& g15 = rule15();
    cxd s7 = 0.0, s15 = 0.0;
    for (int i = 0; i < 7; ++i) {
        const cxd fi = f(mid + half * g7.x[static_cast<std::size_t>(i)]);
        s7 += g7.w[static_cast<std::size_t>(i)] * fi;
        out.max_abs = std::max(out.max_abs, std::abs(fi));
    }
    for (int i = 0; i < 15; ++i) {
        const cxd fi = f(mid + half * g15.x[static_cast<std::size_t>(i)]);
        s15 += g15.w[static_cast<std::size_t>(i)] * fi;
        out.max_abs = std::max(out.max_abs, std::abs(fi));
    }
    out.coarse = half * s7;
    out.fine = half * s15;
    return out;
}

// Adaptive bisection with a G7/G15 embedded pair on a smooth integrand.
IntegralResult adapt_smooth(const std::function<cxd(double)>& f, double a, double b,
                            const AccuracyBudget& budget) {
    struct Panel {
        double a, b;
        int depth;
    };
    IntegralResult res;

    // First pass: whole-interval estimate to anchor the relative tolerance.
    PanelEval first = eval_panel(f, a, b);
    res.evaluations += 22;
    const double tol = budget.target(std::abs(first.fine));
    const double total_len = b - a;

    std::vector<Panel> stack{{a, b, 0}};
    std::size_t panels = 0;
    while (!stack.empty()) {
        const Panel p = stack.back();
        stack.pop_back();
        if (++panels > 200000) {
            throw convergence_error("integrate_finite: panel budget exhausted", res.value,
                                    res.error);
        }
        const PanelEval e = eval_panel(f, p.a, p.b);
        res.evaluations += 22;
        const double err = std::abs(e.fine - e.coarse);
        const double local_tol =
            std::max(tol * (p.b - p.a) / total_len, 8.0 * kEps * e.max_abs * (p.b - p.a));
        const bool converged = std::isfinite(err) && err <= local_tol;
        if (converged || p.depth >= kMaxDepth) {
            if (!converged) {
                throw convergence_error(
                    "integrate_finite: refinement depth exhausted on [" +
                        std::to_string(p.a) + ", " + std::to_string(p.b) + "]",
                    res.value + e.fine, res.error + err);
            }
            res.value += e.fine;
            // Floor the panel error at rounding level so the reported
            // estimate stays an upper bound even for exactly-integrated
            // integrands.
            res.error += std::max(err, 2.0 * kEps * e.max_abs * (p.b - p.a));
        } else {
            const double mid = 0.5 * (p.a + p.b);
            stack.push_back({p.a, mid, p.depth + 1});
            stack.push_back({mid, p.b, p.depth + 1});
        }
    }
    return res;
}

}  // namespace

IntegralResult integrate_finite(const Integrand& f, double a, double b,
                                const AccuracyBudget& budget) {
    budget.validate();
    if (!(a < b)) throw std::invalid_argument("integrate_finite: requires a < b");
    if (!f.eval) throw std::invalid_argument("integrate_finite: empty evaluator");

    switch (f.kind) {
        case Singularity::none:
            return adapt_smooth(f.eval, a, b, budget);
        case Singularity::log_left: {
            // v = a + (b-a) e^{-u}: the weight (b-a)e^{-u} absorbs the
            // logarithmic blow-up at the left endpoint.
            const double len = b - a;
            const double u_max = 50.0;  // dropped remainder ~ len * e^{-50} * |log|
            auto g = [&](double u) {
                const double w = len * std::exp(-u);
                return f.eval(a + w) * w;
            };
            return adapt_smooth(g, 0.0, u_max, budget);
        }
        case Singularity::algebraic_left: {
            if (!(f.exponent > -1.0)) {
                throw std::invalid_argument(
                    "integrate_finite: algebraic exponent must be > -1");
            }
            // v = a + w, w = t^m with m(1+p) >= 3 so the transformed
            // integrand vanishes at least quadratically at t = 0.
            const double m = std::max(2.0, std::ceil(3.0 / (1.0 + f.exponent)));
            const double len = b - a;
            auto g = [&](double t) {
                const double w = std::pow(t, m);
                return f.eval(a + w) * m * std::pow(t, m - 1.0);
            };
            return adapt_smooth(g, 0.0, std::pow(len, 1.0 / m), budget);
        }
    }
    throw std::logic_error("integrate_finite: unknown singularity class");
}

IntegralResult integrate_tail(const Integrand& f, double a, const TailModel& tail,
                              const AccuracyBudget& budget) {
    budget.validate();
    if (!(a > 0)) throw std::invalid_argument("integrate_tail: requires a > 0");
    for (std::size_t i = 1; i < tail.terms.size(); ++i) {
        if (tail.terms[i].exponent > tail.terms[i - 1].exponent) {
            throw std::invalid_argument("integrate_tail: exponents must be non-increasing");
        }
    }

    auto residual = [&](double v) {
        cxd s = f.eval(v);
        if (!tail.terms.empty()) {
            const double lv = std::log(v);
            for (const auto& t : tail.terms) {
                s -= t.coefficient * std::pow(v, t.exponent) * std::pow(lv, t.log_power);
            }
        }
        return s;
    };

    double next_exp;
    if (tail.next_exponent) {
        next_exp = *tail.next_exponent;
    } else if (!tail.terms.empty()) {
        next_exp = tail.terms.back().exponent - 0.5;
    } else {
        // Measure an apparent decay exponent from two samples.
        const double g1 = std::abs(residual(a)), g2 = std::abs(residual(2.0 * a));
        next_exp = (g1 > 0 && g2 > 0) ? std::log(g2 / g1) / std::log(2.0) : -2.0;
    }
    if (!(next_exp < -1.0)) {
        throw numeric_error("integrate_tail: residual exponent " + std::to_string(next_exp) +
                            " is not integrable at infinity");
    }

    // Magnitude of the pieces destroyed by the subtraction; the residual
    // cannot be computed more accurately than eps times this, so segment
    // tolerances must not be pushed below that floor (the splitter would
    // chase rounding noise).
    auto piece_scale = [&](double v) {
        double s = std::abs(f.eval(v));
        const double lv = std::log(v);
        for (const auto& t : tail.terms) {
            s += std::abs(t.coefficient) * std::pow(v, t.exponent) *
                 std::abs(std::pow(lv, t.log_power));
        }
        return s;
    };

    IntegralResult total;
    double lo = a;
    double prev_mag = std::numeric_limits<double>::infinity();
    int grow_count = 0;
    const double tol = budget.target(1.0);
    for (int seg = 0; seg < 64; ++seg) {
        const double hi = 2.0 * lo;
        const double noise_floor = 32.0 * kEps * piece_scale(lo) * (hi - lo);
        AccuracyBudget seg_budget;
        seg_budget.abs_tol = std::max(tol / (4.0 * (seg + 1.0) * (seg + 2.0)), noise_floor);
        seg_budget.rel_tol = 0.0;
        Integrand g{residual, Singularity::none, 0.0};
        const IntegralResult part = integrate_finite(g, lo, hi, seg_budget);
        total.error += noise_floor;
        total.value += part.value;
        total.error += part.error;
        total.evaluations += part.evaluations;

        const double mag = std::abs(part.value);
        if (mag > 2.0 * prev_mag && mag > tol) {
            if (++grow_count >= 3) {
                const double apparent =
                    std::log(mag / prev_mag) / std::log(2.0) - 1.0;
                throw numeric_error(
                    "integrate_tail: residual diverges, apparent exponent ~" +
                    std::to_string(apparent) + " (declared next exponent " +
                    std::to_string(next_exp) + ")");
            }
        } else {
            grow_count = 0;
        }
        prev_mag = std::max(mag, std::numeric_limits<double>::min());

        // Truncation bound for C v^q with q = next_exp, C estimated at hi.
        const double bound = 2.0 * std::abs(residual(hi)) * hi / (-next_exp - 1.0);
        if (mag < 0.25 * tol && bound < 0.5 * tol) {
            total.error += bound;
            return total;
        }
        lo = hi;
    }
    throw convergence_error("integrate_tail: truncation did not converge", total.value,
                            total.error);
}

IntegralResult integrate_vertical_line(const std::function<cxd(cxd)>& g, double x0,
                                       const AccuracyBudget& budget) {
    budget.validate();
    auto on_line = [&](double y) { return g(cxd(x0, y)); };

    const double tol = budget.target(1.0);
    IntegralResult total;

    double y_hi = 4.0;
    {
        Integrand core{on_line, Singularity::none, 0.0};
        AccuracyBudget b0{tol / 8.0, 0.0};
        const IntegralResult part = integrate_finite(core, -y_hi, y_hi, b0);
        total.value += part.value;
        total.error += part.error;
        total.evaluations += part.evaluations;
    }
    for (int k = 0; k < 100; ++k) {
        const double g_in = std::abs(on_line(y_hi)) + std::abs(on_line(-y_hi));
        const double g_out = std::abs(on_line(y_hi + 1.0)) + std::abs(on_line(-y_hi - 1.0));
        total.evaluations += 4;
        if (g_in == 0.0) break;
        const double ratio = g_out / g_in;
        if (ratio < 1.0) {
            const double bound = g_in / -std::log(ratio);
            if (bound < 0.25 * tol) {
                total.error += bound;
                break;
            }
        } else if (y_hi > 64.0) {
            throw numeric_error(
                "integrate_vertical_line: integrand does not decay along the line");
        }
        const double y_next = y_hi + 4.0;
        Integrand core{on_line, Singularity::none, 0.0};
        AccuracyBudget bs{tol / (8.0 * (k + 2.0)), 0.0};
        const IntegralResult up = integrate_finite(core, y_hi, y_next, bs);
        const IntegralResult dn = integrate_finite(core, -y_next, -y_hi, bs);
        total.value += up.value + dn.value;
        total.error += up.error + dn.error;
        total.evaluations += up.evaluations + dn.evaluations;
        y_hi = y_next;
    }
    // dz = i dy and the 1/(2 pi i) prefactor leave 1/(2 pi).
    total.value /= 2.0 * M_PI;
    total.error /= 2.0 * M_PI;
    return total;
}

HankelResult hankel_heat_trace(const std::function<cxd(cxd)>& trace_kappa, double t,
                               const AccuracyBudget& budget, const HankelOptions& opts) {
    budget.validate();
    if (!(t > 0)) throw std::invalid_argument("hankel_heat_trace: requires t > 0");
    const double c0 = opts.cap_center.value_or(-1.0 / t);
    const double d = opts.ray_offset;
    if (!(c0 < 0) || !(d > 0)) {
        throw std::invalid_argument("hankel_heat_trace: need cap_center < 0 and ray_offset > 0");
    }

    auto F = [&](cxd lambda) { return std::exp(-lambda * t) * trace_kappa(std::sqrt(-lambda)); };

    const double tol = budget.target(1.0);
    IntegralResult sum;

    // Left cap, phi from pi/2 to 3 pi/2 (counterclockwise around [0, inf)).
    {
        auto cap = [&](double phi) {
            const cxd e = std::polar(d, phi);
            return F(c0 + e) * cxd(0.0, 1.0) * e;
        };
        Integrand g{cap, Singularity::none, 0.0};
        AccuracyBudget bc{tol / 8.0, 0.0};
        const IntegralResult part = integrate_finite(g, M_PI / 2.0, 1.5 * M_PI, bc);
        sum.value += part.value;
        sum.error += part.error;
        sum.evaluations += part.evaluations;
    }

    // Rays: upper traversed inward (+inf -> c0), lower outward (c0 -> +inf).
    auto rays = [&](double x) { return F(cxd(x, -d)) - F(cxd(x, d)); };
    double lo = c0;
    double hi = std::max(0.0, c0) + 2.0;
    for (int seg = 0; seg < 80; ++seg) {
        Integrand g{rays, Singularity::none, 0.0};
        AccuracyBudget bs{tol / (8.0 * (seg + 1.0) * (seg + 2.0)), 0.0};
        const IntegralResult part = integrate_finite(g, lo, hi, bs);
        sum.value += part.value;
        sum.error += part.error;
        sum.evaluations += part.evaluations;
        const double bound = (std::abs(F(cxd(hi, d))) + std::abs(F(cxd(hi, -d)))) / t;
        if (std::abs(part.value) < 0.25 * tol && bound < 0.25 * tol) break;
        lo = hi;
        hi = 2.0 * hi;
        if (seg == 79) {
            throw convergence_error("hankel_heat_trace: ray truncation did not converge",
                                    sum.value, sum.error);
        }
    }

    const cxd value = sum.value / cxd(0.0, 2.0 * M_PI);
    HankelResult out;
    out.value = value.real();
    out.imag_residual = std::abs(value.imag());
    out.error = sum.error / (2.0 * M_PI);
    if (out.imag_residual > std::max(tol, 16.0 * out.error)) {
        throw branch_error("hankel_heat_trace: imaginary residual " +
                           std::to_string(out.imag_residual) +
                           " exceeds tolerance; branch handling suspect");
    }
    return out;
}

}  // namespace relzeta::quadrature
