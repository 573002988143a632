#include "relzeta/spectral.hpp"

#include <array>
#include <cmath>
#include <string>

#include "relzeta/specfun.hpp"

namespace relzeta::spectral {

namespace {

using specfun::pi;

double binomial(int n, int k) {
    double out = 1.0;
    for (int i = 0; i < k; ++i) out = out * (n - i) / (i + 1.0);
    return out;
}

// e(v) at relative offset eps off the cut: kappa = v (eps + i).
struct OffAxisEval {
    double two_sided;
    double reduced;
};

OffAxisEval eval_off_axis(const TraceFn& trace, double v, double eps) {
    const cxd k_plus = v * cxd(eps, 1.0);
    const cxd k_minus = v * cxd(eps, -1.0);
    const cxd r_plus = trace(k_plus);
    const cxd r_minus = trace(k_minus);
    OffAxisEval out;
    out.two_sided = ((r_plus - r_minus) * v / cxd(0.0, pi)).real();
    out.reduced = 2.0 * v / pi * r_plus.imag();
    return out;
}

}  // namespace

double spectral_measure(const TraceFn& trace, double v) {
    if (!(v > 0.0)) throw std::invalid_argument("spectral_measure: requires v > 0");
    if (!trace) throw std::invalid_argument("spectral_measure: empty trace evaluator");
    constexpr double eps = 1e-8;
    const OffAxisEval c = eval_off_axis(trace, v, eps);
    const OffAxisEval f = eval_off_axis(trace, v, 0.5 * eps);
    // First-order Richardson in the offset.
    const double two_sided = 2.0 * f.two_sided - c.two_sided;
    const double reduced = 2.0 * f.reduced - c.reduced;
    if (std::abs(two_sided - reduced) > 1e-10 * (1.0 + std::abs(reduced))) {
        throw branch_error("spectral_measure: two-sided and symmetry-reduced values differ by " +
                           std::to_string(std::abs(two_sided - reduced)) + " at v=" +
                           std::to_string(v) + "; second-sheet evaluation suspected");
    }
    return reduced;
}

std::vector<SmallVTerm> small_v_coefficients(const Expansion& small_lambda) {
    if (small_lambda.variable != ExpansionVariable::minus_lambda) {
        throw std::invalid_argument("small_v_coefficients: expects the (-lambda) convention");
    }
    small_lambda.require_small_lambda_order();
    std::vector<SmallVTerm> out;
    out.reserve(small_lambda.terms.size());
    for (const auto& t : small_lambda.terms) {
        const double beta = t.exponent;
        double c = 2.0 * t.coefficient * std::sin(pi * beta) / pi;
        if (beta == std::round(beta)) c = 0.0;  // integer exponents drop out exactly
        out.push_back({beta, c});
    }
    return out;
}

SpectralCoefficients large_v_coefficients(const Expansion& large_lambda) {
    if (large_lambda.variable != ExpansionVariable::minus_lambda) {
        throw std::invalid_argument("large_v_coefficients: expects the (-lambda) convention");
    }
    large_lambda.require_large_lambda_order();
    SpectralCoefficients out;

    // e_{j,k,h} = a_{j,k} C(k,h) (pi i)^(k-h-1) (e^(i pi a_j) - (-1)^(k-h) e^(-i pi a_j));
    // written out with m = k - h this is real:
    //   m even: 2 a C(k,h) pi^(m-1) (-1)^(m/2)     sin(pi a_j)
    //   m odd:  2 a C(k,h) pi^(m-1) (-1)^((m-1)/2) cos(pi a_j)
    for (const auto& t : large_lambda.terms) {
        const int k = t.log_power;
        for (int h = 0; h <= k; ++h) {
            const int m = k - h;
            const double pref = 2.0 * t.coefficient * binomial(k, h) * std::pow(pi, m - 1);
            double val;
            if (m % 2 == 0) {
                val = pref * ((m / 2) % 2 == 0 ? 1.0 : -1.0) * std::sin(pi * t.exponent);
                if (t.exponent == std::round(t.exponent)) val = 0.0;
            } else {
                val = pref * (((m - 1) / 2) % 2 == 0 ? 1.0 : -1.0) * std::cos(pi * t.exponent);
                if (std::abs(t.exponent - std::round(t.exponent)) == 0.5) val = 0.0;
            }
            out.raw_large_v.push_back({t.exponent, k, h, val});
        }
    }

    // Aggregate to the log(v) convention: log^h(v^2) = 2^h log^h v, so
    // e_{j,h} = sum_{k >= h} 2^h e_{j,k,h}.
    for (const auto& rt : out.raw_large_v) {
        const double contrib = std::pow(2.0, rt.h) * rt.coefficient;
        bool merged = false;
        for (auto& agg : out.large_v) {
            if (agg.alpha == rt.alpha && agg.log_power == rt.h) {
                agg.coefficient += contrib;
                merged = true;
                break;
            }
        }
        if (!merged) out.large_v.push_back({rt.alpha, rt.h, contrib});
    }
    return out;
}

TailFit fit_tail_coefficients_extended(const DensityFn& density, double v_min, double v_max,
                                       int points) {
    if (!(v_min >= 10.0) || !(v_max >= 10.0 * v_min)) {
        throw std::invalid_argument(
            "fit_tail_coefficients_extended: need v_min >= 10 and v_max >= 10 v_min");
    }
    if (points < 8) throw std::invalid_argument("fit_tail_coefficients_extended: need >= 8 points");
    constexpr int kCols = 6;  // {log v, 1, log v / v, 1/v, log v / v^2, 1/v^2}

    std::vector<std::array<long double, kCols>> rows(static_cast<std::size_t>(points));
    std::vector<long double> ys(static_cast<std::size_t>(points));
    for (int i = 0; i < points; ++i) {
        const double f = static_cast<double>(i) / (points - 1);
        const double v = v_min * std::pow(v_max / v_min, f);
        const long double lv = std::log(static_cast<long double>(v));
        rows[static_cast<std::size_t>(i)] = {lv, 1.0L, lv / v, 1.0L / v, lv / (v * v),
                                             1.0L / (static_cast<long double>(v) * v)};
        ys[static_cast<std::size_t>(i)] = static_cast<long double>(v) * v * density(v);
    }
    long double ata[kCols][kCols] = {};
    long double atb[kCols] = {};
    for (int r = 0; r < points; ++r) {
        const auto& row = rows[static_cast<std::size_t>(r)];
        for (int i = 0; i < kCols; ++i) {
            for (int j = 0; j < kCols; ++j) ata[i][j] += row[static_cast<std::size_t>(i)] *
                                                         row[static_cast<std::size_t>(j)];
            atb[i] += row[static_cast<std::size_t>(i)] * ys[static_cast<std::size_t>(r)];
        }
    }
    // Gaussian elimination with partial pivoting in long double.
    long double x[kCols];
    for (int c = 0; c < kCols; ++c) {
        int piv = c;
        for (int r = c + 1; r < kCols; ++r)
            if (std::abs(static_cast<double>(ata[r][c])) >
                std::abs(static_cast<double>(ata[piv][c])))
                piv = r;
        if (ata[piv][c] == 0.0L) throw numeric_error("fit_tail_coefficients_extended: singular fit");
        for (int j = 0; j < kCols; ++j) std::swap(ata[c][j], ata[piv][j]);
        std::swap(atb[c], atb[piv]);
        for (int r = c + 1; r < kCols; ++r) {
            const long double m = ata[r][c] / ata[c][c];
            for (int j = c; j < kCols; ++j) ata[r][j] -= m * ata[c][j];
            atb[r] -= m * atb[c];
        }
    }
    for (int r = kCols - 1; r >= 0; --r) {
        long double s = atb[r];
        for (int j = r + 1; j < kCols; ++j) s -= ata[r][j] * x[j];
        x[r] = s / ata[r][r];
    }
    TailFit fit;
    fit.log_coeff = static_cast<double>(x[0]);
    fit.const_coeff = static_cast<double>(x[1]);
    long double rss = 0;
    for (int r = 0; r < points; ++r) {
        long double pred = 0;
        for (int j = 0; j < kCols; ++j)
            pred += rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(j)] * x[j];
        const long double d = ys[static_cast<std::size_t>(r)] - pred;
        rss += d * d;
    }
    fit.residual = std::sqrt(static_cast<double>(rss) / points);
    return fit;
}

TailFit fit_tail_coefficients(const DensityFn& density, double v_min, double v_max, int points) {
    if (!(v_min >= 10.0) || !(v_max >= 10.0 * v_min)) {
        throw std::invalid_argument("fit_tail_coefficients: need v_min >= 10 and v_max >= 10 v_min");
    }
    if (points < 4) throw std::invalid_argument("fit_tail_coefficients: need >= 4 points");

    // Normal equations for y = A log v + B in long double; the 2x2 system is
    // far from degenerate on a decade-spanning log grid.
    long double s_ll = 0, s_l = 0, s_1 = 0, s_ly = 0, s_y = 0;
    std::vector<double> ys(static_cast<std::size_t>(points));
    std::vector<double> ls(static_cast<std::size_t>(points));
    for (int i = 0; i < points; ++i) {
        const double f = static_cast<double>(i) / (points - 1);
        const double v = v_min * std::pow(v_max / v_min, f);
        const double lv = std::log(v);
        const double y = v * v * density(v);
        ls[static_cast<std::size_t>(i)] = lv;
        ys[static_cast<std::size_t>(i)] = y;
        s_ll += static_cast<long double>(lv) * lv;
        s_l += lv;
        s_1 += 1.0L;
        s_ly += static_cast<long double>(lv) * y;
        s_y += y;
    }
    const long double det = s_ll * s_1 - s_l * s_l;
    if (std::abs(static_cast<double>(det)) < 1e-12 * static_cast<double>(s_ll * s_1)) {
        throw numeric_error("fit_tail_coefficients: ill-conditioned fit grid");
    }
    TailFit fit;
    fit.log_coeff = static_cast<double>((s_ly * s_1 - s_y * s_l) / det);
    fit.const_coeff = static_cast<double>((s_ll * s_y - s_l * s_ly) / det);
    long double rss = 0;
    for (int i = 0; i < points; ++i) {
        const double r = ys[static_cast<std::size_t>(i)] -
                         fit.log_coeff * ls[static_cast<std::size_t>(i)] - fit.const_coeff;
        rss += static_cast<long double>(r) * r;
    }
    fit.residual = std::sqrt(static_cast<double>(rss) / points);
    return fit;
}

}  // namespace relzeta::spectral
