#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

// Asymptotic-expansion metadata shared by the model, spectral and zeta
// layers: a list of (exponent, log power, coefficient) triples in one of two
// variable conventions.

namespace relzeta {

struct ExpansionTerm {
    double exponent = 0.0;    // power of (-lambda), or of v
    int log_power = 0;        // power of log(-lambda), or of log v
    double coefficient = 0.0;

    ExpansionTerm() = default;
    ExpansionTerm(double e, int k, double c) : exponent(e), log_power(k), coefficient(c) {
        if (!std::isfinite(c)) throw std::invalid_argument("ExpansionTerm: non-finite coefficient");
        if (k < 0) throw std::invalid_argument("ExpansionTerm: negative log power");
    }
};

enum class ExpansionVariable {
    minus_lambda,  // powers of (-lambda), possibly with log(-lambda)
    spectral_v,    // powers of v with log v
};

struct Expansion {
    ExpansionVariable variable = ExpansionVariable::minus_lambda;
    std::vector<ExpansionTerm> terms;

    // Ordering checks for the two roles an expansion plays: large-lambda
    // lists run over non-increasing exponents (strictly decreasing between
    // groups, distinct log powers within a group), small-lambda lists run
    // strictly increasing with no logs and leading exponent >= -1.
    void require_large_lambda_order() const {
        for (std::size_t i = 1; i < terms.size(); ++i) {
            if (terms[i].exponent > terms[i - 1].exponent) {
                throw std::invalid_argument("Expansion: large-lambda exponents must not increase");
            }
            if (terms[i].exponent == terms[i - 1].exponent &&
                terms[i].log_power == terms[i - 1].log_power) {
                throw std::invalid_argument("Expansion: duplicate (exponent, log power) pair");
            }
        }
    }
    void require_small_lambda_order() const {
        if (!terms.empty() && terms.front().exponent < -1.0) {
            throw std::invalid_argument("Expansion: small-lambda leading exponent must be >= -1");
        }
        for (const auto& t : terms) {
            if (t.log_power != 0) {
                throw std::invalid_argument("Expansion: small-lambda terms carry no logs");
            }
        }
        for (std::size_t i = 1; i < terms.size(); ++i) {
            if (terms[i].exponent <= terms[i - 1].exponent) {
                throw std::invalid_argument("Expansion: small-lambda exponents must increase");
            }
        }
    }
};

}  // namespace relzeta
