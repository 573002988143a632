#pragma once

#include <complex>

#include "relzeta/errors.hpp"

// Complex log-gamma, digamma and trigamma on the principal branch, plus the
// even Bernoulli numbers and the Euler constant. Everything downstream (the
// resolvent-trace closed forms, their expansions, the contour oracles) is
// assembled from these, so the accuracy target here is well below the 1e-8
// quadrature tolerances used elsewhere: <= 1e-12 absolute on the tested
// region, ~2 ulp in the interior.
//
// All functions are pure and safe to call concurrently.

namespace relzeta::specfun {

inline constexpr double euler_gamma = 0.5772156649015328606065120900824024310;
inline constexpr double pi = 3.1415926535897932384626433832795028842;

using cxd = std::complex<double>;

// Even Bernoulli number B_n for even n in [2, 30]. Throws std::out_of_range
// outside that range and std::invalid_argument for odd n.
double bernoulli(int n);

// Principal-branch log Gamma, continuous on C minus the negative real axis.
// Throws pole_error at non-positive integers.
cxd log_gamma(cxd z);

// Digamma psi(z). Throws pole_error at non-positive integers.
cxd digamma(cxd z);

// Trigamma psi'(z). Throws pole_error at non-positive integers.
cxd trigamma(cxd z);

// cot(pi z) and 1/sin^2(pi z), computed from the decaying exponential so
// they stay finite for large |Im z| (cosh/sinh would overflow near |Im z|
// ~ 230). These appear in every vertical-line contour integrand.
cxd cot_pi(cxd z);
cxd csc_pi_sq(cxd z);

}  // namespace relzeta::specfun
