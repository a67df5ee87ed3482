#pragma once

#include <complex>

#include "fracstar/errors.hpp"

namespace fracstar {

using cplx = std::complex<double>;

// Pole-detection radius around the non-positive integers.
inline constexpr double kPoleEps = 1e-10;

// gamma() refuses arguments whose real part guarantees overflow in double;
// callers in that regime must work with log_gamma().
inline constexpr double kGammaOverflowRe = 171.624;

// The ratio decay bound is asymptotic; it is not served below this |y|.
inline constexpr double kRatioBoundYMin = 1.0;

// Gamma(z) for complex z.  Lanczos approximation (g = 7, 15 coefficients) on
// Re z >= 0.5, reflection formula elsewhere.  Conjugate-symmetric by
// construction: gamma(conj z) == conj(gamma(z)) exactly.
//
// Throws PoleError within pole_eps of a non-positive integer and
// OverflowError for Re z > kGammaOverflowRe.
cplx gamma(cplx z, double pole_eps = kPoleEps);

// Principal-branch log-Gamma, restricted to Re z > 0 (DomainError otherwise).
// Satisfies log_gamma(z + 1) = log_gamma(z) + Log z on that half-plane and
// stays accurate for |Im z| far beyond where gamma() itself over/underflows.
cplx log_gamma(cplx z);

// 1/Gamma, entire: returns exactly 0 at the non-positive integers and is
// computed in log scale so it never overflows where the true value fits.
cplx recip_gamma(cplx z);

// sin(pi z) with the real part reduced to [-1/2, 1/2] before multiplying by
// pi, so accuracy does not degrade near the zeros at the integers.
cplx sin_pi(cplx z);

// log(sin(pi z)) on some branch (only ever used inside exp()), stable for
// large |Im z| where sin itself overflows.
cplx log_sin_pi(cplx z);

// Stirling-corollary envelope for |Gamma(1-s)/Gamma(1-delta*s)| at
// s = 1/2 + iy:  c_bound * |y|^((delta-1)/2) * exp(pi (delta-1) |y| / 2).
//
// delta must lie in (1,2) and |y| >= kRatioBoundYMin (DomainError otherwise).
double gamma_ratio_decay_bound(double delta, double y, double c_bound);

// Empirically calibrated constant making the envelope above an actual upper
// bound of the ratio over |y| in [1, 50].  Values are computed once per
// delta bucket (width 0.05 across (1,2)) with a safety factor of 2 and kept
// in a read-only table after first use.
double calibrated_ratio_constant(double delta);

} // namespace fracstar
