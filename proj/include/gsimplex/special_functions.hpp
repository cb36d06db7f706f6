#pragma once

#include <complex>

namespace gsimplex {

/// Principal branch of log Gamma(z). Accurate to ~1e-13 relative on the
/// right half plane; the left half plane is handled by reflection.
std::complex<double> log_gamma(std::complex<double> z);

std::complex<double> gamma(std::complex<double> z);

/// Digamma and trigamma for x > 0.
double digamma(double x);
double trigamma(double x);

/// Regularized lower incomplete gamma P(a, x), a > 0, x >= 0.
double regularized_gamma_p(double a, double x);

/// Upper tail Q(a, x) = 1 - P(a, x).
double regularized_gamma_q(double a, double x);

/// Kolmogorov limiting tail Q_KS(lambda) = 2 sum_{j>=1} (-1)^{j-1} exp(-2 j^2 lambda^2).
double kolmogorov_q(double lambda);

}  // namespace gsimplex
