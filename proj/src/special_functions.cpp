#include "gsimplex/special_functions.hpp"

#include <cmath>
#include <stdexcept>

namespace gsimplex {

namespace {

// Lanczos, g = 7, 9 terms.
constexpr double kLanczosG = 7.0;
constexpr double kLanczos[9] = {
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
};

constexpr double kPi = 3.14159265358979323846;
constexpr double kLogSqrtTwoPi = 0.91893853320467274178;

std::complex<double> log_gamma_right(std::complex<double> z) {
  // Requires Re(z) >= 0.5.
  std::complex<double> x = kLanczos[0];
  for (int i = 1; i < 9; ++i) {
    x += kLanczos[i] / (z - 1.0 + static_cast<double>(i));
  }
  std::complex<double> t = z + (kLanczosG - 0.5);
  return kLogSqrtTwoPi + (z - 0.5) * std::log(t) - t + std::log(x);
}

}  // namespace

std::complex<double> log_gamma(std::complex<double> z) {
  if (z.real() >= 0.5) {
    return log_gamma_right(z);
  }
  // Reflection: log Gamma(z) = log(pi / sin(pi z)) - log Gamma(1 - z).
  // log(sin(pi z)) computed to avoid overflow for large |Im z|.
  std::complex<double> lg = log_gamma_right(1.0 - z);
  std::complex<double> s = std::sin(kPi * z);
  return std::log(kPi) - std::log(s) - lg;
}

std::complex<double> gamma(std::complex<double> z) { return std::exp(log_gamma(z)); }

double digamma(double x) {
  if (!(x > 0.0)) {
    throw std::domain_error("digamma: argument must be positive");
  }
  double result = 0.0;
  while (x < 15.0) {
    result -= 1.0 / x;
    x += 1.0;
  }
  // Asymptotic series.
  const double inv = 1.0 / x;
  const double inv2 = inv * inv;
  result += std::log(x) - 0.5 * inv -
            inv2 * (1.0 / 12.0 - inv2 * (1.0 / 120.0 - inv2 * (1.0 / 252.0 - inv2 / 240.0)));
  return result;
}

double trigamma(double x) {
  if (!(x > 0.0)) {
    throw std::domain_error("trigamma: argument must be positive");
  }
  double result = 0.0;
  while (x < 15.0) {
    result += 1.0 / (x * x);
    x += 1.0;
  }
  const double inv = 1.0 / x;
  const double inv2 = inv * inv;
  result += inv * (1.0 + 0.5 * inv +
                   inv2 * (1.0 / 6.0 - inv2 * (1.0 / 30.0 - inv2 * (1.0 / 42.0 - inv2 / 30.0))));
  return result;
}

double regularized_gamma_p(double a, double x) {
  if (!(a > 0.0) || x < 0.0) {
    throw std::domain_error("regularized_gamma_p: require a > 0, x >= 0");
  }
  if (x == 0.0) return 0.0;
  const double lga = std::lgamma(a);
  if (x < a + 1.0) {
    // Series representation.
    double term = 1.0 / a;
    double sum = term;
    double ap = a;
    for (int i = 0; i < 500; ++i) {
      ap += 1.0;
      term *= x / ap;
      sum += term;
      if (std::abs(term) < std::abs(sum) * 1e-16) break;
    }
    return sum * std::exp(-x + a * std::log(x) - lga);
  }
  // Continued fraction for Q, modified Lentz.
  const double tiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= 500; ++i) {
    const double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < 1e-16) break;
  }
  const double q = std::exp(-x + a * std::log(x) - lga) * h;
  return 1.0 - q;
}

double regularized_gamma_q(double a, double x) { return 1.0 - regularized_gamma_p(a, x); }

double kolmogorov_q(double lambda) {
  if (lambda <= 0.0) return 1.0;
  if (lambda < 1.18) {
    // Jacobi theta form, fast convergence for small lambda.
    const double y = std::exp(-kPi * kPi / (8.0 * lambda * lambda));
    const double q =
        std::sqrt(2.0 * kPi) / lambda * (y + std::pow(y, 9) + std::pow(y, 25) + std::pow(y, 49));
    return 1.0 - q;
  }
  double sum = 0.0;
  double sign = 1.0;
  for (int j = 1; j <= 100; ++j) {
    const double term = std::exp(-2.0 * j * j * lambda * lambda);
    sum += sign * term;
    if (term < 1e-18) break;
    sign = -sign;
  }
  double q = 2.0 * sum;
  if (q < 0.0) q = 0.0;
  if (q > 1.0) q = 1.0;
  return q;
}

}  // namespace gsimplex
