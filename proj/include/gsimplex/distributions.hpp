#pragma once

#include <complex>
#include <utility>
#include <vector>

#include "gsimplex/geometry.hpp"

namespace gsimplex {

/// Law of coefficient * chi_{k_1} * ... * chi_{k_m} with independent factors.
struct ChiProductSpec {
  double coefficient = 1.0;
  std::vector<int> dofs;

  void validate() const;
  bool operator==(const ChiProductSpec& other) const = default;
};

/// Uniform tabulation of a chi-product density and CDF on a positive grid.
struct GridDensity {
  std::vector<double> grid;
  std::vector<double> pdf;
  std::vector<double> cdf;
  ChiProductSpec spec;
  double tolerance = 0.0;  // estimated max absolute density error
};

/// E chi_k^p = 2^{p/2} Gamma((k+p)/2) / Gamma(k/2), valid for p > -k.
double chi_moment(int k, double p);

/// coefficient^p * prod_k E chi_k^p; requires p > -min(dofs).
double chiprod_moment(const ChiProductSpec& spec, double p);

/// Exact p-th moment of |conv(sigma_0 X_0, ..., sigma_l X_l)| for independent
/// standard Gaussian X_i in R^d.
double weighted_volume_moment(int d, int l, const WeightVector& w, double p);

/// The chi-product law equal in distribution to the weighted simplex volume:
/// coefficient = scale_coefficient(w) / l!, dofs = [d-l+1, ..., d].
ChiProductSpec spec_from_theorem1(int d, int l, const WeightVector& w);

/// Characteristic function of log V at t, V ~ spec.
std::complex<double> chiprod_log_cf(const ChiProductSpec& spec, double t);

struct DensityOptions {
  int grid_size = 8192;
  std::pair<double, double> range_quantiles = {1e-8, 1.0 - 1e-8};
};

/// Tabulated density/CDF of a chi-product law, built by Fourier inversion of
/// the log-scale characteristic function. Immutable after construction.
class ChiProductLaw {
 public:
  explicit ChiProductLaw(ChiProductSpec spec, DensityOptions options = {});

  const GridDensity& density() const { return density_; }
  const ChiProductSpec& spec() const { return density_.spec; }

  /// Piecewise-linear CDF on the tabulated grid, clamped outside the range.
  double cdf(double x) const;

  /// Inverse CDF, bisected to 1e-9 absolute tolerance in probability.
  double quantile(double q) const;

  /// Linear interpolation of the tabulated density, 0 outside the range.
  double pdf(double x) const;

 private:
  GridDensity density_;
};

GridDensity chiprod_density(const ChiProductSpec& spec, int grid_size = 8192,
                            std::pair<double, double> range_quantiles = {1e-8, 1.0 - 1e-8});

double chiprod_cdf(const ChiProductSpec& spec, double x);
double chiprod_quantile(const ChiProductSpec& spec, double q);

}  // namespace gsimplex
