#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "gsimplex/sampling.hpp"

namespace gsimplex {

struct KsResult {
  double d = 0.0;
  double p = 1.0;
  bool asymptotics_valid = true;  // false when n < 50
};

/// One-sample Kolmogorov-Smirnov test of sample values against a monotone
/// reference CDF; p from the asymptotic Kolmogorov series.
KsResult ks_test(const std::vector<double>& sample, const std::function<double(double)>& cdf);

KsResult two_sample_ks(const std::vector<double>& a, const std::vector<double>& b);

struct MomentZ {
  double p = 0.0;
  double z = 0.0;
  bool degenerate_variance = false;
};

/// z = (mean of V^p - exact) / SE for each requested (p, exact) pair.
std::vector<MomentZ> moment_z_scores(const std::vector<double>& sample,
                                     const std::vector<std::pair<double, double>>& exact_moments);

/// max_t |ecf_{log a}(t) - ecf_{log b}(t)| over the grid. Both samples must
/// be strictly positive.
double log_cf_distance(const std::vector<double>& a, const std::vector<double>& b,
                       const std::vector<double>& t_grid);

/// 129 equispaced points on [-5, 5].
std::vector<double> default_t_grid();

struct StatEntry {
  std::string name;
  double value = 0.0;
  double threshold = 0.0;
  bool pass = false;
};

struct PValueEntry {
  std::string name;
  double p = 0.0;
};

struct ReportParameters {
  int d = 0;
  int l = 0;
  std::vector<double> sigmas;
  std::size_t n = 0;
  std::uint64_t seed = 0;
};

struct VerificationReport {
  std::string experiment;
  ReportParameters parameters;
  std::vector<StatEntry> statistics;
  std::vector<PValueEntry> p_values;
  double runtime_seconds = 0.0;

  bool all_pass() const;

  /// Ordered-key JSON. Artifacts meant to be byte-reproducible are written
  /// with include_runtime = false, which pins runtime_seconds to 0.
  std::string to_json(bool include_runtime = true, int indent = 2) const;
  std::string to_text() const;
};

VerificationReport verify_theorem1(int d, int l, const WeightVector& w, std::size_t n,
                                   std::uint64_t seed, int workers = 1);

VerificationReport verify_with_origin(int d, int l, std::size_t n, std::uint64_t seed,
                                      int workers = 1);

VerificationReport verify_projection_identity(int d, int l, std::size_t n, std::uint64_t seed,
                                              int workers = 1);

VerificationReport verify_grassmannian_lemma(int d, int l, const WeightVector& w, std::size_t n,
                                             std::uint64_t seed, int workers = 1);

}  // namespace gsimplex
