#include "gsimplex/verification.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "gsimplex/special_functions.hpp"

namespace gsimplex {

namespace {

// Disjoint substream blocks for experiments needing several independent
// samples under one seed.
constexpr std::uint64_t kStreamBlock = 1ull << 32;
constexpr double kPThreshold = 0.001;

double ks_p_value(double d, double n_eff) {
  const double sqrt_n = std::sqrt(n_eff);
  return kolmogorov_q((sqrt_n + 0.12 + 0.11 / sqrt_n) * d);
}

class Timer {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

StatEntry p_stat(const std::string& name, double p) {
  return {name, p, kPThreshold, p >= kPThreshold};
}

StatEntry z_stat(const std::string& name, double z) { return {name, z, 4.0, std::abs(z) <= 4.0}; }

void add_p(VerificationReport& report, const std::string& name, double p) {
  report.statistics.push_back(p_stat(name, p));
  report.p_values.push_back({name, p});
}

double pearson_correlation(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, syy = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxx += dx * dx;
    syy += dy * dy;
    sxy += dx * dy;
  }
  if (sxx <= 0.0 || syy <= 0.0) return 0.0;
  return sxy / std::sqrt(sxx * syy);
}

// Chi-square independence on a q x q table binned by empirical quantiles of
// each margin; p from the chi-square tail with (q-1)^2 degrees of freedom.
double quantile_binned_independence_p(const std::vector<double>& x, const std::vector<double>& y,
                                      int q) {
  const std::size_t n = x.size();
  auto edges = [&](const std::vector<double>& v) {
    std::vector<double> sorted(v);
    std::sort(sorted.begin(), sorted.end());
    std::vector<double> e(q - 1);
    for (int i = 1; i < q; ++i) {
      e[i - 1] = sorted[i * n / q];
    }
    return e;
  };
  const std::vector<double> ex = edges(x);
  const std::vector<double> ey = edges(y);
  auto bin = [q](const std::vector<double>& e, double v) {
    const auto it = std::upper_bound(e.begin(), e.end(), v);
    return std::min<int>(static_cast<int>(it - e.begin()), q - 1);
  };
  std::vector<double> counts(static_cast<std::size_t>(q) * q, 0.0);
  std::vector<double> row(q, 0.0), col(q, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const int bx = bin(ex, x[i]);
    const int by = bin(ey, y[i]);
    counts[bx * q + by] += 1.0;
    row[bx] += 1.0;
    col[by] += 1.0;
  }
  double stat = 0.0;
  for (int i = 0; i < q; ++i) {
    for (int j = 0; j < q; ++j) {
      const double expected = row[i] * col[j] / static_cast<double>(n);
      if (expected <= 0.0) continue;
      const double diff = counts[i * q + j] - expected;
      stat += diff * diff / expected;
    }
  }
  const double dof = static_cast<double>(q - 1) * (q - 1);
  return regularized_gamma_q(0.5 * dof, 0.5 * stat);
}

}  // namespace

KsResult ks_test(const std::vector<double>& sample, const std::function<double(double)>& cdf) {
  if (sample.empty()) {
    throw std::invalid_argument("ks_test: empty sample");
  }
  std::vector<double> sorted(sample);
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double f = cdf(sorted[i]);
    d = std::max(d, std::max(f - i / n, (i + 1) / n - f));
  }
  KsResult result;
  result.d = d;
  result.p = ks_p_value(d, n);
  result.asymptotics_valid = sorted.size() >= 50;
  return result;
}

KsResult two_sample_ks(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.empty() || b.empty()) {
    throw std::invalid_argument("two_sample_ks: empty sample");
  }
  std::vector<double> sa(a), sb(b);
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  const double na = static_cast<double>(sa.size());
  const double nb = static_cast<double>(sb.size());
  std::size_t i = 0, j = 0;
  double fa = 0.0, fb = 0.0, d = 0.0;
  while (i < sa.size() && j < sb.size()) {
    const double xa = sa[i];
    const double xb = sb[j];
    if (xa <= xb) fa = static_cast<double>(++i) / na;
    if (xb <= xa) fb = static_cast<double>(++j) / nb;
    d = std::max(d, std::abs(fa - fb));
  }
  KsResult result;
  result.d = d;
  const double n_eff = na * nb / (na + nb);
  result.p = ks_p_value(d, n_eff);
  result.asymptotics_valid = sa.size() >= 50 && sb.size() >= 50;
  return result;
}

std::vector<MomentZ> moment_z_scores(const std::vector<double>& sample,
                                     const std::vector<std::pair<double, double>>& exact_moments) {
  if (sample.size() < 2) {
    throw std::invalid_argument("moment_z_scores: need at least 2 values");
  }
  const double n = static_cast<double>(sample.size());
  std::vector<MomentZ> result;
  result.reserve(exact_moments.size());
  for (const auto& [p, exact] : exact_moments) {
    double mean = 0.0;
    for (double x : sample) mean += std::pow(x, p);
    mean /= n;
    double ss = 0.0;
    for (double x : sample) {
      const double diff = std::pow(x, p) - mean;
      ss += diff * diff;
    }
    const double var = ss / (n - 1.0);
    if (!std::isfinite(var) || !std::isfinite(mean)) {
      throw std::runtime_error("moment_z_scores: non-finite variance estimate");
    }
    MomentZ mz;
    mz.p = p;
    const double se = std::sqrt(var / n);
    if (se == 0.0) {
      mz.z = 0.0;
      mz.degenerate_variance = true;
    } else {
      mz.z = (mean - exact) / se;
    }
    result.push_back(mz);
  }
  return result;
}

double log_cf_distance(const std::vector<double>& a, const std::vector<double>& b,
                       const std::vector<double>& t_grid) {
  auto logs = [](const std::vector<double>& v) {
    std::vector<double> out;
    out.reserve(v.size());
    for (double x : v) {
      if (!(x > 0.0)) {
        throw std::invalid_argument("log_cf_distance: values must be strictly positive");
      }
      out.push_back(std::log(x));
    }
    return out;
  };
  const std::vector<double> la = logs(a);
  const std::vector<double> lb = logs(b);
  auto ecf = [](const std::vector<double>& l, double t) {
    double re = 0.0, im = 0.0;
    for (double s : l) {
      re += std::cos(t * s);
      im += std::sin(t * s);
    }
    const double n = static_cast<double>(l.size());
    return std::complex<double>(re / n, im / n);
  };
  double dist = 0.0;
  for (double t : t_grid) {
    if (!std::isfinite(t)) {
      throw std::invalid_argument("log_cf_distance: non-finite grid point");
    }
    dist = std::max(dist, std::abs(ecf(la, t) - ecf(lb, t)));
  }
  return dist;
}

std::vector<double> default_t_grid() {
  std::vector<double> grid(129);
  for (int i = 0; i < 129; ++i) {
    grid[i] = -5.0 + 10.0 * i / 128.0;
  }
  return grid;
}

bool VerificationReport::all_pass() const {
  for (const StatEntry& s : statistics) {
    if (!s.pass) return false;
  }
  return true;
}

std::string VerificationReport::to_json(bool include_runtime, int indent) const {
  nlohmann::ordered_json j;
  j["experiment"] = experiment;
  j["parameters"] = {{"d", parameters.d},
                     {"l", parameters.l},
                     {"sigmas", parameters.sigmas},
                     {"n", parameters.n},
                     {"seed", parameters.seed}};
  j["statistics"] = nlohmann::ordered_json::array();
  for (const StatEntry& s : statistics) {
    j["statistics"].push_back(
        {{"name", s.name}, {"value", s.value}, {"threshold", s.threshold}, {"pass", s.pass}});
  }
  j["p_values"] = nlohmann::ordered_json::array();
  for (const PValueEntry& p : p_values) {
    j["p_values"].push_back({{"name", p.name}, {"p", p.p}});
  }
  j["runtime_seconds"] = include_runtime ? runtime_seconds : 0.0;
  return j.dump(indent) + "\n";
}

std::string VerificationReport::to_text() const {
  std::ostringstream out;
  out << "experiment: " << experiment << "\n";
  out << "parameters: d=" << parameters.d << " l=" << parameters.l << " sigmas=(";
  for (std::size_t i = 0; i < parameters.sigmas.size(); ++i) {
    if (i > 0) out << ",";
    out << parameters.sigmas[i];
  }
  out << ") n=" << parameters.n << " seed=" << parameters.seed << "\n";
  out << "statistics:\n";
  for (const StatEntry& s : statistics) {
    out << "  " << (s.pass ? "[pass]" : "[FAIL]") << " " << s.name << " = " << s.value
        << " (threshold " << s.threshold << ")\n";
  }
  out << "runtime_seconds: " << runtime_seconds << "\n";
  out << "result: " << (all_pass() ? "PASS" : "FAIL") << "\n";
  return out.str();
}

VerificationReport verify_theorem1(int d, int l, const WeightVector& w, std::size_t n,
                                   std::uint64_t seed, int workers) {
  Timer timer;
  const ChiProductSpec spec = spec_from_theorem1(d, l, w);
  const EmpiricalSample volumes =
      sample_weighted_simplex_volumes(d, l, w, n, seed, 0, workers);
  const EmpiricalSample reference = sample_chiprod(spec, n, seed, kStreamBlock, workers);
  const ChiProductLaw law(spec);

  VerificationReport report;
  report.experiment = "theorem1";
  report.parameters = {d, l, w.sigmas(), n, seed};

  const KsResult ks1 = ks_test(volumes.values, [&law](double x) { return law.cdf(x); });
  add_p(report, "ks_one_sample", ks1.p);
  const KsResult ks2 = two_sample_ks(volumes.values, reference.values);
  add_p(report, "ks_two_sample", ks2.p);

  const auto z = moment_z_scores(volumes.values, {{1.0, weighted_volume_moment(d, l, w, 1.0)},
                                                  {2.0, weighted_volume_moment(d, l, w, 2.0)}});
  report.statistics.push_back(z_stat("moment_z_p1", z[0].z));
  report.statistics.push_back(z_stat("moment_z_p2", z[1].z));

  const double lcd = log_cf_distance(volumes.values, reference.values, default_t_grid());
  const double lcd_threshold = 10.0 / std::sqrt(static_cast<double>(n));
  report.statistics.push_back({"log_cf_distance", lcd, lcd_threshold, lcd <= lcd_threshold});

  report.runtime_seconds = timer.seconds();
  return report;
}

VerificationReport verify_with_origin(int d, int l, std::size_t n, std::uint64_t seed,
                                      int workers) {
  Timer timer;
  ChiProductSpec spec;
  spec.coefficient = 1.0;
  for (int k = d - l + 1; k <= d; ++k) {
    spec.dofs.push_back(k);
    spec.coefficient /= static_cast<double>(k - d + l);  // accumulates 1/l!
  }
  const EmpiricalSample volumes = sample_origin_simplex_volumes(d, l, n, seed, 0, workers);
  const ChiProductLaw law(spec);

  VerificationReport report;
  report.experiment = "withorigin";
  report.parameters = {d, l, {}, n, seed};

  const KsResult ks = ks_test(volumes.values, [&law](double x) { return law.cdf(x); });
  add_p(report, "ks_one_sample", ks.p);

  const auto z = moment_z_scores(
      volumes.values, {{1.0, chiprod_moment(spec, 1.0)}, {2.0, chiprod_moment(spec, 2.0)}});
  report.statistics.push_back(z_stat("moment_z_p1", z[0].z));
  report.statistics.push_back(z_stat("moment_z_p2", z[1].z));

  report.runtime_seconds = timer.seconds();
  return report;
}

VerificationReport verify_projection_identity(int d, int l, std::size_t n, std::uint64_t seed,
                                              int workers) {
  if (l < 1 || l >= d) {
    throw std::invalid_argument("verify_projection_identity: require 1 <= l < d");
  }
  Timer timer;
  // Left side: chi_{d-l+1}...chi_d times the restriction determinant of an
  // independent Haar subspace. Right side: chi_1...chi_l.
  struct Draw {
    double value;
    double factor;
  };
  const auto left = chunked_generate<Draw>(n, seed, 0, workers, [d, l](RandomStream& rs) {
    double v = 1.0;
    for (int k = d - l + 1; k <= d; ++k) {
      v *= chi_draw(k, rs);
    }
    const SubspaceBasis basis = sample_haar_subspace(d, l, rs);
    const double det = projection_restriction_determinant(basis, l);
    return Draw{v * det, det};
  });
  const auto right = chunked_generate<double>(n, seed, kStreamBlock, workers,
                                              [l](RandomStream& rs) {
                                                double v = 1.0;
                                                for (int k = 1; k <= l; ++k) {
                                                  v *= chi_draw(k, rs);
                                                }
                                                return v;
                                              });
  std::vector<double> left_values;
  left_values.reserve(n);
  double max_factor = 0.0;
  for (const Draw& dr : left) {
    left_values.push_back(dr.value);
    max_factor = std::max(max_factor, dr.factor);
  }

  VerificationReport report;
  report.experiment = "projection";
  report.parameters = {d, l, {}, n, seed};

  const KsResult ks = two_sample_ks(left_values, right);
  add_p(report, "ks_two_sample", ks.p);
  report.statistics.push_back(
      {"max_projection_factor", max_factor, 1.0, max_factor <= 1.0 + 1e-12});

  report.runtime_seconds = timer.seconds();
  return report;
}

VerificationReport verify_grassmannian_lemma(int d, int l, const WeightVector& w, std::size_t n,
                                             std::uint64_t seed, int workers) {
  if (l < 1 || l >= d) {
    throw std::invalid_argument("verify_grassmannian_lemma: require 1 <= l < d");
  }
  if (static_cast<int>(w.count()) != l + 1) {
    throw std::invalid_argument("verify_grassmannian_lemma: need l+1 weights");
  }
  Timer timer;
  struct Draw {
    double volume;
    double det;
  };
  const std::vector<double>& sigmas = w.sigmas();
  const auto draws = chunked_generate<Draw>(n, seed, 0, workers, [d, l, &sigmas](RandomStream& rs) {
    SimplexVertices s;
    s.vertices.reserve(l + 1);
    for (int i = 0; i <= l; ++i) {
      s.vertices.push_back(sigmas[i] * gaussian_point(d, rs));
    }
    const double vol = simplex_volume(s);
    // W_l, the direction subspace of the affine hull, is the span of the
    // edge vectors.
    Eigen::MatrixXd edges(d, l);
    for (int j = 0; j < l; ++j) {
      edges.col(j) = s.vertices[j + 1] - s.vertices[0];
    }
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(edges);
    const Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(d, l);
    const double det = std::min(std::abs(q.topRows(l).determinant()), 1.0);
    return Draw{vol, det};
  });

  std::vector<double> log_vol, log_det, vols, dets;
  std::size_t excluded = 0;
  for (const Draw& dr : draws) {
    if (dr.volume <= 0.0 || dr.det <= 0.0) {
      ++excluded;  // probability-zero degeneracy
      continue;
    }
    vols.push_back(dr.volume);
    dets.push_back(dr.det);
    log_vol.push_back(std::log(dr.volume));
    log_det.push_back(std::log(dr.det));
  }

  VerificationReport report;
  report.experiment = "grassmannian";
  report.parameters = {d, l, w.sigmas(), n, seed};

  const double kept = static_cast<double>(vols.size());
  const double corr = pearson_correlation(log_vol, log_det);
  const double corr_threshold = 4.0 / std::sqrt(kept);
  report.statistics.push_back(
      {"abs_log_correlation", std::abs(corr), corr_threshold, std::abs(corr) <= corr_threshold});

  add_p(report, "chi_square_independence", quantile_binned_independence_p(log_vol, log_det, 10));

  // Split-KS: the determinant distribution must not differ between
  // low-volume and high-volume halves.
  std::vector<double> sorted_vol(vols);
  std::sort(sorted_vol.begin(), sorted_vol.end());
  const double median = sorted_vol[sorted_vol.size() / 2];
  std::vector<double> low, high;
  for (std::size_t i = 0; i < vols.size(); ++i) {
    (vols[i] < median ? low : high).push_back(dets[i]);
  }
  add_p(report, "split_ks", two_sample_ks(low, high).p);

  report.statistics.push_back({"excluded_degenerate_draws", static_cast<double>(excluded),
                               static_cast<double>(n) / 100.0,
                               excluded <= n / 100});

  report.runtime_seconds = timer.seconds();
  return report;
}

}  // namespace gsimplex
