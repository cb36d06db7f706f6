#include "gsimplex/verification.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

#include <doctest.h>

#include "gsimplex/distributions.hpp"
#include "gsimplex/sampling.hpp"

using namespace gsimplex;

namespace {

double uniform_cdf(double x) {
  if (x < 0.0) return 0.0;
  if (x > 1.0) return 1.0;
  return x;
}

}  // namespace

TEST_CASE("ks_test hand-computable cases") {
  // One point at 0.5 against uniform(0,1): ECDF jumps 0 -> 1 there, so the
  // sup difference is exactly 0.5.
  const KsResult one = ks_test({0.5}, uniform_cdf);
  CHECK(one.d == doctest::Approx(0.5).epsilon(1e-15));
  CHECK_FALSE(one.asymptotics_valid);

  // Points at the (i - 1/2)/n quantiles: D = 1/(2n).
  for (int n : {50, 128, 1000}) {
    std::vector<double> sample(n);
    for (int i = 0; i < n; ++i) sample[i] = (i + 0.5) / n;
    const KsResult r = ks_test(sample, uniform_cdf);
    CHECK(r.d == doctest::Approx(1.0 / (2.0 * n)).epsilon(1e-12));
    CHECK(r.asymptotics_valid);
  }
}

TEST_CASE("ks_test D is invariant under a common increasing transform") {
  RandomStream rs(2, 0);
  std::vector<double> sample(500);
  for (double& x : sample) x = rs.uniform();
  const KsResult base = ks_test(sample, uniform_cdf);

  // Probability integral transform: push sample and CDF through x -> x^3.
  std::vector<double> cubed = sample;
  for (double& x : cubed) x = x * x * x;
  const KsResult moved = ks_test(cubed, [](double y) { return uniform_cdf(std::cbrt(y)); });
  CHECK(moved.d == doctest::Approx(base.d).epsilon(1e-12));
}

TEST_CASE("ks_test against its own source distribution passes") {
  const ChiProductSpec spec{1.0, {2, 3}};
  const EmpiricalSample s = sample_chiprod(spec, 20000, 12, 0, 2);
  const ChiProductLaw law(spec);
  const KsResult r = ks_test(s.values, [&](double x) { return law.cdf(x); });
  CHECK(r.p >= 0.001);
}

TEST_CASE("two_sample_ks trivial and statistical cases") {
  std::vector<double> a(100), b(100);
  for (int i = 0; i < 100; ++i) a[i] = b[i] = 0.01 * i;
  CHECK(two_sample_ks(a, b).d == 0.0);

  const std::vector<double> zeros(60, 0.0);
  const std::vector<double> ones(60, 1.0);
  CHECK(two_sample_ks(zeros, ones).d == doctest::Approx(1.0));

  const ChiProductSpec spec{2.0, {1, 4}};
  const EmpiricalSample s1 = sample_chiprod(spec, 20000, 5, 0, 1);
  const EmpiricalSample s2 = sample_chiprod(spec, 20000, 6, 0, 1);
  CHECK(two_sample_ks(s1.values, s2.values).p >= 0.001);
}

TEST_CASE("moment_z_scores degenerate and calibrated cases") {
  // Constant sample equal to the exact moment: z = 0 with a degenerate flag.
  const std::vector<double> constant(100, 3.0);
  const auto deg = moment_z_scores(constant, {{1.0, 3.0}});
  REQUIRE(deg.size() == 1);
  CHECK(deg[0].z == 0.0);
  CHECK(deg[0].degenerate_variance);

  const ChiProductSpec spec{1.0, {3}};
  const EmpiricalSample s = sample_chiprod(spec, 100000, 33, 0, 2);
  const auto zs = moment_z_scores(
      s.values, {{1.0, chiprod_moment(spec, 1.0)}, {2.0, chiprod_moment(spec, 2.0)}});
  REQUIRE(zs.size() == 2);
  for (const MomentZ& mz : zs) {
    CHECK_FALSE(mz.degenerate_variance);
    CHECK(std::abs(mz.z) <= 4.0);
  }

  // Power check: a 10% inflated reference moment must be rejected loudly.
  const auto bad = moment_z_scores(s.values, {{1.0, 1.1 * chiprod_moment(spec, 1.0)}});
  CHECK(std::abs(bad[0].z) > 4.0);
}

TEST_CASE("log_cf_distance identities and sensitivity") {
  const std::vector<double> t = default_t_grid();
  REQUIRE(t.size() == 129);
  CHECK(t.front() == doctest::Approx(-5.0));
  CHECK(t.back() == doctest::Approx(5.0));

  const ChiProductSpec spec{1.0, {2}};
  const EmpiricalSample a = sample_chiprod(spec, 5000, 40, 0, 1);
  const EmpiricalSample b = sample_chiprod(spec, 5000, 41, 0, 1);

  CHECK(log_cf_distance(a.values, a.values, t) == 0.0);
  CHECK(log_cf_distance(a.values, b.values, t) ==
        doctest::Approx(log_cf_distance(b.values, a.values, t)).epsilon(1e-15));

  // Scaling one sample by 2 shifts every log by log 2; at some t the phase
  // factor 1 - 2^{it} makes the CF gap strictly positive and large.
  std::vector<double> doubled = a.values;
  for (double& x : doubled) x *= 2.0;
  CHECK(log_cf_distance(a.values, doubled, t) > 0.5);

  std::vector<double> with_zero = a.values;
  with_zero[0] = 0.0;
  CHECK_THROWS_AS(log_cf_distance(with_zero, b.values, t), std::invalid_argument);
}

TEST_CASE("all-ones weights reduce to the unweighted chi product spec exactly") {
  for (int d : {2, 3, 5}) {
    for (int l = 1; l <= d; ++l) {
      const WeightVector w(std::vector<double>(l + 1, 1.0));
      const ChiProductSpec weighted = spec_from_theorem1(d, l, w);
      // Unweighted law: coefficient sqrt(l+1)/l! with the same dofs.
      ChiProductSpec plain;
      plain.coefficient = std::sqrt(static_cast<double>(l + 1));
      for (int i = 2; i <= l; ++i) plain.coefficient /= i;
      for (int k = d - l + 1; k <= d; ++k) plain.dofs.push_back(k);
      CHECK(weighted == plain);
    }
  }
}

TEST_CASE("verify_theorem1 small run passes and is reproducible") {
  const WeightVector w({1.0, 2.0});
  const VerificationReport r1 = verify_theorem1(2, 1, w, 20000, 1, 2);
  const VerificationReport r2 = verify_theorem1(2, 1, w, 20000, 1, 4);
  CHECK(r1.all_pass());
  CHECK(r1.experiment == "theorem1");
  REQUIRE(r1.statistics.size() == r2.statistics.size());
  for (std::size_t i = 0; i < r1.statistics.size(); ++i) {
    CHECK(r1.statistics[i].name == r2.statistics[i].name);
    CHECK(r1.statistics[i].value == r2.statistics[i].value);
  }
  REQUIRE(r1.p_values.size() == r2.p_values.size());
  for (std::size_t i = 0; i < r1.p_values.size(); ++i) {
    CHECK(r1.p_values[i].p == r2.p_values[i].p);
  }
  CHECK(r1.to_json(false) == r2.to_json(false));
}

TEST_CASE("verify_with_origin covers the documented small cases") {
  // d=2, l=1: |X_1| is chi_2.
  CHECK(verify_with_origin(2, 1, 20000, 2, 2).all_pass());
  // d=3, l=3: full-dimensional simplex through the origin.
  CHECK(verify_with_origin(3, 3, 20000, 3, 2).all_pass());
}

TEST_CASE("verify_projection_identity handles the planar classical case") {
  const VerificationReport r = verify_projection_identity(2, 1, 20000, 4, 2);
  CHECK(r.all_pass());
  // Projection factors never exceed 1, so the left side shrinks.
  bool found = false;
  for (const StatEntry& s : r.statistics) {
    if (s.name == "max_projection_factor") {
      found = true;
      CHECK(s.value <= 1.0 + 1e-12);
    }
  }
  CHECK(found);
  CHECK_THROWS_AS(verify_projection_identity(3, 3, 100, 0, 1), std::invalid_argument);
}

TEST_CASE("verify_grassmannian_lemma small run passes") {
  const WeightVector w({1.0, 2.0, 3.0});
  const VerificationReport r = verify_grassmannian_lemma(3, 2, w, 20000, 3, 2);
  CHECK(r.all_pass());
}

TEST_CASE("VerificationReport JSON pins runtime only in reproducible mode") {
  VerificationReport r;
  r.experiment = "demo";
  r.parameters = {2, 1, {1.0, 1.0}, 100, 9};
  r.statistics.push_back({"stat", 0.5, 1.0, true});
  r.p_values.push_back({"test", 0.25});
  r.runtime_seconds = 1.25;
  const std::string frozen = r.to_json(false);
  CHECK(frozen.find("1.25") == std::string::npos);
  CHECK(r.to_json(true).find("1.25") != std::string::npos);
  CHECK(r.all_pass());
  r.statistics.push_back({"bad", 2.0, 1.0, false});
  CHECK_FALSE(r.all_pass());
  CHECK(!r.to_text().empty());
}
