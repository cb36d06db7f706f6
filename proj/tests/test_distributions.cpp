#include "gsimplex/distributions.hpp"

#include <cmath>
#include <complex>

#include <doctest.h>

#include "gsimplex/sampling.hpp"

using namespace gsimplex;

namespace {

constexpr double kPi = 3.14159265358979323846;

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

// Analytic chi_k density and CDF, used as oracles for the inversion engine.
double chi_pdf(int k, double x) {
  return std::exp((k - 1) * std::log(x) - 0.5 * x * x - (0.5 * k - 1.0) * std::log(2.0) -
                  std::lgamma(0.5 * k));
}

double chi_cdf(int k, double x) {
  // P(k/2, x^2/2) via the series; independent of the library implementation.
  const double a = 0.5 * k;
  const double z = 0.5 * x * x;
  double term = 1.0 / a;
  double sum = term;
  double ap = a;
  for (int i = 0; i < 2000; ++i) {
    ap += 1.0;
    term *= z / ap;
    sum += term;
    if (term < sum * 1e-17) break;
  }
  return sum * std::exp(-z + a * std::log(z) - std::lgamma(a));
}

// Independent complex log-gamma (Stirling with shift) for CF spot checks.
std::complex<double> stirling_log_gamma(std::complex<double> z) {
  std::complex<double> shift = 0.0;
  while (z.real() < 25.0) {
    shift -= std::log(z);
    z += 1.0;
  }
  const std::complex<double> inv = 1.0 / z;
  const std::complex<double> inv2 = inv * inv;
  std::complex<double> series = inv / 12.0;
  series -= inv * inv2 / 360.0;
  series += inv * inv2 * inv2 / 1260.0;
  series -= inv * inv2 * inv2 * inv2 / 1680.0;
  return (z - 0.5) * std::log(z) - z + 0.5 * std::log(2.0 * kPi) + series + shift;
}

double reference_unweighted_moment(int d, int l, double p) {
  double log_value = p * std::log(std::exp2(0.5 * l) * std::sqrt(l + 1.0) / factorial(l));
  for (int i = d - l + 1; i <= d; ++i) {
    log_value += std::lgamma(0.5 * (i + p)) - std::lgamma(0.5 * i);
  }
  return std::exp(log_value);
}

double trapezoid_moment(const GridDensity& gd, double p) {
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < gd.grid.size(); ++i) {
    const double h = gd.grid[i + 1] - gd.grid[i];
    sum += 0.5 * h *
           (std::pow(gd.grid[i], p) * gd.pdf[i] + std::pow(gd.grid[i + 1], p) * gd.pdf[i + 1]);
  }
  return sum;
}

}  // namespace

TEST_CASE("chi_moment closed-form values and domain") {
  CHECK(chi_moment(5, 2.0) == doctest::Approx(5.0).epsilon(1e-13));
  CHECK(chi_moment(1, 1.0) == doctest::Approx(std::sqrt(2.0 / kPi)).epsilon(1e-13));
  CHECK(chi_moment(3, 1.0) == doctest::Approx(2.0 * std::sqrt(2.0 / kPi)).epsilon(1e-13));
  CHECK(chi_moment(4, 0.0) == 1.0);
  CHECK(chi_moment(2, -1.5) > 0.0);
  CHECK_THROWS_AS(chi_moment(2, -2.0), std::domain_error);
  CHECK_THROWS_AS(chi_moment(0, 1.0), std::invalid_argument);
}

TEST_CASE("chiprod_moment composition") {
  CHECK(chiprod_moment({1.0, {2}}, 2.0) == doctest::Approx(2.0).epsilon(1e-13));
  CHECK(chiprod_moment({2.0, {1}}, 2.0) == doctest::Approx(4.0).epsilon(1e-13));
  CHECK(chiprod_moment({1.0, {1, 2}}, 2.0) == doctest::Approx(2.0).epsilon(1e-13));
  CHECK(chiprod_moment({3.7, {1, 2, 5}}, 0.0) == 1.0);
  CHECK_THROWS_AS(chiprod_moment({1.0, {1, 3}}, -1.5), std::domain_error);
  CHECK_THROWS_AS(chiprod_moment({-1.0, {2}}, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(chiprod_moment({1.0, {}}, 1.0), std::invalid_argument);
}

TEST_CASE("weighted_volume_moment closed-form values") {
  CHECK(weighted_volume_moment(1, 1, WeightVector({1, 1}), 2.0) ==
        doctest::Approx(2.0).epsilon(1e-13));
  CHECK(weighted_volume_moment(2, 1, WeightVector({1, 1}), 2.0) ==
        doctest::Approx(4.0).epsilon(1e-13));
  CHECK(weighted_volume_moment(2, 2, WeightVector({1, 1, 1}), 1.0) ==
        doctest::Approx(std::sqrt(3.0) / 2.0).epsilon(1e-13));
  CHECK_THROWS_AS(weighted_volume_moment(1, 2, WeightVector({1, 1, 1}), 1.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(weighted_volume_moment(3, 2, WeightVector({1, 1}), 1.0), std::invalid_argument);
  CHECK_THROWS_AS(weighted_volume_moment(3, 3, WeightVector({1, 1, 1, 1}), -1.5),
                  std::domain_error);
}

TEST_CASE("all-ones weights reduce to the unweighted moment formula") {
  for (int d = 1; d <= 10; ++d) {
    for (int l = 1; l <= d; ++l) {
      const WeightVector ones(std::vector<double>(l + 1, 1.0));
      for (double p : {1.0, 2.0, 3.0}) {
        CHECK(weighted_volume_moment(d, l, ones, p) ==
              doctest::Approx(reference_unweighted_moment(d, l, p)).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("spec_from_theorem1 construction") {
  const ChiProductSpec s1 = spec_from_theorem1(3, 3, WeightVector({1, 1, 1, 1}));
  CHECK(s1.coefficient == doctest::Approx(1.0 / 3.0).epsilon(1e-13));
  CHECK(s1.dofs == std::vector<int>{1, 2, 3});

  const ChiProductSpec s2 = spec_from_theorem1(5, 2, WeightVector({1, 1, 1}));
  CHECK(s2.coefficient == doctest::Approx(std::sqrt(3.0) / 2.0).epsilon(1e-13));
  CHECK(s2.dofs == std::vector<int>{4, 5});

  const ChiProductSpec s3 = spec_from_theorem1(1, 1, WeightVector({1, 1}));
  CHECK(s3.coefficient == doctest::Approx(std::sqrt(2.0)).epsilon(1e-13));
  CHECK(s3.dofs == std::vector<int>{1});
}

TEST_CASE("chiprod_moment agrees with weighted_volume_moment on random weights") {
  RandomStream rs(17);
  for (int trial = 0; trial < 40; ++trial) {
    const int d = 1 + static_cast<int>(rs.uniform() * 8);
    const int l = 1 + static_cast<int>(rs.uniform() * d);
    std::vector<double> sigmas(std::min(l, d) + 1);
    for (double& s : sigmas) s = 0.2 + 4.0 * rs.uniform();
    const WeightVector w(sigmas);
    const ChiProductSpec spec = spec_from_theorem1(d, std::min(l, d), w);
    for (double p : {1.0, 2.0, 3.0}) {
      CHECK(chiprod_moment(spec, p) ==
            doctest::Approx(weighted_volume_moment(d, std::min(l, d), w, p)).epsilon(1e-12));
    }
  }
}

TEST_CASE("chiprod_log_cf basics") {
  const ChiProductSpec spec{1.0, {2}};
  CHECK(chiprod_log_cf(spec, 0.0) == std::complex<double>(1.0, 0.0));

  // Independent evaluation of 2^{it/2} Gamma(1 + it/2) at t = 1.
  const std::complex<double> expected =
      std::exp(std::complex<double>(0.0, 0.5 * std::log(2.0)) +
               stirling_log_gamma({1.0, 0.5}));
  const std::complex<double> got = chiprod_log_cf(spec, 1.0);
  CHECK(std::abs(got - expected) < 1e-12);

  const ChiProductSpec multi{0.7, {1, 3, 4}};
  for (double t : {0.3, 1.0, 2.5, 7.0}) {
    const std::complex<double> phi = chiprod_log_cf(multi, t);
    CHECK(std::abs(phi) <= 1.0 + 1e-12);
    const std::complex<double> conj = chiprod_log_cf(multi, -t);
    CHECK(std::abs(conj - std::conj(phi)) < 1e-13);
  }
}

TEST_CASE("chiprod_log_cf modulus decays beyond the first decade") {
  for (const ChiProductSpec& spec :
       {ChiProductSpec{1.0, {1}}, ChiProductSpec{0.5, {2, 3}}, ChiProductSpec{2.0, {4, 5, 6}}}) {
    double prev = std::abs(chiprod_log_cf(spec, 10.0));
    for (double t = 11.0; t <= 40.0; t += 1.0) {
      const double mag = std::abs(chiprod_log_cf(spec, t));
      CHECK(mag <= prev + 1e-12);
      prev = mag;
    }
  }
}

TEST_CASE("chiprod_density matches the analytic chi density") {
  SUBCASE("chi_2 pointwise value") {
    // Interpolated lookup, so grid discretization bounds the accuracy here;
    // the 1e-8 sup bound below is checked at the grid nodes.
    const ChiProductLaw law({1.0, {2}});
    CHECK(law.pdf(1.0) == doctest::Approx(std::exp(-0.5)).epsilon(1e-6));
  }
  for (int k : {1, 2, 5}) {
    CAPTURE(k);
    const GridDensity gd = chiprod_density({1.0, {k}});
    double sup_err = 0.0;
    for (std::size_t i = 0; i < gd.grid.size(); ++i) {
      sup_err = std::max(sup_err, std::abs(gd.pdf[i] - chi_pdf(k, gd.grid[i])));
    }
    CHECK(sup_err <= 1e-8);
  }
}

TEST_CASE("GridDensity internal consistency") {
  for (const ChiProductSpec& spec :
       {ChiProductSpec{1.0, {2}}, ChiProductSpec{1.0, {2, 3}}, ChiProductSpec{0.4, {1, 4, 6}}}) {
    const GridDensity gd = chiprod_density(spec);
    REQUIRE(gd.grid.size() == 8192);
    double mass = 0.0;
    for (std::size_t i = 0; i + 1 < gd.grid.size(); ++i) {
      CHECK(gd.pdf[i] >= 0.0);
      CHECK(gd.cdf[i + 1] >= gd.cdf[i]);
      mass += 0.5 * (gd.grid[i + 1] - gd.grid[i]) * (gd.pdf[i] + gd.pdf[i + 1]);
    }
    CHECK(mass == doctest::Approx(gd.cdf.back() - gd.cdf.front()).epsilon(1e-9));
    CHECK(mass == doctest::Approx(1.0).epsilon(1e-6));
  }
}

TEST_CASE("quadrature moments against the closed form") {
  for (const ChiProductSpec& spec : {ChiProductSpec{1.0, {2, 3}}, ChiProductSpec{1.3, {1, 5}}}) {
    const GridDensity gd = chiprod_density(spec);
    for (double p : {1.0, 2.0}) {
      CHECK(trapezoid_moment(gd, p) ==
            doctest::Approx(chiprod_moment(spec, p)).epsilon(1e-4));
    }
  }
}

TEST_CASE("chiprod cdf and quantile") {
  const ChiProductSpec rayleigh{1.0, {2}};
  const ChiProductLaw law(rayleigh);
  for (double x : {0.3, 0.8, 1.5, 2.5}) {
    CHECK(std::abs(law.cdf(x) - (1.0 - std::exp(-0.5 * x * x))) < 1e-6);
  }
  for (double q : {0.01, 0.25, 0.5, 0.9, 0.999}) {
    CHECK(law.cdf(law.quantile(q)) == doctest::Approx(q).epsilon(1e-9));
  }
  double prev = 0.0;
  for (double x = 0.05; x < 5.0; x += 0.05) {
    const double c = law.cdf(x);
    CHECK(c >= prev);
    prev = c;
  }
  CHECK_THROWS_AS(law.quantile(0.0), std::invalid_argument);
  CHECK_THROWS_AS(law.quantile(1.0), std::invalid_argument);
  CHECK_THROWS_AS(chiprod_cdf(rayleigh, -1.0), std::invalid_argument);

  const ChiProductLaw multi({0.8, {2, 4}});
  const double x_med = multi.quantile(0.5);
  CHECK(multi.cdf(x_med) == doctest::Approx(0.5).epsilon(1e-9));

  // chi_k CDF oracle on a multi-point sweep.
  for (int k : {1, 3}) {
    const ChiProductLaw chi_law({1.0, {k}});
    for (double x : {0.5, 1.0, 2.0, 3.0}) {
      CHECK(std::abs(chi_law.cdf(x) - chi_cdf(k, x)) < 1e-6);
    }
  }
}

TEST_CASE("density options are validated") {
  CHECK_THROWS_AS(chiprod_density({1.0, {2}}, 32), std::invalid_argument);
  CHECK_THROWS_AS(chiprod_density({1.0, {2}}, 128, {0.5, 0.5}), std::invalid_argument);
  CHECK_THROWS_AS(chiprod_density({1.0, {2}}, 128, {-0.1, 0.9}), std::invalid_argument);
}
