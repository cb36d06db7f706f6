#include "gsimplex/sampling.hpp"

#include <cmath>
#include <stdexcept>

namespace gsimplex {

namespace {

constexpr double kTwoPi = 6.28318530717958647692;
constexpr char kStreamPolicy[] = "mt19937_64/splitmix64-keyed, box-muller, chunk=16384";

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

SampleMeta make_meta(std::uint64_t seed, std::uint64_t base_stream, std::size_t n,
                     std::string experiment) {
  SampleMeta meta;
  meta.seed = seed;
  meta.base_stream = base_stream;
  meta.stream_policy = kStreamPolicy;
  meta.n = n;
  meta.experiment = std::move(experiment);
  return meta;
}

}  // namespace

RandomStream::RandomStream(std::uint64_t seed, std::uint64_t stream_index)
    : seed_(seed),
      stream_index_(stream_index),
      engine_(splitmix64(splitmix64(seed) ^ splitmix64(~stream_index))) {}

double RandomStream::uniform() {
  // 53-bit mantissa shifted into (0, 1).
  return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
}

double RandomStream::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double u1 = uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  spare_ = r * std::sin(kTwoPi * u2);
  has_spare_ = true;
  return r * std::cos(kTwoPi * u2);
}

Point gaussian_point(int d, RandomStream& rs) {
  if (d < 1) {
    throw std::invalid_argument("gaussian_point: d must be >= 1");
  }
  Point p(d);
  for (int i = 0; i < d; ++i) {
    p[i] = rs.normal();
  }
  return p;
}

double chi_draw(int k, RandomStream& rs) {
  double sq = 0.0;
  for (int i = 0; i < k; ++i) {
    const double z = rs.normal();
    sq += z * z;
  }
  return std::sqrt(sq);
}

SubspaceBasis sample_haar_subspace(int d, int l, RandomStream& rs, int* resamples) {
  if (l < 1 || l > d) {
    throw std::invalid_argument("sample_haar_subspace: require 1 <= l <= d");
  }
  int tries = 0;
  for (;;) {
    Eigen::MatrixXd g(d, l);
    for (int j = 0; j < l; ++j) {
      for (int i = 0; i < d; ++i) {
        g(i, j) = rs.normal();
      }
    }
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
    const Eigen::MatrixXd r = qr.matrixQR().topRows(l).triangularView<Eigen::Upper>();
    double min_diag = std::abs(r(0, 0));
    double max_diag = min_diag;
    for (int j = 1; j < l; ++j) {
      min_diag = std::min(min_diag, std::abs(r(j, j)));
      max_diag = std::max(max_diag, std::abs(r(j, j)));
    }
    if (max_diag > 0.0 && min_diag > 1e-300 * max_diag) {
      if (resamples != nullptr) *resamples = tries;
      Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(d, l);
      // Fix the sign ambiguity of the factorization so each basis vector
      // keeps the orientation of the Gram-Schmidt direction it came from;
      // the frame is then uniform, not just the subspace it spans.
      for (int j = 0; j < l; ++j) {
        if (r(j, j) < 0.0) q.col(j) = -q.col(j);
      }
      return SubspaceBasis(std::move(q));
    }
    ++tries;  // probability-zero event; resample and record
  }
}

EmpiricalSample sample_weighted_simplex_volumes(int d, int l, const WeightVector& w,
                                                std::size_t n, std::uint64_t seed,
                                                std::uint64_t base_stream, int workers) {
  if (l < 1 || l > d) {
    throw std::invalid_argument("sample_weighted_simplex_volumes: require 1 <= l <= d");
  }
  if (static_cast<int>(w.count()) != l + 1) {
    throw std::invalid_argument("sample_weighted_simplex_volumes: need l+1 weights");
  }
  if (n < 1) {
    throw std::invalid_argument("sample_weighted_simplex_volumes: n must be >= 1");
  }
  const std::vector<double>& sigmas = w.sigmas();
  auto draw = [d, l, &sigmas](RandomStream& rs) {
    SimplexVertices s;
    s.vertices.reserve(l + 1);
    for (int i = 0; i <= l; ++i) {
      s.vertices.push_back(sigmas[i] * gaussian_point(d, rs));
    }
    return simplex_volume(s);
  };
  EmpiricalSample sample;
  sample.values = chunked_generate<double>(n, seed, base_stream, workers, draw);
  sample.meta = make_meta(seed, base_stream, n, "weighted_simplex_volumes");
  return sample;
}

EmpiricalSample sample_origin_simplex_volumes(int d, int l, std::size_t n, std::uint64_t seed,
                                              std::uint64_t base_stream, int workers) {
  if (l < 1 || l > d) {
    throw std::invalid_argument("sample_origin_simplex_volumes: require 1 <= l <= d");
  }
  if (n < 1) {
    throw std::invalid_argument("sample_origin_simplex_volumes: n must be >= 1");
  }
  auto draw = [d, l](RandomStream& rs) {
    SimplexVertices s;
    s.includes_origin = true;
    s.vertices.reserve(l + 1);
    s.vertices.push_back(Point::Zero(d));
    for (int i = 0; i < l; ++i) {
      s.vertices.push_back(gaussian_point(d, rs));
    }
    return simplex_volume(s);
  };
  EmpiricalSample sample;
  sample.values = chunked_generate<double>(n, seed, base_stream, workers, draw);
  sample.meta = make_meta(seed, base_stream, n, "origin_simplex_volumes");
  return sample;
}

EmpiricalSample sample_chiprod(const ChiProductSpec& spec, std::size_t n, std::uint64_t seed,
                               std::uint64_t base_stream, int workers) {
  spec.validate();
  if (n < 1) {
    throw std::invalid_argument("sample_chiprod: n must be >= 1");
  }
  auto draw = [&spec](RandomStream& rs) {
    double v = spec.coefficient;
    for (int k : spec.dofs) {
      v *= chi_draw(k, rs);
    }
    return v;
  };
  EmpiricalSample sample;
  sample.values = chunked_generate<double>(n, seed, base_stream, workers, draw);
  sample.meta = make_meta(seed, base_stream, n, "chi_product");
  return sample;
}

}  // namespace gsimplex
