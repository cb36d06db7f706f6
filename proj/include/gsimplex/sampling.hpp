#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "gsimplex/distributions.hpp"
#include "gsimplex/geometry.hpp"

namespace gsimplex {

/// Deterministic random stream keyed by (seed, stream_index). The generator
/// is mt19937_64 seeded through SplitMix64 key mixing; normals come from the
/// Box-Muller transform with one cached spare per stream. The sequence is
/// frozen: identical keys give identical values on any platform with IEEE
/// doubles.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed, std::uint64_t stream_index = 0);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_index() const { return stream_index_; }

  /// Uniform on (0, 1), 53-bit resolution, never exactly 0 or 1.
  double uniform();

  /// Standard normal via Box-Muller.
  double normal();

 private:
  std::uint64_t seed_;
  std::uint64_t stream_index_;
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

struct SampleMeta {
  std::uint64_t seed = 0;
  std::uint64_t base_stream = 0;
  std::string stream_policy;
  std::size_t n = 0;
  std::string experiment;
};

struct EmpiricalSample {
  std::vector<double> values;
  SampleMeta meta;
};

/// Fixed chunk length of the deterministic substream decomposition: value
/// i belongs to chunk i / kChunkSize, which is generated from stream
/// base_stream + chunk index regardless of worker count.
inline constexpr std::size_t kChunkSize = 16384;

Point gaussian_point(int d, RandomStream& rs);

/// Norm of a k-dimensional standard Gaussian vector.
double chi_draw(int k, RandomStream& rs);

/// Orthonormalized span of l independent Gaussian points in R^d (Haar on the
/// Grassmannian). Degenerate draws are resampled; *resamples, when given,
/// receives the resample count.
SubspaceBasis sample_haar_subspace(int d, int l, RandomStream& rs, int* resamples = nullptr);

EmpiricalSample sample_weighted_simplex_volumes(int d, int l, const WeightVector& w,
                                                std::size_t n, std::uint64_t seed,
                                                std::uint64_t base_stream = 0, int workers = 1);

EmpiricalSample sample_origin_simplex_volumes(int d, int l, std::size_t n, std::uint64_t seed,
                                              std::uint64_t base_stream = 0, int workers = 1);

EmpiricalSample sample_chiprod(const ChiProductSpec& spec, std::size_t n, std::uint64_t seed,
                               std::uint64_t base_stream = 0, int workers = 1);

/// Runs draw(stream) n times, chunked over substreams as documented on
/// kChunkSize. Output is identical for every worker count.
template <class T, class Draw>
std::vector<T> chunked_generate(std::size_t n, std::uint64_t seed, std::uint64_t base_stream,
                                int workers, Draw draw);

}  // namespace gsimplex

#include "gsimplex/sampling_impl.hpp"
