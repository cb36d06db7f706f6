#pragma once

#include <atomic>
#include <thread>

namespace gsimplex {

template <class T, class Draw>
std::vector<T> chunked_generate(std::size_t n, std::uint64_t seed, std::uint64_t base_stream,
                                int workers, Draw draw) {
  std::vector<T> out(n);
  const std::size_t num_chunks = (n + kChunkSize - 1) / kChunkSize;
  auto run_chunk = [&](std::size_t chunk) {
    RandomStream rs(seed, base_stream + chunk);
    const std::size_t begin = chunk * kChunkSize;
    const std::size_t end = std::min(begin + kChunkSize, n);
    for (std::size_t i = begin; i < end; ++i) {
      out[i] = draw(rs);
    }
  };
  if (workers <= 1 || num_chunks <= 1) {
    for (std::size_t c = 0; c < num_chunks; ++c) run_chunk(c);
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  const int count = std::min<std::size_t>(workers, num_chunks);
  pool.reserve(count);
  for (int w = 0; w < count; ++w) {
    pool.emplace_back([&] {
      for (std::size_t c = next.fetch_add(1); c < num_chunks; c = next.fetch_add(1)) {
        run_chunk(c);
      }
    });
  }
  for (auto& t : pool) t.join();
  return out;
}

}  // namespace gsimplex
