#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace hecke {

/// Splits [0, count) into at most `threads` contiguous chunks and runs
/// fn(chunk_index, begin, end) for each, the first on the calling thread.
/// Rethrows the first exception raised by any chunk.
template <class Fn>
std::size_t parallel_chunks(std::size_t count, unsigned threads, Fn&& fn) {
  const std::size_t chunks = std::max<std::size_t>(1, std::min<std::size_t>(threads, count));
  const std::size_t per = (count + chunks - 1) / std::max<std::size_t>(chunks, 1);
  std::vector<std::exception_ptr> errors(chunks);
  std::vector<std::thread> pool;
  auto run = [&](std::size_t c) {
    try {
      const std::size_t lo = std::min(count, c * per);
      const std::size_t hi = std::min(count, lo + per);
      fn(c, lo, hi);
    } catch (...) {
      errors[c] = std::current_exception();
    }
  };
  for (std::size_t c = 1; c < chunks; ++c) pool.emplace_back(run, c);
  run(0);
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return chunks;
}

}  // namespace hecke
