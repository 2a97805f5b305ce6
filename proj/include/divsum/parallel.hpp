#pragma once

#include <cstdint>
#include <exception>
#include <utility>
#include <vector>

namespace divsum::parallel {

/// Worker count used by every OpenMP region in the library; 0 restores the
/// OpenMP default.
void set_threads(int n);
int threads();

/// Closed integer range [lo, hi].
struct Chunk {
  std::uint64_t lo;
  std::uint64_t hi;
};

/// Fixed decomposition of [first, last] into pieces of at most `size`.
/// Depends only on its arguments, never on the thread count, which is what
/// keeps floating-point reductions reproducible.
std::vector<Chunk> split(std::uint64_t first, std::uint64_t last, std::uint64_t size);

/// Applies `fn(i)` to every index in [0, count) across the worker pool.
/// The first exception by index is rethrown after all workers finish.
template <class Fn>
void for_each_index(std::size_t count, Fn&& fn) {
  std::vector<std::exception_ptr> errors(count);
  const auto n = static_cast<long long>(count);
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads())
  for (long long i = 0; i < n; ++i) {
    try {
      fn(static_cast<std::size_t>(i));
    } catch (...) {
      errors[static_cast<std::size_t>(i)] = std::current_exception();
    }
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

/// Runs `fn(chunk)` on every chunk and returns the results in chunk order.
template <class T, class Fn>
std::vector<T> map_chunks(const std::vector<Chunk>& chunks, Fn&& fn) {
  std::vector<T> out(chunks.size());
  for_each_index(chunks.size(), [&](std::size_t i) { out[i] = fn(chunks[i]); });
  return out;
}

/// Pairwise reduction in a fixed tree shape.
template <class T, class Combine>
T tree_reduce(std::vector<T> values, T zero, Combine&& combine) {
  if (values.empty()) return zero;
  while (values.size() > 1) {
    std::vector<T> next;
    next.reserve((values.size() + 1) / 2);
    for (std::size_t i = 0; i + 1 < values.size(); i += 2)
      next.push_back(combine(std::move(values[i]), std::move(values[i + 1])));
    if (values.size() % 2 == 1) next.push_back(std::move(values.back()));
    values = std::move(next);
  }
  return std::move(values.front());
}

}  // namespace divsum::parallel
