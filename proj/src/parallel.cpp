#include "divsum/parallel.hpp"

#include <omp.h>

#include <algorithm>
#include <atomic>

namespace divsum::parallel {

namespace {
std::atomic<int> g_threads{0};
}

void set_threads(int n) { g_threads.store(std::max(n, 0)); }

int threads() {
  int n = g_threads.load();
  return n > 0 ? n : omp_get_max_threads();
}

std::vector<Chunk> split(std::uint64_t first, std::uint64_t last, std::uint64_t size) {
  std::vector<Chunk> out;
  if (first > last || size == 0) return out;
  for (std::uint64_t lo = first;;) {
    std::uint64_t hi = (last - lo < size - 1) ? last : lo + size - 1;
    out.push_back({lo, hi});
    if (hi == last) break;
    lo = hi + 1;
  }
  return out;
}

}  // namespace divsum::parallel
