#pragma once

// Sample-loop execution: an OpenMP kernel and a serial reference that must
// produce identical per-index results.

#include <cstdint>
#include <random>
#include <vector>

namespace kads {

enum class Exec { serial, parallel };

/// Thread cap: KADS_THREADS if set and positive, otherwise the OpenMP default.
int thread_count();

/// Independent stream per sample index, so results do not depend on the
/// thread schedule.
std::mt19937_64 sample_rng(std::uint64_t seed, std::uint64_t index);

inline constexpr std::uint64_t kDefaultSeed = 0x5EED;

/// Uniform draw in [a, b) from the top 53 bits; identical across standard libraries.
inline double uniform(std::mt19937_64& rng, double a, double b) {
  return a + (b - a) * static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Evaluates f(i) for i in [0, n) and returns the results in index order.
template <class F>
auto map_indices(std::size_t n, F&& f, Exec exec = Exec::parallel) -> std::vector<decltype(f(std::size_t{}))> {
  using R = decltype(f(std::size_t{}));
  std::vector<R> out(n);
  if (exec == Exec::serial) {
    for (std::size_t i = 0; i < n; ++i) out[i] = f(i);
    return out;
  }
  const long long count = static_cast<long long>(n);
#pragma omp parallel for schedule(dynamic, 4) num_threads(thread_count())
  for (long long i = 0; i < count; ++i) out[static_cast<std::size_t>(i)] = f(static_cast<std::size_t>(i));
  return out;
}

}  // namespace kads
