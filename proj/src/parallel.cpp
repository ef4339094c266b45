#include "kads/parallel.hpp"

#include <omp.h>

#include <cstdlib>
#include <string>

namespace kads {

int thread_count() {
  if (const char* env = std::getenv("KADS_THREADS")) {
    try {
      const int v = std::stoi(env);
      if (v > 0) return v;
    } catch (const std::exception&) {
    }
  }
  return omp_get_max_threads();
}

std::mt19937_64 sample_rng(std::uint64_t seed, std::uint64_t index) {
  // splitmix64 finalizer over (seed, index)
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  z ^= z >> 31;
  return std::mt19937_64(z);
}

}  // namespace kads
