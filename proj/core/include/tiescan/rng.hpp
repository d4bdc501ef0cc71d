#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

namespace tiescan {

// xoshiro256** seeded through SplitMix64. Self-contained so that seeded
// results are identical across platforms and standard libraries.
class Rng {
  public:
    explicit Rng(std::uint64_t seed);

    // Independent stream for a worker/replicate. Streams derived from the
    // same master seed with distinct indices do not overlap in practice.
    static Rng derive(std::uint64_t master_seed, std::uint64_t stream);

    std::uint64_t next_u64();

    // Uniform in [0,1) with 53 random bits.
    double uniform01();

    // Uniform integer in [0, bound), bound >= 1.
    std::uint64_t uniform_int(std::uint64_t bound);

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t j = static_cast<std::size_t>(uniform_int(i));
            std::swap(v[i - 1], v[j]);
        }
    }

  private:
    std::uint64_t state_[4];
};

// Splits [0,count) into contiguous chunks and runs fn(begin,end) on each,
// using at most `threads` workers. threads <= 1 runs inline.
void parallel_chunks(std::size_t count, int threads,
                     const std::function<void(std::size_t, std::size_t)>& fn);

// Thread count resolution: explicit value > 0 wins, then the
// TIESCAN_THREADS environment variable, then hardware concurrency.
int resolve_threads(int requested);

} // namespace tiescan
