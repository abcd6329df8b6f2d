#pragma once

#include <cstdint>
#include <cmath>
#include <random>

namespace gfnoma {

// Seeding policy: one master seed fans out into named substreams. Every
// consumer derives its generator as hash(master, stream-id, counters...),
// so adding draws to one consumer never shifts another consumer's
// sequence. Fading additionally uses a pure counter mode (no engine
// state), keyed by (episode, rtt, ue, repetition), which makes draws
// independent of evaluation order.
enum class Stream : std::uint64_t {
  Placement = 1,
  Activation = 2,
  CtuChoice = 3,
  Fading = 4,
  Exploration = 5,
  ReplaySampling = 6,
  NetInit = 7,
  ResetAction = 8,
  Harness = 9,
};

// SplitMix64 finalizer; the de-facto standard 64-bit mixer.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t mix(std::uint64_t a, std::uint64_t b) {
  return splitmix64(a ^ (0x9e3779b97f4a7c15ULL + (b << 6) + (b >> 2)));
}

// Derive a substream seed from master seed, stream id and up to three
// counters. Order matters; counters default to zero.
inline std::uint64_t substream_seed(std::uint64_t master, Stream s,
                                    std::uint64_t c0 = 0, std::uint64_t c1 = 0,
                                    std::uint64_t c2 = 0) {
  std::uint64_t h = splitmix64(master);
  h = mix(h, static_cast<std::uint64_t>(s));
  h = mix(h, c0);
  h = mix(h, c1);
  h = mix(h, c2);
  return h;
}

// mt19937_64 is bit-exact across platforms; the distributions in
// <random> are not, so all transforms below are hand-rolled.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : gen_(seed) {}

  RngStream(std::uint64_t master, Stream s, std::uint64_t c0 = 0,
            std::uint64_t c1 = 0, std::uint64_t c2 = 0)
      : gen_(substream_seed(master, s, c0, c1, c2)) {}

  std::uint64_t next_u64() { return gen_(); }

  // Uniform in [0, 1), 53-bit resolution.
  double next_unit() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Uniform integer in [0, n). Rejection sampling keeps it unbiased.
  int next_int(int n) {
    const std::uint64_t bound = static_cast<std::uint64_t>(n);
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t x;
    do {
      x = next_u64();
    } while (x >= limit);
    return static_cast<int>(x % bound);
  }

  // Exp(1): unit-mean exponential.
  double next_exp1() { return -std::log1p(-next_unit()); }

 private:
  std::mt19937_64 gen_;
};

// Pure counter draw: uniform in [0,1) as a function of the key alone.
inline double counter_unit(std::uint64_t master, Stream s, std::uint64_t c0,
                           std::uint64_t c1 = 0, std::uint64_t c2 = 0,
                           std::uint64_t c3 = 0) {
  std::uint64_t h = substream_seed(master, s, c0, c1, c2);
  h = mix(h, c3);
  return static_cast<double>(h >> 11) * 0x1.0p-53;
}

inline double counter_exp1(std::uint64_t master, Stream s, std::uint64_t c0,
                           std::uint64_t c1 = 0, std::uint64_t c2 = 0,
                           std::uint64_t c3 = 0) {
  return -std::log1p(-counter_unit(master, s, c0, c1, c2, c3));
}

}  // namespace gfnoma
