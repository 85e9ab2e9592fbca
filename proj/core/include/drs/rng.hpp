#pragma once

#include <cstdint>
#include <random>

namespace drs {

// One deterministic uniform stream, identified by (seed, stream).
// Distinct stream ids on the same seed give independent-for-practical-purposes
// sequences; equal (seed, stream) pairs reproduce bit-identical output.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream)
      : seed_(seed), stream_(stream) {
    std::seed_seq seq{
        static_cast<std::uint32_t>(seed & 0xffffffffu),
        static_cast<std::uint32_t>(seed >> 32),
        static_cast<std::uint32_t>(stream & 0xffffffffu),
        static_cast<std::uint32_t>(stream >> 32),
        std::uint32_t{0x9e3779b9u}};
    engine_.seed(seq);
  }

  std::uint64_t next_u64() { return engine_(); }

  // Uniform on [0,1) with 53 random bits.
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  // Uniform on (0,1): rejects exact zeros.
  double uniform_pos() {
    double u;
    do {
      u = uniform();
    } while (u <= 0.0);
    return u;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream() const { return stream_; }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::mt19937_64 engine_;
};

// Stream-id allocation. Replication r (1-based) generates its dataset on
// stream r; Gibbs chains live in a disjoint high block so the two uses can
// never collide no matter how many replications or chains are requested.
inline constexpr std::uint64_t kChainStreamBlock = 1024;
inline constexpr std::uint64_t kChainStreamOrigin = std::uint64_t{1} << 32;

inline std::uint64_t dataset_stream(std::uint64_t rep) { return rep; }

inline std::uint64_t chain_stream_base(std::uint64_t rep) {
  return kChainStreamOrigin + (rep - 1) * kChainStreamBlock;
}

}  // namespace drs
