#pragma once

#include <cstdint>
#include <random>

namespace banditgame {

// What a stream is consumed for.  Part of the stream key, so the same
// (coalition, repetition, agent) tuple can own several independent
// streams without interference.
enum class StreamPurpose : std::uint32_t {
  kRewardNoise = 1,
  kPolicy = 2,
  kShapley = 3,
  kRelabel = 4,
  kFuzz = 5,
};

// Deterministic keyed random stream.  Identical keys replay the exact
// same draw sequence; distinct keys give statistically independent
// streams.  Runs keyed this way can execute in any order or in
// parallel without changing results.
class RngStream {
 public:
  struct Key {
    std::uint64_t seed = 0;
    std::uint64_t coalition_mask = 0;
    std::uint32_t repetition = 0;
    std::uint32_t agent = 0;
    StreamPurpose purpose = StreamPurpose::kRewardNoise;
  };

  explicit RngStream(const Key& key);

  std::uint64_t next_u64();

  // Uniform double in [0, 1) with 53 random bits.
  double uniform01();

  // Standard normal draw.  Always consumes exactly two 64-bit words,
  // so replaying a stream reproduces the same sequence bit for bit.
  double gaussian();

  // Uniform integer in [0, bound).  bound must be positive.
  std::uint64_t below(std::uint64_t bound);

 private:
  std::mt19937_64 gen_;
};

// Context identifying one (coalition, repetition) run.  Spawns the
// per-agent, per-purpose streams that the runners consume.
struct RunKey {
  std::uint64_t seed = 0;
  std::uint64_t coalition_mask = 0;
  std::uint32_t repetition = 0;

  RngStream stream(std::uint32_t agent, StreamPurpose purpose) const {
    return RngStream(RngStream::Key{seed, coalition_mask, repetition, agent, purpose});
  }
};

// SplitMix64 finalizer; used to spread key material over seed words.
std::uint64_t mix64(std::uint64_t x);

}  // namespace banditgame
