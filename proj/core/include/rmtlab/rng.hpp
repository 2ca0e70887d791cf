#pragma once

#include <cstdint>

namespace rmt {

/// SplitMix64 finalizer: a bijective 64-bit mixing function.
std::uint64_t mix64(std::uint64_t x) noexcept;

/// Counter-based pseudorandom stream.
///
/// A stream is addressed by (master_seed, stream_label); its i-th output is a
/// pure function mix64(key + i*gamma) of the derived key and the counter, so
/// streams can be handed to concurrent consumers and always replay the same
/// sequence regardless of scheduling. Consumers own a stream exclusively;
/// two consumers must never share one instance.
class StreamRng {
 public:
  StreamRng(std::uint64_t master_seed, std::uint64_t stream_label) noexcept;

  /// Derive an independent child stream; `this` is not advanced.
  StreamRng substream(std::uint64_t label) const noexcept;

  std::uint64_t next_u64() noexcept;

  /// Uniform double in (0, 1]; 53 significant bits, never returns 0.
  double next_unit() noexcept;

  /// Fair sign: +1.0 or -1.0.
  double next_sign() noexcept;

 private:
  explicit StreamRng(std::uint64_t key) noexcept : key_(key) {}

  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace rmt
