#include "rmtlab/rng.hpp"

namespace rmt {

namespace {
constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;  // 2^64 / golden ratio
constexpr std::uint64_t kLabelSalt = 0xD1B54A32D192ED03ULL;
}  // namespace

std::uint64_t mix64(std::uint64_t x) noexcept {
  x ^= x >> 30;
  x *= 0xBF58476D1CE4E5B9ULL;
  x ^= x >> 27;
  x *= 0x94D049BB133111EBULL;
  x ^= x >> 31;
  return x;
}

StreamRng::StreamRng(std::uint64_t master_seed, std::uint64_t stream_label) noexcept
    : key_(mix64(mix64(master_seed + kGamma) ^ mix64(stream_label + kLabelSalt))) {}

StreamRng StreamRng::substream(std::uint64_t label) const noexcept {
  return StreamRng(mix64(key_ ^ mix64(label + kLabelSalt)));
}

std::uint64_t StreamRng::next_u64() noexcept {
  counter_ += 1;
  return mix64(key_ + counter_ * kGamma);
}

double StreamRng::next_unit() noexcept {
  // (x >> 11) is uniform on {0, ..., 2^53 - 1}; +1 maps to (0, 1].
  return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
}

double StreamRng::next_sign() noexcept {
  return (next_u64() >> 63) ? 1.0 : -1.0;
}

}  // namespace rmt
