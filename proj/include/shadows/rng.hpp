#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>

namespace shadows {

// Philox4x32-10 counter-based generator (Salmon et al., SC 2011).
//
// Output depends only on (key, counter), so a stream can be addressed as
// (seed, stream-id, draw-index) with no sequential state. Every Monte Carlo
// sample owns stream-id == sample-index, which makes estimates independent
// of how samples are assigned to workers.

namespace philox {

inline constexpr std::uint32_t kMulA = 0xD2511F53u;
inline constexpr std::uint32_t kMulB = 0xCD9E8D57u;
inline constexpr std::uint32_t kWeylA = 0x9E3779B9u;
inline constexpr std::uint32_t kWeylB = 0xBB67AE85u;

using Block = std::array<std::uint32_t, 4>;
using Key = std::array<std::uint32_t, 2>;

inline Block block(Key key, Block ctr) {
  for (int round = 0; round < 10; ++round) {
    const std::uint64_t p0 = static_cast<std::uint64_t>(kMulA) * ctr[0];
    const std::uint64_t p1 = static_cast<std::uint64_t>(kMulB) * ctr[2];
    ctr = {static_cast<std::uint32_t>(p1 >> 32) ^ ctr[1] ^ key[0],
           static_cast<std::uint32_t>(p1),
           static_cast<std::uint32_t>(p0 >> 32) ^ ctr[3] ^ key[1],
           static_cast<std::uint32_t>(p0)};
    key[0] += kWeylA;
    key[1] += kWeylB;
  }
  return ctr;
}

}  // namespace philox

/// Random stream for one sample: key = seed, counter = (draw, stream).
/// Uniforms are drawn 64 bits at a time; normals via Box-Muller.
class SampleRng {
 public:
  SampleRng(std::uint64_t seed, std::uint64_t stream)
      : key_{static_cast<std::uint32_t>(seed),
             static_cast<std::uint32_t>(seed >> 32)},
        stream_(stream) {}

  std::uint64_t next_u64() {
    if (pos_ == 0) {
      buf_ = philox::block(key_, {static_cast<std::uint32_t>(draw_),
                                  static_cast<std::uint32_t>(draw_ >> 32),
                                  static_cast<std::uint32_t>(stream_),
                                  static_cast<std::uint32_t>(stream_ >> 32)});
      ++draw_;
    }
    const int i = 2 * pos_;
    pos_ = (pos_ + 1) % 2;
    return static_cast<std::uint64_t>(buf_[i]) |
           (static_cast<std::uint64_t>(buf_[i + 1]) << 32);
  }

  /// Uniform on [0, 1), 53-bit resolution.
  double uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// Uniform on (0, 1]; safe as a log argument.
  double uniform_open() {
    return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
  }

  /// Standard normal via Box-Muller; pairs are cached.
  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double r = std::sqrt(-2.0 * std::log(uniform_open()));
    const double t = 2.0 * std::numbers::pi * uniform();
    spare_ = r * std::sin(t);
    have_spare_ = true;
    return r * std::cos(t);
  }

 private:
  philox::Key key_;
  std::uint64_t stream_ = 0;
  std::uint64_t draw_ = 0;
  philox::Block buf_{};
  int pos_ = 0;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

/// 64-bit sub-seed derived from (seed, tag); used where one configuration
/// needs several statistically independent sample sets.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint32_t tag) {
  const auto b = philox::block({static_cast<std::uint32_t>(seed),
                                static_cast<std::uint32_t>(seed >> 32)},
                               {tag, 0x5eedu, 0u, 0xdec0deu});
  return static_cast<std::uint64_t>(b[0]) |
         (static_cast<std::uint64_t>(b[1]) << 32);
}

}  // namespace shadows
