#pragma once

// Counter-based random number generation (Philox4x32-10, Salmon et al.,
// SC 2011). Every stream is addressed by (master_seed, rep, substream):
// the master seed forms the Philox key, the replication index and the
// substream index occupy the two high counter words, and the low 64 bits
// count blocks within the stream. Streams never share state, so any
// number of workers can draw from disjoint streams in any order and
// reproduce identical results.

#include <cmath>
#include <cstdint>
#include <limits>

namespace forkfluid::rng {

namespace detail {

inline constexpr std::uint32_t kPhiloxM0 = 0xD2511F53u;
inline constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57u;
inline constexpr std::uint32_t kPhiloxW0 = 0x9E3779B9u;
inline constexpr std::uint32_t kPhiloxW1 = 0xBB67AE85u;

struct Block {
  std::uint32_t v[4];
};

inline void philox_round(std::uint32_t c[4], const std::uint32_t k[2]) {
  const std::uint64_t p0 = static_cast<std::uint64_t>(kPhiloxM0) * c[0];
  const std::uint64_t p1 = static_cast<std::uint64_t>(kPhiloxM1) * c[2];
  const std::uint32_t hi0 = static_cast<std::uint32_t>(p0 >> 32);
  const std::uint32_t lo0 = static_cast<std::uint32_t>(p0);
  const std::uint32_t hi1 = static_cast<std::uint32_t>(p1 >> 32);
  const std::uint32_t lo1 = static_cast<std::uint32_t>(p1);
  const std::uint32_t out0 = hi1 ^ c[1] ^ k[0];
  const std::uint32_t out2 = hi0 ^ c[3] ^ k[1];
  c[0] = out0;
  c[1] = lo1;
  c[2] = out2;
  c[3] = lo0;
}

inline Block philox4x32_10(const std::uint32_t ctr[4], const std::uint32_t key[2]) {
  std::uint32_t c[4] = {ctr[0], ctr[1], ctr[2], ctr[3]};
  std::uint32_t k[2] = {key[0], key[1]};
  for (int r = 0; r < 10; ++r) {
    if (r > 0) {
      k[0] += kPhiloxW0;
      k[1] += kPhiloxW1;
    }
    philox_round(c, k);
  }
  return Block{{c[0], c[1], c[2], c[3]}};
}

}  // namespace detail

// One independent stream of random numbers. Cheap to construct; holds a
// four-word buffer and a block counter.
class Stream {
 public:
  Stream(std::uint64_t master_seed, std::uint32_t rep, std::uint32_t substream)
      : block_(0), pos_(4) {
    key_[0] = static_cast<std::uint32_t>(master_seed);
    key_[1] = static_cast<std::uint32_t>(master_seed >> 32);
    hi_[0] = substream;
    hi_[1] = rep;
  }

  std::uint32_t next_u32() {
    if (pos_ == 4) refill();
    return buf_.v[pos_++];
  }

  std::uint64_t next_u64() {
    const std::uint64_t lo = next_u32();
    const std::uint64_t hi = next_u32();
    return (hi << 32) | lo;
  }

  // Uniform on the open interval (0,1); never returns an endpoint, so
  // log() of the result is always finite.
  double uniform01() {
    const std::uint64_t bits = next_u64() >> 11;
    return (static_cast<double>(bits) + 0.5) * 0x1.0p-53;
  }

  double exponential(double mean) { return -mean * std::log(uniform01()); }

  // Standard normal via the inverse CDF (Wichura's AS 241, see numeric.hpp).
  double normal();

  // Number of Bernoulli(fail_prob) trials up to and including the first
  // failure; support {1, 2, ...}. Inverse-CDF geometric, so a schedule
  // built from gaps is distributionally identical to slot-by-slot
  // sampling of the same stream of indicators.
  std::uint64_t geometric(double fail_prob) {
    const double g = std::ceil(std::log(uniform01()) / std::log1p(-fail_prob));
    if (g < 1.0) return 1;
    if (g >= 9.2e18) return std::numeric_limits<std::uint64_t>::max() / 4;
    return static_cast<std::uint64_t>(g);
  }

 private:
  void refill() {
    const std::uint32_t ctr[4] = {static_cast<std::uint32_t>(block_),
                                  static_cast<std::uint32_t>(block_ >> 32), hi_[0], hi_[1]};
    buf_ = detail::philox4x32_10(ctr, key_);
    ++block_;
    pos_ = 0;
  }

  std::uint32_t key_[2];
  std::uint32_t hi_[2];  // {substream, rep}
  std::uint64_t block_;
  detail::Block buf_;
  int pos_;
};

// Fixed substream roles used by the simulators. Modules that run their
// own Monte Carlo draw from kScratchBase upward.
inline constexpr std::uint32_t kSubArrival = 0;
inline constexpr std::uint32_t kSubInit = 1;
inline constexpr std::uint32_t kSubScratchBase = 8;
inline constexpr std::uint32_t kSubServiceBase = 1u << 16;

// Addresses the family of streams belonging to one replication.
struct Handle {
  std::uint64_t master_seed = 0;
  std::uint32_t rep = 0;

  Stream stream(std::uint32_t substream) const { return Stream(master_seed, rep, substream); }
  Stream arrivals() const { return stream(kSubArrival); }
  Stream services(std::uint32_t server) const { return stream(kSubServiceBase + server); }
  Stream init() const { return stream(kSubInit); }
  Stream scratch(std::uint32_t k = 0) const { return stream(kSubScratchBase + k); }
  Handle for_rep(std::uint32_t r) const { return Handle{master_seed, r}; }
};

}  // namespace forkfluid::rng
