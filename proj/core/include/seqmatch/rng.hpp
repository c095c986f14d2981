// Copyright 2026 The SeqMatch Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#pragma once

#include <array>
#include <cstdint>

// Philox4x32-10 counter-based generator (Salmon et al., SC'11). Every output
// block is a pure function of (counter, key), so any trial's randomness can
// be regenerated independently of scheduling.

namespace seqmatch {

class Philox4x32 {
 public:
  using Counter = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  static constexpr Counter block(Counter ctr, Key key) {
    for (int round = 0; round < 10; ++round) {
      if (round > 0) {
        key[0] += kWeyl0;
        key[1] += kWeyl1;
      }
      const std::uint64_t p0 = static_cast<std::uint64_t>(kMul0) * ctr[0];
      const std::uint64_t p1 = static_cast<std::uint64_t>(kMul1) * ctr[2];
      ctr = {static_cast<std::uint32_t>(p1 >> 32) ^ ctr[1] ^ key[0], static_cast<std::uint32_t>(p1),
             static_cast<std::uint32_t>(p0 >> 32) ^ ctr[3] ^ key[1], static_cast<std::uint32_t>(p0)};
    }
    return ctr;
  }

  static constexpr Key key_from_seed(std::uint64_t seed) {
    return {static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)};
  }

 private:
  static constexpr std::uint32_t kMul0 = 0xD2511F53;
  static constexpr std::uint32_t kMul1 = 0xCD9E8D57;
  static constexpr std::uint32_t kWeyl0 = 0x9E3779B9;
  static constexpr std::uint32_t kWeyl1 = 0xBB67AE85;
};

/// 53-bit uniform in [0, 1) from two 32-bit words.
constexpr double uniform_from_words(std::uint32_t hi, std::uint32_t lo) {
  const std::uint64_t bits = ((static_cast<std::uint64_t>(hi) << 32) | lo) >> 11;
  return static_cast<double>(bits) * 0x1.0p-53;
}

/// Uniform stream addressed by (key, stream, position). Two uniforms per Philox block.
class CounterStream {
 public:
  CounterStream(std::uint64_t seed, std::uint64_t stream) : key_(Philox4x32::key_from_seed(seed)), stream_(stream) {}

  /// The uniform at (substream, position). Deterministic; caches the last block.
  double uniform(std::uint32_t substream, std::uint64_t position);

 private:
  Philox4x32::Key key_;
  std::uint64_t stream_;
  bool cached_ = false;
  std::uint32_t cached_substream_ = 0;
  std::uint64_t cached_block_ = 0;
  Philox4x32::Counter cached_out_{};
};

inline double CounterStream::uniform(std::uint32_t substream, std::uint64_t position) {
  const std::uint64_t blk = position >> 1;
  if (!cached_ || substream != cached_substream_ || blk != cached_block_) {
    // Blocks index 32 bits of position pairs; positions beyond 2^33 wrap, far past any run.
    cached_out_ = Philox4x32::block({static_cast<std::uint32_t>(stream_), static_cast<std::uint32_t>(stream_ >> 32),
                                     substream, static_cast<std::uint32_t>(blk)},
                                    key_);
    cached_ = true;
    cached_substream_ = substream;
    cached_block_ = blk;
  }
  return (position & 1) ? uniform_from_words(cached_out_[2], cached_out_[3])
                        : uniform_from_words(cached_out_[0], cached_out_[1]);
}

}  // namespace seqmatch
