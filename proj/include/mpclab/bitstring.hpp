// Copyright 2026 The mpclab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MPCLAB_BITSTRING_HPP
#define MPCLAB_BITSTRING_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace mpclab {

// Shared random bit string. Bit 0 is the most significant bit of the first hex digit.
class BitString {
 public:
  BitString() = default;
  static BitString zeros(std::size_t bits);
  // Expands a 64-bit key into `bits` pseudo-random bits.
  static BitString expand(std::uint64_t key, std::size_t bits);
  static BitString from_hex(std::string_view hex);

  std::size_t size() const { return bits_; }
  bool bit(std::size_t i) const;
  void set(std::size_t i, bool value);
  void flip(std::size_t i) { set(i, !bit(i)); }

  // Reads `width` <= 64 bits starting at `offset`, first bit most significant.
  std::uint64_t read(std::size_t offset, std::size_t width) const;
  BitString slice(std::size_t offset, std::size_t bits) const;
  std::string hex() const;

  friend bool operator==(const BitString&, const BitString&) = default;

 private:
  std::vector<std::uint8_t> bytes_;
  std::size_t bits_ = 0;
};

// Reads the hex string (prefix "0x" allowed) as a key: the bit string itself when it is
// at least `bits` long, otherwise an expansion of a hash of it.
BitString seed_from_text(std::string_view text, std::size_t bits);

}  // namespace mpclab

#endif  // MPCLAB_BITSTRING_HPP
