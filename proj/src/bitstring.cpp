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

#include "mpclab/bitstring.hpp"

#include "mpclab/common.hpp"

namespace mpclab {

BitString BitString::zeros(std::size_t bits) {
  BitString b;
  b.bits_ = bits;
  b.bytes_.assign((bits + 7) / 8, 0);
  return b;
}

BitString BitString::expand(std::uint64_t key, std::size_t bits) {
  BitString b = zeros(bits);
  Rng rng(key);
  std::uint64_t word = 0;
  for (std::size_t i = 0; i < b.bytes_.size(); ++i) {
    if (i % 8 == 0) word = rng.next();
    b.bytes_[i] = static_cast<std::uint8_t>(word >> (56 - 8 * (i % 8)));
  }
  if (bits % 8) b.bytes_.back() &= static_cast<std::uint8_t>(0xff << (8 - bits % 8));
  return b;
}

BitString BitString::from_hex(std::string_view hex) {
  if (hex.starts_with("0x") || hex.starts_with("0X")) hex.remove_prefix(2);
  BitString b = zeros(hex.size() * 4);
  for (std::size_t i = 0; i < hex.size(); ++i) {
    char c = hex[i];
    int v;
    if (c >= '0' && c <= '9') v = c - '0';
    else if (c >= 'a' && c <= 'f') v = c - 'a' + 10;
    else if (c >= 'A' && c <= 'F') v = c - 'A' + 10;
    else throw Error("invalid hex digit in seed");
    for (int k = 0; k < 4; ++k) b.set(4 * i + k, (v >> (3 - k)) & 1);
  }
  return b;
}

bool BitString::bit(std::size_t i) const {
  if (i >= bits_) throw Error("seed read past end of bit string");
  return (bytes_[i / 8] >> (7 - i % 8)) & 1;
}

void BitString::set(std::size_t i, bool value) {
  if (i >= bits_) throw Error("seed write past end of bit string");
  std::uint8_t mask = static_cast<std::uint8_t>(1u << (7 - i % 8));
  if (value) bytes_[i / 8] |= mask;
  else bytes_[i / 8] &= static_cast<std::uint8_t>(~mask);
}

std::uint64_t BitString::read(std::size_t offset, std::size_t width) const {
  if (width > 64) throw Error("seed read wider than 64 bits");
  if (offset + width > bits_) throw Error("seed too short for requested segment");
  std::uint64_t v = 0;
  for (std::size_t i = 0; i < width; ++i) v = (v << 1) | (bit(offset + i) ? 1u : 0u);
  return v;
}

BitString BitString::slice(std::size_t offset, std::size_t bits) const {
  if (offset + bits > bits_) throw Error("seed too short for requested segment");
  BitString b = zeros(bits);
  for (std::size_t i = 0; i < bits; ++i) b.set(i, bit(offset + i));
  return b;
}

std::string BitString::hex() const {
  static const char* digits = "0123456789abcdef";
  std::string out;
  for (std::size_t i = 0; i < bits_; i += 4) {
    int v = 0;
    for (std::size_t k = 0; k < 4; ++k) v = (v << 1) | ((i + k < bits_ && bit(i + k)) ? 1 : 0);
    out.push_back(digits[v]);
  }
  return out;
}

BitString seed_from_text(std::string_view text, std::size_t bits) {
  BitString raw = BitString::from_hex(text);
  if (raw.size() >= bits) return raw;
  std::uint64_t key = 0xcbf29ce484222325ULL;
  for (char c : raw.hex()) key = (key ^ static_cast<std::uint8_t>(c)) * 0x100000001b3ULL;
  key ^= raw.size();
  return BitString::expand(key, bits);
}

}  // namespace mpclab
