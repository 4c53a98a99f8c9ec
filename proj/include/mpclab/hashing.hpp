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

#ifndef MPCLAB_HASHING_HPP
#define MPCLAB_HASHING_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mpclab/common.hpp"
#include "mpclab/rational.hpp"

namespace mpclab {

class HashError : public Error {
 public:
  using Error::Error;
};

// Polynomials of degree < k over F_p, evaluated on inputs in [domain_bound].
struct KWiseFamily {
  std::uint64_t prime = 2;
  std::uint32_t k = 1;
  std::uint64_t domain_bound = 1;

  // Throws HashError unless p is prime, k >= 1 and domain_bound <= p.
  static KWiseFamily make(std::uint64_t prime, std::uint32_t k, std::uint64_t domain_bound);

  // p^k, saturating.
  std::uint64_t seed_count() const { return saturating_pow(prime, k); }
  std::string descriptor() const;
  static KWiseFamily parse(std::string_view text);
  friend bool operator==(const KWiseFamily&, const KWiseFamily&) = default;
};

// Coefficients a_0..a_{k-1}.
using Coefficients = std::vector<std::uint64_t>;

std::uint64_t kwise_eval(const KWiseFamily& f, std::span<const std::uint64_t> seed, std::uint64_t x);

inline constexpr std::uint64_t kDefaultEnumerationCap = 1ULL << 26;

// The family's seeds in lexicographic order (a_0 most significant).
class SeedEnumeration {
 public:
  SeedEnumeration(const KWiseFamily& f, std::uint64_t cap = kDefaultEnumerationCap);
  std::uint64_t size() const { return count_; }
  Coefficients decode(std::uint64_t index) const;
  // Calls f on every seed; stops early when f returns false.
  void for_each(const std::function<bool(std::span<const std::uint64_t>)>& f) const;

 private:
  KWiseFamily family_;
  std::uint64_t count_;
};

SeedEnumeration enumerate_seeds(const KWiseFamily& f, std::uint64_t cap = kDefaultEnumerationCap);

// Maximum over distinct x_1..x_t in the domain and every y in F_p^t of
// |P[h(x_i) = y_i for all i] - p^-t|, computed exactly.
Rational verify_independence(const KWiseFamily& f, std::uint32_t t, Exec exec = Exec::parallel);

// Interpolates the unique seed with h(points[i]) = values[i]; points distinct, count = k.
Coefficients interpolate_seed(const KWiseFamily& f, std::span<const std::uint64_t> points,
                              std::span<const std::uint64_t> values);

std::string format_seed(const KWiseFamily& f, std::span<const std::uint64_t> seed,
                        const std::optional<Rational>& cost = std::nullopt);
struct ParsedSeed {
  KWiseFamily family;
  Coefficients coeffs;
  std::optional<Rational> cost;
};
ParsedSeed parse_seed(std::string_view line);

// Brute-force PRG search. Strings of m bits are integers whose first bit is the most significant.
struct PrgTest {
  std::string name;
  std::function<bool(std::uint32_t)> accepts;
};

PrgTest bit_projection_test(std::uint32_t m, std::uint32_t bit);
PrgTest parity_test(std::uint32_t mask);
PrgTest threshold_test(std::uint32_t m, std::uint32_t min_weight);

struct PrgSpec {
  std::uint32_t seed_bits = 1;    // d <= 4
  std::uint32_t output_bits = 2;  // d < m <= 8
  std::vector<PrgTest> tests;     // at most 64
  Rational epsilon;
};

// Entry s is the output for seed s.
struct PrgTable {
  std::uint32_t output_bits = 0;
  std::vector<std::uint32_t> entries;
  friend bool operator==(const PrgTable&, const PrgTable&) = default;
};

enum class PrgSearchMode { exhaustive, random_restarts };

struct PrgSearchOptions {
  std::uint32_t max_exhaustive_bits = 24;
  std::uint64_t random_budget = 1ULL << 18;
  std::uint64_t rng_seed = 1;
};

struct PrgSearchResult {
  std::optional<PrgTable> table;
  PrgSearchMode mode = PrgSearchMode::exhaustive;
  std::uint64_t examined = 0;
  Rational deviation;  // of the returned table
};

// Max over tests of |P_seed[T(table[s])] - P_uniform[T(x)]|.
Rational prg_deviation(const PrgSpec& spec, const PrgTable& table);
PrgSearchResult nano_prg_search(const PrgSpec& spec, const PrgSearchOptions& options = {});
std::string format_prg_table(const PrgTable& table);
PrgTable parse_prg_table(std::string_view text, std::uint32_t output_bits);

}  // namespace mpclab

#endif  // MPCLAB_HASHING_HPP
