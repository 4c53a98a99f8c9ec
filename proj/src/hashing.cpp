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

#include "mpclab/hashing.hpp"

#include <algorithm>
#include <bit>
#include <cstdio>
#include <sstream>

namespace mpclab {

KWiseFamily KWiseFamily::make(std::uint64_t prime, std::uint32_t k, std::uint64_t domain_bound) {
  if (!is_prime(prime)) throw HashError("p = " + std::to_string(prime) + " is not prime");
  if (k == 0) throw HashError("k must be at least 1");
  if (domain_bound == 0 || domain_bound > prime) throw HashError("domain bound must lie in [1, p]");
  if (prime >= (1ULL << 62)) throw HashError("p must be below 2^62");
  return {prime, k, domain_bound};
}

std::string KWiseFamily::descriptor() const {
  return "kwise p=" + std::to_string(prime) + " k=" + std::to_string(k) + " dom=" + std::to_string(domain_bound);
}

namespace {

std::uint64_t parse_field(std::string_view text, std::string_view key) {
  std::string pat = std::string(key) + "=";
  auto pos = text.find(pat);
  if (pos == std::string_view::npos) throw HashError("missing field " + std::string(key));
  pos += pat.size();
  auto end = text.find_first_of(" \t", pos);
  std::string value(text.substr(pos, end == std::string_view::npos ? std::string_view::npos : end - pos));
  try {
    std::size_t used = 0;
    std::uint64_t v = std::stoull(value, &used);
    if (used != value.size()) throw HashError("bad value for " + std::string(key));
    return v;
  } catch (const std::logic_error&) {
    throw HashError("bad value for " + std::string(key));
  }
}

std::string field_text(std::string_view text, std::string_view key) {
  std::string pat = " " + std::string(key) + "=";
  auto pos = text.find(pat);
  if (pos == std::string_view::npos) return {};
  pos += pat.size();
  auto end = text.find_first_of(" \t", pos);
  return std::string(text.substr(pos, end == std::string_view::npos ? std::string_view::npos : end - pos));
}

std::uint64_t inverse(std::uint64_t a, std::uint64_t p) { return powmod(a, p - 2, p); }

}  // namespace

KWiseFamily KWiseFamily::parse(std::string_view text) {
  auto pos = text.find("kwise");
  if (pos == std::string_view::npos) throw HashError("not a kwise family descriptor");
  text = text.substr(pos);
  return make(parse_field(text, "p"), static_cast<std::uint32_t>(parse_field(text, "k")),
              parse_field(text, "dom"));
}

std::uint64_t kwise_eval(const KWiseFamily& f, std::span<const std::uint64_t> seed, std::uint64_t x) {
  if (seed.size() != f.k) throw HashError("seed length differs from k");
  if (x >= f.domain_bound) throw HashError("input " + std::to_string(x) + " outside hash domain");
  // Horner from the top coefficient.
  std::uint64_t r = 0;
  for (std::size_t i = seed.size(); i-- > 0;) r = (mulmod(r, x, f.prime) + seed[i]) % f.prime;
  return r;
}

SeedEnumeration::SeedEnumeration(const KWiseFamily& f, std::uint64_t cap) : family_(f) {
  count_ = f.seed_count();
  if (count_ > cap) {
    throw HashError("family of " + std::to_string(count_) + " seeds exceeds enumeration cap " +
                    std::to_string(cap));
  }
}

Coefficients SeedEnumeration::decode(std::uint64_t index) const {
  Coefficients c(family_.k);
  for (std::size_t i = family_.k; i-- > 0;) {
    c[i] = index % family_.prime;
    index /= family_.prime;
  }
  return c;
}

void SeedEnumeration::for_each(const std::function<bool(std::span<const std::uint64_t>)>& f) const {
  Coefficients c(family_.k, 0);
  for (std::uint64_t i = 0; i < count_; ++i) {
    if (!f(c)) return;
    for (std::size_t j = family_.k; j-- > 0;) {
      if (++c[j] < family_.prime) break;
      c[j] = 0;
    }
  }
}

SeedEnumeration enumerate_seeds(const KWiseFamily& f, std::uint64_t cap) { return SeedEnumeration(f, cap); }

Rational verify_independence(const KWiseFamily& f, std::uint32_t t, Exec exec) {
  if (t == 0) throw HashError("t must be at least 1");
  if (t > f.k) throw HashError("t = " + std::to_string(t) + " exceeds k = " + std::to_string(f.k));
  if (t > f.domain_bound) throw HashError("t exceeds the domain size");
  SeedEnumeration seeds(f);
  const std::uint64_t bins = saturating_pow(f.prime, t);
  if (bins > (1ULL << 24)) throw HashError("p^t too large to tabulate");

  std::vector<std::vector<std::uint64_t>> tuples;
  std::vector<std::uint64_t> cur(t);
  for (std::uint32_t i = 0; i < t; ++i) cur[i] = i;
  while (true) {
    tuples.push_back(cur);
    int i = static_cast<int>(t) - 1;
    while (i >= 0 && cur[i] == f.domain_bound - t + i) --i;
    if (i < 0) break;
    ++cur[i];
    for (std::uint32_t j = i + 1; j < t; ++j) cur[j] = cur[j - 1] + 1;
  }

  const Wide total = static_cast<Wide>(seeds.size());
  const Wide scaled_uniform = total;  // p^k, against count * p^t
  Wide worst = 0;
  auto one = [&](const std::vector<std::uint64_t>& xs) {
    std::vector<std::uint64_t> hist(bins, 0);
    seeds.for_each([&](std::span<const std::uint64_t> s) {
      std::uint64_t idx = 0;
      for (std::uint64_t x : xs) idx = idx * f.prime + kwise_eval(f, s, x);
      ++hist[idx];
      return true;
    });
    Wide w = 0;
    for (std::uint64_t c : hist) {
      Wide d = static_cast<Wide>(c) * static_cast<Wide>(bins) - scaled_uniform;
      w = std::max(w, d < 0 ? -d : d);
    }
    return w;
  };
  if (exec == Exec::parallel) {
    std::vector<Wide> per(tuples.size());
#pragma omp parallel for schedule(dynamic)
    for (std::size_t i = 0; i < tuples.size(); ++i) per[i] = one(tuples[i]);
    for (Wide w : per) worst = std::max(worst, w);
  } else {
    for (const auto& xs : tuples) worst = std::max(worst, one(xs));
  }
  return ratio(worst, total * static_cast<Wide>(bins));
}

Coefficients interpolate_seed(const KWiseFamily& f, std::span<const std::uint64_t> points,
                              std::span<const std::uint64_t> values) {
  const std::size_t k = f.k;
  const std::uint64_t p = f.prime;
  if (points.size() != k || values.size() != k) throw HashError("interpolation needs exactly k points");
  Coefficients result(k, 0);
  for (std::size_t i = 0; i < k; ++i) {
    // Basis polynomial prod_{j != i} (x - x_j) / (x_i - x_j).
    std::vector<std::uint64_t> basis{1};
    std::uint64_t denom = 1;
    for (std::size_t j = 0; j < k; ++j) {
      if (j == i) continue;
      if (points[i] % p == points[j] % p) throw HashError("interpolation points must be distinct");
      std::vector<std::uint64_t> next(basis.size() + 1, 0);
      std::uint64_t neg = (p - points[j] % p) % p;
      for (std::size_t d = 0; d < basis.size(); ++d) {
        next[d] = (next[d] + mulmod(basis[d], neg, p)) % p;
        next[d + 1] = (next[d + 1] + basis[d]) % p;
      }
      basis = std::move(next);
      denom = mulmod(denom, (points[i] % p + p - points[j] % p) % p, p);
    }
    std::uint64_t scale = mulmod(values[i] % p, inverse(denom, p), p);
    for (std::size_t d = 0; d < k; ++d) result[d] = (result[d] + mulmod(basis[d], scale, p)) % p;
  }
  return result;
}

std::string format_seed(const KWiseFamily& f, std::span<const std::uint64_t> seed,
                        const std::optional<Rational>& cost) {
  std::ostringstream out;
  out << "seed family=" << f.descriptor() << " coeffs=";
  for (std::size_t i = 0; i < seed.size(); ++i) out << (i ? "," : "") << seed[i];
  if (cost) out << " cost=" << rational_string(*cost);
  return out.str();
}

ParsedSeed parse_seed(std::string_view line) {
  if (!line.starts_with("seed family=")) throw HashError("not a seed line");
  ParsedSeed out{KWiseFamily::parse(line), {}, std::nullopt};
  std::string coeffs = field_text(line, "coeffs");
  std::stringstream cs(coeffs);
  std::string tok;
  while (std::getline(cs, tok, ',')) {
    try {
      out.coeffs.push_back(std::stoull(tok));
    } catch (const std::logic_error&) {
      throw HashError("bad coefficient");
    }
  }
  if (out.coeffs.size() != out.family.k) throw HashError("coefficient count differs from k");
  for (auto c : out.coeffs) {
    if (c >= out.family.prime) throw HashError("coefficient outside F_p");
  }
  std::string cost = field_text(line, "cost");
  if (!cost.empty()) {
    try {
      out.cost = Rational(cost);
    } catch (const std::exception&) {
      throw HashError("bad cost");
    }
  }
  return out;
}

PrgTest bit_projection_test(std::uint32_t m, std::uint32_t bit) {
  return {"bit" + std::to_string(bit), [m, bit](std::uint32_t x) { return (x >> (m - 1 - bit)) & 1; }};
}

PrgTest parity_test(std::uint32_t mask) {
  return {"parity" + std::to_string(mask), [mask](std::uint32_t x) { return std::popcount(x & mask) % 2 == 1; }};
}

PrgTest threshold_test(std::uint32_t m, std::uint32_t min_weight) {
  return {"weight>=" + std::to_string(min_weight), [m, min_weight](std::uint32_t x) {
            return static_cast<std::uint32_t>(std::popcount(x & ((1u << m) - 1))) >= min_weight;
          }};
}

namespace {

struct PrgChecker {
  explicit PrgChecker(const PrgSpec& spec) : spec_(spec) {
    if (spec.seed_bits < 1 || spec.seed_bits > 4) throw HashError("seed bits must lie in [1, 4]");
    if (spec.output_bits <= spec.seed_bits || spec.output_bits > 8) throw HashError("need d < m <= 8");
    if (spec.tests.size() > 64) throw HashError("at most 64 tests");
    if (spec.epsilon < 0) throw HashError("epsilon must be non-negative");
    const std::uint32_t space = 1u << spec.output_bits;
    for (const auto& t : spec.tests) {
      std::vector<std::uint8_t> truth(space);
      std::int64_t u = 0;
      for (std::uint32_t x = 0; x < space; ++x) {
        truth[x] = t.accepts(x) ? 1 : 0;
        u += truth[x];
      }
      truth_.push_back(std::move(truth));
      uniform_.push_back(u);
    }
    // |c * 2^m - U * 2^d| * den <= num * 2^(m+d)
    num_ = big_to_wide(numerator(spec.epsilon));
    den_ = big_to_wide(denominator(spec.epsilon));
  }

  static Wide big_to_wide(const BigInt& b) {
    if (b > BigInt("1000000000000000000")) return static_cast<Wide>(1e18);
    return static_cast<Wide>(b.convert_to<long long>());
  }

  bool passes(const std::vector<std::uint32_t>& entries) const {
    const Wide m2 = Wide(1) << spec_.output_bits, d2 = Wide(1) << spec_.seed_bits;
    for (std::size_t t = 0; t < truth_.size(); ++t) {
      Wide c = 0;
      for (auto e : entries) c += truth_[t][e];
      Wide diff = c * m2 - uniform_[t] * d2;
      if (diff < 0) diff = -diff;
      if (diff * den_ > num_ * m2 * d2) return false;
    }
    return true;
  }

  Rational deviation(const std::vector<std::uint32_t>& entries) const {
    Rational worst = 0;
    const Wide m2 = Wide(1) << spec_.output_bits, d2 = Wide(1) << spec_.seed_bits;
    for (std::size_t t = 0; t < truth_.size(); ++t) {
      Wide c = 0;
      for (auto e : entries) c += truth_[t][e];
      Wide diff = c * m2 - uniform_[t] * d2;
      if (diff < 0) diff = -diff;
      Rational r = ratio(diff, m2 * d2);
      if (r > worst) worst = r;
    }
    return worst;
  }

  const PrgSpec& spec_;
  std::vector<std::vector<std::uint8_t>> truth_;
  std::vector<Wide> uniform_;
  Wide num_ = 0, den_ = 1;
};

}  // namespace

Rational prg_deviation(const PrgSpec& spec, const PrgTable& table) {
  PrgChecker checker(spec);
  if (table.entries.size() != (1u << spec.seed_bits)) throw HashError("table size differs from 2^d");
  return checker.deviation(table.entries);
}

PrgSearchResult nano_prg_search(const PrgSpec& spec, const PrgSearchOptions& options) {
  PrgChecker checker(spec);
  const std::size_t seeds = 1u << spec.seed_bits;
  const std::uint32_t space = 1u << spec.output_bits;
  PrgSearchResult result;
  std::vector<std::uint32_t> entries(seeds, 0);
  auto found = [&]() {
    result.table = PrgTable{spec.output_bits, entries};
    result.deviation = checker.deviation(entries);
    return result;
  };
  if (spec.output_bits * seeds <= options.max_exhaustive_bits) {
    result.mode = PrgSearchMode::exhaustive;
    // Entry 0 is the most significant digit of the lexicographic order.
    while (true) {
      ++result.examined;
      if (checker.passes(entries)) return found();
      std::size_t j = seeds;
      while (j-- > 0) {
        if (++entries[j] < space) break;
        entries[j] = 0;
      }
      if (j == static_cast<std::size_t>(-1)) break;
    }
    return result;
  }
  result.mode = PrgSearchMode::random_restarts;
  Rng rng(options.rng_seed);
  for (std::uint64_t i = 0; i < options.random_budget; ++i) {
    for (auto& e : entries) e = static_cast<std::uint32_t>(rng.below(space));
    ++result.examined;
    if (checker.passes(entries)) return found();
  }
  return result;
}

std::string format_prg_table(const PrgTable& table) {
  std::string out;
  const int width = static_cast<int>((table.output_bits + 3) / 4);
  char buf[16];
  for (auto e : table.entries) {
    std::snprintf(buf, sizeof buf, "%0*x\n", width, e);
    out += buf;
  }
  return out;
}

PrgTable parse_prg_table(std::string_view text, std::uint32_t output_bits) {
  PrgTable t{output_bits, {}};
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::size_t used = 0;
    unsigned long v;
    try {
      v = std::stoul(line, &used, 16);
    } catch (const std::logic_error&) {
      throw HashError("bad PRG table line");
    }
    if (used != line.size() || v >= (1ul << output_bits)) throw HashError("bad PRG table line");
    t.entries.push_back(static_cast<std::uint32_t>(v));
  }
  return t;
}

}  // namespace mpclab
