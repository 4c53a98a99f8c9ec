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

#ifndef MPCLAB_RATIONAL_HPP
#define MPCLAB_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

#include "mpclab/common.hpp"

namespace mpclab {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline BigInt big(Wide v) {
  BigInt r(to_string(v));
  return r;
}

inline Rational ratio(Wide num, Wide den) { return Rational(big(num), big(den)); }

// "p/q", or "p" for integers.
inline std::string rational_string(const Rational& r) {
  if (denominator(r) == 1) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

}  // namespace mpclab

#endif  // MPCLAB_RATIONAL_HPP
