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

#include <cstdlib>
#include <iostream>
#include <string>

#include "mpclab/bench.hpp"

int main(int argc, char** argv) {
  const std::size_t scale = argc > 1 ? std::stoul(argv[1]) : 1;
  const auto t = mpclab::benchmark_kernels(scale);
  std::cout << mpclab::kernel_timings_csv(t);
  for (const auto& k : t)
    if (!k.outputs_match) return 1;
  return 0;
}
