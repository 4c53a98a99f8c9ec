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

#ifndef MPCLAB_BENCH_HPP
#define MPCLAB_BENCH_HPP

#include <string>
#include <vector>

namespace mpclab {

struct KernelTiming {
  std::string kernel;
  std::string size;
  double serial_ms = 0;
  double parallel_ms = 0;
  bool outputs_match = false;
};

// Times each OpenMP kernel against its serial reference on inputs scaled by `scale`.
std::vector<KernelTiming> benchmark_kernels(std::size_t scale = 1);

// kernel,size,serial_ms,parallel_ms,speedup,outputs_match
std::string kernel_timings_csv(const std::vector<KernelTiming>& t);

}  // namespace mpclab

#endif  // MPCLAB_BENCH_HPP
