// Copyright 2026 The oqs-toolkit Authors
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

#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

namespace oqs {

/// Independent random stream keyed by (master_seed, stream index). Streams
/// are derived by seeding a 64-bit Mersenne twister through std::seed_seq
/// with both keys, so no generator state is ever shared between trajectories.
class RngStream {
 public:
  RngStream(std::uint64_t master_seed, std::uint64_t index);

  std::uint64_t next_u64() { return gen_(); }
  /// Uniform on the open interval (0, 1).
  double uniform();
  double normal() { return normal_(gen_); }

 private:
  std::mt19937_64 gen_;
  std::normal_distribution<double> normal_;
};

/// n independent real Wiener increments with variance dt.
std::vector<double> wiener_increments(RngStream& rng, std::size_t n, double dt);

}  // namespace oqs
