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

#include "oqs/trajectories/rng.hpp"

#include <cmath>

namespace oqs {

namespace {

std::mt19937_64 seeded(std::uint64_t master, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(master), static_cast<std::uint32_t>(master >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32), 0x6f71u};
  return std::mt19937_64(seq);
}

}  // namespace

RngStream::RngStream(std::uint64_t master_seed, std::uint64_t index) : gen_(seeded(master_seed, index)) {}

double RngStream::uniform() {
  // 53 random mantissa bits, offset by half a unit so 0 and 1 are excluded.
  return (static_cast<double>(gen_() >> 11) + 0.5) * 0x1.0p-53;
}

std::vector<double> wiener_increments(RngStream& rng, std::size_t n, double dt) {
  std::vector<double> out(n);
  const double s = std::sqrt(dt);
  for (auto& x : out) x = s * rng.normal();
  return out;
}

}  // namespace oqs
