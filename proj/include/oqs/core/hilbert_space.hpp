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
#include <vector>

#include "oqs/core/types.hpp"

namespace oqs {

/// Tensor product of local spaces. Site 0 is the leftmost (most significant)
/// factor, so composite basis indices are mixed-radix numbers with site 0
/// highest.
class HilbertSpace {
 public:
  HilbertSpace() = default;
  explicit HilbertSpace(std::vector<std::size_t> site_dims);

  static HilbertSpace uniform(std::size_t n_sites, std::size_t local_dim);

  std::size_t n_sites() const { return dims_.size(); }
  Index site_dim(std::size_t site) const;
  const std::vector<std::size_t>& site_dims() const { return dims_; }
  Index total_dim() const { return total_; }
  /// Product of the dimensions of sites strictly left / right of `site`.
  Index left_dim(std::size_t site) const;
  Index right_dim(std::size_t site) const;

  /// Local index of `site` inside composite basis index `index`.
  std::size_t digit(Index index, std::size_t site) const;

  bool is_uniform() const;

  friend bool operator==(const HilbertSpace&, const HilbertSpace&) = default;

 private:
  std::vector<std::size_t> dims_;
  Index total_ = 1;
};

}  // namespace oqs
