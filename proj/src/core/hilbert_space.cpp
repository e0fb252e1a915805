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

#include "oqs/core/hilbert_space.hpp"

#include <limits>

namespace oqs {

HilbertSpace::HilbertSpace(std::vector<std::size_t> site_dims) : dims_(std::move(site_dims)) {
  if (dims_.empty()) throw std::invalid_argument("HilbertSpace: at least one site required");
  total_ = 1;
  for (auto d : dims_) {
    if (d < 2) throw std::invalid_argument("HilbertSpace: site dimensions must be >= 2");
    if (total_ > std::numeric_limits<Index>::max() / static_cast<Index>(d)) {
      throw std::overflow_error("HilbertSpace: total dimension overflows");
    }
    total_ *= static_cast<Index>(d);
  }
}

HilbertSpace HilbertSpace::uniform(std::size_t n_sites, std::size_t local_dim) {
  return HilbertSpace(std::vector<std::size_t>(n_sites, local_dim));
}

Index HilbertSpace::site_dim(std::size_t site) const {
  if (site >= dims_.size()) throw std::out_of_range("HilbertSpace: site out of range");
  return static_cast<Index>(dims_[site]);
}

Index HilbertSpace::left_dim(std::size_t site) const {
  if (site >= dims_.size()) throw std::out_of_range("HilbertSpace: site out of range");
  Index d = 1;
  for (std::size_t s = 0; s < site; ++s) d *= static_cast<Index>(dims_[s]);
  return d;
}

Index HilbertSpace::right_dim(std::size_t site) const {
  if (site >= dims_.size()) throw std::out_of_range("HilbertSpace: site out of range");
  Index d = 1;
  for (std::size_t s = site + 1; s < dims_.size(); ++s) d *= static_cast<Index>(dims_[s]);
  return d;
}

std::size_t HilbertSpace::digit(Index index, std::size_t site) const {
  return static_cast<std::size_t>((index / right_dim(site)) % site_dim(site));
}

bool HilbertSpace::is_uniform() const {
  for (auto d : dims_) {
    if (d != dims_.front()) return false;
  }
  return true;
}

}  // namespace oqs
