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

#include "oqs/core/lattice.hpp"

#include <algorithm>
#include <stdexcept>

namespace oqs {

namespace {

void add_unique(std::vector<Edge>& edges, std::size_t a, std::size_t b) {
  if (a == b) return;
  Edge e{std::min(a, b), std::max(a, b)};
  if (std::find(edges.begin(), edges.end(), e) == edges.end()) edges.push_back(e);
}

}  // namespace

LatticeGraph::LatticeGraph(std::size_t n_sites, std::vector<Edge> edges) : n_sites_(n_sites) {
  if (n_sites == 0) throw std::invalid_argument("LatticeGraph: at least one site required");
  for (auto& e : edges) {
    if (e.a >= n_sites || e.b >= n_sites) throw std::invalid_argument("LatticeGraph: edge references invalid site");
    if (e.a == e.b) throw std::invalid_argument("LatticeGraph: self-edge");
    if (e.a > e.b) std::swap(e.a, e.b);
  }
  for (std::size_t i = 0; i < edges.size(); ++i) {
    for (std::size_t j = i + 1; j < edges.size(); ++j) {
      if (edges[i] == edges[j]) throw std::invalid_argument("LatticeGraph: duplicate edge");
    }
  }
  edges_ = std::move(edges);
}

LatticeGraph LatticeGraph::chain(std::size_t n, Boundary boundary) { return grid(n, 1, boundary); }

LatticeGraph LatticeGraph::grid(std::size_t lx, std::size_t ly, Boundary boundary) {
  if (lx == 0 || ly == 0) throw std::invalid_argument("LatticeGraph: grid extents must be positive");
  std::vector<Edge> edges;
  const bool periodic = boundary == Boundary::periodic;
  for (std::size_t y = 0; y < ly; ++y) {
    for (std::size_t x = 0; x < lx; ++x) {
      const std::size_t s = y * lx + x;
      if (x + 1 < lx) add_unique(edges, s, y * lx + x + 1);
      else if (periodic && lx > 1) add_unique(edges, s, y * lx);
      if (y + 1 < ly) add_unique(edges, s, (y + 1) * lx + x);
      else if (periodic && ly > 1) add_unique(edges, s, x);
    }
  }
  LatticeGraph g(lx * ly, std::move(edges));
  g.shape_ = std::make_pair(lx, ly);
  g.boundary_ = boundary;
  return g;
}

std::pair<std::size_t, std::size_t> LatticeGraph::shape() const {
  if (!shape_) throw std::logic_error("LatticeGraph: no grid shape");
  return *shape_;
}

double LatticeGraph::anisotropy() const {
  const auto [lx, ly] = shape();
  return static_cast<double>(lx) / static_cast<double>(ly);
}

std::vector<std::size_t> LatticeGraph::neighbors(std::size_t site) const {
  std::vector<std::size_t> out;
  for (const auto& e : edges_) {
    if (e.a == site) out.push_back(e.b);
    else if (e.b == site) out.push_back(e.a);
  }
  return out;
}

std::size_t LatticeGraph::degree(std::size_t site) const { return neighbors(site).size(); }

std::optional<std::size_t> LatticeGraph::coordination() const {
  const std::size_t z = degree(0);
  for (std::size_t s = 1; s < n_sites_; ++s) {
    if (degree(s) != z) return std::nullopt;
  }
  return z;
}

std::pair<std::size_t, std::size_t> LatticeGraph::coordinates(std::size_t site) const {
  const auto [lx, ly] = shape();
  (void)ly;
  return {site % lx, site / lx};
}

std::optional<int> LatticeGraph::edge_axis(const Edge& e) const {
  if (!shape_) return std::nullopt;
  const auto [xa, ya] = coordinates(e.a);
  const auto [xb, yb] = coordinates(e.b);
  if (ya == yb && xa != xb) return 0;
  if (xa == xb && ya != yb) return 1;
  return std::nullopt;
}

bool LatticeGraph::is_translation_invariant() const {
  if (n_sites_ == 1) return true;
  return shape_.has_value() && boundary_ == Boundary::periodic;
}

}  // namespace oqs
