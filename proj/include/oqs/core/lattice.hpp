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
#include <optional>
#include <utility>
#include <vector>

namespace oqs {

enum class Boundary { open, periodic };

struct Edge {
  std::size_t a;
  std::size_t b;

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Undirected simple graph of interacting sites, optionally a rectangular
/// Lx x Ly grid. Grid site (x, y) has index y * Lx + x.
class LatticeGraph {
 public:
  LatticeGraph() = default;
  /// Arbitrary graph; edges are canonicalized to a < b and validated.
  LatticeGraph(std::size_t n_sites, std::vector<Edge> edges);

  static LatticeGraph chain(std::size_t n, Boundary boundary = Boundary::open);
  static LatticeGraph grid(std::size_t lx, std::size_t ly, Boundary boundary = Boundary::open);

  std::size_t n_sites() const { return n_sites_; }
  const std::vector<Edge>& edges() const { return edges_; }
  bool has_shape() const { return shape_.has_value(); }
  std::pair<std::size_t, std::size_t> shape() const;
  /// Lx / Ly.
  double anisotropy() const;
  Boundary boundary() const { return boundary_; }

  std::vector<std::size_t> neighbors(std::size_t site) const;
  std::size_t degree(std::size_t site) const;
  /// Returns the common degree when every site has the same one.
  std::optional<std::size_t> coordination() const;

  /// Grid axis (0 = x, 1 = y) along which the edge runs; nullopt without a shape.
  std::optional<int> edge_axis(const Edge& e) const;
  std::pair<std::size_t, std::size_t> coordinates(std::size_t site) const;

  /// True for periodic grids/rings and single sites, where every site is
  /// equivalent under lattice translations.
  bool is_translation_invariant() const;

  friend bool operator==(const LatticeGraph&, const LatticeGraph&) = default;

 private:
  std::size_t n_sites_ = 0;
  std::vector<Edge> edges_;
  std::optional<std::pair<std::size_t, std::size_t>> shape_;
  Boundary boundary_ = Boundary::open;
};

}  // namespace oqs
