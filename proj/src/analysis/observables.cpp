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

#include "oqs/analysis/observables.hpp"

#include <charconv>
#include <stdexcept>

#include "oqs/core/operators.hpp"

namespace oqs {

namespace {

void require_qubits(const HilbertSpace& space, const char* who) {
  for (auto d : space.site_dims()) {
    if (d != 2) throw DimensionError(std::string(who) + ": every site must be a qubit");
  }
}

void require_dim(const DenseMatrix& rho, const HilbertSpace& space, const char* who) {
  if (rho.rows() != space.total_dim() || rho.cols() != space.total_dim()) {
    throw DimensionError(std::string(who) + ": state does not match the Hilbert space");
  }
}

double mean_sz(const DenseMatrix& rho, const HilbertSpace& space) {
  double s = 0.0;
  for (Index k = 0; k < rho.rows(); ++k) {
    const double p = rho(k, k).real();
    for (std::size_t i = 0; i < space.n_sites(); ++i) s += space.digit(k, i) == 0 ? p : -p;
  }
  return s / static_cast<double>(space.n_sites());
}

}  // namespace

double up_spin_density(const DenseMatrix& rho, const HilbertSpace& space) {
  require_qubits(space, "up_spin_density");
  require_dim(rho, space, "up_spin_density");
  return 0.5 * (1.0 + mean_sz(rho, space));
}

double up_spin_density(const ProductState& state) {
  double s = 0.0;
  for (const auto& f : state.sites) {
    if (f.dim() != 2) throw DimensionError("up_spin_density: every site must be a qubit");
    s += f.matrix()(0, 0).real();
  }
  return s / static_cast<double>(state.n_sites());
}

double magnetization(const DenseMatrix& rho, const HilbertSpace& space, Axis axis) {
  require_qubits(space, "magnetization");
  require_dim(rho, space, "magnetization");
  if (axis == Axis::z) return mean_sz(rho, space);
  const SparseOp s = pauli(axis == Axis::x ? Pauli::x : Pauli::y);
  double total = 0.0;
  for (std::size_t i = 0; i < space.n_sites(); ++i) {
    total += expectation(s, partial_trace(rho, space, {i})).real();
  }
  return total / static_cast<double>(space.n_sites());
}

double boson_density(const DenseMatrix& rho, const HilbertSpace& space) {
  require_dim(rho, space, "boson_density");
  double s = 0.0;
  for (Index k = 0; k < rho.rows(); ++k) {
    const double p = rho(k, k).real();
    for (std::size_t i = 0; i < space.n_sites(); ++i) s += p * static_cast<double>(space.digit(k, i));
  }
  return s / static_cast<double>(space.n_sites());
}

double purity(const DenseMatrix& rho) { return rho.cwiseProduct(rho.transpose()).sum().real(); }

double magnetization_susceptibility(const DenseMatrix& rho, const HilbertSpace& space) {
  require_qubits(space, "magnetization_susceptibility");
  require_dim(rho, space, "magnetization_susceptibility");
  double m1 = 0.0, m2 = 0.0;
  for (Index k = 0; k < rho.rows(); ++k) {
    const double p = rho(k, k).real();
    double m = 0.0;
    for (std::size_t i = 0; i < space.n_sites(); ++i) m += space.digit(k, i) == 0 ? 1.0 : -1.0;
    m1 += p * m;
    m2 += p * m * m;
  }
  return (m2 - m1 * m1) / static_cast<double>(space.n_sites());
}

std::vector<std::string> observable_names() {
  return {"up_spin_density", "magnetization_x", "magnetization_y", "magnetization_z", "boson_density", "sz:<i>", "n:<i>"};
}

Observable observable_operator(const LindbladModel& model, const std::string& name) {
  const auto& space = model.space();
  const std::size_t n = space.n_sites();
  const Index dim = space.total_dim();
  auto averaged = [&](auto local) {
    SparseOp sum = SparseOp::zero(dim, dim);
    for (std::size_t i = 0; i < n; ++i) sum += embed(local(i), i, space);
    sum *= cplx(1.0 / static_cast<double>(n), 0.0);
    return sum;
  };
  auto number = [&](std::size_t i) { return boson_ops(static_cast<std::size_t>(space.site_dim(i) - 1)).number; };
  const auto colon = name.find(':');
  if (colon != std::string::npos) {
    const std::string kind = name.substr(0, colon);
    std::size_t site = 0;
    const char* b = name.data() + colon + 1;
    const char* e = name.data() + name.size();
    const auto [ptr, ec] = std::from_chars(b, e, site);
    if (ec != std::errc() || ptr != e || site >= n) throw std::invalid_argument("observable: bad site in '" + name + "'");
    if (kind == "sz") {
      if (space.site_dim(site) != 2) throw DimensionError("observable: sz needs a qubit site");
      return {name, embed(pauli(Pauli::z), site, space)};
    }
    if (kind == "n") return {name, embed(number(site), site, space)};
    throw std::invalid_argument("observable: unknown site observable '" + name + "'");
  }
  if (name == "boson_density") return {name, averaged(number)};
  const bool qubit_obs = name == "up_spin_density" || name.rfind("magnetization_", 0) == 0;
  if (!qubit_obs) throw std::invalid_argument("observable: unknown observable '" + name + "'");
  require_qubits(space, "observable");
  if (name == "up_spin_density") {
    return {name, averaged([](std::size_t) { return SparseOp::from_entries(2, 2, {{0, 0, 1.0}}); })};
  }
  if (name == "magnetization_x") return {name, averaged([](std::size_t) { return pauli(Pauli::x); })};
  if (name == "magnetization_y") return {name, averaged([](std::size_t) { return pauli(Pauli::y); })};
  if (name == "magnetization_z") return {name, averaged([](std::size_t) { return pauli(Pauli::z); })};
  throw std::invalid_argument("observable: unknown observable '" + name + "'");
}

}  // namespace oqs
