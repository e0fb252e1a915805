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

#include "oqs/variational/ansatz.hpp"

#include <Eigen/Cholesky>
#include <cmath>
#include <stdexcept>

namespace oqs {

std::size_t factor_parameter_count(Index d) {
  if (d < 2) throw DimensionError("factor_parameter_count: local dimension must be >= 2");
  return d == 2 ? 3 : static_cast<std::size_t>(d * d);
}

DensityMatrix decode_factor(Index d, const double* p) {
  if (d == 2) {
    const double norm = std::sqrt(p[0] * p[0] + p[1] * p[1] + p[2] * p[2]);
    const double scale = norm > 0.0 ? std::tanh(norm) / norm : 1.0;
    const double x = scale * p[0], y = scale * p[1], z = scale * p[2];
    DenseMatrix m(2, 2);
    m << 0.5 * (1.0 + z), cplx(0.5 * x, -0.5 * y), cplx(0.5 * x, 0.5 * y), 0.5 * (1.0 - z);
    return DensityMatrix(m);
  }
  DenseMatrix g = DenseMatrix::Zero(d, d);
  std::size_t k = 0;
  for (Index i = 0; i < d; ++i) g(i, i) = p[k++];
  for (Index i = 0; i < d; ++i) {
    for (Index j = 0; j < i; ++j) {
      g(i, j) = cplx(p[k], p[k + 1]);
      k += 2;
    }
  }
  DenseMatrix m = g * g.adjoint();
  const double tr = m.trace().real();
  if (!(tr > 1e-300)) return DensityMatrix::maximally_mixed(d);
  m /= tr;
  return DensityMatrix(0.5 * (m + m.adjoint()));
}

void encode_factor(const DensityMatrix& rho, double* p) {
  const Index d = rho.dim();
  const DenseMatrix& m = rho.matrix();
  if (d == 2) {
    double n[3] = {2.0 * m(1, 0).real(), 2.0 * m(1, 0).imag(), (m(0, 0) - m(1, 1)).real()};
    const double len = std::sqrt(n[0] * n[0] + n[1] * n[1] + n[2] * n[2]);
    const double target = std::min(len, 1.0 - 1e-12);
    const double scale = len > 0.0 ? std::atanh(target) / len : 0.0;
    for (int i = 0; i < 3; ++i) p[i] = scale * n[i];
    return;
  }
  const DenseMatrix reg = m + 1e-14 * DenseMatrix::Identity(d, d);
  const DenseMatrix g = Eigen::LLT<DenseMatrix>(reg).matrixL();
  std::size_t k = 0;
  for (Index i = 0; i < d; ++i) p[k++] = g(i, i).real();
  for (Index i = 0; i < d; ++i) {
    for (Index j = 0; j < i; ++j) {
      p[k++] = g(i, j).real();
      p[k++] = g(i, j).imag();
    }
  }
}

std::size_t VariationalAnsatz::parameter_count() const {
  std::size_t n = 0;
  for (std::size_t f = 0; f < n_factors(); ++f) n += factor_parameter_count(site_dims[f]);
  return n;
}

ProductState VariationalAnsatz::decode() const {
  if (static_cast<std::size_t>(params.size()) != parameter_count()) {
    throw DimensionError("VariationalAnsatz: parameter vector length");
  }
  ProductState out;
  std::size_t off = 0;
  for (std::size_t f = 0; f < n_factors(); ++f) {
    out.sites.push_back(decode_factor(site_dims[f], params.data() + off));
    off += factor_parameter_count(site_dims[f]);
  }
  if (translation_invariant) out.sites.resize(site_dims.size(), out.sites.front());
  return out;
}

VariationalAnsatz VariationalAnsatz::from_state(const ProductState& state, bool translation_invariant) {
  VariationalAnsatz a;
  for (const auto& s : state.sites) a.site_dims.push_back(s.dim());
  if (a.site_dims.empty()) throw std::invalid_argument("VariationalAnsatz: empty state");
  a.translation_invariant = translation_invariant;
  if (translation_invariant) {
    for (auto d : a.site_dims) {
      if (d != a.site_dims.front()) throw DimensionError("VariationalAnsatz: shared factor needs uniform site dims");
    }
  }
  a.params = RealVector::Zero(static_cast<Index>(a.parameter_count()));
  std::size_t off = 0;
  for (std::size_t f = 0; f < a.n_factors(); ++f) {
    encode_factor(state.sites[f], a.params.data() + off);
    off += factor_parameter_count(a.site_dims[f]);
  }
  return a;
}

VariationalAnsatz VariationalAnsatz::random(const LindbladModel& model, bool translation_invariant, RngStream& rng) {
  ProductState mixed;
  for (std::size_t i = 0; i < model.n_sites(); ++i) {
    mixed.sites.push_back(DensityMatrix::maximally_mixed(model.space().site_dim(i)));
  }
  VariationalAnsatz a = from_state(mixed, translation_invariant);
  for (Index k = 0; k < a.params.size(); ++k) a.params[k] = rng.normal();
  return a;
}

}  // namespace oqs
