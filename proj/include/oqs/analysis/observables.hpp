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

#include <string>
#include <vector>

#include "oqs/core/hilbert_space.hpp"
#include "oqs/liouvillian/integrate.hpp"
#include "oqs/meanfield/meanfield.hpp"
#include "oqs/models/models.hpp"

namespace oqs {

enum class Axis { x, y, z };

/// (1 + <sz>) / 2 averaged over sites; every site must be a qubit.
double up_spin_density(const DenseMatrix& rho, const HilbertSpace& space);
double up_spin_density(const ProductState& state);
/// <s_axis> averaged over qubit sites.
double magnetization(const DenseMatrix& rho, const HilbertSpace& space, Axis axis);
/// <n> averaged over sites (Fock basis on every site).
double boson_density(const DenseMatrix& rho, const HilbertSpace& space);
/// tr rho^2.
double purity(const DenseMatrix& rho);
/// (<M^2> - <M>^2) / N with M = sum_i sz_i.
double magnetization_susceptibility(const DenseMatrix& rho, const HilbertSpace& space);

/// Names accepted by observable_operator.
std::vector<std::string> observable_names();
/// Site-averaged operator: up_spin_density, magnetization_{x,y,z},
/// boson_density, or the single-site forms "sz:<i>", "n:<i>".
Observable observable_operator(const LindbladModel& model, const std::string& name);

}  // namespace oqs
