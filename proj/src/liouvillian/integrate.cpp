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

#include "oqs/liouvillian/integrate.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "oqs/liouvillian/liouvillian.hpp"

namespace oqs {

void InvariantLog::merge(const InvariantLog& o) {
  max_trace_defect = std::max(max_trace_defect, o.max_trace_defect);
  max_hermiticity_defect = std::max(max_hermiticity_defect, o.max_hermiticity_defect);
  min_eigenvalue = std::min(min_eigenvalue, o.min_eigenvalue);
  checks += o.checks;
}

EvolutionRecord integrate(const LindbladModel& model, const DensityMatrix& rho0, const IntegrateConfig& cfg,
                          const std::vector<Observable>& observables) {
  if (!(cfg.dt > 0.0)) throw std::invalid_argument("integrate: dt must be positive");
  if (!(cfg.t_final > 0.0) || cfg.n_samples < 1) throw std::invalid_argument("integrate: bad time grid");
  const LindbladGenerator gen(model);
  if (rho0.dim() != gen.dim()) throw DimensionError("integrate: initial state dimension");

  const double interval = cfg.t_final / cfg.n_samples;
  const long steps_per_sample = std::max<long>(1, std::lround(std::ceil(interval / cfg.dt - 1e-9)));
  const double dt = interval / static_cast<double>(steps_per_sample);

  EvolutionRecord rec;
  rec.dt = dt;
  for (const auto& o : observables) rec.observable_names.push_back(o.name);

  DenseMatrix rho = rho0.matrix();
  auto sample = [&](double t) {
    const auto defects = measure_defects(rho);
    rec.invariants.min_eigenvalue = std::min(rec.invariants.min_eigenvalue, defects.min_eigenvalue);
    if (defects.min_eigenvalue < cfg.tolerance.min_eigenvalue) {
      std::ostringstream os;
      os << "integrate: positivity lost at t = " << t << " (min eigenvalue " << defects.min_eigenvalue
         << "); reduce dt";
      throw InvariantError(os.str());
    }
    rec.times.push_back(t);
    std::vector<double> row;
    for (const auto& o : observables) row.push_back(expectation(o.op, rho).real());
    rec.values.push_back(std::move(row));
    if (cfg.store_states) rec.states.emplace_back(rho, cfg.tolerance);
  };

  sample(0.0);
  for (int s = 1; s <= cfg.n_samples; ++s) {
    for (long k = 0; k < steps_per_sample; ++k) {
      const DenseMatrix k1 = gen(rho);
      const DenseMatrix k2 = gen(rho + (0.5 * dt) * k1);
      const DenseMatrix k3 = gen(rho + (0.5 * dt) * k2);
      const DenseMatrix k4 = gen(rho + dt * k3);
      rho += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);

      const double trace_defect = std::abs(rho.trace() - 1.0);
      const double herm_defect = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
      ++rec.invariants.checks;
      rec.invariants.max_trace_defect = std::max(rec.invariants.max_trace_defect, trace_defect);
      rec.invariants.max_hermiticity_defect = std::max(rec.invariants.max_hermiticity_defect, herm_defect);
      if (trace_defect > cfg.tolerance.trace || herm_defect > cfg.tolerance.hermiticity ||
          !std::isfinite(trace_defect)) {
        std::ostringstream os;
        os << "integrate: invariant violated at step " << k << " of sample " << s << " (trace defect "
           << trace_defect << ", hermiticity defect " << herm_defect << "); reduce dt";
        throw InvariantError(os.str());
      }
    }
    sample(s * interval);
  }
  return rec;
}

}  // namespace oqs
