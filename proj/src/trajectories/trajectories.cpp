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

#include "oqs/trajectories/trajectories.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace oqs {

void TrajectoryConfig::validate() const {
  if (trajectories < 1) throw std::invalid_argument("TrajectoryConfig: M must be >= 1");
  if (!(dt > 0.0)) throw std::invalid_argument("TrajectoryConfig: dt must be positive");
  if (!(t_final > 0.0) || n_samples < 1) throw std::invalid_argument("TrajectoryConfig: bad time grid");
  if (!(jump_time_tol > 0.0 && jump_time_tol <= 1e-2)) {
    throw std::invalid_argument("TrajectoryConfig: jump_time_tol must lie in (0, 1e-2]");
  }
}

SparseOp effective_nh_hamiltonian(const LindbladModel& model) {
  SparseOp h = model.hamiltonian();
  for (const auto& c : model.jumps()) h -= (c.dagger() * c) * cplx(0.0, 0.5);
  return h;
}

TrajectorySimulator::TrajectorySimulator(const LindbladModel& model)
    : hamiltonian_(model.hamiltonian()), h_nh_(effective_nh_hamiltonian(model)) {
  for (const auto& c : model.jumps()) {
    if (c.nnz() == 0) continue;
    jumps_.push_back(c);
    jumps_dag_jumps_.push_back(c.dagger() * c);
  }
}

Vector TrajectorySimulator::apply_nh(const Vector& psi) const { return cplx(0.0, -1.0) * (h_nh_ * psi); }

Vector TrajectorySimulator::rk4(const Vector& psi, double dt) const {
  const Vector k1 = apply_nh(psi);
  const Vector k2 = apply_nh(psi + (0.5 * dt) * k1);
  const Vector k3 = apply_nh(psi + (0.5 * dt) * k2);
  const Vector k4 = apply_nh(psi + dt * k3);
  return psi + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

// Root of f(tau) = log|psi(tau)|^2 - log r on (0, max_tau], with psi(tau) a
// single RK4 step from the last accepted state. Illinois-style secant on the
// log-norm, then bisection if it has not converged after 50 iterates.
double TrajectorySimulator::solve_jump_time(const Vector& psi, double max_tau, double r, double tol,
                                            double& norm2) const {
  const double log_r = std::log(r);
  auto f = [&](double tau, double& n2) {
    n2 = rk4(psi, tau).squaredNorm();
    return std::log(n2) - log_r;
  };
  double a = 0.0;
  double fa = std::log(psi.squaredNorm()) - log_r;
  double b = max_tau;
  double n2b = 0.0;
  double fb = f(b, n2b);
  auto converged = [&](double n2) { return std::abs(n2 - r) <= tol * r; };
  if (converged(n2b)) {
    norm2 = n2b;
    return b;
  }
  int side = 0;
  for (int it = 0; it < 50; ++it) {
    const double tau = b - fb * (b - a) / (fb - fa);
    double n2 = 0.0;
    const double ft = f(tau, n2);
    if (converged(n2)) {
      norm2 = n2;
      return tau;
    }
    if (ft > 0.0) {
      a = tau;
      fa = ft;
      if (side == 1) fb *= 0.5;
      side = 1;
    } else {
      b = tau;
      fb = ft;
      if (side == -1) fa *= 0.5;
      side = -1;
    }
  }
  for (int it = 0; it < 200; ++it) {
    const double tau = 0.5 * (a + b);
    double n2 = 0.0;
    const double ft = f(tau, n2);
    if (converged(n2) || b - a < 1e-300) {
      norm2 = n2;
      return tau;
    }
    if (ft > 0.0) a = tau;
    else b = tau;
  }
  norm2 = rk4(psi, b).squaredNorm();
  return b;
}

namespace {

struct TimeGrid {
  double interval;
  long steps;
  double dt;
};

TimeGrid make_grid(const TrajectoryConfig& cfg) {
  const double interval = cfg.t_final / cfg.n_samples;
  const long steps = std::max<long>(1, std::lround(std::ceil(interval / cfg.dt - 1e-9)));
  return {interval, steps, interval / static_cast<double>(steps)};
}

std::vector<double> measure(const Vector& psi, const std::vector<Observable>& observables) {
  const Vector unit = psi.normalized();
  std::vector<double> row;
  row.reserve(observables.size());
  for (const auto& o : observables) row.push_back(expectation(o.op, unit).real());
  return row;
}

}  // namespace

TrajectoryResult TrajectorySimulator::jump(const Vector& psi0, const TrajectoryConfig& cfg, RngStream& rng,
                                           const std::vector<Observable>& observables) const {
  cfg.validate();
  if (psi0.size() != dim()) throw DimensionError("jump_trajectory: initial state dimension");
  if (std::abs(psi0.squaredNorm() - 1.0) > 1e-10) throw std::invalid_argument("jump_trajectory: psi0 not normalized");
  const auto grid = make_grid(cfg);

  TrajectoryResult res;
  Vector psi = psi0;
  double r = rng.uniform();
  res.times.push_back(0.0);
  res.samples.push_back(measure(psi, observables));
  double t = 0.0;
  std::vector<double> probs(jumps_.size());
  for (int s = 1; s <= cfg.n_samples; ++s) {
    for (long k = 0; k < grid.steps; ++k) {
      double remaining = grid.dt;
      while (remaining > 0.0) {
        Vector next = rk4(psi, remaining);
        if (next.squaredNorm() >= r || jumps_.empty()) {
          psi = std::move(next);
          break;
        }
        double norm2 = 0.0;
        const double tau = solve_jump_time(psi, remaining, r, cfg.jump_time_tol, norm2);
        psi = rk4(psi, tau);
        const double jump_time = t + static_cast<double>(k) * grid.dt + (grid.dt - remaining) + tau;
        remaining -= tau;

        double total = 0.0;
        for (std::size_t j = 0; j < jumps_.size(); ++j) {
          probs[j] = expectation(jumps_dag_jumps_[j], psi).real();
          total += probs[j];
        }
        if (!(total > 1e-300)) {
          std::ostringstream os;
          os << "jump_trajectory: all channel probabilities vanish at t = " << jump_time << " (state annihilated)";
          throw std::runtime_error(os.str());
        }
        double psum = 0.0;
        for (auto& p : probs) {
          p /= total;
          psum += p;
        }
        const double u = rng.uniform();
        std::size_t channel = jumps_.size() - 1;
        double acc = 0.0;
        for (std::size_t j = 0; j < probs.size(); ++j) {
          acc += probs[j];
          if (u < acc) {
            channel = j;
            break;
          }
        }
        res.jumps.push_back({jump_time, channel, std::abs(norm2 - r) / r, psum});
        psi = jumps_[channel] * psi;
        psi.normalize();
        r = rng.uniform();
      }
    }
    t = s * grid.interval;
    res.times.push_back(t);
    res.samples.push_back(measure(psi, observables));
  }
  res.final_state = psi.normalized();
  return res;
}

TrajectoryResult TrajectorySimulator::qsd(const Vector& psi0, const TrajectoryConfig& cfg, RngStream& rng,
                                          const std::vector<Observable>& observables) const {
  cfg.validate();
  if (psi0.size() != dim()) throw DimensionError("qsd_trajectory: initial state dimension");
  if (std::abs(psi0.squaredNorm() - 1.0) > 1e-10) throw std::invalid_argument("qsd_trajectory: psi0 not normalized");
  const auto grid = make_grid(cfg);
  const double dt = grid.dt;

  TrajectoryResult res;
  Vector psi = psi0;
  res.times.push_back(0.0);
  res.samples.push_back(measure(psi, observables));
  std::vector<Vector> c_psi(jumps_.size());
  for (int s = 1; s <= cfg.n_samples; ++s) {
    for (long k = 0; k < grid.steps; ++k) {
      Vector drift = cplx(0.0, -1.0) * (hamiltonian_ * psi);
      Vector update = psi;
      const auto dw = wiener_increments(rng, jumps_.size(), dt);
      for (std::size_t j = 0; j < jumps_.size(); ++j) {
        c_psi[j] = jumps_[j] * psi;
        const cplx mean = psi.dot(c_psi[j]);
        drift -= 0.5 * (jumps_dag_jumps_[j] * psi - 2.0 * std::conj(mean) * c_psi[j] + std::norm(mean) * psi);
        update += dw[j] * (c_psi[j] - mean * psi);
      }
      update += dt * drift;
      const double defect = std::abs(update.squaredNorm() - 1.0);
      res.max_norm_defect = std::max(res.max_norm_defect, defect);
      if (defect > 1e-2 || !std::isfinite(defect)) {
        std::ostringstream os;
        os << "qsd_trajectory: norm defect " << defect << " in one step; dt too large";
        throw std::runtime_error(os.str());
      }
      psi = update.normalized();
    }
    res.times.push_back(s * grid.interval);
    res.samples.push_back(measure(psi, observables));
  }
  res.final_state = psi;
  return res;
}

TrajectoryResult TrajectorySimulator::run(const Vector& psi0, const TrajectoryConfig& cfg, RngStream& rng,
                                          const std::vector<Observable>& observables) const {
  return cfg.unraveling == Unraveling::jump ? jump(psi0, cfg, rng, observables) : qsd(psi0, cfg, rng, observables);
}

TrajectoryResult jump_trajectory(const LindbladModel& model, const Vector& psi0, const TrajectoryConfig& cfg,
                                 RngStream& rng, const std::vector<Observable>& observables) {
  return TrajectorySimulator(model).jump(psi0, cfg, rng, observables);
}

TrajectoryResult qsd_trajectory(const LindbladModel& model, const Vector& psi0, const TrajectoryConfig& cfg,
                                RngStream& rng, const std::vector<Observable>& observables) {
  return TrajectorySimulator(model).qsd(psi0, cfg, rng, observables);
}

}  // namespace oqs
