// Copyright 2026 The vqite Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "vqite/allocator.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>

#include "vqite/errors.hpp"

namespace vqite {

Eigen::MatrixXd jacobian_thetadot_wrt_V(const Eigen::MatrixXd& inverse) { return inverse; }

ThetaDotMJacobian::ThetaDotMJacobian(const Eigen::MatrixXd& inverse,
                                     const Eigen::VectorXd& thetadot)
    : inverse_(inverse), thetadot_(thetadot) {
  if (inverse.rows() != thetadot.size() || inverse.cols() != thetadot.size()) {
    throw DimensionError("inverse and thetadot sizes differ");
  }
}

Eigen::VectorXd ThetaDotMJacobian::column(Eigen::Index a, Eigen::Index b) const {
  return -(inverse_.col(a) * thetadot_(b) + inverse_.col(b) * thetadot_(a));
}

double ThetaDotMJacobian::operator()(Eigen::Index a, Eigen::Index b, Eigen::Index mu) const {
  return -(inverse_(mu, a) * thetadot_(b) + inverse_(mu, b) * thetadot_(a));
}

std::vector<double> chain_to_raw(const Eigen::MatrixXd& dQ_dM, const Eigen::VectorXd& dQ_dV,
                                 const Eigen::VectorXd& b,
                                 const std::vector<RawMeasurementId>& ids) {
  const Eigen::MatrixXd sym = dQ_dM + dQ_dM.transpose();
  std::vector<double> out(ids.size(), 0.0);
  for (const auto& id : ids) {
    double d = 0.0;
    switch (id.kind) {
      case MeasurementKind::D:
        d = id.mu == id.nu ? dQ_dM(id.mu, id.mu) : sym(id.mu, id.nu);
        break;
      case MeasurementKind::O:
        d = -sym.row(id.mu).dot(b);
        break;
      case MeasurementKind::Energy:
        d = (id.shift == Shift::Plus ? -0.5 : 0.5) * dQ_dV(id.mu);
        break;
    }
    out[id.index] = d;
  }
  return out;
}

Eigen::MatrixXd raw_jacobian_thetadot(const Eigen::MatrixXd& inverse,
                                      const Eigen::VectorXd& thetadot,
                                      const Eigen::VectorXd& b,
                                      const std::vector<RawMeasurementId>& ids) {
  const Eigen::Index n = thetadot.size();
  Eigen::MatrixXd jac(n, static_cast<Eigen::Index>(ids.size()));
  const double b_dot_td = b.dot(thetadot);
  const Eigen::VectorXd inv_b = inverse * b;
  for (const auto& id : ids) {
    auto col = jac.col(static_cast<Eigen::Index>(id.index));
    switch (id.kind) {
      case MeasurementKind::D:
        if (id.mu == id.nu) {
          col = -inverse.col(id.mu) * thetadot(id.mu);
        } else {
          col = -(inverse.col(id.mu) * thetadot(id.nu) + inverse.col(id.nu) * thetadot(id.mu));
        }
        break;
      case MeasurementKind::O:
        // M = Re D - b b^T  =>  d thetadot / d b_g = Minv (e_g (b.td) + b td_g)
        col = inverse.col(id.mu) * b_dot_td + inv_b * thetadot(id.mu);
        break;
      case MeasurementKind::Energy:
        col = (id.shift == Shift::Plus ? -0.5 : 0.5) * inverse.col(id.mu);
        break;
    }
  }
  return jac;
}

std::vector<double> raw_gradient_mclachlan(const Eigen::VectorXd& thetadot,
                                           const Eigen::VectorXd& b,
                                           const std::vector<RawMeasurementId>& ids) {
  // L2 = -V^T Minv V + 2 var(H):  dL2/dM_ab = td_a td_b,  dL2/dV = -2 td.
  const Eigen::MatrixXd dM = thetadot * thetadot.transpose();
  const Eigen::VectorXd dV = -2.0 * thetadot;
  return chain_to_raw(dM, dV, b, ids);
}

std::vector<double> compute_weights(CostKind kind, const WeightInputs& in) {
  if (in.ids == nullptr || in.variances == nullptr) {
    throw ConfigError("weight inputs need measurement ids and variances");
  }
  const auto& ids = *in.ids;
  const auto& var = *in.variances;
  if (var.size() != ids.size()) throw DimensionError("variance list length mismatch");
  std::vector<double> p(ids.size(), 0.0);

  switch (kind) {
    case CostKind::ThetaDot: {
      const Eigen::MatrixXd jac = raw_jacobian_thetadot(in.inverse, in.thetadot, in.b, ids);
      for (std::size_t k = 0; k < ids.size(); ++k) {
        p[k] = jac.col(static_cast<Eigen::Index>(k)).norm() * std::sqrt(var[k]);
      }
      break;
    }
    case CostKind::Wavefunction: {
      if (in.sd.rows() != in.thetadot.size() || in.sd.cols() != in.thetadot.size()) {
        throw DimensionError("wavefunction cost needs the tangent-overlap matrix");
      }
      const Eigen::MatrixXd jac = raw_jacobian_thetadot(in.inverse, in.thetadot, in.b, ids);
      const Eigen::MatrixXd re_sd = in.sd.real();
      const Eigen::MatrixXd sd_jac = re_sd * jac;
      for (std::size_t k = 0; k < ids.size(); ++k) {
        const auto c = static_cast<Eigen::Index>(k);
        double q = jac.col(c).dot(sd_jac.col(c));
        if (q < -1e-10 * std::max(1.0, jac.col(c).squaredNorm())) {
          throw NumericalError("negative tangent-space norm in wavefunction cost");
        }
        p[k] = std::sqrt(std::max(0.0, q)) * std::sqrt(var[k]);
      }
      break;
    }
    case CostKind::McLachlan: {
      const auto g = raw_gradient_mclachlan(in.thetadot, in.b, ids);
      for (std::size_t k = 0; k < ids.size(); ++k) p[k] = std::abs(g[k]) * std::sqrt(var[k]);
      break;
    }
  }
  for (double v : p) {
    if (!std::isfinite(v)) throw NumericalError("non-finite allocation weight");
  }
  return p;
}

std::vector<double> allocate_shots_sorted(const std::vector<double>& sorted_p, double minimum,
                                          double total) {
  const std::size_t n = sorted_p.size();
  std::vector<double> shots(n, 0.0);
  if (n == 0) return shots;
  const double sum = std::accumulate(sorted_p.begin(), sorted_p.end(), 0.0);
  std::size_t count = 0;
  for (std::size_t k = 0; k < n; ++k) {
    shots[k] = sum > 0.0 ? sorted_p[k] * total / sum : total / static_cast<double>(n);
    if (shots[k] < minimum) ++count;
  }
  if (count == 0) return shots;
  std::fill(shots.begin(), shots.begin() + static_cast<std::ptrdiff_t>(count), minimum);
  if (count < n) {
    const std::vector<double> rest(sorted_p.begin() + static_cast<std::ptrdiff_t>(count),
                                   sorted_p.end());
    const auto tail =
        allocate_shots_sorted(rest, minimum, total - static_cast<double>(count) * minimum);
    std::copy(tail.begin(), tail.end(), shots.begin() + static_cast<std::ptrdiff_t>(count));
  }
  return shots;
}

std::vector<std::int64_t> allocate_shots(const std::vector<double>& p, std::int64_t minimum,
                                         std::int64_t total) {
  const std::size_t n = p.size();
  if (minimum < 1) throw ConfigError("minimum shots per measurement must be >= 1");
  if (total < static_cast<std::int64_t>(n) * minimum) {
    throw ConfigError("infeasible budget: total " + std::to_string(total) + " < " +
                      std::to_string(n) + " x minimum " + std::to_string(minimum));
  }
  for (double v : p) {
    if (!(v >= 0.0) || !std::isfinite(v)) throw ConfigError("weights must be finite and >= 0");
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return p[a] < p[b]; });
  std::vector<double> sorted(n);
  for (std::size_t k = 0; k < n; ++k) sorted[k] = p[order[k]];
  const auto cont =
      allocate_shots_sorted(sorted, static_cast<double>(minimum), static_cast<double>(total));

  std::vector<std::int64_t> shots(n);
  std::vector<double> frac(n);
  std::int64_t assigned = 0;
  for (std::size_t k = 0; k < n; ++k) {
    const double fl = std::floor(cont[k] + 1e-9);
    shots[k] = std::max<std::int64_t>(minimum, static_cast<std::int64_t>(fl));
    frac[k] = cont[k] - static_cast<double>(shots[k]);
    assigned += shots[k];
  }
  std::int64_t remainder = total - assigned;
  if (remainder < 0) throw NumericalError("shot rounding overshot the budget");
  std::vector<std::size_t> by_frac(n);
  std::iota(by_frac.begin(), by_frac.end(), std::size_t{0});
  std::stable_sort(by_frac.begin(), by_frac.end(), [&](std::size_t a, std::size_t b) {
    if (frac[a] != frac[b]) return frac[a] > frac[b];
    return a > b;  // sorted ascending in p, so larger index = larger p
  });
  for (std::size_t k = 0; remainder > 0; k = (k + 1) % n) {
    ++shots[by_frac[k]];
    --remainder;
  }

  std::vector<std::int64_t> out(n);
  for (std::size_t k = 0; k < n; ++k) out[order[k]] = shots[k];
  return out;
}

ShotPlan make_shot_plan(const std::vector<double>& p, std::int64_t average, double r) {
  if (!(r > 0.0 && r <= 1.0)) throw ConfigError("r must lie in (0, 1]");
  if (average < 1) throw ConfigError("average shots must be positive");
  ShotPlan plan;
  plan.average = average;
  plan.total = average * static_cast<std::int64_t>(p.size());
  plan.minimum = std::max<std::int64_t>(1, std::llround(r * static_cast<double>(average)));
  plan.r = r;
  plan.shots = allocate_shots(p, plan.minimum, plan.total);
  return plan;
}

void write_allocation_header(std::ostream& os) { os << "step,tau,kappa,kind,p,shots\n"; }

void write_allocation_csv(std::ostream& os, const std::vector<RawMeasurementId>& ids,
                          const std::vector<double>& p, const ShotPlan& plan, int step,
                          double tau) {
  const auto old = os.precision(12);
  for (const auto& id : ids) {
    os << step << ',' << tau << ',' << id.index << ',' << id.label() << ',' << p[id.index]
       << ',' << plan.shots[id.index] << '\n';
  }
  os.precision(old);
}

}  // namespace vqite
