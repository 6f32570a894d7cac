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

#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include "vqite/shot_model.hpp"

namespace vqite {

/// Which propagated variance the shot allocation minimises.
enum class CostKind {
  ThetaDot,      // sum_mu var(thetadot_mu)
  Wavefunction,  // variance of the next-step state vector
  McLachlan,     // variance of the minimised McLachlan distance
};

/// d thetadot / d V = M~^{-1}, where M~^{-1} is the map the solver applied.
Eigen::MatrixXd jacobian_thetadot_wrt_V(const Eigen::MatrixXd& inverse);

/// d thetadot_mu / d M_{ab} for a symmetric perturbation that moves M_{ab}
/// and M_{ba} together:
///   -(Minv_{mu a} thetadot_b + Minv_{mu b} thetadot_a).
/// On the diagonal this is the response to adding the perturbation twice.
class ThetaDotMJacobian {
 public:
  ThetaDotMJacobian(const Eigen::MatrixXd& inverse, const Eigen::VectorXd& thetadot);

  /// Column over mu for the pair (a, b).
  Eigen::VectorXd column(Eigen::Index a, Eigen::Index b) const;
  double operator()(Eigen::Index a, Eigen::Index b, Eigen::Index mu) const;

 private:
  const Eigen::MatrixXd& inverse_;
  Eigen::VectorXd thetadot_;
};

/// Chains derivatives of a scalar Q with respect to the entries of M (each
/// entry treated independently, dQ_dM(a, b) = dQ/dM_{ab}) and V onto the raw
/// measurements, in canonical order:
///   D(mu,nu):  dQ/dM_{mu nu} + dQ/dM_{nu mu}  (only the first for mu == nu)
///   O(mu):     -sum_g (dQ/dM_{mu g} + dQ/dM_{g mu}) b_g,   b = Im O
///   E+-(mu):   -+ (1/2) dQ/dV_mu for both bases.
std::vector<double> chain_to_raw(const Eigen::MatrixXd& dQ_dM, const Eigen::VectorXd& dQ_dV,
                                 const Eigen::VectorXd& b,
                                 const std::vector<RawMeasurementId>& ids);

/// Jacobian of thetadot with respect to every raw measurement; column kappa
/// follows the canonical order of `ids`.
Eigen::MatrixXd raw_jacobian_thetadot(const Eigen::MatrixXd& inverse,
                                      const Eigen::VectorXd& thetadot,
                                      const Eigen::VectorXd& b,
                                      const std::vector<RawMeasurementId>& ids);

/// Minimised McLachlan distance as seen by the solver, -V^T Minv V, and its
/// raw-measurement gradient. The 2 var(H) term does not depend on M or V.
std::vector<double> raw_gradient_mclachlan(const Eigen::VectorXd& thetadot,
                                           const Eigen::VectorXd& b,
                                           const std::vector<RawMeasurementId>& ids);

struct WeightInputs {
  const std::vector<RawMeasurementId>* ids = nullptr;
  const std::vector<double>* variances = nullptr;  // sigma^2 per measurement
  Eigen::MatrixXd inverse;
  Eigen::VectorXd thetadot;
  Eigen::VectorXd b;
  /// Tangent overlaps at the predicted next parameters; Wavefunction only.
  Eigen::MatrixXcd sd;
};

/// p_kappa for the chosen cost. The overall dt^2 of the wavefunction cost is
/// dropped since it does not change the allocation.
std::vector<double> compute_weights(CostKind kind, const WeightInputs& in);

/// Algorithm over weights sorted ascending: proportional split of `total`;
/// entries below `minimum` are pinned to it and the rest is re-split
/// recursively. Continuous result in the same (sorted) order.
std::vector<double> allocate_shots_sorted(const std::vector<double>& sorted_p, double minimum,
                                          double total);

/// Integer allocation in the caller's order. Floors the continuous solution and
/// hands the remainder one shot at a time to the largest fractional parts
/// (ties to larger p). Throws ConfigError when total < n * minimum.
std::vector<std::int64_t> allocate_shots(const std::vector<double>& p, std::int64_t minimum,
                                         std::int64_t total);

/// M_tot = average * n, M_min = max(1, round(r * average)).
ShotPlan make_shot_plan(const std::vector<double>& p, std::int64_t average, double r);

/// Header line of the allocation dump.
void write_allocation_header(std::ostream& os);

/// One block of rows "step,tau,kappa,kind,p,shots" for the plan chosen at
/// `step`.
void write_allocation_csv(std::ostream& os, const std::vector<RawMeasurementId>& ids,
                          const std::vector<double>& p, const ShotPlan& plan, int step,
                          double tau);

}  // namespace vqite
