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

#include "vqite/solver.hpp"

#include <cmath>

#include "vqite/errors.hpp"

namespace vqite {

Solution solve_thetadot(const Eigen::MatrixXd& M, const Eigen::VectorXd& V,
                        const RegularizationPolicy& policy) {
  if (M.rows() != M.cols() || M.rows() != V.size()) {
    throw DimensionError("M and V dimensions disagree");
  }
  if (!M.allFinite() || !V.allFinite()) {
    throw NumericalError("non-finite entries in M or V");
  }
  if (!(policy.epsilon > 0.0)) throw ConfigError("epsilon must be positive");

  const Eigen::MatrixXd sym = 0.5 * (M + M.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(sym);
  if (eig.info() != Eigen::Success) throw NumericalError("eigensolve failed");
  const Eigen::VectorXd& w = eig.eigenvalues();
  const Eigen::MatrixXd& u = eig.eigenvectors();

  Solution out;
  out.diagnostics.lambda_min = w.size() ? w.minCoeff() : 0.0;
  out.diagnostics.lambda_max = w.size() ? w.maxCoeff() : 0.0;
  const Eigen::Index n = w.size();

  if (policy.method == RegularizationMethod::Tikhonov) {
    const Eigen::VectorXd shifted = w.array() + policy.epsilon;
    const double scale = std::max(1.0, shifted.cwiseAbs().maxCoeff());
    if (n > 0 && shifted.cwiseAbs().minCoeff() < 1e-13 * scale) {
      throw NumericalError("M + eps I is numerically singular");
    }
    const Eigen::MatrixXd reg = sym + policy.epsilon * Eigen::MatrixXd::Identity(n, n);
    Eigen::LDLT<Eigen::MatrixXd> ldlt(reg);
    if (ldlt.info() != Eigen::Success) throw NumericalError("LDLT factorisation failed");
    out.thetadot = ldlt.solve(V);
    out.inverse = ldlt.solve(Eigen::MatrixXd::Identity(n, n));
    out.inverse = 0.5 * (out.inverse + out.inverse.transpose()).eval();
    out.diagnostics.retained_rank = n;
  } else {
    Eigen::VectorXd inv_w = Eigen::VectorXd::Zero(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      if (w(i) > policy.epsilon) {
        inv_w(i) = 1.0 / w(i);
        ++out.diagnostics.retained_rank;
      }
    }
    out.inverse = u * inv_w.asDiagonal() * u.transpose();
    out.thetadot = u * inv_w.asDiagonal() * (u.transpose() * V);
  }
  if (!out.thetadot.allFinite()) throw NumericalError("non-finite thetadot");
  return out;
}

double condition_number(const Eigen::MatrixXd& M) {
  if (M.rows() == 0) return 1.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(0.5 * (M + M.transpose()),
                                                     Eigen::EigenvaluesOnly);
  const Eigen::VectorXd a = eig.eigenvalues().cwiseAbs();
  const double hi = a.maxCoeff();
  const double lo = a.minCoeff();
  const double floor = static_cast<double>(M.rows()) * 1e-15 * hi;
  if (lo < 1e-300 || lo < floor) return kInfiniteCondition;
  return hi / lo;
}

Step advance(const ParameterVector& theta, const Eigen::VectorXd& thetadot,
             const StepControl& control, double tau_left) {
  if (theta.size() != thetadot.size()) {
    throw DimensionError("theta and thetadot lengths differ");
  }
  if (!thetadot.allFinite()) throw NumericalError("non-finite thetadot; step rejected");
  const double peak = thetadot.size() ? thetadot.cwiseAbs().maxCoeff() : 0.0;
  double dt = control.dt_max;
  if (peak > 0.0) dt = std::min(dt, control.dtheta_max / peak);
  dt = std::min(dt, tau_left);
  return {theta + thetadot * dt, dt};
}

}  // namespace vqite
