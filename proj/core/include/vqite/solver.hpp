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
#include <limits>

#include "vqite/ansatz.hpp"

namespace vqite {

enum class RegularizationMethod { Tikhonov, EigenCut };

struct RegularizationPolicy {
  RegularizationMethod method = RegularizationMethod::Tikhonov;
  double epsilon = 1e-2;
};

struct StepControl {
  double dt_max = 0.02;
  double dtheta_max = 0.05;
  double tau_final = 5.5;
};

struct SolveDiagnostics {
  double lambda_min = 0.0;
  double lambda_max = 0.0;
  /// Number of eigen-directions kept (all of them for Tikhonov).
  Eigen::Index retained_rank = 0;
};

struct Solution {
  Eigen::VectorXd thetadot;
  /// The linear map actually applied to V: (M + eps I)^{-1} for Tikhonov, the
  /// truncated spectral pseudo-inverse for eigenvalue cutting.
  Eigen::MatrixXd inverse;
  SolveDiagnostics diagnostics;
};

/// Regularised solution of M thetadot = V. M is symmetrised first.
/// Throws NumericalError when M + eps I is singular (Tikhonov) or when inputs
/// are not finite.
Solution solve_thetadot(const Eigen::MatrixXd& M, const Eigen::VectorXd& V,
                        const RegularizationPolicy& policy);

inline constexpr double kInfiniteCondition = std::numeric_limits<double>::infinity();

/// max|lambda| / min|lambda|. Returns kInfiniteCondition when the smallest
/// magnitude is below 1e-300 or below n * 1e-15 * max|lambda| (numerically
/// zero for double precision).
double condition_number(const Eigen::MatrixXd& M);

struct Step {
  ParameterVector theta;
  double dt = 0.0;
};

/// dt = min(dt_max, dtheta_max / max|thetadot|, tau_left) and
/// theta_next = theta + thetadot dt. Pass tau_left = infinity to disable the
/// horizon clip. Throws NumericalError for non-finite thetadot.
Step advance(const ParameterVector& theta, const Eigen::VectorXd& thetadot,
             const StepControl& control,
             double tau_left = std::numeric_limits<double>::infinity());

}  // namespace vqite
