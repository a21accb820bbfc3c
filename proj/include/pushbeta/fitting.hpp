#pragma once
//------------------------------------------------------------------------------
//
//   Copyright 2026 The pushbeta Authors
//
//   Licensed under the Apache License, Version 2.0 (the "License");
//   you may not use this file except in compliance with the License.
//   You may obtain a copy of the License at
//
//       http://www.apache.org/licenses/LICENSE-2.0
//
//   Unless required by applicable law or agreed to in writing, software
//   distributed under the License is distributed on an "AS IS" BASIS,
//   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//   See the License for the specific language governing permissions and
//   limitations under the License.
//
//------------------------------------------------------------------------------

// Likelihood, score and estimation for IID pushed beta data.

#include "pushbeta/params.hpp"
#include "pushbeta/quadrature.hpp"

#include <optional>
#include <span>
#include <vector>

namespace pushbeta::fitting {

enum class StepControl
{
  BacktrackingLineSearch
};

/// Optimisation runs on (log alpha, log beta, log gamma, logit phi).
struct FitConfig
{
  int                          max_iterations     = 500;
  double                       gradient_tolerance = 1e-6;
  StepControl                  step_control       = StepControl::BacktrackingLineSearch;
  std::optional<double>        fix_phi;
  quadrature::QuadratureConfig quadrature;

  void validate() const;
};

struct Score
{
  double d_alpha;
  double d_beta;
  double d_gamma;
  double d_phi;
};

struct MomResiduals
{
  double r1;  // mean log x      - E[log X]
  double r2;  // mean log(1 - x) - E[log(1 - X)]
  double r3;  // mean log push   - E[log push]
};

struct FitResult
{
  PushBetaParams params;
  double         log_likelihood;
  bool           converged;
  int            iterations;
  /// Euclidean norm of the mean score in the transformed space.
  double gradient_norm;
  /// Log-likelihood after each accepted step, starting with the initial value.
  std::vector<double> trace;
};

/// Sum of log densities. Boundary data give -inf where the density vanishes
/// and a domain error where it is infinite.
double log_likelihood(std::span<double const> data, PushBetaParams const &params,
                      quadrature::QuadratureConfig const &config = {});

Score score(std::span<double const> data, PushBetaParams const &params,
            quadrature::QuadratureConfig const &config = {});

MomResiduals mom_residuals(std::span<double const> data, PushBetaParams const &params,
                           quadrature::QuadratureConfig const &config = {});

/// Plain beta method of moments for (alpha, beta) with gamma = 0.5 and the
/// given phi.
PushBetaParams default_init(std::span<double const> data, Direction direction, double phi = 0.5);

FitResult fit_mle(std::span<double const> data, PushBetaParams const &init,
                  FitConfig const &config = {});

}  // namespace pushbeta::fitting
