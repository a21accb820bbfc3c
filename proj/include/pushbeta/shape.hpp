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

// Shape of the pushed beta density. The derivative of the log-density is
// Q(x) / (x (1 - x) push(x)) with Q quadratic, so the sign pattern of Q on
// (0, 1) determines monotonicity and quasi-concavity exactly.

#include "pushbeta/params.hpp"
#include "pushbeta/quadrature.hpp"

#include <optional>
#include <string_view>
#include <vector>

namespace pushbeta::shape {

/// Q(x) = c0 + c1 x + c2 x^2.
struct QuadraticCoeffs
{
  double c0;
  double c1;
  double c2;

  double operator()(double x) const noexcept { return c0 + (c1 + c2 * x) * x; }
};

enum class Classification
{
  Increasing,
  Decreasing,
  QuasiConcave,
  QuasiConvex,
  NeitherUpDownUp,
  NeitherDownUpDown,
  Flat
};

std::string_view to_string(Classification c);

enum class CriticalKind
{
  Mode,
  Antimode
};

std::string_view to_string(CriticalKind k);

struct CriticalPoint
{
  double       x;
  CriticalKind kind;
};

struct ShapeReport
{
  Classification             classification;
  std::vector<CriticalPoint> interior_critical_points;  // ascending
  QuadraticCoeffs            quadratic_coeffs;
  int                        sign_at_zero;  // sign of Q(0)
  int                        sign_at_one;   // sign of Q(1)
};

/// Roots closer than this to 0 or 1 are not counted as interior.
inline constexpr double kInteriorMargin = 1e-12;

QuadraticCoeffs quadratic_coeffs(PushBetaParams const &params);

ShapeReport classify_shape(PushBetaParams const &params);

struct GammaThresholds
{
  double gamma_low;
  double gamma_high;
};

/// Values of gamma at which the left-push quadratic has a double root, for
/// alpha > 1, beta < 1, 0 < phi < 1. Above gamma_high the density has two
/// interior turning points once they fall inside (0, 1).
GammaThresholds gamma_thresholds(double alpha, double beta, double phi);

/// Location of the density maximum over [0, 1]. Empty when the maximum is
/// not unique (flat density, or equal endpoint maxima).
std::optional<double> mode(PushBetaParams const &params);

struct Interval
{
  double lo;
  double hi;
};

struct HdrRegion
{
  std::vector<Interval> intervals;    // disjoint, ascending
  double                probability;  // mass actually covered
  double                log_density_level;
};

/// Highest density region: the superlevel set {x : pdf(x) >= c} with
/// probability cover_prob.
HdrRegion hdr(double cover_prob, PushBetaParams const &params,
              quadrature::QuadratureConfig const &config = {});

}  // namespace pushbeta::shape
