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

// Log-scale integrals of the pushed beta kernel
//
//   H_left(r)  = log int_0^r x^(a-1) (1-x)^(b-1) (1 - x phi)^g dx
//   H_right(r) = log int_0^r x^(a-1) (1-x)^(b-1) (1 - phi + x phi)^g dx
//
// Two evaluation routes are provided. The adaptive route runs globally
// adaptive Gauss-Kronrod (21 point) subdivision on the kernel shifted by its
// maximum in log space. The quantile-midpoint route averages
// exp(g S(q|phi)) over evenly spaced beta quantiles q, which keeps the sample
// points where the kernel has its mass and never leaves log space.

#include "pushbeta/params.hpp"

#include <cstddef>
#include <functional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace pushbeta::quadrature {

enum class Mode
{
  Adaptive,
  QuantileMidpoint,
  AutoFallback
};

struct QuadratureConfig
{
  /// Number of beta quantile nodes used by the midpoint route.
  std::size_t node_count = 1'000'000;
  Mode        mode = Mode::AutoFallback;
  /// Treat a zero, non-finite or inaccurate adaptive result as a failure
  /// rather than reporting it as -inf.
  bool underflow_guard = true;

  void validate() const;
};

struct LogIntegralRequest
{
  double         upper_limit;
  PushBetaParams params;
};

/// Raised when no route produced a trustworthy integral. Distinct from a
/// genuine -inf (empty range).
class QuadratureError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

enum class WeightSide
{
  Left,
  Right
};

/// Relative tolerance targeted by the adaptive route.
inline constexpr double kAdaptiveRelTol = 1e-11;
/// Estimated relative error above which an adaptive result is rejected.
inline constexpr double kFallbackRelError = 1e-6;

/// (a-1) log x + (b-1) log(1-x) + g log(push). Uses 0 * log 0 = 0, so the
/// result is +inf only at a singular endpoint (x = 0 with a < 1, x = 1 with
/// b < 1) and -inf where the kernel vanishes.
double log_kernel(double x, PushBetaParams const &params);

/// S(x|phi) = log(1 - x phi) - log(1 - x). Requires 0 <= x < 1.
double log_slope_ratio(double x, double phi);

/// Beta(a, b) quantiles at probabilities (2i - 1) / 2M, i = 1..M.
std::vector<double> beta_quantile_nodes(double a, double b, std::size_t m);

/// Log weights representing 1{x <= r} (Left) or 1{x >= 1 - r} (Right) on
/// the bins (q[i-1], q[i]], with q[-1] taken as 0.
std::vector<double> log_weights(std::span<double const> nodes, double r, WeightSide side);

double log_sum_exp(std::span<double const> values);

/// H(r) for the request's direction. Throws QuadratureError when every
/// enabled route fails its sanity checks.
double log_integral(LogIntegralRequest const &request, QuadratureConfig const &config = {});

/// Quantile-midpoint estimate of H(r) computed literally from the node,
/// weight and log-sum-exp pieces above.
double log_integral_midpoint(LogIntegralRequest const &request, std::size_t node_count);

/// Cached representation of the kernel integral over [0, 1], from which
/// partial integrals, tail masses and expectations can be read cheaply.
/// Built once per parameter set.
class LogIntegralTable
{
public:
  explicit LogIntegralTable(PushBetaParams const &params, QuadratureConfig const &config = {});

  PushBetaParams const &params() const noexcept { return params_; }
  /// Route that produced the table: Adaptive or QuantileMidpoint.
  Mode method() const noexcept { return method_; }
  double log_total() const noexcept { return log_total_; }
  double estimated_relative_error() const noexcept { return rel_error_; }

  /// log int_0^r kernel.
  double log_partial(double r) const;
  /// log int_r^1 kernel.
  double log_upper(double r) const;

  /// int_0^x pdf and int_x^1 pdf. Each is computed directly, not as the
  /// complement of the other.
  double probability_below(double x) const;
  double probability_above(double x) const;
  /// Mass of pdf over [lo, hi]; lo <= hi.
  double probability_between(double lo, double hi) const;

  /// E[g(X)] for X with density kernel / exp(log_total()). g receives x and
  /// 1 - x, the latter computed without cancellation near x = 1.
  double expectation(std::function<double(double, double)> const &g) const;

  /// Panel [lo, hi] containing the point where the lower (or upper) tail
  /// probability reaches p.
  std::pair<double, double> bracket(double p, bool lower_tail) const;

private:
  struct StoredSegment
  {
    int    kind;
    double length;
    double log_length;
    double power;
    double log_jacobian;
    double t_power;
  };

  // A piece of [lo, hi] carrying scaled mass. Adaptive panels refer to the
  // segment whose coordinate t they were integrated in; midpoint bins use
  // segment -1 and spread their mass uniformly.
  struct Panel
  {
    double lo;
    double hi;
    double mass;
    long   segment;
    double t_lo;
    double t_hi;
  };

  bool        build_adaptive();
  void        build_midpoint(std::size_t node_count);
  void        accumulate();
  std::size_t locate(double x) const;
  double      panel_piece(std::size_t index, double lo, double hi) const;
  double      refined_mass(double lo, double hi, double estimate) const;
  double      scaled_mass_below(double r) const;
  double      scaled_mass_above(double r) const;

  PushBetaParams             params_;
  QuadratureConfig           config_;
  Mode                       method_ = Mode::Adaptive;
  double                     shift_ = 0.0;
  double                     log_total_ = 0.0;
  double                     rel_error_ = 0.0;
  double                     total_ = 0.0;
  std::vector<StoredSegment> segments_;
  std::vector<Panel>         panels_;
  std::vector<double>        cumulative_;
  std::vector<double>        suffix_;
  // Midpoint route: node locations in x space, one per bin.
  std::vector<double>        node_x_;
  std::vector<double>        node_y_;
};

}  // namespace pushbeta::quadrature
