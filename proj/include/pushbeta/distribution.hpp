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

#include "pushbeta/params.hpp"
#include "pushbeta/quadrature.hpp"

#include <cstdint>
#include <functional>
#include <memory>
#include <random>
#include <string_view>
#include <vector>

namespace pushbeta {

struct MeanVariance
{
  double mean;
  double variance;
  /// Set when round-off produced a variance below -1e-12 that was clamped.
  bool clamped = false;
};

/// E[log X], E[log(1 - X)] and E[log push(X)].
struct ExpectedLogs
{
  double e_log_x;
  double e_log_1mx;
  double e_log_push;
};

/// Uniform generator used for sampling.
using Generator = std::mt19937_64;
inline constexpr std::string_view kGeneratorName = "mt19937_64";

/// Uniform draw on the open interval (0, 1) from the top 53 bits.
double uniform_open(Generator &rng);

/// A pushed beta distribution with its normalising integral computed once.
class PushBeta
{
public:
  explicit PushBeta(PushBetaParams params, quadrature::QuadratureConfig config = {});

  PushBetaParams const                &params() const noexcept { return params_; }
  quadrature::QuadratureConfig const  &config() const noexcept { return config_; }
  quadrature::LogIntegralTable const  &table() const noexcept { return *table_; }

  /// log of the integral of the kernel over [0, 1].
  double log_normalizer() const noexcept { return table_->log_total(); }

  double pdf(double x, bool log_scale = false) const;
  double cdf(double x, bool lower_tail = true, bool log_scale = false) const;
  double quantile(double p, bool lower_tail = true, bool log_p = false) const;

  double              draw(Generator &rng) const;
  std::vector<double> sample(std::size_t n, std::uint64_t seed) const;

  double       raw_moment(int k) const;
  MeanVariance mean_variance() const;
  ExpectedLogs expected_logs() const;
  double       entropy_paper() const;

  /// E[g(X)]; g receives x and 1 - x.
  double expectation(std::function<double(double, double)> const &g) const;

private:
  PushBetaParams                                      params_;
  quadrature::QuadratureConfig                        config_;
  std::shared_ptr<quadrature::LogIntegralTable const> table_;
};

double              pdf(double x, PushBetaParams const &params, bool log_scale = false);
double              cdf(double x, PushBetaParams const &params, bool lower_tail = true,
                        bool log_scale = false);
double              quantile(double p, PushBetaParams const &params);
std::vector<double> sample(std::size_t n, PushBetaParams const &params, std::uint64_t seed);
double              raw_moment(int k, PushBetaParams const &params);
MeanVariance        mean_variance(PushBetaParams const &params);
ExpectedLogs        expected_logs(PushBetaParams const &params,
                                  quadrature::QuadratureConfig const &config = {});
double              entropy_paper(PushBetaParams const &params);

/// LPushBeta(x | a, b, g, phi) = RPushBeta(1 - x | b, a, g, phi).
PushBetaParams reflect(PushBetaParams const &params);

}  // namespace pushbeta
