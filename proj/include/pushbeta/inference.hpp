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

// Bayesian inference for contaminated binary sampling. Two observation
// models are supported:
//
//   PrimaryConjunction: X ~ Bern(theta phi),       conjugate prior LPushBeta
//   AbsenceConjunction: X ~ Bern((1 - theta) phi), conjugate prior RPushBeta
//
// with phi known.

#include "pushbeta/params.hpp"

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace pushbeta::inference {

enum class ModelVariant
{
  PrimaryConjunction,
  AbsenceConjunction
};

std::string_view to_string(ModelVariant v);

/// Push direction of the conjugate family for a variant.
Direction conjugate_direction(ModelVariant v);

/// Sufficient statistic of a contaminated Bernoulli sample.
class BinarySample
{
public:
  BinarySample(std::uint64_t n, std::uint64_t sum);

  std::uint64_t n() const noexcept { return n_; }
  std::uint64_t sum() const noexcept { return sum_; }

private:
  std::uint64_t n_;
  std::uint64_t sum_;
};

/// Probability of observing a one under the variant.
double success_probability(double theta, double phi, ModelVariant v);

/// Conjugate update. The prior direction must match the variant.
PushBetaParams posterior(PushBetaParams const &prior, BinarySample const &sample, ModelVariant v);

/// KL divergence of the n-trial sampling distribution at (theta, phi) from
/// the one at (theta0, phi0).
double kl_divergence(double theta0, double phi0, double theta, double phi, std::uint64_t n,
                     ModelVariant v);

/// Clamped minimiser of kl_divergence over theta in [0, 1]. Requires phi > 0.
double kl_minimizer(double theta0, double phi0, double phi, ModelVariant v);

struct KlProfile
{
  double        theta0;
  double        phi0;
  double        phi;
  std::uint64_t n;
  double        theta_star;
  ModelVariant  variant;

  double operator()(double theta) const
  {
    return kl_divergence(theta0, phi0, theta, phi, n, variant);
  }
};

KlProfile kl_profile(double theta0, double phi0, double phi, std::uint64_t n, ModelVariant v);

struct TrajectoryRecord
{
  std::uint32_t replication;
  std::uint64_t n;
  double        post_mean;
  double        post_sd;
  double        theta_star;
  double        abs_err;
};

struct ConsistencySetup
{
  double                     theta0;
  double                     phi0;
  double                     phi;
  ModelVariant               variant;
  PushBetaParams             prior;
  std::vector<std::uint64_t> n_schedule;  // strictly increasing
  std::uint32_t              replications;
  std::uint64_t              seed;
};

/// Simulates sequential data from (theta0, phi0), updates the posterior under
/// the analyst's phi at each n in the schedule, and records its mean and sd.
/// Each replication uses its own generator seeded from (seed, replication).
std::vector<TrajectoryRecord> simulate_consistency(ConsistencySetup const &setup);

}  // namespace pushbeta::inference
