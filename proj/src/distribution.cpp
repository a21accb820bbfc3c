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

#include "pushbeta/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace pushbeta {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr int    kMaxQuantileIterations = 400;

}  // namespace

double uniform_open(Generator &rng)
{
  return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
}

PushBeta::PushBeta(PushBetaParams params, quadrature::QuadratureConfig config)
  : params_(params)
  , config_(config)
  , table_(std::make_shared<quadrature::LogIntegralTable const>(params, config))
{}

double PushBeta::pdf(double x, bool log_scale) const
{
  double const lp = quadrature::log_kernel(x, params_) - table_->log_total();
  return log_scale ? lp : std::exp(lp);
}

double PushBeta::cdf(double x, bool lower_tail, bool log_scale) const
{
  if (std::isnan(x))
  {
    return x;
  }
  if (log_scale)
  {
    if (x <= 0.0)
    {
      return lower_tail ? -kInf : 0.0;
    }
    if (x >= 1.0)
    {
      return lower_tail ? 0.0 : -kInf;
    }
    double const part = lower_tail ? table_->log_partial(x) : table_->log_upper(x);
    return std::min(0.0, part - table_->log_total());
  }
  if (x <= 0.0)
  {
    return lower_tail ? 0.0 : 1.0;
  }
  if (x >= 1.0)
  {
    return lower_tail ? 1.0 : 0.0;
  }
  return lower_tail ? table_->probability_below(x) : table_->probability_above(x);
}

double PushBeta::quantile(double p, bool lower_tail, bool log_p) const
{
  if (log_p)
  {
    if (!(p <= 0.0))
    {
      throw std::invalid_argument("log probability must be <= 0");
    }
    p = std::exp(p);
  }
  if (!(p >= 0.0 && p <= 1.0))
  {
    throw std::invalid_argument("probability must lie in [0, 1]");
  }
  // Work on whichever tail holds the smaller probability.
  if (p > 0.5)
  {
    p          = 1.0 - p;
    lower_tail = !lower_tail;
  }
  if (p == 0.0)
  {
    return lower_tail ? 0.0 : 1.0;
  }

  auto const &table  = *table_;
  auto        excess = [&](double x) {
    // Increasing in x for both tails.
    return lower_tail ? table.probability_below(x) - p : p - table.probability_above(x);
  };

  auto [lo, hi] = table.bracket(p, lower_tail);
  double x      = 0.5 * (lo + hi);
  for (int i = 0; i < kMaxQuantileIterations; ++i)
  {
    double const e = excess(x);
    if (std::fabs(e) <= 1e-13 * p)
    {
      return x;
    }
    if (e < 0.0)
    {
      lo = x;
    }
    else
    {
      hi = x;
    }
    if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(std::fabs(x), 1e-300))
    {
      return x;
    }
    double const density = pdf(x);
    double       next    = x - e / density;
    if (!std::isfinite(next) || !(next > lo && next < hi))
    {
      next = 0.5 * (lo + hi);
    }
    x = next;
  }
  return x;
}

double PushBeta::draw(Generator &rng) const
{
  double const u = uniform_open(rng);
  return std::clamp(quantile(u), std::numeric_limits<double>::denorm_min(),
                    std::nextafter(1.0, 0.0));
}

std::vector<double> PushBeta::sample(std::size_t n, std::uint64_t seed) const
{
  Generator           rng(seed);
  std::vector<double> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i)
  {
    out.push_back(draw(rng));
  }
  return out;
}

double PushBeta::raw_moment(int k) const
{
  if (k < 1)
  {
    throw std::invalid_argument("moment order must be a positive integer");
  }
  // For both directions the shifted integral raises alpha only.
  quadrature::LogIntegralTable const shifted(params_.with_alpha(params_.alpha() + k), config_);
  return std::exp(shifted.log_total() - table_->log_total());
}

MeanVariance PushBeta::mean_variance() const
{
  double const m1       = raw_moment(1);
  double const m2       = raw_moment(2);
  MeanVariance out{m1, m2 - m1 * m1, false};
  if (out.variance < 0.0)
  {
    out.clamped  = out.variance < -1e-12;
    out.variance = 0.0;
  }
  return out;
}

double PushBeta::expectation(std::function<double(double, double)> const &g) const
{
  return table_->expectation(g);
}

ExpectedLogs PushBeta::expected_logs() const
{
  double const phi   = params_.phi();
  bool const   right = params_.is_right();
  ExpectedLogs out{};
  out.e_log_x   = expectation([](double x, double) { return std::log(x); });
  out.e_log_1mx = expectation([](double, double y) { return std::log(y); });
  if (phi == 0.0)
  {
    out.e_log_push = 0.0;
  }
  else if (phi == 1.0)
  {
    // push reduces to 1 - x (left) or x (right)
    out.e_log_push = right ? out.e_log_x : out.e_log_1mx;
  }
  else
  {
    out.e_log_push = expectation([phi, right](double x, double y) {
      return right ? std::log1p(-y * phi) : std::log1p(-x * phi);
    });
  }
  return out;
}

double PushBeta::entropy_paper() const
{
  return -expected_logs().e_log_x;
}

double pdf(double x, PushBetaParams const &params, bool log_scale)
{
  return PushBeta(params).pdf(x, log_scale);
}

double cdf(double x, PushBetaParams const &params, bool lower_tail, bool log_scale)
{
  return PushBeta(params).cdf(x, lower_tail, log_scale);
}

double quantile(double p, PushBetaParams const &params)
{
  return PushBeta(params).quantile(p);
}

std::vector<double> sample(std::size_t n, PushBetaParams const &params, std::uint64_t seed)
{
  if (n == 0)
  {
    return {};
  }
  return PushBeta(params).sample(n, seed);
}

double raw_moment(int k, PushBetaParams const &params)
{
  return PushBeta(params).raw_moment(k);
}

MeanVariance mean_variance(PushBetaParams const &params)
{
  return PushBeta(params).mean_variance();
}

ExpectedLogs expected_logs(PushBetaParams const &params, quadrature::QuadratureConfig const &config)
{
  return PushBeta(params, config).expected_logs();
}

double entropy_paper(PushBetaParams const &params)
{
  return PushBeta(params).entropy_paper();
}

PushBetaParams reflect(PushBetaParams const &params)
{
  return {params.beta(), params.alpha(), params.gamma(), params.phi(),
          params.is_right() ? Direction::Left : Direction::Right};
}

}  // namespace pushbeta
