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

#include "pushbeta/fitting.hpp"

#include "pushbeta/distribution.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace pushbeta::fitting {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_data(std::span<double const> data)
{
  if (data.empty())
  {
    throw std::invalid_argument("data must not be empty");
  }
  for (double x : data)
  {
    if (!(x >= 0.0 && x <= 1.0))
    {
      throw std::invalid_argument("data must lie in [0, 1]");
    }
  }
}

// log of the push factor at x, with y = 1 - x.
double log_push(double x, double y, PushBetaParams const &p)
{
  return p.is_right() ? std::log1p(-y * p.phi()) : std::log1p(-x * p.phi());
}

double sum_of(std::span<double const> data, double (*f)(double))
{
  double s = 0.0;
  for (double x : data)
  {
    s += f(x);
  }
  return s;
}

double logit(double p)
{
  return std::log(p) - std::log1p(-p);
}

double logistic(double u)
{
  return 1.0 / (1.0 + std::exp(-u));
}

// Coordinates of the unconstrained optimisation space.
struct Transform
{
  Direction             direction;
  std::optional<double> fixed_phi;

  std::size_t dim() const { return fixed_phi ? 3 : 4; }

  std::array<double, 4> to_u(PushBetaParams const &p) const
  {
    return {std::log(p.alpha()), std::log(p.beta()), std::log(p.gamma()),
            fixed_phi ? 0.0 : logit(p.phi())};
  }

  PushBetaParams to_params(std::array<double, 4> const &u) const
  {
    double const phi = fixed_phi ? *fixed_phi : logistic(u[3]);
    return {std::exp(u[0]), std::exp(u[1]), std::exp(u[2]), phi, direction};
  }

  // Mean score in u coordinates.
  std::array<double, 4> gradient(Score const &s, PushBetaParams const &p, double n) const
  {
    return {s.d_alpha * p.alpha() / n, s.d_beta * p.beta() / n, s.d_gamma * p.gamma() / n,
            fixed_phi ? 0.0 : s.d_phi * p.phi() * (1.0 - p.phi()) / n};
  }
};

double norm(std::array<double, 4> const &g)
{
  return std::sqrt(std::inner_product(g.begin(), g.end(), g.begin(), 0.0));
}

}  // namespace

void FitConfig::validate() const
{
  if (max_iterations <= 0)
  {
    throw std::invalid_argument("max_iterations must be positive");
  }
  if (!(gradient_tolerance > 0.0))
  {
    throw std::invalid_argument("gradient_tolerance must be positive");
  }
  if (fix_phi && !(*fix_phi >= 0.0 && *fix_phi <= 1.0))
  {
    throw std::invalid_argument("fix_phi must lie in [0, 1]");
  }
  quadrature.validate();
}

double log_likelihood(std::span<double const> data, PushBetaParams const &params,
                      quadrature::QuadratureConfig const &config)
{
  require_data(data);
  double sum = 0.0;
  for (double x : data)
  {
    double const lk = quadrature::log_kernel(x, params);
    if (lk == kInf)
    {
      throw std::domain_error("density is infinite at a boundary data point");
    }
    sum += lk;
  }
  if (sum == -kInf)
  {
    return sum;
  }
  quadrature::LogIntegralTable const table(params, config);
  return sum - static_cast<double>(data.size()) * table.log_total();
}

Score score(std::span<double const> data, PushBetaParams const &params,
            quadrature::QuadratureConfig const &config)
{
  require_data(data);
  double const n     = static_cast<double>(data.size());
  PushBeta const     dist(params, config);
  ExpectedLogs const e = dist.expected_logs();

  Score s{};
  s.d_alpha = sum_of(data, [](double x) { return std::log(x); }) - n * e.e_log_x;
  s.d_beta  = sum_of(data, [](double x) { return std::log1p(-x); }) - n * e.e_log_1mx;

  double sum_push = 0.0;
  for (double x : data)
  {
    sum_push += log_push(x, 1.0 - x, params);
  }
  s.d_gamma = sum_push - n * e.e_log_push;

  double const gamma = params.gamma();
  double const phi   = params.phi();
  if (gamma == 0.0)
  {
    s.d_phi = 0.0;
    return s;
  }
  // d/dphi log push = -u / (1 - u phi) with u = x (left) or 1 - x (right).
  bool const right = params.is_right();
  auto const ratio = [phi, right](double x, double y) {
    double const u = right ? y : x;
    return u / (1.0 - u * phi);
  };
  double sum_ratio = 0.0;
  for (double x : data)
  {
    sum_ratio += ratio(x, 1.0 - x);
  }
  s.d_phi = -gamma * sum_ratio + n * gamma * dist.expectation(ratio);
  return s;
}

MomResiduals mom_residuals(std::span<double const> data, PushBetaParams const &params,
                           quadrature::QuadratureConfig const &config)
{
  require_data(data);
  double const       n = static_cast<double>(data.size());
  ExpectedLogs const e = expected_logs(params, config);
  double             sum_push = 0.0;
  for (double x : data)
  {
    sum_push += log_push(x, 1.0 - x, params);
  }
  return {sum_of(data, [](double x) { return std::log(x); }) / n - e.e_log_x,
          sum_of(data, [](double x) { return std::log1p(-x); }) / n - e.e_log_1mx,
          sum_push / n - e.e_log_push};
}

PushBetaParams default_init(std::span<double const> data, Direction direction, double phi)
{
  require_data(data);
  double const n    = static_cast<double>(data.size());
  double const mean = std::accumulate(data.begin(), data.end(), 0.0) / n;
  double       var  = 0.0;
  for (double x : data)
  {
    var += (x - mean) * (x - mean);
  }
  var /= n;
  double alpha = 1.0, beta = 1.0;
  if (var > 0.0 && var < mean * (1.0 - mean))
  {
    double const common = mean * (1.0 - mean) / var - 1.0;
    alpha               = mean * common;
    beta                = (1.0 - mean) * common;
  }
  return {alpha, beta, 0.5, phi, direction};
}

FitResult fit_mle(std::span<double const> data, PushBetaParams const &init, FitConfig const &config)
{
  config.validate();
  require_data(data);
  if (!config.fix_phi && data.size() < 4)
  {
    throw std::invalid_argument("fitting four free parameters needs at least four data points");
  }
  double const n = static_cast<double>(data.size());

  Transform const tr{init.direction(), config.fix_phi};
  PushBetaParams  start = init;
  if (start.gamma() == 0.0)
  {
    start = start.with_gamma(0.5);
  }
  if (!config.fix_phi && (start.phi() == 0.0 || start.phi() == 1.0))
  {
    start = start.with_phi(0.5);
  }
  if (config.fix_phi)
  {
    start = start.with_phi(*config.fix_phi);
  }

  auto const objective = [&](std::array<double, 4> const &u, PushBetaParams &p) {
    p = tr.to_params(u);
    return log_likelihood(data, p, config.quadrature) / n;
  };

  std::array<double, 4> u = tr.to_u(start);
  PushBetaParams        p = start;
  double                f = objective(u, p);
  if (!std::isfinite(f))
  {
    throw std::domain_error("log-likelihood is not finite at the initial parameters");
  }
  std::array<double, 4> g = tr.gradient(score(data, p, config.quadrature), p, n);

  std::size_t const dim = tr.dim();
  // Inverse Hessian approximation of -f, started at the identity.
  std::array<std::array<double, 4>, 4> h{};
  for (std::size_t i = 0; i < dim; ++i)
  {
    h[i][i] = 1.0;
  }

  FitResult result{p, f * n, false, 0, norm(g), {f * n}};
  for (int iter = 0; iter < config.max_iterations; ++iter)
  {
    if (norm(g) <= config.gradient_tolerance)
    {
      result.converged = true;
      break;
    }
    // Ascent direction d = H g.
    std::array<double, 4> d{};
    for (std::size_t i = 0; i < dim; ++i)
    {
      for (std::size_t j = 0; j < dim; ++j)
      {
        d[i] += h[i][j] * g[j];
      }
    }
    double slope = std::inner_product(d.begin(), d.end(), g.begin(), 0.0);
    if (!(slope > 0.0))
    {
      // Lost positive definiteness: restart from steepest ascent.
      for (std::size_t i = 0; i < dim; ++i)
      {
        h[i].fill(0.0);
        h[i][i] = 1.0;
      }
      d     = g;
      slope = std::inner_product(d.begin(), d.end(), g.begin(), 0.0);
    }
    // Cap the step so a single move changes no coordinate by more than 2.
    double step     = 1.0;
    double max_move = 0.0;
    for (double di : d)
    {
      max_move = std::max(max_move, std::fabs(di));
    }
    if (max_move > 2.0)
    {
      step = 2.0 / max_move;
    }

    bool                  accepted = false;
    std::array<double, 4> u_new{};
    PushBetaParams        p_new = p;
    double                f_new = f;
    for (int k = 0; k < 60; ++k, step *= 0.5)
    {
      for (std::size_t i = 0; i < dim; ++i)
      {
        u_new[i] = u[i] + step * d[i];
      }
      try
      {
        f_new = objective(u_new, p_new);
      }
      catch (std::exception const &)
      {
        continue;
      }
      if (std::isfinite(f_new) && f_new >= f + 1e-4 * step * slope)
      {
        accepted = true;
        break;
      }
    }
    if (!accepted)
    {
      break;
    }

    std::array<double, 4> g_new = tr.gradient(score(data, p_new, config.quadrature), p_new, n);
    // BFGS update for the minimisation of -f.
    std::array<double, 4> s{}, y{};
    for (std::size_t i = 0; i < dim; ++i)
    {
      s[i] = u_new[i] - u[i];
      y[i] = g[i] - g_new[i];
    }
    double const sy = std::inner_product(s.begin(), s.end(), y.begin(), 0.0);
    if (sy > 1e-12 * norm(s) * norm(y))
    {
      std::array<double, 4> hy{};
      for (std::size_t i = 0; i < dim; ++i)
      {
        for (std::size_t j = 0; j < dim; ++j)
        {
          hy[i] += h[i][j] * y[j];
        }
      }
      double const yhy = std::inner_product(y.begin(), y.end(), hy.begin(), 0.0);
      for (std::size_t i = 0; i < dim; ++i)
      {
        for (std::size_t j = 0; j < dim; ++j)
        {
          h[i][j] += (sy + yhy) * s[i] * s[j] / (sy * sy) - (hy[i] * s[j] + s[i] * hy[j]) / sy;
        }
      }
    }

    u = u_new;
    p = p_new;
    f = f_new;
    g = g_new;
    result.iterations = iter + 1;
    result.trace.push_back(f * n);
  }
  result.params         = p;
  result.log_likelihood = f * n;
  result.gradient_norm  = norm(g);
  result.converged      = result.gradient_norm <= config.gradient_tolerance;
  return result;
}

}  // namespace pushbeta::fitting
