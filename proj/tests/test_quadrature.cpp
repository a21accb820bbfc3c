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

#include "oracles.hpp"

#include "pushbeta/quadrature.hpp"

#include <boost/math/special_functions/beta.hpp>
#include <doctest.h>

#include <cmath>
#include <limits>

using namespace pushbeta;
using namespace pushbeta::quadrature;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double log_total(PushBetaParams const &p, QuadratureConfig const &c = {})
{
  return log_integral({1.0, p}, c);
}

}  // namespace

TEST_SUITE("quadrature")
{
  TEST_CASE("log kernel values and endpoint conventions")
  {
    CHECK(log_kernel(0.3, PushBetaParams(1, 1, 0, 0.5)) == 0.0);
    CHECK(log_kernel(0.0, PushBetaParams(1, 1, 0, 0.5)) == 0.0);
    CHECK(log_kernel(0.0, PushBetaParams(0.5, 2, 1, 0.5)) == kInf);
    CHECK(log_kernel(1.0, PushBetaParams(2, 0.5, 1, 0.5)) == kInf);
    CHECK(log_kernel(0.0, PushBetaParams(2, 2, 1, 0.5)) == -kInf);
    // (1 - x phi)^gamma vanishes at x = 1 when phi = 1.
    CHECK(log_kernel(1.0, PushBetaParams(1, 1, 2, 1.0)) == -kInf);
    double const want = std::log(0.3) + 2.0 * std::log(0.7) + 4.0 * std::log(1.0 - 0.3 * 0.6);
    CHECK(log_kernel(0.3, PushBetaParams(2, 3, 4, 0.6)) == doctest::Approx(want).epsilon(1e-14));
    double const want_r = std::log(0.3) + 2.0 * std::log(0.7) + 4.0 * std::log(1.0 - 0.6 + 0.3 * 0.6);
    CHECK(log_kernel(0.3, PushBetaParams(2, 3, 4, 0.6, Direction::Right)) ==
          doctest::Approx(want_r).epsilon(1e-14));
  }

  TEST_CASE("slope ratio")
  {
    CHECK(log_slope_ratio(0.5, 0.5) == doctest::Approx(std::log(0.75) - std::log(0.5)).epsilon(1e-15));
    CHECK(log_slope_ratio(0.0, 0.3) == 0.0);
    CHECK(log_slope_ratio(0.4, 1.0) == 0.0);
    CHECK_THROWS_AS(log_slope_ratio(1.0, 0.5), std::domain_error);
  }

  TEST_CASE("beta quantile nodes sit at midpoint probabilities")
  {
    auto const u = beta_quantile_nodes(1.0, 1.0, 4);
    REQUIRE(u.size() == 4);
    CHECK(u[0] == doctest::Approx(0.125));
    CHECK(u[3] == doctest::Approx(0.875));
    auto const q = beta_quantile_nodes(2.5, 0.7, 50);
    for (std::size_t i = 0; i < q.size(); ++i)
    {
      CHECK(boost::math::ibeta(2.5, 0.7, q[i]) == doctest::Approx((2.0 * i + 1.0) / 100.0).epsilon(1e-10));
      if (i > 0)
      {
        CHECK(q[i] > q[i - 1]);
      }
    }
  }

  TEST_CASE("log-sum-exp")
  {
    std::vector<double> const empty;
    CHECK(log_sum_exp(empty) == -kInf);
    std::vector<double> const small{std::log(1.0), std::log(2.0)};
    CHECK(log_sum_exp(small) == doctest::Approx(std::log(3.0)).epsilon(1e-15));
    std::vector<double> const big{1000.0, 1000.0};
    CHECK(log_sum_exp(big) == doctest::Approx(1000.0 + std::log(2.0)).epsilon(1e-15));
    std::vector<double> const none{-kInf, -kInf};
    CHECK(log_sum_exp(none) == -kInf);
  }

  TEST_CASE("log weights cover the bins below the limit")
  {
    std::vector<double> const q{0.1, 0.3, 0.6, 0.9};
    auto const full = log_weights(q, 1.0, WeightSide::Left);
    for (double w : full)
    {
      CHECK(w == 0.0);
    }
    // The bin (0.3, 0.6] is cut at 0.45, keeping half of it.
    auto const part = log_weights(q, 0.45, WeightSide::Left);
    CHECK(part[1] == 0.0);
    CHECK(std::exp(part[2]) == doctest::Approx(0.5));
    CHECK(part[3] == -kInf);
    auto const right = log_weights(q, 0.55, WeightSide::Right);
    CHECK(right[1] == -kInf);
    CHECK(std::exp(right[2]) == doctest::Approx(0.5));
    CHECK(right[3] == 0.0);
    auto const none = log_weights(q, 0.0, WeightSide::Left);
    for (double w : none)
    {
      CHECK(w == -kInf);
    }
  }

  TEST_CASE("integral matches a trapezoid oracle")
  {
    oracle::ParamSource src(101);
    for (int i = 0; i < 12; ++i)
    {
      PushBetaParams const p(src.uniform(0.3, 20), src.uniform(0.3, 20), src.uniform(0, 20),
                             src.uniform(0, 1), src.coin() ? Direction::Right : Direction::Left);
      CAPTURE(p.describe());
      double const want = oracle::trapezoid_integral(p, 200'000);
      CHECK(oracle::relative_error(std::exp(log_total(p)), want) < 1e-6);
    }
  }

  TEST_CASE("integer intensity matches the terminating series")
  {
    oracle::ParamSource src(202);
    for (int g = 1; g <= 3; ++g)
    {
      for (int i = 0; i < 8; ++i)
      {
        Direction const      d = i % 2 ? Direction::Right : Direction::Left;
        PushBetaParams const p(src.uniform(0.2, 15), src.uniform(0.2, 15), g, src.uniform(0, 1), d);
        CAPTURE(p.describe());
        double const want = oracle::polynomial_integral(p.alpha(), p.beta(), g, p.phi(), d);
        CHECK(oracle::relative_error(std::exp(log_total(p)), want) < 1e-8);
      }
    }
  }

  TEST_CASE("partial integrals of a plain beta kernel")
  {
    for (Direction d : {Direction::Left, Direction::Right})
    {
      PushBetaParams const        p(2.5, 0.8, 3.0, 0.0, d);
      LogIntegralTable const      t(p);
      double const                lb = oracle::log_beta_fn(2.5, 0.8);
      for (double r : {0.01, 0.2, 0.5, 0.9, 0.999})
      {
        double const below = std::log(boost::math::ibeta(2.5, 0.8, r)) + lb;
        double const above = std::log(boost::math::ibetac(2.5, 0.8, r)) + lb;
        CHECK(t.log_partial(r) == doctest::Approx(below).epsilon(1e-10));
        CHECK(t.log_upper(r) == doctest::Approx(above).epsilon(1e-10));
      }
      CHECK(t.log_partial(0.0) == -kInf);
      CHECK(t.log_upper(1.0) == -kInf);
      CHECK(t.log_partial(1.0) == doctest::Approx(lb).epsilon(1e-12));
    }
  }

  TEST_CASE("direct route and partial limits")
  {
    PushBetaParams const p(3, 2, 4, 0.6);
    CHECK(log_integral({0.0, p}) == -kInf);
    CHECK_THROWS_AS(log_integral({1.5, p}), std::invalid_argument);
    CHECK_THROWS_AS(log_integral({-0.1, p}), std::invalid_argument);
    // Partial integrals are increasing in the limit.
    double prev = -kInf;
    for (double r : {0.1, 0.3, 0.5, 0.7, 0.9, 1.0})
    {
      double const h = log_integral({r, p});
      CHECK(h > prev);
      prev = h;
    }
  }

  TEST_CASE("quantile-midpoint route agrees with the adaptive route")
  {
    QuadratureConfig qm;
    qm.mode       = Mode::QuantileMidpoint;
    qm.node_count = 100'000;
    for (auto const &p : {PushBetaParams(3, 2, 4, 0.6), PushBetaParams(0.6, 1.5, 2.5, 0.8, Direction::Right),
                          PushBetaParams(12, 7, 30, 0.3)})
    {
      CAPTURE(p.describe());
      double const a = log_total(p);
      double const m = log_total(p, qm);
      // The midpoint rule under-samples the far tail where the push factor
      // grows, so it approaches the adaptive value slowly from below.
      double const coarse = log_integral_midpoint({1.0, p}, 10'000);
      CHECK(m < a);
      CHECK(a - m < a - coarse);
      CHECK(std::fabs(std::expm1(m - a)) < 0.3);
      CHECK(log_integral_midpoint({1.0, p}, 100'000) == doctest::Approx(m).epsilon(1e-12));
      LogIntegralTable const t(p, qm);
      CHECK(t.method() == Mode::QuantileMidpoint);
      CHECK(t.probability_below(0.5) + t.probability_above(0.5) == doctest::Approx(1.0).epsilon(1e-12));
    }
  }

  TEST_CASE("extreme shapes stay finite in log space")
  {
    PushBetaParams const p(5000, 3000, 2000, 0.5);
    double const         h = log_total(p);
    CHECK(std::isfinite(h));
    CHECK(h < -3000.0);
    // A linear-space sum over a uniform grid underflows completely.
    double naive = 0.0;
    for (int i = 1; i < 10'000; ++i)
    {
      naive += std::exp(log_kernel(i / 10'000.0, p));
    }
    CHECK(naive == 0.0);
    QuadratureConfig qm;
    qm.mode       = Mode::QuantileMidpoint;
    qm.node_count = 20'000;
    double const m = log_total(p, qm);
    CHECK(std::isfinite(m));
    CHECK(m < h);
    CHECK(oracle::relative_error(m, h) < 0.02);
  }

  TEST_CASE("fallback replaces a failed adaptive pass")
  {
    PushBetaParams const p(50, 4, 1e13, 1e-12);
    QuadratureConfig     adaptive;
    adaptive.mode = Mode::Adaptive;
    CHECK_THROWS_AS(LogIntegralTable(p, adaptive), QuadratureError);
    QuadratureConfig fallback;
    fallback.node_count = 10'000;
    LogIntegralTable const t(p, fallback);
    CHECK(t.method() == Mode::QuantileMidpoint);
    CHECK(std::isfinite(t.log_total()));
  }

  TEST_CASE("configuration is validated")
  {
    QuadratureConfig c;
    c.node_count = 0;
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
    CHECK_THROWS_AS(log_integral({1.0, PushBetaParams(1, 1, 1, 0.5)}, c), std::invalid_argument);
  }

  TEST_CASE("tail probabilities and expectations")
  {
    PushBetaParams const   p(3, 2, 4, 0.6, Direction::Right);
    LogIntegralTable const t(p);
    for (double x : {0.05, 0.3, 0.77, 0.99})
    {
      CHECK(t.probability_below(x) + t.probability_above(x) == doctest::Approx(1.0).epsilon(1e-12));
      CHECK(t.probability_between(0.0, x) == doctest::Approx(t.probability_below(x)).epsilon(1e-11));
    }
    CHECK(t.expectation([](double, double) { return 1.0; }) == doctest::Approx(1.0).epsilon(1e-11));
    auto const [lo, hi] = t.bracket(0.5, true);
    CHECK(lo <= hi);
    CHECK(t.probability_below(lo) <= 0.5);
    CHECK(t.probability_below(hi) >= 0.5);
  }
}
