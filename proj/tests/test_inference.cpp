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

#include "pushbeta/inference.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>

using namespace pushbeta;
using namespace pushbeta::inference;

namespace {

constexpr auto kPrimary = ModelVariant::PrimaryConjunction;
constexpr auto kAbsence = ModelVariant::AbsenceConjunction;

}  // namespace

TEST_SUITE("inference")
{
  TEST_CASE("binary samples are validated")
  {
    CHECK_NOTHROW(BinarySample(10, 10));
    CHECK_THROWS_AS(BinarySample(3, 4), std::invalid_argument);
  }

  TEST_CASE("conjugate updates")
  {
    CHECK(posterior(PushBetaParams(2, 3, 1, 0.4), BinarySample(10, 4), kPrimary) == PushBetaParams(6, 3, 7, 0.4));
    PushBetaParams const prior(1, 1, 0, 1.0 / 3.0, Direction::Right);
    CHECK(posterior(prior, BinarySample(340, 92), kAbsence) ==
          PushBetaParams(1, 93, 248, 1.0 / 3.0, Direction::Right));
    CHECK(posterior(prior, BinarySample(0, 0), kAbsence) == prior);
    CHECK_THROWS_AS(posterior(prior, BinarySample(5, 1), kPrimary), std::invalid_argument);
    CHECK_THROWS_AS(posterior(PushBetaParams(1, 1, 0, 0.5), BinarySample(5, 1), kAbsence), std::invalid_argument);
  }

  TEST_CASE("sequential updates equal a pooled update")
  {
    PushBetaParams const prior(2, 3, 1, 0.4);
    PushBetaParams const two = posterior(posterior(prior, BinarySample(10, 4), kPrimary), BinarySample(7, 2), kPrimary);
    CHECK(two == posterior(prior, BinarySample(17, 6), kPrimary));
  }

  TEST_CASE("divergence values")
  {
    CHECK(kl_divergence(0.3, 0.5, 0.3, 0.5, 50, kPrimary) == 0.0);
    CHECK(kl_divergence(0.3, 0.5, 0.3, 0.5, 50, kAbsence) == 0.0);
    double const one = kl_divergence(0.5, 1.0, 0.25, 1.0, 1, kPrimary);
    CHECK(one == doctest::Approx(0.5 * std::log(2.0) + 0.5 * std::log(2.0 / 3.0)).epsilon(1e-14));
    CHECK(kl_divergence(0.5, 1.0, 0.25, 1.0, 10, kPrimary) == doctest::Approx(10 * one).epsilon(1e-14));
    // theta phi = 0 while the truth puts mass on ones.
    CHECK(kl_divergence(0.5, 0.5, 0.0, 0.5, 3, kPrimary) == std::numeric_limits<double>::infinity());
    // Zero-probability outcomes contribute nothing.
    CHECK(std::isfinite(kl_divergence(0.0, 0.5, 0.3, 0.5, 3, kPrimary)));
    CHECK_THROWS_AS(kl_divergence(1.5, 0.5, 0.3, 0.5, 3, kPrimary), std::invalid_argument);
  }

  TEST_CASE("closed form equals the binomial sum")
  {
    oracle::ParamSource src(707);
    for (unsigned n = 1; n <= 12; ++n)
    {
      for (int i = 0; i < 5; ++i)
      {
        double const t0 = src.uniform(0, 1), p0 = src.uniform(0, 1), t = src.uniform(0.01, 0.99),
                     p  = src.uniform(0.01, 1);
        auto const   v  = src.coin() ? kPrimary : kAbsence;
        double const want = oracle::kl_binomial_sum(t0, p0, t, p, n, v);
        CHECK(kl_divergence(t0, p0, t, p, n, v) == doctest::Approx(want).epsilon(1e-12));
      }
    }
  }

  TEST_CASE("divergence is convex with the clamped minimiser")
  {
    oracle::ParamSource src(808);
    for (int i = 0; i < 25; ++i)
    {
      double const t0 = src.uniform(0, 1), p0 = src.uniform(0, 1), p = src.uniform(0.05, 1);
      auto const   v  = src.coin() ? kPrimary : kAbsence;
      KlProfile const prof = kl_profile(t0, p0, p, 5, v);
      CAPTURE(t0);
      CAPTURE(p0);
      CAPTURE(p);
      int const n = 2000;
      double    best = INFINITY, arg = 0;
      double    prev2 = 0, prev1 = 0;
      for (int k = 1; k < n; ++k)
      {
        double const th = k / double(n), f = prof(th);
        if (k > 2)
        {
          CHECK(prev2 - 2 * prev1 + f >= -1e-12);
        }
        prev2 = prev1;
        prev1 = f;
        if (f < best)
        {
          best = f;
          arg  = th;
        }
      }
      CHECK(std::fabs(arg - prof.theta_star) <= 1.0 / n + 1e-12);
    }
  }

  TEST_CASE("minimiser values")
  {
    CHECK(kl_minimizer(0.6, 0.5, 0.4, kPrimary) == doctest::Approx(0.75).epsilon(1e-15));
    CHECK(kl_minimizer(0.9, 0.9, 0.5, kPrimary) == 1.0);
    CHECK(kl_minimizer(0.2, 1.0 / 3.0, 1.0 / 3.0, kAbsence) == doctest::Approx(0.2).epsilon(1e-15));
    CHECK(kl_minimizer(0.5, 0.8, 0.2, kAbsence) == 0.0);
    CHECK(kl_divergence(0.6, 0.5, 0.75, 0.4, 100, kPrimary) < 1e-12);
    CHECK_THROWS_AS(kl_minimizer(0.5, 0.5, 0.0, kPrimary), std::domain_error);
  }

  TEST_CASE("consistency trajectories")
  {
    ConsistencySetup setup{0.5, 0.5, 0.5, kPrimary, PushBetaParams(1, 1, 0, 0.5), {100, 1000, 10000}, 4, 3};
    auto const       a = simulate_consistency(setup);
    auto const       b = simulate_consistency(setup);
    REQUIRE(a.size() == 12);
    for (std::size_t i = 0; i < a.size(); ++i)
    {
      CHECK(a[i].post_mean == b[i].post_mean);
      CHECK(a[i].theta_star == 0.5);
      CHECK(a[i].abs_err == doctest::Approx(std::fabs(a[i].post_mean - 0.5)));
      if (i % 3 > 0)
      {
        CHECK(a[i].post_sd < a[i - 1].post_sd);
      }
    }
    setup.n_schedule = {100, 100};
    CHECK_THROWS_AS(simulate_consistency(setup), std::invalid_argument);
    setup.n_schedule = {};
    CHECK_THROWS_AS(simulate_consistency(setup), std::invalid_argument);
    setup.n_schedule = {10};
    setup.prior      = PushBetaParams(1, 1, 0, 0.5, Direction::Right);
    CHECK_THROWS_AS(simulate_consistency(setup), std::invalid_argument);
  }
}
