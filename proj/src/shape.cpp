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

#include "pushbeta/shape.hpp"

#include "pushbeta/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace pushbeta::shape {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

int sign_of(double v)
{
  return (v > 0.0) - (v < 0.0);
}

// Simple (sign-changing) roots of q inside the open unit interval.
std::vector<double> interior_sign_changes(QuadraticCoeffs const &q)
{
  std::vector<double> roots;
  if (q.c2 != 0.0)
  {
    double const disc = q.c1 * q.c1 - 4.0 * q.c2 * q.c0;
    if (disc > 0.0)
    {
      double const s = std::sqrt(disc);
      double const t = -0.5 * (q.c1 + std::copysign(s, q.c1));
      roots.push_back(t / q.c2);
      roots.push_back(t != 0.0 ? q.c0 / t : -roots.back());
    }
  }
  else if (q.c1 != 0.0)
  {
    roots.push_back(-q.c0 / q.c1);
  }
  std::erase_if(roots, [](double r) { return !(r > kInteriorMargin && r < 1.0 - kInteriorMargin); });
  std::sort(roots.begin(), roots.end());
  return roots;
}

// Sign of q just to the right of 0 inside the first sign region.
int leading_sign(QuadraticCoeffs const &q, std::vector<double> const &roots)
{
  double probe = roots.empty() ? 0.5 : 0.5 * roots.front();
  for (int i = 0; i < 60; ++i)
  {
    int const s = sign_of(q(probe));
    if (s != 0)
    {
      return s;
    }
    probe *= 0.5;
  }
  return 0;
}

}  // namespace

std::string_view to_string(Classification c)
{
  switch (c)
  {
  case Classification::Increasing: return "increasing";
  case Classification::Decreasing: return "decreasing";
  case Classification::QuasiConcave: return "quasi-concave";
  case Classification::QuasiConvex: return "quasi-convex";
  case Classification::NeitherUpDownUp: return "neither (up-down-up)";
  case Classification::NeitherDownUpDown: return "neither (down-up-down)";
  case Classification::Flat: return "flat";
  }
  return "unknown";
}

std::string_view to_string(CriticalKind k)
{
  return k == CriticalKind::Mode ? "mode" : "antimode";
}

QuadraticCoeffs quadratic_coeffs(PushBetaParams const &params)
{
  double const a   = params.alpha() - 1.0;
  double const b   = params.beta() - 1.0;
  double const g   = params.gamma();
  double const phi = params.phi();
  if (!params.is_right())
  {
    return {a, -(a + b + a * phi + g * phi), phi * (a + b + g)};
  }
  return {a * (1.0 - phi), -(a * (1.0 - 2.0 * phi) + b * (1.0 - phi) - g * phi), -phi * (a + b + g)};
}

ShapeReport classify_shape(PushBetaParams const &params)
{
  ShapeReport report{};
  report.quadratic_coeffs = quadratic_coeffs(params);
  QuadraticCoeffs const &q = report.quadratic_coeffs;
  report.sign_at_zero      = sign_of(q(0.0));
  report.sign_at_one       = sign_of(q(1.0));

  if (q.c0 == 0.0 && q.c1 == 0.0 && q.c2 == 0.0)
  {
    report.classification = Classification::Flat;
    return report;
  }

  std::vector<double> const roots = interior_sign_changes(q);
  int                       s     = leading_sign(q, roots);
  for (double r : roots)
  {
    report.interior_critical_points.push_back(
      {r, s > 0 ? CriticalKind::Mode : CriticalKind::Antimode});
    s = -s;
  }

  int const first = leading_sign(q, roots);
  switch (roots.size())
  {
  case 0:
    report.classification = first > 0   ? Classification::Increasing
                            : first < 0 ? Classification::Decreasing
                                        : Classification::Flat;
    break;
  case 1:
    report.classification = first > 0 ? Classification::QuasiConcave : Classification::QuasiConvex;
    break;
  default:
    report.classification =
      first > 0 ? Classification::NeitherUpDownUp : Classification::NeitherDownUpDown;
    break;
  }
  return report;
}

GammaThresholds gamma_thresholds(double alpha, double beta, double phi)
{
  if (!(alpha > 1.0 && beta > 0.0 && beta < 1.0 && phi > 0.0 && phi < 1.0))
  {
    throw std::domain_error("gamma thresholds need alpha > 1, 0 < beta < 1 and 0 < phi < 1");
  }
  double const a      = alpha - 1.0;
  double const b      = beta - 1.0;
  double const centre = a * (1.0 - phi) - b;
  double const spread = 2.0 * std::sqrt(-a * b * (1.0 - phi));
  return {(centre - spread) / phi, (centre + spread) / phi};
}

std::optional<double> mode(PushBetaParams const &params)
{
  ShapeReport const report = classify_shape(params);
  auto const       &crit   = report.interior_critical_points;
  auto              best   = [&](double a, double b) -> std::optional<double> {
    double const ka = quadrature::log_kernel(a, params);
    double const kb = quadrature::log_kernel(b, params);
    if (ka == kb)
    {
      return std::nullopt;
    }
    return ka > kb ? a : b;
  };

  switch (report.classification)
  {
  case Classification::Increasing: return 1.0;
  case Classification::Decreasing: return 0.0;
  case Classification::QuasiConcave: return crit.front().x;
  case Classification::QuasiConvex: return best(0.0, 1.0);
  case Classification::NeitherUpDownUp: return best(crit.front().x, 1.0);
  case Classification::NeitherDownUpDown: return best(0.0, crit.back().x);
  case Classification::Flat: return std::nullopt;
  }
  return std::nullopt;
}

namespace {

struct MonotonePiece
{
  double lo;
  double hi;
  bool   increasing;
};

class LevelSetSolver
{
public:
  LevelSetSolver(PushBeta const &dist, std::vector<MonotonePiece> pieces)
    : dist_(dist)
    , pieces_(std::move(pieces))
  {}

  std::vector<Interval> region(double level) const
  {
    std::vector<Interval> out;
    for (auto const &piece : pieces_)
    {
      double const at_lo = dist_.pdf(piece.lo, true);
      double const at_hi = dist_.pdf(piece.hi, true);
      Interval     part{};
      if (piece.increasing)
      {
        if (at_hi < level)
        {
          continue;
        }
        part = {at_lo >= level ? piece.lo : crossing(piece, level), piece.hi};
      }
      else
      {
        if (at_lo < level)
        {
          continue;
        }
        part = {piece.lo, at_hi >= level ? piece.hi : crossing(piece, level)};
      }
      if (!out.empty() && out.back().hi >= part.lo)
      {
        out.back().hi = std::max(out.back().hi, part.hi);
      }
      else
      {
        out.push_back(part);
      }
    }
    return out;
  }

  double coverage(std::vector<Interval> const &region) const
  {
    double total = 0.0;
    for (auto const &iv : region)
    {
      total += dist_.table().probability_between(iv.lo, iv.hi);
    }
    return total;
  }

private:
  // Point inside the piece where the log density equals level.
  double crossing(MonotonePiece const &piece, double level) const
  {
    double lo = piece.lo, hi = piece.hi;
    for (int i = 0; i < 200 && hi - lo > 1e-16; ++i)
    {
      double const mid   = 0.5 * (lo + hi);
      bool const   above = dist_.pdf(mid, true) >= level;
      if (above == piece.increasing)
      {
        hi = mid;
      }
      else
      {
        lo = mid;
      }
    }
    return 0.5 * (lo + hi);
  }

  PushBeta const            &dist_;
  std::vector<MonotonePiece> pieces_;
};

}  // namespace

HdrRegion hdr(double cover_prob, PushBetaParams const &params,
              quadrature::QuadratureConfig const &config)
{
  if (!(cover_prob > 0.0 && cover_prob < 1.0))
  {
    throw std::invalid_argument("cover probability must lie in (0, 1)");
  }
  ShapeReport const report = classify_shape(params);
  PushBeta const    dist(params, config);

  if (report.classification == Classification::Flat)
  {
    double const half = 0.5 * cover_prob;
    return {{{0.5 - half, 0.5 + half}}, cover_prob, dist.pdf(0.5, true)};
  }

  std::vector<double> cuts{0.0};
  for (auto const &c : report.interior_critical_points)
  {
    cuts.push_back(c.x);
  }
  cuts.push_back(1.0);
  std::vector<MonotonePiece> pieces;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
  {
    double const mid = 0.5 * (cuts[i] + cuts[i + 1]);
    bool const   inc = report.quadratic_coeffs(mid) > 0.0;
    pieces.push_back({cuts[i], cuts[i + 1], inc});
  }
  LevelSetSolver const solver(dist, pieces);

  // Bracket the level: coverage falls as the level rises.
  double top = -kInf, bottom = kInf;
  for (int i = 1; i < 1024; ++i)
  {
    double const v = dist.pdf(i / 1024.0, true);
    top            = std::max(top, v);
    bottom         = std::min(bottom, v);
  }
  for (auto const &c : report.interior_critical_points)
  {
    top = std::max(top, dist.pdf(c.x, true));
  }
  double lo = bottom - 1.0;
  double hi = top + 1.0;
  for (double step = 1.0; solver.coverage(solver.region(lo)) < cover_prob && step < 1e6; step *= 2.0)
  {
    lo -= step;
  }
  for (double step = 1.0; solver.coverage(solver.region(hi)) > cover_prob && step < 1e6; step *= 2.0)
  {
    hi += step;
  }

  HdrRegion best{solver.region(lo), 0.0, lo};
  best.probability = solver.coverage(best.intervals);
  for (int i = 0; i < 200; ++i)
  {
    double const level  = 0.5 * (lo + hi);
    auto         region = solver.region(level);
    double const cov    = solver.coverage(region);
    if (cov >= cover_prob)
    {
      lo   = level;
      best = {std::move(region), cov, level};
    }
    else
    {
      hi = level;
    }
    if (best.probability - cover_prob <= 1e-10 || hi - lo <= 1e-15 * std::max(1.0, std::fabs(lo)))
    {
      break;
    }
  }
  return best;
}

}  // namespace pushbeta::shape
