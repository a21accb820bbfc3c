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

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace pushbeta {

std::string_view to_string(Direction direction)
{
  return direction == Direction::Left ? "left" : "right";
}

PushBetaParams::PushBetaParams(double alpha, double beta, double gamma, double phi,
                               Direction direction)
  : alpha_(alpha)
  , beta_(beta)
  , gamma_(gamma)
  , phi_(phi)
  , direction_(direction)
{
  // Written so that NaN fails every check.
  if (!(alpha > 0.0) || !std::isfinite(alpha))
  {
    throw std::invalid_argument("shape1 (alpha) must be a positive finite number");
  }
  if (!(beta > 0.0) || !std::isfinite(beta))
  {
    throw std::invalid_argument("shape2 (beta) must be a positive finite number");
  }
  if (!(gamma >= 0.0) || !std::isfinite(gamma))
  {
    throw std::invalid_argument("intensity (gamma) must be a nonnegative finite number");
  }
  if (!(phi >= 0.0 && phi <= 1.0))
  {
    throw std::invalid_argument("proportion (phi) must lie in [0, 1]");
  }
}

bool PushBetaParams::is_plain_beta() const noexcept
{
  return gamma_ == 0.0 || phi_ == 0.0;
}

bool PushBetaParams::is_absorbed_beta() const noexcept
{
  return phi_ == 1.0;
}

double PushBetaParams::equivalent_beta_alpha() const noexcept
{
  if (is_plain_beta())
  {
    return alpha_;
  }
  return is_right() ? alpha_ + gamma_ : alpha_;
}

double PushBetaParams::equivalent_beta_beta() const noexcept
{
  if (is_plain_beta())
  {
    return beta_;
  }
  return is_right() ? beta_ : beta_ + gamma_;
}

PushBetaParams PushBetaParams::with_alpha(double alpha) const
{
  return {alpha, beta_, gamma_, phi_, direction_};
}

PushBetaParams PushBetaParams::with_beta(double beta) const
{
  return {alpha_, beta, gamma_, phi_, direction_};
}

PushBetaParams PushBetaParams::with_gamma(double gamma) const
{
  return {alpha_, beta_, gamma, phi_, direction_};
}

PushBetaParams PushBetaParams::with_phi(double phi) const
{
  return {alpha_, beta_, gamma_, phi, direction_};
}

std::string PushBetaParams::describe() const
{
  std::ostringstream os;
  os.precision(10);
  os << (is_right() ? "RPushBeta(" : "LPushBeta(") << alpha_ << ", " << beta_ << ", " << gamma_
     << ", " << phi_ << ")";
  return os.str();
}

}  // namespace pushbeta
