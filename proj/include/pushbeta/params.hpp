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

#include <string>
#include <string_view>

namespace pushbeta {

/// Push direction. Left multiplies the beta kernel by (1 - x phi)^gamma,
/// Right by (1 - phi + x phi)^gamma.
enum class Direction
{
  Left,
  Right
};

std::string_view to_string(Direction direction);

/// Parameters of the pushed beta family. Validated on construction and
/// immutable afterwards.
class PushBetaParams
{
public:
  PushBetaParams(double alpha, double beta, double gamma, double phi,
                 Direction direction = Direction::Left);

  double    alpha() const noexcept { return alpha_; }
  double    beta() const noexcept { return beta_; }
  double    gamma() const noexcept { return gamma_; }
  double    phi() const noexcept { return phi_; }
  Direction direction() const noexcept { return direction_; }
  bool      is_right() const noexcept { return direction_ == Direction::Right; }

  /// gamma == 0 or phi == 0: the push factor is identically one.
  bool is_plain_beta() const noexcept;
  /// phi == 1: the push factor folds into one of the beta exponents.
  bool is_absorbed_beta() const noexcept;

  /// Shapes of the beta distribution this reduces to, when it does.
  /// Only meaningful if is_plain_beta() or is_absorbed_beta().
  double equivalent_beta_alpha() const noexcept;
  double equivalent_beta_beta() const noexcept;

  PushBetaParams with_alpha(double alpha) const;
  PushBetaParams with_beta(double beta) const;
  PushBetaParams with_gamma(double gamma) const;
  PushBetaParams with_phi(double phi) const;

  std::string describe() const;

  friend bool operator==(PushBetaParams const &, PushBetaParams const &) = default;

private:
  double    alpha_;
  double    beta_;
  double    gamma_;
  double    phi_;
  Direction direction_;
};

}  // namespace pushbeta
