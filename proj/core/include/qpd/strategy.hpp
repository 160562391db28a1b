// Copyright 2026 The qpd-optics Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Two-parameter player strategies U(theta, phi) and the named points C, D, Q.

#ifndef QPD_STRATEGY_HPP_
#define QPD_STRATEGY_HPP_

#include <numbers>
#include <optional>
#include <string>
#include <string_view>

#include <Eigen/Dense>

namespace qpd {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kHalfPi = std::numbers::pi / 2.0;

// Slack accepted past an interval bound by input validation; such values are
// clamped onto the bound (so that e.g. 1.5708 reads as pi/2).
inline constexpr double kRangeSlack = 1e-4;

struct StrategyParams {
  double theta = 0.0;  // [0, pi]
  double phi = 0.0;    // [0, pi/2]

  bool in_range() const;
  friend bool operator==(const StrategyParams&,
                         const StrategyParams&) = default;
};

inline constexpr StrategyParams kCooperate{0.0, 0.0};
inline constexpr StrategyParams kDefect{kPi, 0.0};
inline constexpr StrategyParams kQuantum{0.0, kHalfPi};

// [[e^{i phi} cos(theta/2), sin(theta/2)], [-sin(theta/2), e^{-i phi}
// cos(theta/2)]] in the {|C>, |D>} basis.
Eigen::Matrix2cd strategy_matrix(const StrategyParams& s);

// "C", "D" or "Q" (case-insensitive).
std::optional<StrategyParams> named_strategy(std::string_view name);

// Parses "C" / "D" / "Q" or a comma pair "theta,phi" in radians. Does not
// range-check.
std::optional<StrategyParams> parse_strategy(std::string_view text);

// Returns `value` clamped into [lo, hi] when it lies within kRangeSlack of
// the interval, std::nullopt otherwise (including NaN).
std::optional<double> clamp_to_range(double value, double lo, double hi);

std::string describe(const StrategyParams& s);

// Two-qubit tensor product in the (CC, CD, DC, DD) ordering: Alice's index is
// the high bit.
Eigen::Matrix4cd kron(const Eigen::Matrix2cd& alice, const Eigen::Matrix2cd& bob);

}  // namespace qpd

#endif  // QPD_STRATEGY_HPP_
