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

#include "qpd/strategy.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <complex>
#include <sstream>

namespace qpd {

namespace {

std::optional<double> parse_double(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front())))
    text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back())))
    text.remove_suffix(1);
  if (text.empty()) return std::nullopt;
  double value = 0.0;
  const auto [ptr, ec] =
      std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    return std::nullopt;
  }
  return value;
}

}  // namespace

bool StrategyParams::in_range() const {
  return theta >= 0.0 && theta <= kPi && phi >= 0.0 && phi <= kHalfPi;
}

Eigen::Matrix2cd strategy_matrix(const StrategyParams& s) {
  // cos(theta/2) as sin((pi - theta)/2): exactly 0 at theta = pi.
  const double c = std::sin((kPi - s.theta) / 2.0);
  const double sn = std::sin(s.theta / 2.0);
  const std::complex<double> e = std::polar(1.0, s.phi);
  Eigen::Matrix2cd u;
  u << e * c, sn, -sn, std::conj(e) * c;
  return u;
}

std::optional<StrategyParams> named_strategy(std::string_view name) {
  if (name.size() != 1) return std::nullopt;
  switch (std::toupper(static_cast<unsigned char>(name.front()))) {
    case 'C':
      return kCooperate;
    case 'D':
      return kDefect;
    case 'Q':
      return kQuantum;
    default:
      return std::nullopt;
  }
}

std::optional<StrategyParams> parse_strategy(std::string_view text) {
  if (auto named = named_strategy(text)) return named;
  const auto comma = text.find(',');
  if (comma == std::string_view::npos) return std::nullopt;
  const auto theta = parse_double(text.substr(0, comma));
  const auto phi = parse_double(text.substr(comma + 1));
  if (!theta || !phi) return std::nullopt;
  return StrategyParams{*theta, *phi};
}

std::optional<double> clamp_to_range(double value, double lo, double hi) {
  if (std::isnan(value)) return std::nullopt;
  if (value < lo - kRangeSlack || value > hi + kRangeSlack) return std::nullopt;
  return std::clamp(value, lo, hi);
}

std::string describe(const StrategyParams& s) {
  if (s == kCooperate) return "C";
  if (s == kDefect) return "D";
  if (s == kQuantum) return "Q";
  std::ostringstream out;
  out.precision(6);
  out << "U(" << s.theta << ", " << s.phi << ")";
  return out.str();
}

Eigen::Matrix4cd kron(const Eigen::Matrix2cd& alice,
                      const Eigen::Matrix2cd& bob) {
  Eigen::Matrix4cd out;
  for (int r = 0; r < 2; ++r) {
    for (int c = 0; c < 2; ++c) {
      out.block<2, 2>(2 * r, 2 * c) = alice(r, c) * bob;
    }
  }
  return out;
}

}  // namespace qpd
