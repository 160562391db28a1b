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

// JSON and CSV encodings shared by the CLI, the HTTP service and the golden
// fixtures. Complex numbers are [re, im] pairs; matrices are arrays of rows.

#ifndef QPD_SERIALIZE_HPP_
#define QPD_SERIALIZE_HPP_

#include <string>

#include <nlohmann/json.hpp>

#include "qpd/equilibrium.hpp"
#include "qpd/fock.hpp"
#include "qpd/game.hpp"
#include "qpd/optics.hpp"

namespace qpd::serialize {

using nlohmann::json;

inline constexpr int kSchemaVersion = 1;

json complex_to_json(const std::complex<double>& z);
std::complex<double> complex_from_json(const json& j);

json matrix_to_json(const Eigen::MatrixXcd& m);
Eigen::MatrixXcd matrix_from_json(const json& j);

json state_to_json(const fock::StateVector& state);
fock::StateVector state_from_json(const json& j);

json operator_to_json(const fock::OperatorMatrix& op);
fock::OperatorMatrix operator_from_json(const json& j);

json element_to_json(const optics::OpticalElement& element);
optics::OpticalElement element_from_json(const json& j);

json circuit_to_json(const optics::Circuit& circuit);
optics::Circuit circuit_from_json(const json& j);

json jgate_phases_to_json(const optics::JGatePhases& phases);
optics::JGatePhases jgate_phases_from_json(const json& j);

json strategy_to_json(const StrategyParams& s);

json game_result_to_json(const game::GameResult& result, double gamma);

json landscape_to_json(const game::Landscape& landscape, double gamma,
                       const StrategyParams& opponent);
// Columns: theta,phi,payoff; theta-major rows.
std::string landscape_to_csv(const game::Landscape& landscape);

json nash_report_to_json(const equilibrium::NashReport& report);

json sweep_to_json(const equilibrium::ThresholdSweep& sweep);
// Columns: gamma,region,dd_nash,qq_nash.
std::string sweep_to_csv(const equilibrium::ThresholdSweep& sweep);

// Shortest round-trip decimal form.
std::string format_double(double value);

}  // namespace qpd::serialize

#endif  // QPD_SERIALIZE_HPP_
