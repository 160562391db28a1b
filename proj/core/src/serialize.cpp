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

#include "qpd/serialize.hpp"

#include <charconv>
#include <sstream>
#include <stdexcept>
#include <string>

namespace qpd::serialize {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

json pair_to_json(optics::ModePair p) { return json::array({p.first, p.second}); }

optics::ModePair pair_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2) {
    throw std::invalid_argument("mode pair must be a two-element array");
  }
  return {j[0].get<int>(), j[1].get<int>()};
}

json sector_to_json(fock::Sector s) {
  return json{{"modes", s.modes}, {"photons", s.photons}};
}

fock::Sector sector_from_json(const json& j) {
  return {j.at("modes").get<int>(), j.at("photons").get<int>()};
}

}  // namespace

std::string format_double(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  if (ec != std::errc()) return std::to_string(value);
  return std::string(buf, ptr);
}

json complex_to_json(const std::complex<double>& z) {
  return json::array({z.real(), z.imag()});
}

std::complex<double> complex_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2) {
    throw std::invalid_argument("complex number must be [re, im]");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

json matrix_to_json(const Eigen::MatrixXcd& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      row.push_back(complex_to_json(m(r, c)));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

Eigen::MatrixXcd matrix_from_json(const json& j) {
  if (!j.is_array()) throw std::invalid_argument("matrix must be an array");
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = rows == 0 ? 0 : static_cast<Eigen::Index>(j[0].size());
  Eigen::MatrixXcd m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const auto& row = j[static_cast<std::size_t>(r)];
    if (static_cast<Eigen::Index>(row.size()) != cols) {
      throw std::invalid_argument("ragged matrix");
    }
    for (Eigen::Index c = 0; c < cols; ++c) {
      m(r, c) = complex_from_json(row[static_cast<std::size_t>(c)]);
    }
  }
  return m;
}

json state_to_json(const fock::StateVector& state) {
  json amps = json::array();
  for (Eigen::Index k = 0; k < state.amplitudes().size(); ++k) {
    amps.push_back(complex_to_json(state.amplitudes()(k)));
  }
  return json{{"sector", sector_to_json(state.sector())}, {"amplitudes", amps}};
}

fock::StateVector state_from_json(const json& j) {
  const auto sector = sector_from_json(j.at("sector"));
  const auto& amps = j.at("amplitudes");
  fock::Vector v(static_cast<Eigen::Index>(amps.size()));
  for (std::size_t k = 0; k < amps.size(); ++k) {
    v(static_cast<Eigen::Index>(k)) = complex_from_json(amps[k]);
  }
  return fock::StateVector(sector, std::move(v));
}

json operator_to_json(const fock::OperatorMatrix& op) {
  return json{{"sector", sector_to_json(op.sector())},
              {"unitary", op.unitary()},
              {"entries", matrix_to_json(op.entries())}};
}

fock::OperatorMatrix operator_from_json(const json& j) {
  return fock::OperatorMatrix(sector_from_json(j.at("sector")),
                              matrix_from_json(j.at("entries")),
                              j.value("unitary", false));
}

json element_to_json(const optics::OpticalElement& element) {
  return std::visit(
      Overloaded{
          [](const optics::BeamSplitter& e) {
            return json{{"type", "beam_splitter"},
                        {"modes", pair_to_json(e.modes)},
                        {"theta", e.theta}};
          },
          [](const optics::PhaseShifter& e) {
            return json{{"type", "phase_shifter"}, {"mode", e.mode},
                        {"phi", e.phi}};
          },
          [](const optics::ConjugatePhasePair& e) {
            return json{{"type", "conjugate_phase_pair"},
                        {"modes", pair_to_json(e.modes)},
                        {"phi", e.phi}};
          },
          [](const optics::CrossKerr& e) {
            return json{{"type", "cross_kerr"},
                        {"modes", pair_to_json(e.modes)},
                        {"chi", e.chi}};
          },
          [](const optics::Mirror& e) {
            return json{{"type", "mirror"}, {"mode", e.mode}};
          },
      },
      element);
}

optics::OpticalElement element_from_json(const json& j) {
  const auto type = j.at("type").get<std::string>();
  if (type == "beam_splitter") {
    return optics::BeamSplitter{pair_from_json(j.at("modes")),
                                j.at("theta").get<double>()};
  }
  if (type == "phase_shifter") {
    return optics::PhaseShifter{j.at("mode").get<int>(),
                                j.at("phi").get<double>()};
  }
  if (type == "conjugate_phase_pair") {
    return optics::ConjugatePhasePair{pair_from_json(j.at("modes")),
                                      j.at("phi").get<double>()};
  }
  if (type == "cross_kerr") {
    return optics::CrossKerr{pair_from_json(j.at("modes")),
                             j.at("chi").get<double>()};
  }
  if (type == "mirror") return optics::Mirror{j.at("mode").get<int>()};
  throw std::invalid_argument("unknown optical element type '" + type + "'");
}

json circuit_to_json(const optics::Circuit& circuit) {
  json elements = json::array();
  for (const auto& e : circuit.elements) elements.push_back(element_to_json(e));
  json out{{"label", circuit.label}, {"elements", elements}};
  if (!circuit.warnings.empty()) out["warnings"] = circuit.warnings;
  return out;
}

optics::Circuit circuit_from_json(const json& j) {
  optics::Circuit c;
  c.label = j.value("label", std::string{});
  for (const auto& e : j.at("elements")) {
    c.elements.push_back(element_from_json(e));
  }
  if (j.contains("warnings")) {
    c.warnings = j.at("warnings").get<std::vector<std::string>>();
  }
  return c;
}

json jgate_phases_to_json(const optics::JGatePhases& p) {
  return json{{"gamma", p.gamma},
              {"theta1", p.theta1},
              {"theta2", p.theta2},
              {"assignment", optics::to_string(p.assignment)},
              {"kerr_multiplier", p.kerr_multiplier},
              {"kerr_strength", p.kerr_strength()},
              {"residual", p.residual},
              {"valid", p.valid}};
}

optics::JGatePhases jgate_phases_from_json(const json& j) {
  optics::JGatePhases p;
  p.gamma = j.at("gamma").get<double>();
  p.theta1 = j.at("theta1").get<double>();
  p.theta2 = j.at("theta2").get<double>();
  if (j.contains("assignment")) {
    const auto name = j.at("assignment").get<std::string>();
    const auto assignment = optics::parse_phase_assignment(name);
    if (!assignment) {
      throw std::invalid_argument("unknown phase assignment '" + name + "'");
    }
    p.assignment = *assignment;
  }
  p.kerr_multiplier = j.at("kerr_multiplier").get<double>();
  p.residual = j.at("residual").get<double>();
  p.valid = j.at("valid").get<bool>();
  return p;
}

json strategy_to_json(const StrategyParams& s) {
  return json{{"theta", s.theta}, {"phi", s.phi}};
}

json game_result_to_json(const game::GameResult& r, double gamma) {
  json probs = json::object();
  json p = json::array();
  for (std::size_t k = 0; k < 4; ++k) {
    probs[game::kOutcomeNames[k]] = r.distribution.p[k];
    p.push_back(r.distribution.p[k]);
  }
  json out{{"schema_version", kSchemaVersion},
           {"gamma", gamma},
           {"backend", game::to_string(r.backend)},
           {"probabilities", probs},
           {"p", p},
           {"payoffs", json::array({r.payoff_a, r.payoff_b})}};
  out["leakage"] = r.backend == game::Backend::kOptical ? json(r.leakage)
                                                        : json(nullptr);
  return out;
}

json landscape_to_json(const game::Landscape& l, double gamma,
                       const StrategyParams& opponent) {
  json rows = json::array();
  for (int i = 0; i < l.grid.theta_steps; ++i) {
    json row = json::array();
    for (int j = 0; j < l.grid.phi_steps; ++j) row.push_back(l.at(i, j));
    rows.push_back(std::move(row));
  }
  return json{{"schema_version", kSchemaVersion},
              {"gamma", gamma},
              {"opponent", strategy_to_json(opponent)},
              {"theta_steps", l.grid.theta_steps},
              {"phi_steps", l.grid.phi_steps},
              {"theta", l.theta_axis},
              {"phi", l.phi_axis},
              {"payoff", rows},
              {"max", l.max()},
              {"min", l.min()}};
}

std::string landscape_to_csv(const game::Landscape& l) {
  std::ostringstream out;
  out << "theta,phi,payoff\n";
  for (int i = 0; i < l.grid.theta_steps; ++i) {
    for (int j = 0; j < l.grid.phi_steps; ++j) {
      out << format_double(l.theta_axis[static_cast<std::size_t>(i)]) << ','
          << format_double(l.phi_axis[static_cast<std::size_t>(j)]) << ','
          << format_double(l.at(i, j)) << '\n';
    }
  }
  return out.str();
}

json nash_report_to_json(const equilibrium::NashReport& report) {
  json eqs = json::array();
  for (const auto& e : report.equilibria) {
    eqs.push_back(json{{"a", strategy_to_json(e.a)},
                       {"b", strategy_to_json(e.b)},
                       {"payoffs", json::array({e.payoff_a, e.payoff_b})},
                       {"max_unilateral_gain", e.max_unilateral_gain}});
  }
  return json{{"schema_version", kSchemaVersion},
              {"gamma", report.gamma},
              {"grid", {{"theta_steps", report.grid.theta_steps},
                        {"phi_steps", report.grid.phi_steps}}},
              {"epsilon", report.epsilon},
              {"certified_relative_to", "grid"},
              {"equilibria", eqs}};
}

json sweep_to_json(const equilibrium::ThresholdSweep& sweep) {
  json samples = json::array();
  for (const auto& s : sweep.samples) {
    samples.push_back(json{{"gamma", s.gamma},
                           {"region", equilibrium::to_string(s.region)},
                           {"dd_nash", s.dd_nash},
                           {"qq_nash", s.qq_nash}});
  }
  const auto opt = [](const std::optional<double>& v) {
    return v ? json(*v) : json(nullptr);
  };
  return json{{"schema_version", kSchemaVersion},
              {"gamma1", opt(sweep.gamma1)},
              {"gamma2", opt(sweep.gamma2)},
              {"method", "bisection on grid-Nash status of (D,D) and (Q,Q)"},
              {"grid", {{"theta_steps", sweep.grid.theta_steps},
                        {"phi_steps", sweep.grid.phi_steps}}},
              {"epsilon", sweep.epsilon},
              {"bisection_tol", sweep.bisection_tol},
              {"samples", samples}};
}

std::string sweep_to_csv(const equilibrium::ThresholdSweep& sweep) {
  std::ostringstream out;
  out << "gamma,region,dd_nash,qq_nash\n";
  for (const auto& s : sweep.samples) {
    out << format_double(s.gamma) << ',' << equilibrium::to_string(s.region)
        << ',' << (s.dd_nash ? 1 : 0) << ',' << (s.qq_nash ? 1 : 0) << '\n';
  }
  return out.str();
}

}  // namespace qpd::serialize
