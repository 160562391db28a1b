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

#include "qpd/tools/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "qpd/equilibrium.hpp"
#include "qpd/fock.hpp"
#include "qpd/game.hpp"
#include "qpd/optics.hpp"
#include "qpd/serialize.hpp"
#include "qpd/strategy.hpp"

namespace qpd::cli {

namespace {

using serialize::json;

// Invalid flag value: reported with the flag name, exit 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Format { kHuman, kJson, kCsv };

struct OutputSpec {
  std::string format = "human";
  std::string destination;  // empty: standard output

  Format parsed() const {
    if (format == "json") return Format::kJson;
    if (format == "csv") return Format::kCsv;
    return Format::kHuman;
  }
};

void add_output_flags(CLI::App* cmd, OutputSpec& spec) {
  cmd->add_option("--format", spec.format, "Output format")
      ->check(CLI::IsMember({"human", "json", "csv"}));
  cmd->add_option("--output", spec.destination,
                  "Write to this file instead of standard output");
}

void emit(const OutputSpec& spec, const std::string& text, std::ostream& out) {
  if (spec.destination.empty()) {
    out << text;
    return;
  }
  std::ofstream file(spec.destination, std::ios::binary);
  if (!file) throw UsageError("--output: cannot open '" + spec.destination + "'");
  file << text;
}

double checked_range(const std::string& flag, double value, double lo,
                     double hi, const char* range_text) {
  const auto v = clamp_to_range(value, lo, hi);
  if (!v) {
    std::ostringstream msg;
    msg << flag << ": " << value << " outside " << range_text;
    throw UsageError(msg.str());
  }
  return *v;
}

StrategyParams checked_strategy(const std::string& flag,
                                const std::string& text) {
  const auto s = parse_strategy(text);
  if (!s) {
    throw UsageError(flag + ": expected C, D, Q or 'theta,phi', got '" + text +
                     "'");
  }
  return {checked_range(flag + " theta", s->theta, 0.0, kPi, "[0, pi]"),
          checked_range(flag + " phi", s->phi, 0.0, kHalfPi, "[0, pi/2]")};
}

equilibrium::StrategyGrid checked_grid(const std::string& text) {
  equilibrium::StrategyGrid grid;
  const auto x = text.find('x');
  try {
    if (x == std::string::npos) throw std::invalid_argument(text);
    std::size_t used = 0;
    grid.theta_steps = std::stoi(text.substr(0, x), &used);
    if (used != x) throw std::invalid_argument(text);
    const std::string rest = text.substr(x + 1);
    grid.phi_steps = std::stoi(rest, &used);
    if (used != rest.size()) throw std::invalid_argument(text);
  } catch (const std::exception&) {
    throw UsageError("--grid: expected THETAxPHI such as 65x33, got '" + text +
                     "'");
  }
  if (grid.theta_steps < 3 || grid.phi_steps < 3 || grid.theta_steps > 1025 ||
      grid.phi_steps > 1025) {
    throw UsageError("--grid: steps must lie in [3, 1025]");
  }
  return grid;
}

std::string fixed(double v, int precision = 6) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(precision) << v;
  return s.str();
}

std::string sci(double v) {
  std::ostringstream s;
  s << std::scientific << std::setprecision(3) << v;
  return s.str();
}

// ---------------------------------------------------------------- verify

struct Check {
  std::string scope;
  std::string name;
  double residual = 0.0;
  bool pass = false;
};

const char* const kConventions[] = {
    "beam splitter B(theta) = exp[-i(theta/2)(a^+b + b^+a)]",
    "phase shifter P(phi) = exp[i phi n]; conjugate pair P(phi,-phi)",
    "cross-Kerr K(chi) = exp[-i chi n_a n_d]; self-Kerr omitted; mirrors = identity",
    "strategy circuit P(phi,0) -> U_y(-theta/2) -> P(0,-phi) reproduces U(theta,phi)",
    "J target exp[+i(gamma/2)(a^+b - ab^+)(c^+d - cd^+)] so J|CC> = cos(gamma/2)|CC> + i sin(gamma/2)|DD>",
    "J circuit verified on the dual-rail block; Kerr strength is a solver output",
    "global phase quotiented in every comparison",
};

void verify_strategy_scope(double tol, std::vector<Check>& checks) {
  for (int i = 0; i < 9; ++i) {
    for (int j = 0; j < 5; ++j) {
      const StrategyParams s{kPi * i / 8.0, kHalfPi * j / 4.0};
      const auto check = optics::verify_strategy(s, tol);
      const double residual = std::max(check.match.residual, check.leakage);
      checks.push_back({"strategy",
                        "U(" + fixed(s.theta, 4) + "," + fixed(s.phi, 4) + ")",
                        residual, residual <= tol});
    }
  }
  // Rotation identities against the defining exponentials.
  const fock::Sector pair_sector{2, 1};
  const auto anti = fock::hopping_generator(
      pair_sector, 0, 1, fock::HoppingSymmetry::kAntisymmetric);
  const auto sym = fock::hopping_generator(pair_sector, 0, 1,
                                           fock::HoppingSymmetry::kSymmetric);
  for (const double beta : {-2.0, -0.7, 0.0, 0.9, 2.5}) {
    const auto ry = optics::single_photon_matrix(
        optics::rotation_y_circuit(beta / 2.0, {0, 1}));
    const auto ey = fock::exponentiate(anti, -beta / 2.0).entries();
    const double dy =
        fock::equal_up_to_global_phase(fock::Matrix(ry), ey, tol).residual;
    checks.push_back({"strategy", "U_y(" + fixed(beta, 2) + ")", dy, dy <= tol});
    const auto rx = optics::single_photon_matrix(
        optics::rotation_x_circuit(beta / 2.0, {0, 1}));
    const auto ex =
        fock::exponentiate(sym, beta / 2.0, fock::PhaseSign::kNegative)
            .entries();
    const double dx =
        fock::equal_up_to_global_phase(fock::Matrix(rx), ex, tol).residual;
    checks.push_back({"strategy", "U_x(" + fixed(beta, 2) + ")", dx, dx <= tol});
  }
}

void verify_jgate_scope(double tol, std::vector<Check>& checks) {
  for (int k = 0; k < 10; ++k) {
    const double gamma = kHalfPi * k / 9.0;
    const auto phases = optics::solve_jgate_phases(gamma);
    const std::string tag = "gamma=" + fixed(gamma, 4);
    checks.push_back({"jgate", "circuit vs target " + tag, phases.residual,
                      phases.valid && phases.residual <= tol});
    if (!phases.valid) continue;
    const auto u =
        optics::circuit_unitary(optics::jgate_circuit(phases), fock::kGameSector);
    const auto out = fock::project_dual_rail(fock::apply(
        u, fock::StateVector::basis_state(
               fock::kGameSector,
               std::span<const int>(fock::kDualRailOccupations[0]))));
    const auto ideal = game::initial_state(gamma);
    // Compare with the global phase of the circuit removed.
    const fock::Complex phase = out.amplitudes[0] / std::abs(out.amplitudes[0]);
    double err = 0.0;
    for (std::size_t i = 0; i < 4; ++i) {
      err = std::max(err, std::abs(out.amplitudes[i] / phase - ideal[i]));
    }
    checks.push_back({"jgate", "J|CC> amplitudes " + tag, err, err <= tol});
    checks.push_back(
        {"jgate", "leakage " + tag, out.leakage, out.leakage <= tol});
  }
}

void verify_commutator_scope(double tol, std::vector<Check>& checks) {
  for (int k = 0; k < 5; ++k) {
    const double gamma = kHalfPi * k / 4.0;
    const auto r = optics::verify_commutators(gamma);
    const std::string tag = " gamma=" + fixed(gamma, 4);
    checks.push_back({"commutators", "[J, D(x)D]" + tag, r.dd, r.dd <= tol});
    checks.push_back({"commutators", "[J, C(x)D]" + tag, r.cd, r.cd <= tol});
    checks.push_back({"commutators", "[J, D(x)C]" + tag, r.dc, r.dc <= tol});
  }
}

int cmd_verify(const std::string& scope, double tol, const OutputSpec& spec,
               std::ostream& out) {
  const auto start = std::chrono::steady_clock::now();
  std::vector<Check> checks;
  if (scope == "strategy" || scope == "all") verify_strategy_scope(tol, checks);
  if (scope == "jgate" || scope == "all") verify_jgate_scope(tol, checks);
  if (scope == "commutators" || scope == "all") {
    verify_commutator_scope(tol, checks);
  }
  const bool all_pass = std::all_of(checks.begin(), checks.end(),
                                    [](const Check& c) { return c.pass; });
  const double elapsed = std::chrono::duration<double>(
                             std::chrono::steady_clock::now() - start)
                             .count();

  std::ostringstream text;
  switch (spec.parsed()) {
    case Format::kJson: {
      json arr = json::array();
      for (const auto& c : checks) {
        arr.push_back(json{{"scope", c.scope},
                           {"name", c.name},
                           {"residual", c.residual},
                           {"pass", c.pass}});
      }
      json conv = json::array();
      for (const char* c : kConventions) conv.push_back(c);
      const json doc{{"schema_version", serialize::kSchemaVersion},
                     {"scope", scope},
                     {"tolerance", tol},
                     {"pass", all_pass},
                     {"conventions", conv},
                     {"checks", arr}};
      text << doc.dump(2) << '\n';
      break;
    }
    case Format::kCsv:
      text << "scope,check,residual,pass\n";
      for (const auto& c : checks) {
        text << c.scope << ",\"" << c.name << "\","
             << serialize::format_double(c.residual) << ','
             << (c.pass ? 1 : 0) << '\n';
      }
      break;
    case Format::kHuman:
      text << "verify scope=" << scope << " tol=" << sci(tol) << "\n";
      text << "conventions:\n";
      for (const char* c : kConventions) text << "  - " << c << "\n";
      for (const auto& c : checks) {
        text << (c.pass ? "  ok    " : "  FAIL  ") << std::left
             << std::setw(12) << c.scope << std::setw(36) << c.name
             << " residual " << sci(c.residual) << "\n";
      }
      text << (all_pass ? "PASS" : "FAIL") << " (" << checks.size()
           << " checks, " << fixed(elapsed, 2) << " s)\n";
      break;
  }
  emit(spec, text.str(), out);
  return all_pass ? kExitOk : kExitCheckFailed;
}

// ------------------------------------------------------------------ play

int cmd_play(double gamma, const StrategyParams& a, const StrategyParams& b,
             game::Backend backend, const OutputSpec& spec, std::ostream& out) {
  game::GameConfig config;
  config.gamma = gamma;
  config.backend = backend;
  const auto result = game::play(config, a, b);
  std::ostringstream text;
  switch (spec.parsed()) {
    case Format::kJson:
      text << serialize::game_result_to_json(result, gamma).dump(2) << '\n';
      break;
    case Format::kCsv:
      text << "gamma,p_cc,p_cd,p_dc,p_dd,payoff_a,payoff_b,backend,leakage\n"
           << serialize::format_double(gamma);
      for (double p : result.distribution.p) {
        text << ',' << serialize::format_double(p);
      }
      text << ',' << serialize::format_double(result.payoff_a) << ','
           << serialize::format_double(result.payoff_b) << ','
           << game::to_string(backend) << ','
           << serialize::format_double(result.leakage) << '\n';
      break;
    case Format::kHuman:
      text << "gamma " << fixed(gamma) << "  A=" << describe(a)
           << "  B=" << describe(b) << "  backend " << game::to_string(backend)
           << "\n";
      for (std::size_t k = 0; k < 4; ++k) {
        text << "  p(" << game::kOutcomeNames[k]
             << ") = " << fixed(result.distribution.p[k], 10) << "\n";
      }
      text << "payoffs (" << fixed(result.payoff_a) << ", "
           << fixed(result.payoff_b) << ")\n";
      if (backend == game::Backend::kOptical) {
        text << "leakage " << sci(result.leakage) << "\n";
      }
      break;
  }
  emit(spec, text.str(), out);
  return kExitOk;
}

// ----------------------------------------------------------------- sweep

int cmd_sweep(const equilibrium::SweepOptions& options, const OutputSpec& spec,
              std::ostream& out, std::ostream& err) {
  equilibrium::ThresholdSweep sweep;
  try {
    sweep = equilibrium::threshold_sweep(game::GameConfig{}, options);
  } catch (const equilibrium::SweepError& e) {
    err << "sweep failed: " << e.what() << "\n";
    return kExitCheckFailed;
  }
  std::ostringstream text;
  switch (spec.parsed()) {
    case Format::kJson:
      text << serialize::sweep_to_json(sweep).dump(2) << '\n';
      break;
    case Format::kCsv:
      text << serialize::sweep_to_csv(sweep);
      break;
    case Format::kHuman: {
      const auto show = [&](const char* name, const std::optional<double>& v,
                            double exact) {
        text << name << " = "
             << (v ? fixed(*v, 6) : std::string("not in range")) << "   ("
             << fixed(exact, 6) << " closed form)\n";
      };
      text << "grid " << options.grid.theta_steps << "x"
           << options.grid.phi_steps << ", eps " << sci(options.epsilon)
           << ", bisection tol " << sci(options.bisection_tol) << "\n";
      show("gamma1", sweep.gamma1, std::asin(std::sqrt(0.2)));
      show("gamma2", sweep.gamma2, std::asin(std::sqrt(0.4)));
      for (const auto& s : sweep.samples) {
        text << "  " << fixed(s.gamma, 6) << "  " << std::left << std::setw(14)
             << equilibrium::to_string(s.region) << " DD "
             << (s.dd_nash ? "nash" : "-   ") << "  QQ "
             << (s.qq_nash ? "nash" : "-") << "\n";
      }
      break;
    }
  }
  emit(spec, text.str(), out);
  return kExitOk;
}

// ------------------------------------------------------------- landscape

int cmd_landscape(double gamma, const StrategyParams& opponent,
                  const equilibrium::StrategyGrid& grid, const OutputSpec& spec,
                  std::ostream& out) {
  game::GameConfig config;
  config.gamma = gamma;
  const game::Game g(config);
  const auto landscape =
      game::payoff_landscape(g, opponent, grid.landscape_grid());
  std::ostringstream text;
  switch (spec.parsed()) {
    case Format::kJson:
      text << serialize::landscape_to_json(landscape, gamma, opponent).dump(2)
           << '\n';
      break;
    case Format::kHuman: {
      const auto br = equilibrium::best_response(g, opponent, grid);
      text << "payoff landscape for A vs " << describe(opponent) << " at gamma "
           << fixed(gamma) << " (" << grid.theta_steps << "x" << grid.phi_steps
           << ")\n"
           << "  max " << fixed(landscape.max()) << "  min "
           << fixed(landscape.min()) << "\n"
           << "  best response " << describe(br.strategy) << " payoff "
           << fixed(br.payoff) << "\n";
      break;
    }
    case Format::kCsv:
      text << serialize::landscape_to_csv(landscape);
      break;
  }
  emit(spec, text.str(), out);
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Optical quantum prisoner's dilemma: verification, play, sweeps",
               "qpd"};
  app.require_subcommand(1);

  OutputSpec verify_out;
  std::string scope = "all";
  double verify_tol = 1e-8;
  auto* verify = app.add_subcommand("verify", "Check the optical constructions");
  verify->add_option("--scope", scope, "strategy | jgate | commutators | all")
      ->check(CLI::IsMember({"strategy", "jgate", "commutators", "all"}));
  verify->add_option("--tol", verify_tol, "Residual tolerance");
  add_output_flags(verify, verify_out);

  OutputSpec play_out;
  double play_gamma = 0.0;
  std::string play_a = "C";
  std::string play_b = "C";
  std::string backend = "qubit";
  auto* play = app.add_subcommand("play", "Play one round");
  play->add_option("--gamma", play_gamma, "Entanglement in [0, pi/2]")->required();
  play->add_option("--a", play_a, "Alice: C, D, Q or theta,phi");
  play->add_option("--b", play_b, "Bob: C, D, Q or theta,phi");
  play->add_option("--backend", backend, "qubit | optical")
      ->check(CLI::IsMember({"qubit", "optical"}));
  add_output_flags(play, play_out);

  OutputSpec sweep_out;
  double sweep_from = 0.0;
  double sweep_to = kHalfPi;
  int sweep_samples = 50;
  double sweep_tol = 1e-6;
  double sweep_eps = equilibrium::kDefaultEpsilon;
  std::string sweep_grid = "65x33";
  auto* sweep = app.add_subcommand("sweep", "Locate the entanglement thresholds");
  sweep->add_option("--from", sweep_from, "Lowest gamma");
  sweep->add_option("--to", sweep_to, "Highest gamma");
  sweep->add_option("--samples", sweep_samples, "Number of gamma samples");
  sweep->add_option("--grid", sweep_grid, "Strategy grid THETAxPHI");
  sweep->add_option("--bisection-tol", sweep_tol, "Bisection tolerance");
  sweep->add_option("--eps", sweep_eps, "Nash tolerance (payoff units)");
  add_output_flags(sweep, sweep_out);

  OutputSpec land_out;
  land_out.format = "csv";
  double land_gamma = 0.0;
  std::string land_opponent = "D";
  std::string land_grid = "65x33";
  auto* landscape =
      app.add_subcommand("landscape", "Payoff of A over the strategy grid");
  landscape->add_option("--gamma", land_gamma, "Entanglement in [0, pi/2]")
      ->required();
  landscape->add_option("--opponent", land_opponent, "C, D, Q or theta,phi");
  landscape->add_option("--grid", land_grid, "Strategy grid THETAxPHI");
  add_output_flags(landscape, land_out);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (*verify) {
      if (!(verify_tol >= 0.0)) throw UsageError("--tol: must be >= 0");
      return cmd_verify(scope, verify_tol, verify_out, out);
    }
    if (*play) {
      const double gamma =
          checked_range("--gamma", play_gamma, 0.0, kHalfPi, "[0, pi/2]");
      const auto a = checked_strategy("--a", play_a);
      const auto b = checked_strategy("--b", play_b);
      return cmd_play(gamma, a, b, *game::parse_backend(backend), play_out, out);
    }
    if (*sweep) {
      equilibrium::SweepOptions options;
      options.gamma_from =
          checked_range("--from", sweep_from, 0.0, kHalfPi, "[0, pi/2]");
      options.gamma_to =
          checked_range("--to", sweep_to, 0.0, kHalfPi, "[0, pi/2]");
      if (options.gamma_from >= options.gamma_to) {
        throw UsageError("--from: must be below --to");
      }
      if (sweep_samples < 2 || sweep_samples > 10000) {
        throw UsageError("--samples: must lie in [2, 10000]");
      }
      if (!(sweep_tol > 0.0)) throw UsageError("--bisection-tol: must be > 0");
      if (!(sweep_eps >= 0.0)) throw UsageError("--eps: must be >= 0");
      options.samples = sweep_samples;
      options.grid = checked_grid(sweep_grid);
      options.bisection_tol = sweep_tol;
      options.epsilon = sweep_eps;
      return cmd_sweep(options, sweep_out, out, err);
    }
    if (*landscape) {
      const double gamma =
          checked_range("--gamma", land_gamma, 0.0, kHalfPi, "[0, pi/2]");
      const auto opponent = checked_strategy("--opponent", land_opponent);
      return cmd_landscape(gamma, opponent, checked_grid(land_grid), land_out,
                           out);
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace qpd::cli
