#include "commands.hpp"

#include <sstream>

#include "CLI11.hpp"

namespace twobc::cli {

namespace {

const Scenario& need_scenario(const Scenario* sc, const std::string& command) {
  if (sc == nullptr) throw UsageError(command + " needs --scenario");
  return *sc;
}

const std::string& need_boundary(const Scenario& sc, const std::string& role, const std::string& command) {
  auto it = sc.boundaries.find(role);
  if (it == sc.boundaries.end()) throw UsageError(command + " needs boundaries." + role + " in the scenario");
  return it->second;
}

template <class T>
T pick(const std::optional<T>& flag, const std::optional<T>& scenario_value, const char* what,
       const std::string& command) {
  if (flag) return *flag;
  if (scenario_value) return *scenario_value;
  throw UsageError(command + " needs " + what);
}

template <class T>
std::optional<T> from_scenario(const Scenario* sc, std::optional<T> Parameters::*member) {
  if (sc == nullptr) return std::nullopt;
  return sc->parameters.*member;
}

std::string sequence_text(const HistorySequence& seq) {
  std::string out;
  for (std::size_t i = 0; i < seq.labels.size(); ++i) out += (i ? "-" : "") + std::to_string(seq.labels[i]);
  return out;
}

Cell witness(const std::optional<std::size_t>& w) { return w ? Cell(*w) : Cell(); }

Report check_boundary(const Scenario& sc) {
  const std::string cmd = "check-boundary";
  const auto rho_i = sc.density(need_boundary(sc, "rho_i", cmd));
  const auto rho_f = sc.density(need_boundary(sc, "rho_f", cmd));
  const auto p_a = sc.projector(need_boundary(sc, "p_a", cmd));
  const auto p_b = sc.projector(need_boundary(sc, "p_b", cmd));
  const UnitaryOperator u = sc.layout ? compose_schedule(sc.factored_schedule(), *sc.layout)
                                      : UnitaryOperator::identity(rho_i.dim());

  const auto v = classify_boundary_solution(BoundaryPair(rho_i, rho_f, p_a, p_b, u));
  const auto& d = v.diagnostics;
  Report r{cmd, {}, {}};
  r.summary = {{"branch", std::string(to_string(v.branch))},
               {"A", v.a},
               {"B", v.b},
               {"roundtrip_consistent", d.roundtrip.consistent}};
  Table t{"diagnostics", {"quantity", "value"}, {}};
  t.rows = {{"evolution_residual", d.evolution_residual},
            {"p_a_identity_residual", d.p_a_identity_residual},
            {"p_b_identity_residual", d.p_b_identity_residual},
            {"rho_i_vs_p_a", d.rho_i_vs_p_a},
            {"rho_f_vs_p_b", d.rho_f_vs_p_b},
            {"initial_support_residual", d.initial_support_residual},
            {"final_support_residual", d.final_support_residual},
            {"roundtrip_initial_residual", d.roundtrip.initial_residual},
            {"roundtrip_final_residual", d.roundtrip.final_residual},
            {"roundtrip_normalization_residual", d.roundtrip.normalization_residual}};
  r.tables.push_back(std::move(t));
  return r;
}

Report histories(const Scenario& sc) {
  const std::string cmd = "histories";
  const auto rho_p = sc.density(need_boundary(sc, "rho_p", cmd));
  const auto rho_m = sc.density(need_boundary(sc, "rho_m", cmd));
  const auto slots = sc.history_slots();
  if (slots.empty()) throw UsageError("histories needs at least one slot");

  std::vector<UnitaryOperator> intervals;
  if (sc.schedule.empty()) {
    intervals.assign(slots.size() - 1, UnitaryOperator::identity(slots.front().dim()));
  } else {
    if (sc.schedule.size() + 1 != slots.size()) {
      throw DimensionMismatch("schedule has " + std::to_string(sc.schedule.size()) + " intervals but " +
                              std::to_string(slots.size()) + " slots need " + std::to_string(slots.size() - 1));
    }
    for (const auto& interval : sc.factored_schedule()) intervals.push_back(interval_unitary(interval, *sc.layout));
  }

  HistoryOptions options;
  if (sc.parameters.cap) options.sequence_cap = *sc.parameters.cap;
  const auto dist = history_distribution(rho_p, slots, intervals, rho_m, options);

  Report r{cmd, {}, {}};
  r.summary = {{"normalization", dist.normalization}, {"sequences", dist.entries.size()}};
  Table t{"sequences", {"sequence", "weight", "multiplicity", "probability"}, {}};
  for (const auto& e : dist.entries) {
    t.rows.push_back({sequence_text(e.sequence), e.weight, e.multiplicity, e.probability});
  }
  r.tables.push_back(std::move(t));
  return r;
}

Report mzi(const Options& o, const Scenario* sc) {
  const std::string cmd = "mzi";
  const double theta = pick(o.theta, from_scenario(sc, &Parameters::theta), "--theta", cmd);
  const double phi = pick(o.phi, from_scenario(sc, &Parameters::phi), "--phi", cmd);
  const auto res = mzi_distribution(theta, phi);
  const auto [sqm_c, sqm_d] = sqm_reference(theta);

  Report r{cmd, {}, {}};
  r.summary = {{"theta", theta}, {"phi", phi}, {"normalization", res.distribution.normalization}};
  Table t{"paths", {"path", "two_boundary", "closed_form", "sqm"}, {}};
  t.rows = {{"c", res.prob_c, res.closed_form_c, sqm_c}, {"d", res.prob_d, res.closed_form_d, sqm_d}};
  r.tables.push_back(std::move(t));
  return r;
}

Report born(const Options& o, const Scenario* sc) {
  const std::string cmd = "born";
  std::vector<Complex> mu;
  if (o.mu) {
    mu.assign(o.mu->begin(), o.mu->end());
  } else if (sc != nullptr && sc->parameters.mu) {
    mu = *sc->parameters.mu;
  } else {
    throw UsageError("born needs --mu or parameters.mu");
  }
  const std::size_t runs = o.runs.value_or(from_scenario(sc, &Parameters::runs).value_or(kDefaultRuns));
  const std::uint64_t seed = o.seed.value_or(from_scenario(sc, &Parameters::seed).value_or(kDefaultSeed));
  const InstrumentDims dims = from_scenario(sc, &Parameters::dims).value_or(InstrumentDims{});

  const auto res = born_recovery_experiment(mu, runs, seed, dims);
  Report r{cmd, {}, {}};
  r.summary = {{"runs", runs},
               {"seed", static_cast<std::size_t>(seed)},
               {"dims", std::to_string(dims.system) + "x" + std::to_string(dims.m) + "x" + std::to_string(dims.n)}};
  Table t{"outcomes", {"outcome", "mu", "expected", "count", "frequency", "std_error"}, {}};
  for (std::size_t j = 0; j < mu.size(); ++j) {
    t.rows.push_back({j, mu[j], res.expected[j], res.counts[j], res.frequencies[j], res.std_errors[j]});
  }
  r.tables.push_back(std::move(t));
  return r;
}

Report classify(const Options& o, const Scenario& sc) {
  const std::string cmd = "classify";
  if (!sc.layout) throw UsageError("classify needs a layout in the scenario");
  const std::size_t time = pick(o.time, sc.parameters.time, "--time or parameters.time", cmd);
  const auto bases = sc.preferred_basis_ops();
  const auto report = classify_subsystems(sc.factored_schedule(), *sc.layout, bases, time);

  Report r{cmd, {}, {}};
  r.summary = {{"time", time}, {"composite", std::string(to_string(report.composite))}};
  Table t{"subsystems",
          {"subsystem", "type", "fixed_by_initial", "fixed_by_final", "initial_witness", "final_witness"},
          {}};
  for (const auto& v : report.subsystems) {
    t.rows.push_back({v.subsystem, std::string(to_string(v.type)), v.fixed_by_initial, v.fixed_by_final,
                      witness(v.initial_witness), witness(v.final_witness)});
  }
  r.tables.push_back(std::move(t));
  return r;
}

}  // namespace

Report run_command(const Options& o, const Scenario* sc) {
  if (o.command == "check-boundary") return check_boundary(need_scenario(sc, o.command));
  if (o.command == "histories") return histories(need_scenario(sc, o.command));
  if (o.command == "mzi") return mzi(o, sc);
  if (o.command == "born") return born(o, sc);
  if (o.command == "classify") return classify(o, need_scenario(sc, o.command));
  throw UsageError("unknown command '" + o.command + "'");
}

int run_cli(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Two-boundary quantum mechanics on finite-dimensional systems", "twobc"};
  Options o;
  std::string format = "table";
  std::uint64_t seed = 0;
  std::size_t runs = 0, time = 0;
  double theta = 0.0, phi = 0.0;
  std::vector<double> mu;
  std::string scenario;

  app.add_option("command", o.command, "check-boundary | histories | mzi | born | classify")
      ->required()
      ->check(CLI::IsMember({"check-boundary", "histories", "mzi", "born", "classify"}));
  auto* scenario_opt = app.add_option("--scenario", scenario, "Scenario file (YAML)");
  app.add_option("--format", format, "table | csv | json")->check(CLI::IsMember({"table", "csv", "json"}));
  auto* seed_opt = app.add_option("--seed", seed, "Monte Carlo seed");
  auto* runs_opt = app.add_option("--runs", runs, "Monte Carlo runs")->check(CLI::PositiveNumber);
  auto* theta_opt = app.add_option("--theta", theta, "First beam splitter angle");
  auto* phi_opt = app.add_option("--phi", phi, "Second beam splitter angle");
  auto* mu_opt = app.add_option("--mu", mu, "Real outcome amplitudes for born");
  auto* time_opt = app.add_option("--time", time, "Classification time");

  std::vector<std::string> argv_store{"twobc"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_store) argv.push_back(a.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? exit_code::kOk : exit_code::kUsage;
  }

  o.format = *parse_format(format);
  if (*scenario_opt) o.scenario = scenario;
  if (*seed_opt) o.seed = seed;
  if (*runs_opt) o.runs = runs;
  if (*theta_opt) o.theta = theta;
  if (*phi_opt) o.phi = phi;
  if (*mu_opt) o.mu = mu;
  if (*time_opt) o.time = time;

  auto fail = [&](int code, const std::string& what) {
    err << "twobc: error: " << what << '\n';
    return code;
  };

  try {
    std::optional<Scenario> sc;
    if (o.scenario) sc = load_scenario(*o.scenario);
    const Report report = run_command(o, sc ? &*sc : nullptr);
    std::ostringstream buf;
    render(report, o.format, buf);
    out << buf.str();
    return exit_code::kOk;
  } catch (const ScenarioValidationError& e) {
    return fail(exit_code::kValidation, e.what());
  } catch (const ScenarioError& e) {
    return fail(exit_code::kParse, e.what());
  } catch (const ImpossibleBoundary& e) {
    return fail(exit_code::kImpossibleBoundary, std::string("impossible boundary: ") + e.what());
  } catch (const AllWeightsZero& e) {
    return fail(exit_code::kNoConsistentHistories, std::string("no consistent histories: ") + e.what());
  } catch (const ValidationError& e) {
    return fail(exit_code::kValidation, e.what());
  } catch (const DimensionMismatch& e) {
    return fail(exit_code::kValidation, e.what());
  } catch (const UntaggedInterval& e) {
    return fail(exit_code::kValidation, e.what());
  } catch (const std::exception& e) {
    return fail(exit_code::kUsage, e.what());
  }
}

}  // namespace twobc::cli
