#include "loccx/cli.hpp"

#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "loccx/applications.hpp"
#include "loccx/error.hpp"
#include "loccx/faithful.hpp"
#include "loccx/io.hpp"
#include "loccx/majorization.hpp"
#include "loccx/oracle.hpp"

namespace loccx::cli {

namespace {

using nlohmann::json;

struct Options {
  std::string format = "text";
  std::string psi, phi, eta, state;
  std::optional<std::uint64_t> seed;
  double grid_step = 0.01;
  std::size_t trials = 10'000;
  std::optional<std::string> out_path;
  std::optional<std::size_t> n;
  std::size_t m = 1;
  std::optional<double> epsilon;
  double x_min = 0.1, x_max = 0.5;
  std::size_t points = 5;
};

void print_value(std::ostream& os, const json& v) {
  if (v.is_array()) {
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i) os << ' ';
      print_value(os, v[i]);
    }
  } else if (v.is_number_float()) {
    os << std::setprecision(12) << v.get<double>();
  } else if (v.is_string()) {
    os << v.get<std::string>();
  } else {
    os << v.dump();
  }
}

void print_text(std::ostream& os, const json& j, const std::string& indent = "") {
  for (const auto& [key, value] : j.items()) {
    const bool nested = value.is_object() ||
                        (value.is_array() && !value.empty() && value[0].is_object());
    if (!nested) {
      os << indent << key << ": ";
      print_value(os, value);
      os << '\n';
      continue;
    }
    os << indent << key << ":\n";
    if (value.is_object()) {
      print_text(os, value, indent + "  ");
    } else {
      for (const auto& item : value) {
        print_text(os, item, indent + "  ");
        os << indent << "  --\n";
      }
    }
  }
}

void emit(std::ostream& out, const Options& opt, const json& j) {
  if (opt.format == "json") {
    out << j.dump(2) << '\n';
  } else if (j.is_array()) {
    for (const auto& item : j) {
      print_text(out, item);
      out << '\n';
    }
  } else {
    print_text(out, j);
  }
}

json warnings_for(std::initializer_list<std::pair<const char*, const SchmidtSpectrum*>> specs) {
  json w = json::array();
  for (const auto& [name, s] : specs)
    if (s->reordered())
      w.push_back(std::string(name) + " spectrum was not sorted; it was reordered");
  return w;
}

std::uint64_t grid_budget() {
  if (const char* env = std::getenv(kBudgetEnv)) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw ValidationError(std::string(kBudgetEnv) + " is not a non-negative integer");
    }
  }
  return oracle::kDefaultGridBudget;
}

int cmd_report(const Options& opt, std::ostream& out) {
  const SchmidtSpectrum psi = io::spectrum_of(io::load_state(opt.psi));
  const SchmidtSpectrum phi = io::spectrum_of(io::load_state(opt.phi));
  json j = io::to_json(optimal_fidelity(psi, phi));
  j["warnings"] = warnings_for({{"psi", &psi}, {"phi", &phi}});
  emit(out, opt, j);
  return kOk;
}

int cmd_schmidt(const Options& opt, std::ostream& out) {
  const SchmidtSpectrum s = io::spectrum_of(io::load_state(opt.state));
  json j = io::to_json(s);
  j["rank"] = s.rank();
  emit(out, opt, j);
  return kOk;
}

int cmd_teleport(const Options& opt, std::ostream& out) {
  const SchmidtSpectrum psi = io::spectrum_of(io::load_state(opt.psi));
  json j{{"n", opt.n.value_or(psi.size())},
         {"F_max", concentration_fidelity(psi, opt.n)},
         {"teleportation_fidelity", teleportation_fidelity(psi, opt.n)},
         {"robustness", robustness_of_entanglement(psi, opt.n)}};
  emit(out, opt, j);
  return kOk;
}

int cmd_dilute(const Options& opt, std::ostream& out) {
  const SchmidtSpectrum phi = io::spectrum_of(io::load_state(opt.phi));
  const DilutionResult d = dilution_fidelity(opt.m, phi);
  emit(out, opt, {{"m", opt.m}, {"fidelity", d.fidelity}, {"xi", d.xi.values()}});
  return kOk;
}

int cmd_catalyze(const Options& opt, std::ostream& out) {
  const SchmidtSpectrum psi = io::spectrum_of(io::load_state(opt.psi));
  const SchmidtSpectrum phi = io::spectrum_of(io::load_state(opt.phi));
  const SchmidtSpectrum eta = io::spectrum_of(io::load_state(opt.eta));
  json j = io::to_json(catalysis_check(psi, phi, eta));
  if (opt.epsilon) {
    const RobustnessInterval iv = robustness_interval(tensor(psi, eta), tensor(phi, eta), *opt.epsilon);
    j["epsilon"] = *opt.epsilon;
    j["catalyzed_interval"] = {iv.lower, iv.upper};
    j["enhancement_survives"] = catalysis_survives_noise(psi, phi, eta, *opt.epsilon);
  }
  emit(out, opt, j);
  return kOk;
}

int cmd_nl_dist(const Options& opt, std::ostream& out) {
  const SchmidtSpectrum a = io::spectrum_of(io::load_state(opt.psi));
  const SchmidtSpectrum b = io::spectrum_of(io::load_state(opt.phi));
  emit(out, opt,
       {{"F_forward", optimal_fidelity(a, b).f_opt},
        {"F_backward", optimal_fidelity(b, a).f_opt},
        {"F_nl", nonlocal_fidelity(a, b)},
        {"T_nl", nonlocal_trace_distance(a, b)}});
  return kOk;
}

json claim(const std::string& name, double theorem, double oracle_value, bool pass) {
  return {{"claim", name},
          {"theorem_value", theorem},
          {"oracle_value", oracle_value},
          {"gap", theorem - oracle_value},
          {"pass", pass}};
}

int cmd_verify(const Options& opt, std::ostream& out) {
  if (!opt.seed)
    throw ValidationError("verify requires an explicit --seed");
  const io::StateSpec psi_spec = io::load_state(opt.psi);
  const io::StateSpec phi_spec = io::load_state(opt.phi);
  const SchmidtSpectrum psi = io::spectrum_of(psi_spec);
  const SchmidtSpectrum phi = io::spectrum_of(phi_spec);
  const TransformReport report = optimal_fidelity(psi, phi);
  json claims = json::array();

  oracle::GridSpec grid;
  grid.step = opt.grid_step;
  grid.budget = grid_budget();
  const double grid_value = oracle::grid_max_fidelity(psi, phi, grid);
  claims.push_back(claim("optimal fidelity dominates grid search", report.f_opt, grid_value,
                         grid_value <= report.f_opt + 1e-12 &&
                             report.f_opt - grid_value <= 2.0 * opt.grid_step));

  const std::size_t n = std::max(psi.size(), phi.size());
  const BipartiteState tau = io::state_of(psi_spec, n);
  const BipartiteState omega = io::state_of(phi_spec, n);
  const double bound = aligned_fidelity(psi, phi);
  const double sampled = oracle::sample_unitary_overlap(
      tau, omega, {.trials = opt.trials, .seed = *opt.seed, .inject_aligning = true});
  claims.push_back(claim("local unitary overlap bounded by aligned fidelity", bound, sampled,
                         sampled <= bound + 1e-9 && sampled >= bound - 1e-10));

  const auto ensembles = oracle::sample_feasible_ensembles(psi, phi, opt.trials, *opt.seed);
  const double best = *std::max_element(ensembles.begin(), ensembles.end());
  claims.push_back(claim("deterministic conversion dominates ensembles", report.f_opt, best,
                         best <= report.f_opt + 1e-10));

  const double p_after = conclusive_probability(report.xi, phi);
  claims.push_back(claim("conclusive probability preserved", report.conclusive_p, p_after,
                         std::abs(report.conclusive_p - p_after) <= 1e-10));

  emit(out, opt, claims);
  for (const auto& c : claims)
    if (!c["pass"].get<bool>())
      return kVerificationFailed;
  return kOk;
}

int cmd_sweep(const Options& opt, std::ostream& out) {
  const SchmidtSpectrum phi = io::spectrum_of(io::load_state(opt.phi));
  if (opt.points == 0)
    throw ValidationError("--points must be at least 1");
  if (!(opt.x_min >= 0.0 && opt.x_max <= 1.0 && opt.x_min <= opt.x_max))
    throw ValidationError("sweep range must satisfy 0 <= x-min <= x-max <= 1");
  io::CsvTable table{{"x", "f_opt", "p_conclusive", "trace_distance"}, {}};
  for (std::size_t i = 0; i < opt.points; ++i) {
    const double x = opt.points == 1
                         ? opt.x_min
                         : opt.x_min + (opt.x_max - opt.x_min) * static_cast<double>(i) /
                                           static_cast<double>(opt.points - 1);
    const TransformReport r = optimal_fidelity(SchmidtSpectrum({1.0 - x, x}), phi);
    table.rows.push_back({x, r.f_opt, r.conclusive_p, r.trace_distance});
  }
  if (opt.out_path)
    io::emit_csv(table, *opt.out_path);
  else
    out << io::format_csv(table);
  return kOk;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Optimal faithful LOCC transformations between bipartite pure states", "loccxform"};
  app.require_subcommand(1);
  Options opt;

  auto add_format = [&](CLI::App* sub) {
    sub->add_option("--format", opt.format, "Output format")
        ->check(CLI::IsMember({"text", "json"}));
  };
  const std::string state_help = "State as inline JSON or a path to a JSON file";

  auto* report = app.add_subcommand("report", "Optimal faithful conversion psi -> phi");
  report->add_option("--psi", opt.psi, state_help)->required();
  report->add_option("--phi", opt.phi, state_help)->required();
  add_format(report);

  auto* schmidt = app.add_subcommand("schmidt", "Schmidt spectrum of a state");
  schmidt->add_option("--state", opt.state, state_help)->required();
  add_format(schmidt);

  auto* teleport = app.add_subcommand("teleport", "Concentration and teleportation fidelity");
  teleport->add_option("--psi", opt.psi, state_help)->required();
  teleport->add_option("--n", opt.n, "Dimension of the maximally entangled target");
  add_format(teleport);

  auto* dilute = app.add_subcommand("dilute", "Most faithful dilution from an m-state");
  dilute->add_option("m", opt.m, "Schmidt rank of the maximally entangled source")
      ->required()
      ->check(CLI::PositiveNumber);
  dilute->add_option("--phi", opt.phi, state_help)->required();
  add_format(dilute);

  auto* catalyze = app.add_subcommand("catalyze", "Catalytic reduction of the trace distance");
  catalyze->add_option("--psi", opt.psi, state_help)->required();
  catalyze->add_option("--phi", opt.phi, state_help)->required();
  catalyze->add_option("--eta", opt.eta, "Catalyst state")->required();
  catalyze->add_option("--epsilon", opt.epsilon, "Noise trace distance to test against");
  add_format(catalyze);

  auto* nl = app.add_subcommand("nl-dist", "Non-local fidelity and trace distance");
  nl->add_option("--psi", opt.psi, state_help)->required();
  nl->add_option("--phi", opt.phi, state_help)->required();
  add_format(nl);

  auto* verify = app.add_subcommand("verify", "Cross-check the optimum against brute-force oracles");
  verify->add_option("--psi", opt.psi, state_help)->required();
  verify->add_option("--phi", opt.phi, state_help)->required();
  verify->add_option("--seed", opt.seed, "Random seed")->required();
  verify->add_option("--grid-step", opt.grid_step, "Simplex grid spacing");
  verify->add_option("--trials", opt.trials, "Monte Carlo trials");
  add_format(verify);

  auto* sweep = app.add_subcommand("sweep", "CSV of f_opt for psi = (1-x, x) over a range of x");
  sweep->add_option("--phi", opt.phi, state_help)->default_val(R"({"schmidt":[0.5,0.5]})");
  sweep->add_option("--x-min", opt.x_min, "First x");
  sweep->add_option("--x-max", opt.x_max, "Last x");
  sweep->add_option("--points", opt.points, "Number of x values");
  sweep->add_option("--out", opt.out_path, "Output CSV path (stdout if omitted)");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  if (!rev.empty())
    rev.pop_back(); // program name
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kOk;
    }
    err << "error: " << e.what() << '\n';
    return kValidation;
  }

  try {
    if (*report) return cmd_report(opt, out);
    if (*schmidt) return cmd_schmidt(opt, out);
    if (*teleport) return cmd_teleport(opt, out);
    if (*dilute) return cmd_dilute(opt, out);
    if (*catalyze) return cmd_catalyze(opt, out);
    if (*nl) return cmd_nl_dist(opt, out);
    if (*verify) return cmd_verify(opt, out);
    if (*sweep) return cmd_sweep(opt, out);
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kIo;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kValidation;
  }
  return kValidation;
}

} // namespace loccx::cli
