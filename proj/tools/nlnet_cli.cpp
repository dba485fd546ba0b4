// Command-line driver. Talks to the solver through the C interface only.

#include "nlnet/nlnet.h"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

  constexpr int kExitOk = 0;
  constexpr int kExitValidation = 1;
  constexpr int kExitRuntime = 2;

  struct Failure {
    int code;
    std::string message;
  };

  int exit_code(nlnet_status st) {
    switch (st) {
      case NLNET_OK: return kExitOk;
      case NLNET_ERR_CONFIG:
      case NLNET_ERR_PARSE:
      case NLNET_ERR_DOMAIN:
      case NLNET_ERR_ARGUMENT: return kExitValidation;
      default: return kExitRuntime;
    }
  }

  void check(nlnet_status st) {
    if (st != NLNET_OK) {
      throw Failure{exit_code(st), std::string{nlnet_status_name(st)} + ": " + nlnet_last_error()};
    }
  }

  std::vector<double> parse_list(std::string const& text) {
    std::vector<double> values;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
      if (item.find_first_not_of(" \t") == std::string::npos) {
        continue;
      }
      std::size_t used = 0;
      double v = 0.0;
      try {
        v = std::stod(item, &used);
      } catch (std::exception const&) {
        used = 0;
      }
      if (used == 0 || item.find_first_not_of(" \t", used) != std::string::npos) {
        throw Failure{kExitValidation, "not a number in list: '" + item + "'"};
      }
      values.push_back(v);
    }
    return values;
  }

  struct ScenarioDeleter {
    void operator()(nlnet_scenario* s) const { nlnet_scenario_free(s); }
  };
  struct ResultDeleter {
    void operator()(nlnet_result* r) const { nlnet_result_free(r); }
  };
  using ScenarioPtr = std::unique_ptr<nlnet_scenario, ScenarioDeleter>;
  using ResultPtr = std::unique_ptr<nlnet_result, ResultDeleter>;

  // Scenario source and the overrides shared by the run commands. Flags win
  // over the corresponding fields of the scenario file.
  struct ScenarioArgs {
    std::string file;
    std::string builtin;
    std::optional<double> eta;
    std::optional<double> dx;
    std::optional<double> horizon;
    std::optional<std::string> model;
    std::optional<std::string> cfl;
    std::vector<int> ttt_roads;

    void add_to(CLI::App* cmd, bool with_model = true) {
      cmd->add_option("scenario", file, "Scenario JSON file")->check(CLI::ExistingFile);
      cmd->add_option("--builtin", builtin, "Built-in scenario")->check(CLI::IsMember({"diamond"}));
      cmd->add_option("--eta", eta, "Nonlocal range (multiple of dx)");
      cmd->add_option("--dx", dx, "Cell width");
      cmd->add_option("--T", horizon, "Final time");
      if (with_model) {
        cmd->add_option("--model", model, "Model")->check(CLI::IsMember(
            {"nonlocal", "nonlocal-maxflux", "nonlocal-distribution", "local-maxflux",
             "local-distribution", "limit"}));
      }
      cmd->add_option("--cfl", cfl, "Time step rule")
          ->check(CLI::IsMember({"strict", "relaxed", "adaptive"}));
      cmd->add_option("--ttt-roads", ttt_roads, "Roads summed by the total travel time")
          ->delimiter(',');
    }

    ScenarioPtr load() const {
      if (file.empty() == builtin.empty()) {
        throw Failure{kExitValidation, "give either a scenario file or --builtin"};
      }
      nlnet_scenario* raw = nullptr;
      check(file.empty() ? nlnet_scenario_builtin(builtin.c_str(), &raw)
                         : nlnet_scenario_load(file.c_str(), &raw));
      ScenarioPtr s{raw};
      if (dx) check(nlnet_scenario_set_dx(s.get(), *dx));
      if (eta) check(nlnet_scenario_set_eta(s.get(), *eta));
      if (horizon) check(nlnet_scenario_set_horizon(s.get(), *horizon));
      if (model) check(nlnet_scenario_set_model(s.get(), model->c_str()));
      if (cfl) check(nlnet_scenario_set_cfl(s.get(), cfl->c_str()));
      if (!ttt_roads.empty()) {
        check(nlnet_scenario_set_travel_time_roads(s.get(), ttt_roads.data(), ttt_roads.size()));
      }
      return s;
    }
  };

  std::string model_of(nlnet_scenario const* s) {
    char buf[64];
    size_t needed = 0;
    check(nlnet_scenario_get_model(s, buf, sizeof buf, &needed));
    return buf;
  }

  std::string output_dir_of(nlnet_scenario const* s) {
    size_t needed = 0;
    check(nlnet_scenario_get_output_dir(s, nullptr, 0, &needed));
    std::string buf(needed, '\0');
    check(nlnet_scenario_get_output_dir(s, buf.data(), buf.size(), &needed));
    buf.resize(needed - 1);
    return buf;
  }

  ResultPtr run(nlnet_scenario const* s) {
    nlnet_result* raw = nullptr;
    check(nlnet_simulate(s, &raw));
    ResultPtr r{raw};
    for (size_t i = 0; i < nlnet_result_warning_count(r.get()); ++i) {
      std::cerr << "warning: " << nlnet_result_warning(r.get(), i) << '\n';
    }
    return r;
  }

  nlnet_measures measures_of(nlnet_result const* r) {
    nlnet_measures m{};
    check(nlnet_result_measures(r, &m));
    return m;
  }

  std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
  }

  // Writes to the file, or stdout when the path is empty.
  void emit(std::string const& path, std::string const& text) {
    if (path.empty()) {
      std::cout << text;
      return;
    }
    std::ofstream out(path);
    if (!out) {
      throw Failure{kExitRuntime, "cannot write " + path};
    }
    out << text;
  }

  // ---------------------------------------------------------------------------

  int cmd_simulate(ScenarioArgs const& args, std::string out_dir) {
    auto s = args.load();
    if (out_dir.empty()) {
      out_dir = output_dir_of(s.get());
    }
    auto r = run(s.get());
    auto const m = measures_of(r.get());
    std::cout << "model              " << model_of(s.get()) << '\n'
              << "final time         " << num(m.final_time) << '\n'
              << "steps              " << m.steps << '\n'
              << "outflow            " << num(m.outflow) << '\n'
              << "total travel time  " << num(m.total_travel_time) << '\n'
              << "congestion         " << num(m.congestion) << '\n'
              << "mass balance error " << num(m.mass_balance_error) << '\n';
    if (!out_dir.empty()) {
      check(nlnet_result_write(r.get(), out_dir.c_str()));
      std::cout << "results written to " << out_dir << '\n';
    }
    return kExitOk;
  }

  int cmd_sweep(ScenarioArgs const& args, std::vector<double> const& etas,
                std::string const& family, bool baseline, std::string const& out) {
    std::ostringstream csv;
    csv << "model,eta,outflow,total_travel_time,congestion\n";
    auto row = [&](std::string const& model, std::string const& eta) {
      auto s = args.load();
      check(nlnet_scenario_set_model(s.get(), model.c_str()));
      if (!eta.empty()) {
        check(nlnet_scenario_set_eta(s.get(), std::stod(eta)));
      }
      auto r = run(s.get());
      auto const m = measures_of(r.get());
      csv << model << ',' << eta << ',' << num(m.outflow) << ',' << num(m.total_travel_time) << ','
          << num(m.congestion) << '\n';
    };
    for (double eta : etas) {
      row("nonlocal-" + family, num(eta));
    }
    if (baseline && !etas.empty()) {
      row("local-" + family, "");
    }
    emit(out, csv.str());
    return kExitOk;
  }

  int cmd_compare(ScenarioArgs const& args, std::string const& model_a,
                  std::string const& model_b, std::optional<double> at, std::string const& out) {
    auto a = args.load();
    auto b = args.load();
    check(nlnet_scenario_set_model(a.get(), model_a.c_str()));
    check(nlnet_scenario_set_model(b.get(), model_b.c_str()));
    double t = 0.0;
    check(nlnet_scenario_get_horizon(a.get(), &t));
    if (at) {
      t = *at;
      // Both runs need a snapshot at the comparison time.
      double const times[] = {0.0, t};
      check(nlnet_scenario_set_snapshot_times(a.get(), times, 2));
      check(nlnet_scenario_set_snapshot_times(b.get(), times, 2));
    }
    auto ra = run(a.get());
    auto rb = run(b.get());
    std::ostringstream csv;
    csv << "road,l1\n";
    for (size_t i = 0; i < nlnet_result_road_count(ra.get()); ++i) {
      int id = 0;
      check(nlnet_result_road_id(ra.get(), i, &id));
      double d = 0.0;
      check(nlnet_result_l1_distance(ra.get(), rb.get(), id, t, &d));
      csv << id << ',' << num(d) << '\n';
    }
    emit(out, csv.str());
    return kExitOk;
  }

  struct RiemannArgs {
    double rho_left{1.0};
    double rho_right{0.5};
    double rho_max2{1.0};
    double v2{1.0};
    double t{0.5};
    double x_min{-1.0};
    double x_max{1.0};
    int points{201};
  };

  int cmd_riemann(RiemannArgs const& a, std::string const& out) {
    if (a.points < 2 || !(a.x_max > a.x_min)) {
      throw Failure{kExitValidation, "need --points >= 2 and --x-max > --x-min"};
    }
    std::vector<double> xs(static_cast<size_t>(a.points));
    for (int i = 0; i < a.points; ++i) {
      xs[i] = a.x_min + (a.x_max - a.x_min) * i / (a.points - 1);
    }
    std::vector<double> rho(xs.size());
    check(nlnet_riemann_limit_1to1(a.rho_left, a.rho_right, a.rho_max2, a.v2, a.t, xs.data(),
                                   xs.size(), rho.data()));
    std::ostringstream csv;
    csv << "x,rho\n";
    for (size_t i = 0; i < xs.size(); ++i) {
      csv << num(xs[i]) << ',' << num(rho[i]) << '\n';
    }
    emit(out, csv.str());
    return kExitOk;
  }

  int cmd_validate(ScenarioArgs const& args) {
    auto s = args.load();
    size_t n = 0;
    check(nlnet_scenario_validate(s.get(), &n));
    for (size_t i = 0; i < n; ++i) {
      std::cout << "violation: " << nlnet_scenario_violation(s.get(), i) << '\n';
    }
    if (n > 0) {
      return kExitValidation;
    }
    std::cout << "scenario is valid\n";
    return kExitOk;
  }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Nonlocal traffic flow on road networks"};
  app.set_version_flag("--version", std::string{nlnet_version()});
  app.require_subcommand(1);

  ScenarioArgs sim_args;
  std::string sim_out;
  auto* sim = app.add_subcommand("simulate", "Run one scenario and write CSV results");
  sim_args.add_to(sim);
  sim->add_option("--out", sim_out, "Output directory");

  ScenarioArgs sweep_args;
  std::string etas = "0.5,0.25,0.1,0.05";
  std::string family = "maxflux";
  bool no_baseline = false;
  std::string sweep_out;
  auto* sweep = app.add_subcommand("sweep-eta", "Measures over a list of nonlocal ranges");
  sweep_args.add_to(sweep, false);
  // A plain string so that an empty list is accepted.
  sweep->add_option("--etas", etas, "Comma-separated ranges (may be empty)")->expected(0, 1);
  sweep->add_option("--family", family, "Coupling family")
      ->check(CLI::IsMember({"maxflux", "distribution"}));
  sweep->add_flag("--no-baseline", no_baseline, "Skip the local model row");
  sweep->add_option("--out", sweep_out, "CSV file (stdout if omitted)");

  ScenarioArgs cmp_args;
  std::string model_a = "nonlocal-maxflux";
  std::string model_b = "local-maxflux";
  std::optional<double> cmp_at;
  std::string cmp_out;
  auto* cmp = app.add_subcommand("compare", "Per-road L1 distance between two models");
  cmp_args.add_to(cmp, false);
  cmp->add_option("--model-a", model_a, "First model");
  cmp->add_option("--model-b", model_b, "Second model");
  cmp->add_option("--at", cmp_at, "Comparison time (default: final time)");
  cmp->add_option("--out", cmp_out, "CSV file (stdout if omitted)");

  RiemannArgs rm;
  std::string rm_out;
  auto* riemann = app.add_subcommand("riemann", "Exact limit 1-to-1 Riemann solution");
  riemann->add_option("--rho-left", rm.rho_left, "Left state")->required();
  riemann->add_option("--rho-right", rm.rho_right, "Right state")->required();
  riemann->add_option("--rho-max2", rm.rho_max2, "Maximum density of the outgoing road")
      ->required();
  riemann->add_option("--v2", rm.v2, "Free-flow speed v2(0) of the outgoing road")->required();
  riemann->add_option("--t", rm.t, "Time")->required();
  riemann->add_option("--x-min", rm.x_min, "Left end of the sampling grid");
  riemann->add_option("--x-max", rm.x_max, "Right end of the sampling grid");
  riemann->add_option("--points", rm.points, "Number of samples");
  riemann->add_option("--out", rm_out, "CSV file (stdout if omitted)");

  ScenarioArgs val_args;
  auto* val = app.add_subcommand("validate", "Check a scenario's modelling assumptions");
  val_args.add_to(val);

  try {
    app.parse(argc, argv);
  } catch (CLI::ParseError const& e) {
    int const rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitValidation;
  }

  try {
    if (*sim) return cmd_simulate(sim_args, sim_out);
    if (*sweep) return cmd_sweep(sweep_args, parse_list(etas), family, !no_baseline, sweep_out);
    if (*cmp) return cmd_compare(cmp_args, model_a, model_b, cmp_at, cmp_out);
    if (*riemann) return cmd_riemann(rm, rm_out);
    if (*val) return cmd_validate(val_args);
  } catch (Failure const& f) {
    std::cerr << "error: " << f.message << '\n';
    return f.code;
  } catch (std::exception const& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitOk;
}
