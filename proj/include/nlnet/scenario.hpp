#pragma once

#include "nlnet/kernel.hpp"
#include "nlnet/measures.hpp"
#include "nlnet/network.hpp"
#include "nlnet/trajectory.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace nlnet {

  enum class ModelKind {
    nonlocal,  // couplings exactly as tagged on the junctions
    nonlocal_maxflux,
    nonlocal_distribution,
    local_maxflux,
    local_distribution,
    limit,
  };

  std::string to_string(ModelKind model);
  ModelKind parse_model(std::string const& name);

  /// rho on [from, to) in road coordinates.
  struct InitialSegment {
    double from{0.0};
    double to{0.0};
    double rho{0.0};

    bool operator==(InitialSegment const&) const = default;
  };

  struct InitialRoad {
    int road{0};
    std::vector<InitialSegment> segments;

    bool operator==(InitialRoad const&) const = default;
  };

  struct KernelSpec {
    KernelFamily family{KernelFamily::linear_decreasing};
    double eta{0.5};
    std::vector<std::pair<double, double>> nodes;  // tabulated family only

    Kernel build() const;

    bool operator==(KernelSpec const&) const = default;
  };

  struct OutputSpec {
    std::string directory;  // empty: no files
    std::vector<double> snapshot_times;
    std::vector<int> outflow_roads;      // empty: default_outflow_roads
    std::vector<int> travel_time_roads;  // empty: every non-artificial road

    bool operator==(OutputSpec const&) const = default;
  };

  struct ScenarioConfig {
    Network network;
    KernelSpec kernel;
    double dx{0.01};
    double artificial_length{2.0};
    CflMode cfl{CflMode::adaptive};
    std::vector<InitialRoad> initial;
    ModelKind model{ModelKind::nonlocal_maxflux};
    double horizon{20.0};
    OutputSpec outputs;

    bool operator==(ScenarioConfig const&) const = default;
  };

  /// The nine-road diamond benchmark with the max-flux couplings.
  ScenarioConfig builtin_diamond();

  /// Throws ParseError naming the offending field, ConfigError for
  /// inconsistent values (e.g. eta not a multiple of dx).
  ScenarioConfig parse_scenario(std::string const& json_text);
  ScenarioConfig load_scenario(std::filesystem::path const& path);
  /// Canonical JSON: fixed key order, shortest round-trip numbers.
  std::string save_scenario(ScenarioConfig const& config);

  /// The network as it will be simulated: couplings retagged for the model.
  Network effective_network(ScenarioConfig const& config);
  /// Every violation of the modelling assumptions for this scenario.
  std::vector<Violation> validate_scenario(ScenarioConfig const& config);
  /// Cell averages of the piecewise-constant initial data.
  State initial_state(ScenarioConfig const& config, GridSpec const& grid);

  struct RunOptions {
    bool record_steps{true};
  };

  MeasureOptions measure_options(ScenarioConfig const& config);

  /// Validates and runs the selected model. Throws ConfigError on invalid
  /// scenarios and CflViolation if the bounds break.
  Trajectory simulate(ScenarioConfig const& config, RunOptions const& options = {});

  struct ResultFiles {
    std::filesystem::path snapshots;
    std::filesystem::path measures;
    std::filesystem::path ratios;
    std::filesystem::path priorities;
    std::vector<std::filesystem::path> snapshot_series;
  };

  /// Writes snapshots.csv (final state), snapshot_<i>.csv per requested
  /// time, measures.csv, ratios.csv and priorities.csv into `directory`.
  ResultFiles write_results(Trajectory const& traj, MeasureReport const& report,
                            std::filesystem::path const& directory);

}  // namespace nlnet
