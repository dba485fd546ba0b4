#pragma once

#include "nlnet/network.hpp"

#include <span>
#include <string>
#include <vector>

namespace nlnet {

  /// Uniform cell layout shared by every scheme.
  ///
  /// Cells of a road are numbered 0..n-1 from its upstream end, so x = a is
  /// the interface left of cell 0 and x = b the interface right of cell
  /// n-1. Relative to the downstream junction, local cell i is cell
  /// i - n (< 0); relative to the upstream junction it is cell i (>= 0).
  struct GridSpec {
    double dx{0.01};
    int n_eta{1};
    std::vector<int> cells;  // per road index in Network::roads

    int cells_of(std::size_t road_index) const { return cells[road_index]; }
    std::size_t total_cells() const;
  };

  /// Builds the grid; each road length must be an integer multiple of dx.
  GridSpec make_grid(Network const& net, double dx, int n_eta);

  struct State {
    double time{0.0};
    std::vector<std::vector<double>> rho;  // per road index

    double mass(double dx) const;
  };

  /// Per-step diagnostics needed by the measures. Road vectors are indexed
  /// like Network::roads and refer to the state at the start of the step.
  struct StepRecord {
    double t{0.0};
    double dt{0.0};
    std::vector<double> mass;           // sum_j rho_j dx
    std::vector<double> flux_integral;  // sum_j F_j dx, F_j right of cell j
    std::vector<double> inflow;         // flux through x = a
    std::vector<double> outflow;        // flux through x = b
  };

  struct Snapshot {
    double requested{0.0};
    State state;
  };

  enum class CflMode { strict, relaxed, adaptive };
  std::string to_string(CflMode mode);
  CflMode parse_cfl_mode(std::string const& name);

  struct SimulationOptions {
    double horizon{0.0};
    CflMode cfl{CflMode::adaptive};
    std::vector<double> snapshot_times;
    /// Keep one StepRecord per step. Measures need these.
    bool record_steps{true};
  };

  struct Trajectory {
    Network network;
    GridSpec grid;
    std::string model;
    State initial;
    State final;
    std::vector<Snapshot> snapshots;
    std::vector<StepRecord> steps;
    std::vector<std::string> warnings;
    /// Integral over [0, T] of boundary influx minus boundary outflux.
    double boundary_balance{0.0};

    /// Snapshot whose time is nearest to t; the final state if none is closer.
    State const& nearest(double t) const;
  };

  /// Road positions of cell centres, x = a + (j + 1/2) dx.
  std::vector<double> cell_centres(Road const& road, double dx, int cells);

}  // namespace nlnet
