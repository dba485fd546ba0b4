#pragma once

#include "nlnet/network.hpp"
#include "nlnet/trajectory.hpp"

#include <optional>
#include <vector>

namespace nlnet {

  /// Observed share of a junction's flow at one step. `ratio` is empty when
  /// the reference flux is below 1e-12.
  struct RatioSample {
    double t{0.0};
    int junction{0};
    int road{0};
    std::optional<double> ratio;
  };

  struct RoadMeasures {
    int road{0};
    double travel_time{0.0};
    double congestion{0.0};
  };

  struct MeasureReport {
    double total_travel_time{0.0};
    double outflow{0.0};
    double congestion{0.0};
    std::vector<RoadMeasures> per_road;  // non-artificial roads only
    /// Inflow of each outgoing road over the outflow of the incoming road,
    /// for junctions with two outgoing roads.
    std::vector<RatioSample> split_ratios;
    /// Outflow of each incoming road over the inflow of the outgoing road,
    /// for junctions with two incoming roads.
    std::vector<RatioSample> priority_ratios;
  };

  constexpr double kRatioFloor = 1e-12;

  /// Roads whose right-end flux counts as network outflow: non-artificial
  /// roads that feed only artificial roads, or non-artificial open ends.
  std::vector<int> default_outflow_roads(Network const& net);

  /// sum over steps of dt * sum over the given roads of their mass; every
  /// non-artificial road when `roads` is empty.
  double total_travel_time(Trajectory const& traj, std::vector<int> const& roads = {});
  /// sum over steps of dt * F at the right end of the given roads
  /// (default_outflow_roads when empty).
  double outflow(Trajectory const& traj, std::vector<int> const& roads = {});
  /// sum over steps of dt * sum_e max{0, mass_e - flux_integral_e / v_ref_e}
  /// with v_ref_e = ref_fraction * v_max_e; non-artificial roads only.
  double congestion(Trajectory const& traj, double ref_fraction = 0.5);

  std::vector<RatioSample> actual_split_ratios(Trajectory const& traj, int junction_id);
  std::vector<RatioSample> actual_priority_ratios(Trajectory const& traj, int junction_id);

  struct MeasureOptions {
    std::vector<int> outflow_roads;      // empty: default_outflow_roads
    std::vector<int> travel_time_roads;  // empty: every non-artificial road
  };

  MeasureReport measure(Trajectory const& traj, MeasureOptions const& options = {});

  /// sum_j |a_j - b_j| dx on one road. Throws ConfigError on a grid mismatch.
  double l1_distance(State const& a, State const& b, GridSpec const& grid, std::size_t road_index);
  /// Same, on the snapshots of both trajectories nearest to t.
  double l1_distance(Trajectory const& a, Trajectory const& b, int road_id, double t);

  /// Interior variation of every road plus, at every junction, the jumps
  /// |rho_{o,0} - rho_{i,last}| over all incoming/outgoing pairs.
  double tv_seminorm(Network const& net, State const& state);

}  // namespace nlnet
