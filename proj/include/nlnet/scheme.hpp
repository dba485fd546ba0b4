#pragma once

#include "nlnet/network.hpp"
#include "nlnet/trajectory.hpp"

#include <string>
#include <vector>

namespace nlnet {

  /// Interface fluxes of one state. `per_road[r][0]` is the flux through the
  /// upstream end of road r and `per_road[r][j + 1]` the flux through the
  /// right interface of cell j.
  struct Fluxes {
    std::vector<std::vector<double>> per_road;
  };

  /// Junction/boundary wiring of a network, resolved to road indices.
  struct Topology {
    struct End {
      int junction{-1};  // index into Network::junctions, -1 for an open end
      int position{-1};  // position within the junction's incoming/outgoing list
    };
    std::vector<End> downstream;  // per road index
    std::vector<End> upstream;
    std::vector<std::vector<std::size_t>> incoming;  // per junction, road indices
    std::vector<std::vector<std::size_t>> outgoing;

    explicit Topology(Network const& net);
    bool is_source(std::size_t r) const { return upstream[r].junction < 0; }
    bool is_sink(std::size_t r) const { return downstream[r].junction < 0; }
  };

  /// Conservative finite-volume scheme on a network:
  /// rho_j <- rho_j - dt/dx (F_j - F_{j-1}).
  class Scheme {
  public:
    Scheme(Network net, GridSpec grid);
    virtual ~Scheme() = default;

    Network const& network() const noexcept { return net_; }
    GridSpec const& grid() const noexcept { return grid_; }
    Topology const& topology() const noexcept { return topo_; }

    virtual std::string name() const = 0;
    virtual void fluxes(State const& state, Fluxes& out) const = 0;
    virtual double time_step(State const& state, CflMode mode) const = 0;
    /// Model-specific warning about a state, e.g. a degenerate coupling.
    /// Reported once per run.
    virtual std::string diagnose(State const& /*state*/) const { return {}; }

    /// Flux through the right interface of `cell` on road `road_id`;
    /// cell = -1 is the flux through the road's upstream end.
    double numerical_flux(int road_id, int cell, State const& state) const;

    /// One conservative update. Throws CflViolation if any density leaves
    /// [-1e-12, rho_max + 1e-12].
    State step(State const& state, double dt) const;
    State step(State const& state, double dt, Fluxes const& fluxes) const;

    /// Advances to options.horizon with the scheme's adaptive time step.
    Trajectory run(State initial, SimulationOptions const& options) const;

    /// Zero densities with the right shape.
    State zero_state() const;

  protected:
    Fluxes make_fluxes() const;

    Network net_;
    GridSpec grid_;
    Topology topo_;
  };

  constexpr double kBoundTolerance = 1e-12;

}  // namespace nlnet
