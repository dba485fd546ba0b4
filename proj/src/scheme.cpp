#include "nlnet/scheme.hpp"

#include "nlnet/error.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace nlnet {

  Topology::Topology(Network const& net)
      : downstream(net.roads.size()), upstream(net.roads.size()) {
    for (std::size_t ji = 0; ji < net.junctions.size(); ++ji) {
      auto const& j = net.junctions[ji];
      std::vector<std::size_t> in;
      std::vector<std::size_t> out;
      for (std::size_t p = 0; p < j.incoming.size(); ++p) {
        auto r = net.road_index(j.incoming[p]);
        if (!r) {
          throw ConfigError("junction " + std::to_string(j.id) + " references unknown road " +
                            std::to_string(j.incoming[p]));
        }
        downstream[*r] = {static_cast<int>(ji), static_cast<int>(p)};
        in.push_back(*r);
      }
      for (std::size_t p = 0; p < j.outgoing.size(); ++p) {
        auto r = net.road_index(j.outgoing[p]);
        if (!r) {
          throw ConfigError("junction " + std::to_string(j.id) + " references unknown road " +
                            std::to_string(j.outgoing[p]));
        }
        upstream[*r] = {static_cast<int>(ji), static_cast<int>(p)};
        out.push_back(*r);
      }
      incoming.push_back(std::move(in));
      outgoing.push_back(std::move(out));
    }
  }

  Scheme::Scheme(Network net, GridSpec grid)
      : net_{std::move(net)}, grid_{std::move(grid)}, topo_{net_} {
    if (grid_.cells.size() != net_.roads.size()) {
      throw ConfigError("grid does not match network");
    }
  }

  Fluxes Scheme::make_fluxes() const {
    Fluxes f;
    f.per_road.resize(net_.roads.size());
    for (std::size_t r = 0; r < net_.roads.size(); ++r) {
      f.per_road[r].assign(static_cast<std::size_t>(grid_.cells[r]) + 1, 0.0);
    }
    return f;
  }

  State Scheme::zero_state() const {
    State s;
    s.rho.resize(net_.roads.size());
    for (std::size_t r = 0; r < net_.roads.size(); ++r) {
      s.rho[r].assign(static_cast<std::size_t>(grid_.cells[r]), 0.0);
    }
    return s;
  }

  double Scheme::numerical_flux(int road_id, int cell, State const& state) const {
    auto r = net_.road_index(road_id);
    if (!r) {
      throw ConfigError("no road with id " + std::to_string(road_id));
    }
    if (cell < -1 || cell >= grid_.cells[*r]) {
      throw std::out_of_range("cell index outside road " + std::to_string(road_id));
    }
    Fluxes f = make_fluxes();
    fluxes(state, f);
    return f.per_road[*r][static_cast<std::size_t>(cell + 1)];
  }

  State Scheme::step(State const& state, double dt) const {
    Fluxes f = make_fluxes();
    fluxes(state, f);
    return step(state, dt, f);
  }

  State Scheme::step(State const& state, double dt, Fluxes const& fluxes) const {
    double const lambda = dt / grid_.dx;
    State next;
    next.time = state.time + dt;
    next.rho.resize(state.rho.size());
    for (std::size_t r = 0; r < state.rho.size(); ++r) {
      auto const& rho = state.rho[r];
      auto const& F = fluxes.per_road[r];
      auto& out = next.rho[r];
      out.resize(rho.size());
      double const rho_max = net_.roads[r].law.rho_max;
      for (std::size_t j = 0; j < rho.size(); ++j) {
        double const v = rho[j] - lambda * (F[j + 1] - F[j]);
        if (!(v >= -kBoundTolerance && v <= rho_max + kBoundTolerance)) {
          std::ostringstream msg;
          msg << "density " << v << " on road " << net_.roads[r].id << " cell " << j
              << " left [0, " << rho_max << "] at t=" << next.time << " (dt=" << dt << ")";
          throw CflViolation(msg.str());
        }
        out[j] = v;
      }
    }
    return next;
  }

  namespace {

    void check_initial(Network const& net, GridSpec const& grid, State const& s) {
      if (s.rho.size() != net.roads.size()) {
        throw ConfigError("initial state does not cover every road");
      }
      for (std::size_t r = 0; r < s.rho.size(); ++r) {
        if (s.rho[r].size() != static_cast<std::size_t>(grid.cells[r])) {
          throw ConfigError("initial state of road " + std::to_string(net.roads[r].id) +
                            " has the wrong number of cells");
        }
        double const rho_max = net.roads[r].law.rho_max;
        for (double v : s.rho[r]) {
          if (!(v >= 0.0 && v <= rho_max)) {
            std::ostringstream msg;
            msg << "initial density " << v << " on road " << net.roads[r].id << " outside [0, "
                << rho_max << "]";
            throw ConfigError(msg.str());
          }
        }
      }
    }

  }  // namespace

  Trajectory Scheme::run(State initial, SimulationOptions const& options) const {
    check_initial(net_, grid_, initial);
    if (!(options.horizon >= 0.0)) {
      throw ConfigError("horizon must be nonnegative");
    }
    double const T = options.horizon;

    Trajectory traj;
    traj.network = net_;
    traj.grid = grid_;
    traj.model = name();
    traj.initial = initial;

    std::vector<double> pending;
    for (double s : options.snapshot_times) {
      if (s >= 0.0 && s <= T * (1.0 + 1e-12) + 1e-12) {
        pending.push_back(s);
      }
    }
    std::sort(pending.begin(), pending.end());
    std::size_t next_snap = 0;

    State cur = std::move(initial);
    Fluxes F = make_fluxes();
    double const dx = grid_.dx;
    double const end_tol = 1e-12 * std::max(1.0, T);

    while (T - cur.time > end_tol) {
      double dt = time_step(cur, options.cfl);
      bool last = false;
      if (cur.time + dt >= T - end_tol) {
        dt = T - cur.time;
        last = true;
      }
      while (next_snap < pending.size() && pending[next_snap] <= cur.time + 0.5 * dt) {
        traj.snapshots.push_back({pending[next_snap], cur});
        ++next_snap;
      }

      fluxes(cur, F);
      if (auto w = diagnose(cur); !w.empty() &&
          std::find(traj.warnings.begin(), traj.warnings.end(), w) == traj.warnings.end()) {
        traj.warnings.push_back(std::move(w));
      }

      double influx = 0.0;
      double outflux = 0.0;
      StepRecord rec;
      if (options.record_steps) {
        rec.t = cur.time;
        rec.dt = dt;
        rec.mass.resize(cur.rho.size());
        rec.flux_integral.resize(cur.rho.size());
        rec.inflow.resize(cur.rho.size());
        rec.outflow.resize(cur.rho.size());
      }
      for (std::size_t r = 0; r < cur.rho.size(); ++r) {
        auto const& f = F.per_road[r];
        if (topo_.is_source(r)) {
          influx += f.front();
        }
        if (topo_.is_sink(r)) {
          outflux += f.back();
        }
        if (options.record_steps) {
          double m = 0.0;
          double fi = 0.0;
          for (std::size_t j = 0; j < cur.rho[r].size(); ++j) {
            m += cur.rho[r][j];
            fi += f[j + 1];
          }
          rec.mass[r] = m * dx;
          rec.flux_integral[r] = fi * dx;
          rec.inflow[r] = f.front();
          rec.outflow[r] = f.back();
        }
      }
      traj.boundary_balance += dt * (influx - outflux);
      if (options.record_steps) {
        traj.steps.push_back(std::move(rec));
      }

      double const t_next = last ? T : cur.time + dt;
      cur = step(cur, dt, F);
      cur.time = t_next;
    }
    cur.time = std::max(cur.time, T);
    while (next_snap < pending.size()) {
      traj.snapshots.push_back({pending[next_snap], cur});
      ++next_snap;
    }
    traj.final = std::move(cur);
    return traj;
  }

}  // namespace nlnet
