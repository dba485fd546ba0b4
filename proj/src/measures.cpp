#include "nlnet/measures.hpp"

#include "nlnet/error.hpp"

#include <algorithm>
#include <cmath>

namespace nlnet {

  namespace {

    Junction const& find_junction(Network const& net, int id) {
      for (auto const& j : net.junctions) {
        if (j.id == id) {
          return j;
        }
      }
      throw ConfigError("no junction with id " + std::to_string(id));
    }

    std::size_t index_of(Network const& net, int road_id) {
      auto r = net.road_index(road_id);
      if (!r) {
        throw ConfigError("no road with id " + std::to_string(road_id));
      }
      return *r;
    }

    std::optional<double> safe_ratio(double num, double den) {
      if (den < kRatioFloor) {
        return std::nullopt;
      }
      return num / den;
    }

  }  // namespace

  std::vector<int> default_outflow_roads(Network const& net) {
    std::vector<int> out;
    for (auto const& r : net.roads) {
      if (r.artificial) {
        continue;
      }
      auto const* j = net.downstream_of(r.id);
      if (j == nullptr) {
        out.push_back(r.id);
        continue;
      }
      bool const feeds_artificial = std::all_of(j->outgoing.begin(), j->outgoing.end(),
                                                [&](int o) { return net.road(o).artificial; });
      if (feeds_artificial) {
        out.push_back(r.id);
      }
    }
    return out;
  }

  double total_travel_time(Trajectory const& traj, std::vector<int> const& roads) {
    std::vector<std::size_t> idx;
    if (roads.empty()) {
      for (std::size_t r = 0; r < traj.network.roads.size(); ++r) {
        if (!traj.network.roads[r].artificial) {
          idx.push_back(r);
        }
      }
    } else {
      for (int id : roads) {
        idx.push_back(index_of(traj.network, id));
      }
    }
    double acc = 0.0;
    for (auto const& s : traj.steps) {
      double m = 0.0;
      for (std::size_t r : idx) {
        m += s.mass[r];
      }
      acc += s.dt * m;
    }
    return acc;
  }

  double outflow(Trajectory const& traj, std::vector<int> const& roads) {
    std::vector<int> const ids = roads.empty() ? default_outflow_roads(traj.network) : roads;
    std::vector<std::size_t> idx;
    for (int id : ids) {
      idx.push_back(index_of(traj.network, id));
    }
    double acc = 0.0;
    for (auto const& s : traj.steps) {
      double f = 0.0;
      for (std::size_t r : idx) {
        f += s.outflow[r];
      }
      acc += s.dt * f;
    }
    return acc;
  }

  namespace {

    // Per-road congestion integrals; index-aligned with the network roads.
    std::vector<double> congestion_per_road(Trajectory const& traj, double ref_fraction) {
      auto const& roads = traj.network.roads;
      std::vector<double> cm(roads.size(), 0.0);
      for (auto const& s : traj.steps) {
        for (std::size_t r = 0; r < roads.size(); ++r) {
          if (roads[r].artificial) {
            continue;
          }
          double const v_ref = ref_fraction * roads[r].law.v_max;
          double const inner = s.mass[r] - s.flux_integral[r] / v_ref;
          cm[r] += s.dt * std::max(0.0, inner);
        }
      }
      return cm;
    }

  }  // namespace

  double congestion(Trajectory const& traj, double ref_fraction) {
    double acc = 0.0;
    for (double v : congestion_per_road(traj, ref_fraction)) {
      acc += v;
    }
    return acc;
  }

  std::vector<RatioSample> actual_split_ratios(Trajectory const& traj, int junction_id) {
    auto const& net = traj.network;
    auto const& j = find_junction(net, junction_id);
    std::vector<RatioSample> out;
    if (j.outgoing.size() < 2) {
      return out;
    }
    std::size_t const in = index_of(net, j.incoming.at(0));
    for (auto const& s : traj.steps) {
      for (int o : j.outgoing) {
        std::size_t const oi = index_of(net, o);
        out.push_back({s.t, j.id, o, safe_ratio(s.inflow[oi], s.outflow[in])});
      }
    }
    return out;
  }

  std::vector<RatioSample> actual_priority_ratios(Trajectory const& traj, int junction_id) {
    auto const& net = traj.network;
    auto const& j = find_junction(net, junction_id);
    std::vector<RatioSample> out;
    if (j.incoming.size() < 2) {
      return out;
    }
    std::size_t const o = index_of(net, j.outgoing.at(0));
    for (auto const& s : traj.steps) {
      for (int i : j.incoming) {
        std::size_t const ii = index_of(net, i);
        out.push_back({s.t, j.id, i, safe_ratio(s.outflow[ii], s.inflow[o])});
      }
    }
    return out;
  }

  MeasureReport measure(Trajectory const& traj, MeasureOptions const& options) {
    MeasureReport rep;
    rep.total_travel_time = total_travel_time(traj, options.travel_time_roads);
    rep.outflow = outflow(traj, options.outflow_roads);
    auto const cm = congestion_per_road(traj, 0.5);
    auto const& roads = traj.network.roads;
    for (std::size_t r = 0; r < roads.size(); ++r) {
      if (roads[r].artificial) {
        continue;
      }
      RoadMeasures rm;
      rm.road = roads[r].id;
      for (auto const& s : traj.steps) {
        rm.travel_time += s.dt * s.mass[r];
      }
      rm.congestion = cm[r];
      rep.congestion += cm[r];
      rep.per_road.push_back(rm);
    }
    for (auto const& j : traj.network.junctions) {
      auto split = actual_split_ratios(traj, j.id);
      rep.split_ratios.insert(rep.split_ratios.end(), split.begin(), split.end());
      auto prio = actual_priority_ratios(traj, j.id);
      rep.priority_ratios.insert(rep.priority_ratios.end(), prio.begin(), prio.end());
    }
    return rep;
  }

  double l1_distance(State const& a, State const& b, GridSpec const& grid, std::size_t road_index) {
    if (road_index >= a.rho.size() || road_index >= b.rho.size() ||
        road_index >= grid.cells.size()) {
      throw ConfigError("road index outside the compared states");
    }
    auto const& ra = a.rho[road_index];
    auto const& rb = b.rho[road_index];
    if (ra.size() != rb.size() || ra.size() != static_cast<std::size_t>(grid.cells[road_index])) {
      throw ConfigError("grid mismatch in L1 distance");
    }
    double acc = 0.0;
    for (std::size_t j = 0; j < ra.size(); ++j) {
      acc += std::abs(ra[j] - rb[j]);
    }
    return acc * grid.dx;
  }

  double l1_distance(Trajectory const& a, Trajectory const& b, int road_id, double t) {
    if (a.grid.dx != b.grid.dx || a.grid.cells != b.grid.cells) {
      throw ConfigError("grid mismatch in L1 distance");
    }
    return l1_distance(a.nearest(t), b.nearest(t), a.grid, index_of(a.network, road_id));
  }

  double tv_seminorm(Network const& net, State const& state) {
    double tv = 0.0;
    for (auto const& road : state.rho) {
      for (std::size_t j = 1; j < road.size(); ++j) {
        tv += std::abs(road[j] - road[j - 1]);
      }
    }
    for (auto const& j : net.junctions) {
      for (int i : j.incoming) {
        double const left = state.rho.at(index_of(net, i)).back();
        for (int o : j.outgoing) {
          tv += std::abs(state.rho.at(index_of(net, o)).front() - left);
        }
      }
    }
    return tv;
  }

}  // namespace nlnet
