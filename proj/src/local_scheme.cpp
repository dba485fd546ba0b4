#include "nlnet/local_scheme.hpp"

#include "nlnet/coupling.hpp"
#include "nlnet/error.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace nlnet {

  namespace {

    void check_density(DemandSupply const& ds, double rho) {
      if (!(rho >= 0.0 && rho <= ds.law.rho_max)) {
        std::ostringstream msg;
        msg << "density " << rho << " outside [0, " << ds.law.rho_max << "]";
        throw DomainError(msg.str());
      }
    }

    double demand_unchecked(DemandSupply const& ds, double rho) {
      return rho <= ds.sigma ? ds.law.flux(rho) : ds.capacity();
    }

    double supply_unchecked(DemandSupply const& ds, double rho) {
      return rho <= ds.sigma ? ds.capacity() : ds.law.flux(rho);
    }

  }  // namespace

  double demand(DemandSupply const& ds, double rho) {
    check_density(ds, rho);
    return demand_unchecked(ds, rho);
  }

  double supply(DemandSupply const& ds, double rho) {
    check_density(ds, rho);
    return supply_unchecked(ds, rho);
  }

  double godunov_flux(DemandSupply const& ds, double rho_left, double rho_right) {
    return std::min(demand(ds, rho_left), supply(ds, rho_right));
  }

  JunctionFlows local_junction_fluxes(Junction const& junction, std::span<double const> demands,
                                      std::span<double const> supplies, CouplingFamily variant) {
    auto const m = junction.incoming.size();
    auto const n = junction.outgoing.size();
    if (demands.size() != m || supplies.size() != n) {
      throw ConfigError("junction " + std::to_string(junction.id) +
                        ": demand/supply count does not match its roads");
    }
    JunctionFlows f;
    f.incoming.assign(m, 0.0);
    f.outgoing.assign(n, 0.0);
    bool const maxflux = variant == CouplingFamily::maxflux;

    if (m == 1 && n == 1) {
      f.incoming[0] = f.outgoing[0] = std::min(demands[0], supplies[0]);
    } else if (m == 1 && n == 2) {
      double const a2 = junction.alpha(0, 0);
      double const a3 = junction.alpha(0, 1);
      if (maxflux) {
        f.outgoing[0] = std::min(a2 * demands[0], supplies[0]);
        f.outgoing[1] = std::min(a3 * demands[0], supplies[1]);
        f.incoming[0] = f.outgoing[0] + f.outgoing[1];
      } else {
        if (!(a2 > 0.0) || !(a3 > 0.0)) {
          throw ConfigError("junction " + std::to_string(junction.id) +
                            ": distribution coupling requires positive alpha");
        }
        double const total = std::min({demands[0], supplies[0] / a2, supplies[1] / a3});
        f.incoming[0] = total;
        f.outgoing[0] = a2 * total;
        f.outgoing[1] = total - f.outgoing[0];
      }
    } else if (m == 2 && n == 1) {
      double const s3 = supplies[0];
      for (std::size_t p = 0; p < 2; ++p) {
        double const q_self = junction.priority.at(p);
        double const q_other = junction.priority.at(1 - p);
        double const d_self = demands[p];
        double const d_other = demands[1 - p];
        f.incoming[p] = maxflux ? std::min(d_self, std::max(q_self * s3, s3 - d_other))
                                : std::min({d_self, (q_self / q_other) * d_other, q_self * s3});
      }
      f.outgoing[0] = f.incoming[0] + f.incoming[1];
    } else {
      throw ConfigError("junction " + std::to_string(junction.id) + ": unsupported shape");
    }
    return f;
  }

  LocalScheme::LocalScheme(Network net, GridSpec grid, CouplingFamily variant)
      : Scheme(std::move(net), std::move(grid)), variant_{variant} {}

  std::string LocalScheme::name() const {
    return variant_ == CouplingFamily::maxflux ? "local-maxflux" : "local-distribution";
  }

  double LocalScheme::time_step(State const& /*state*/, CflMode mode) const {
    double const c = mode == CflMode::relaxed ? 1.0 : 2.0;
    return grid_.dx / (c * net_.max_speed());
  }

  void LocalScheme::fluxes(State const& state, Fluxes& out) const {
    std::vector<DemandSupply> ds;
    ds.reserve(net_.roads.size());
    for (auto const& r : net_.roads) {
      ds.emplace_back(r.law);
    }

    for (std::size_t r = 0; r < state.rho.size(); ++r) {
      auto const& rho = state.rho[r];
      auto& F = out.per_road[r];
      std::size_t const n = rho.size();
      for (std::size_t j = 0; j + 1 < n; ++j) {
        F[j + 1] = std::min(demand_unchecked(ds[r], rho[j]), supply_unchecked(ds[r], rho[j + 1]));
      }
      // Open ends repeat the boundary cell.
      if (topo_.is_source(r)) {
        F[0] = std::min(demand_unchecked(ds[r], rho[0]), supply_unchecked(ds[r], rho[0]));
      }
      if (topo_.is_sink(r)) {
        F[n] = std::min(demand_unchecked(ds[r], rho[n - 1]), supply_unchecked(ds[r], rho[n - 1]));
      }
    }

    std::vector<double> d;
    std::vector<double> s;
    for (std::size_t ji = 0; ji < net_.junctions.size(); ++ji) {
      d.clear();
      s.clear();
      for (std::size_t r : topo_.incoming[ji]) {
        d.push_back(demand_unchecked(ds[r], state.rho[r].back()));
      }
      for (std::size_t r : topo_.outgoing[ji]) {
        s.push_back(supply_unchecked(ds[r], state.rho[r].front()));
      }
      auto const flows = local_junction_fluxes(net_.junctions[ji], d, s, variant_);
      for (std::size_t p = 0; p < topo_.incoming[ji].size(); ++p) {
        out.per_road[topo_.incoming[ji][p]].back() = flows.incoming[p];
      }
      for (std::size_t p = 0; p < topo_.outgoing[ji].size(); ++p) {
        out.per_road[topo_.outgoing[ji][p]].front() = flows.outgoing[p];
      }
    }
  }

  // ---------------------------------------------------------------------------

  double limit_flux_1to1(double rho, double v2_0, double rho_max2) {
    return std::min(rho, rho_max2) * v2_0;
  }

  RiemannFan riemann_fan_1to1(double rho_left, double rho_right, double rho_max2, double v2_0) {
    auto h = [&](double r) { return limit_flux_1to1(r, v2_0, rho_max2); };
    RiemannFan fan;
    fan.states.push_back(rho_left);
    if (rho_left == rho_right) {
      return fan;
    }
    if (rho_left < rho_right) {
      // Concave flux, increasing jump: single shock (chord of h).
      fan.speeds.push_back((h(rho_right) - h(rho_left)) / (rho_right - rho_left));
      fan.states.push_back(rho_right);
      return fan;
    }
    // Decreasing jump: the fan follows h through its kink at rho_max2. On a
    // linear piece the rarefaction degenerates to a contact travelling with
    // the piece's slope.
    double upper = rho_left;
    if (rho_right < rho_max2 && rho_max2 < rho_left) {
      fan.speeds.push_back(0.0);  // slope of h above the kink
      fan.states.push_back(rho_max2);
      upper = rho_max2;
    }
    fan.speeds.push_back((h(upper) - h(rho_right)) / (upper - rho_right));
    fan.states.push_back(rho_right);
    return fan;
  }

  double RiemannFan::sample(double t, double x) const {
    for (std::size_t i = 0; i < speeds.size(); ++i) {
      if (x <= speeds[i] * t) {
        return states[i];
      }
    }
    return states.back();
  }

  double riemann_limit_1to1(double rho_left, double rho_right, double rho_max2, double v2_0,
                            double t, double x) {
    return riemann_fan_1to1(rho_left, rho_right, rho_max2, v2_0).sample(t, x);
  }

  double limit_coupling_flux(CouplingKind kind, LimitInputs const& in) {
    switch (kind) {
      case CouplingKind::one_to_one: return coupling::one_to_one(in.rho, in.rho_max_2, in.v_2);
      case CouplingKind::one_to_two_maxflux:
        return coupling::one_to_two_maxflux(in.rho, in.alpha_2, in.alpha_3, in.rho_max_2,
                                            in.rho_max_3, in.v_2, in.v_3);
      case CouplingKind::one_to_two_distribution:
        return coupling::one_to_two_distribution(in.rho, in.alpha_2, in.alpha_3, in.rho_max_2,
                                                 in.rho_max_3, in.v_2, in.v_3);
      case CouplingKind::two_to_one_maxflux:
        return coupling::two_to_one_maxflux(in.rho, in.rho_other_boundary, in.q_self,
                                            in.rho_max_2, in.v_2);
      case CouplingKind::two_to_one_priority:
        return coupling::two_to_one_priority(in.rho, in.rho_other_boundary, in.q_self,
                                             in.q_other, in.rho_max_2, in.v_2);
    }
    return 0.0;
  }

  LimitScheme::LimitScheme(Network net, GridSpec grid) : Scheme(std::move(net), std::move(grid)) {
    for (std::size_t r = 0; r < net_.roads.size(); ++r) {
      if (topo_.downstream[r].junction >= 0 && topo_.upstream[r].junction >= 0) {
        throw ConfigError("limit model: road " + std::to_string(net_.roads[r].id) +
                          " connects two junctions; only single-junction networks are supported");
      }
    }
  }

  double LimitScheme::time_step(State const& /*state*/, CflMode mode) const {
    double const c = mode == CflMode::relaxed ? 1.0 : 2.0;
    return grid_.dx / (c * net_.max_speed());
  }

  void LimitScheme::fluxes(State const& state, Fluxes& out) const {
    for (std::size_t r = 0; r < state.rho.size(); ++r) {
      if (!topo_.is_sink(r)) {
        continue;
      }
      auto const& rho = state.rho[r];
      auto& F = out.per_road[r];
      double const v0 = net_.roads[r].law.v_max;
      for (std::size_t j = 0; j < rho.size(); ++j) {
        F[j + 1] = rho[j] * v0;
      }
      if (topo_.is_source(r)) {
        F[0] = rho[0] * v0;
      }
    }

    for (std::size_t ji = 0; ji < net_.junctions.size(); ++ji) {
      auto const& junc = net_.junctions[ji];
      auto const& in = topo_.incoming[ji];
      auto const& outg = topo_.outgoing[ji];

      LimitInputs base;
      base.rho_max_2 = net_.roads[outg[0]].law.rho_max;
      base.v_2 = net_.roads[outg[0]].law.v_max;
      if (outg.size() > 1) {
        base.alpha_2 = junc.alpha(0, 0);
        base.alpha_3 = junc.alpha(0, 1);
        base.rho_max_3 = net_.roads[outg[1]].law.rho_max;
        base.v_3 = net_.roads[outg[1]].law.v_max;
      }

      double influx = 0.0;
      for (std::size_t p = 0; p < in.size(); ++p) {
        LimitInputs li = base;
        if (in.size() == 2) {
          li.rho_other_boundary = state.rho[in[1 - p]].back();
          li.q_self = junc.priority[p];
          li.q_other = junc.priority[1 - p];
        }
        auto const& rho = state.rho[in[p]];
        auto& F = out.per_road[in[p]];
        for (std::size_t j = 0; j < rho.size(); ++j) {
          li.rho = rho[j];
          F[j + 1] = limit_coupling_flux(junc.coupling, li);
        }
        if (topo_.is_source(in[p])) {
          li.rho = rho[0];
          F[0] = limit_coupling_flux(junc.coupling, li);
        }
        influx += F.back();
      }

      switch (junc.coupling) {
        case CouplingKind::one_to_one:
        case CouplingKind::two_to_one_maxflux:
        case CouplingKind::two_to_one_priority:
          out.per_road[outg[0]][0] = influx;
          break;
        case CouplingKind::one_to_two_maxflux: {
          double const rho_last = state.rho[in[0]].back();
          out.per_road[outg[0]][0] = std::min(base.alpha_2 * rho_last, base.rho_max_2) * base.v_2;
          out.per_road[outg[1]][0] = std::min(base.alpha_3 * rho_last, base.rho_max_3) * base.v_3;
          break;
        }
        case CouplingKind::one_to_two_distribution:
          out.per_road[outg[0]][0] = base.alpha_2 * influx;
          out.per_road[outg[1]][0] = influx - base.alpha_2 * influx;
          break;
      }
    }
  }

}  // namespace nlnet
