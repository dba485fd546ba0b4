#include "nlnet/nonlocal_scheme.hpp"

#include "nlnet/coupling.hpp"
#include "nlnet/error.hpp"

#include <algorithm>
#include <stdexcept>

namespace nlnet {

  double discrete_velocity(VelocityLaw const& law, Side side, int j,
                           std::span<double const> rho_road, QuadratureWeights const& weights) {
    int const n_eta = weights.n_eta;
    int const size = static_cast<int>(rho_road.size());
    double v = 0.0;
    if (side == Side::incoming) {
      if (j >= 0 || -j > size) {
        throw std::out_of_range("incoming-side index outside road");
      }
      int const upper = std::min(-j - 2, n_eta - 1);
      for (int k = 0; k <= upper; ++k) {
        v += weights.gamma[k] * law.eval(rho_road[size + j + k + 1]);
      }
    } else {
      int const lower = std::max(-j - 1, 0);
      for (int k = lower; k < n_eta; ++k) {
        int const idx = j + k + 1;
        if (idx >= size) {
          throw std::out_of_range("outgoing-side window extends past supplied cells");
        }
        v += weights.gamma[k] * law.eval(rho_road[idx]);
      }
    }
    return v;
  }

  double cfl_dt(Network const& net, State const& state, QuadratureWeights const& weights,
                CflMode mode) {
    double rho_norm = net.max_density();
    if (mode == CflMode::adaptive) {
      rho_norm = 0.0;
      for (auto const& road : state.rho) {
        for (double v : road) {
          rho_norm = std::max(rho_norm, v);
        }
      }
    }
    double const c = mode == CflMode::relaxed ? 1.0 : 2.0;
    double const gamma0 = weights.gamma.empty() ? 0.0 : weights.gamma[0];
    return weights.dx / (gamma0 * net.max_speed_derivative() * rho_norm + c * net.max_speed());
  }

  NonlocalScheme::NonlocalScheme(Network net, GridSpec grid, QuadratureWeights weights)
      : Scheme(std::move(net), std::move(grid)), weights_{std::move(weights)} {
    if (std::abs(weights_.dx - grid_.dx) > 1e-12 * grid_.dx) {
      throw ConfigError("quadrature weights and grid use different dx");
    }
  }

  double NonlocalScheme::time_step(State const& state, CflMode mode) const {
    return cfl_dt(net_, state, weights_, mode);
  }

  std::string NonlocalScheme::diagnose(State const& state) const {
    for (std::size_t ji = 0; ji < net_.junctions.size(); ++ji) {
      if (net_.junctions[ji].coupling != CouplingKind::two_to_one_priority) {
        continue;
      }
      for (std::size_t r : topo_.incoming[ji]) {
        if (state.rho[r].back() <= 0.0) {
          return "junction " + std::to_string(net_.junctions[ji].id) +
                 ": priority coupling sees a vanishing boundary density; flux is blocked";
        }
      }
    }
    return {};
  }

  namespace {

    // v(rho) per cell, with the reach past x = b resolved per road.
    struct Speeds {
      std::vector<std::vector<double>> v;
      std::vector<bool> sink;

      // Cells past the last one repeat it on open ends and are excluded
      // (callers truncate) before a junction.
      double at(std::size_t r, int idx) const {
        auto const& vr = v[r];
        int const n = static_cast<int>(vr.size());
        return idx < n ? vr[idx] : vr[n - 1];
      }
    };

    // sum_{k=k0}^{N-1} gamma_k v(idx0 + k), stopping at the junction for
    // roads that have one.
    double window(Speeds const& s, std::size_t r, QuadratureWeights const& w, int k0,
                  int idx_at_k0) {
      int const n = static_cast<int>(s.v[r].size());
      int const n_eta = w.n_eta;
      int k_end = n_eta;
      if (!s.sink[r]) {
        k_end = std::min(n_eta, k0 + (n - idx_at_k0));
      }
      double acc = 0.0;
      int idx = idx_at_k0;
      auto const& vr = s.v[r];
      int k = k0;
      // Fast path while inside the road.
      for (; k < k_end && idx < n; ++k, ++idx) {
        acc += w.gamma[k] * vr[idx];
      }
      if (k < k_end) {
        double const tail = vr[n - 1];
        for (; k < k_end; ++k) {
          acc += w.gamma[k] * tail;
        }
      }
      return acc;
    }

    Speeds speeds_of(Network const& net, Topology const& topo, State const& state) {
      Speeds s;
      s.v.resize(state.rho.size());
      s.sink.resize(state.rho.size());
      for (std::size_t r = 0; r < state.rho.size(); ++r) {
        auto const& law = net.roads[r].law;
        auto& vr = s.v[r];
        vr.resize(state.rho[r].size());
        for (std::size_t j = 0; j < vr.size(); ++j) {
          vr[j] = law.eval(state.rho[r][j]);
        }
        s.sink[r] = topo.is_sink(r);
      }
      return s;
    }

  }  // namespace

  double NonlocalScheme::velocity(int road_id, int cell, State const& state) const {
    auto r = net_.road_index(road_id);
    if (!r || cell < -1 || cell >= grid_.cells[*r]) {
      throw std::out_of_range("no such road cell");
    }
    Speeds s = speeds_of(net_, topo_, state);
    return window(s, *r, weights_, 0, cell + 1);
  }

  double NonlocalScheme::outgoing_velocity(std::size_t junction, std::size_t out_pos, int m,
                                           State const& state) const {
    Speeds s = speeds_of(net_, topo_, state);
    std::size_t const o = topo_.outgoing.at(junction).at(out_pos);
    if (m < 0 || m >= weights_.n_eta) {
      return 0.0;
    }
    return window(s, o, weights_, m, 0);
  }

  void NonlocalScheme::fluxes(State const& state, Fluxes& out) const {
    Speeds const s = speeds_of(net_, topo_, state);
    int const n_eta = weights_.n_eta;

    for (std::size_t r = 0; r < state.rho.size(); ++r) {
      auto const& rho = state.rho[r];
      auto& F = out.per_road[r];
      int const n = static_cast<int>(rho.size());
      for (int j = 0; j < n; ++j) {
        F[j + 1] = rho[j] * window(s, r, weights_, 0, j + 1);
      }
      if (topo_.is_source(r)) {
        // Ghost cell left of x = a carries rho_0.
        F[0] = rho[0] * window(s, r, weights_, 0, 0);
      }
    }

    std::vector<double> v_a(static_cast<std::size_t>(n_eta));
    std::vector<double> v_b(static_cast<std::size_t>(n_eta));
    for (std::size_t ji = 0; ji < net_.junctions.size(); ++ji) {
      auto const& junc = net_.junctions[ji];
      auto const& in = topo_.incoming[ji];
      auto const& outg = topo_.outgoing[ji];

      for (int m = 0; m < n_eta; ++m) {
        v_a[m] = window(s, outg[0], weights_, m, 0);
        if (outg.size() > 1) {
          v_b[m] = window(s, outg[1], weights_, m, 0);
        }
      }
      auto const& law_a = net_.roads[outg[0]].law;

      switch (junc.coupling) {
        case CouplingKind::one_to_one: {
          std::size_t const i = in[0];
          auto const& rho = state.rho[i];
          auto& F = out.per_road[i];
          int const n = static_cast<int>(rho.size());
          for (int m = 0; m < std::min(n_eta, n); ++m) {
            int const j = n - 1 - m;
            F[j + 1] += coupling::one_to_one(rho[j], law_a.rho_max, v_a[m]);
          }
          out.per_road[outg[0]][0] = coupling::one_to_one(rho[n - 1], law_a.rho_max, v_a[0]);
          break;
        }
        case CouplingKind::one_to_two_maxflux:
        case CouplingKind::one_to_two_distribution: {
          std::size_t const i = in[0];
          auto const& rho = state.rho[i];
          auto& F = out.per_road[i];
          int const n = static_cast<int>(rho.size());
          double const a2 = junc.alpha(0, 0);
          double const a3 = junc.alpha(0, 1);
          double const rm2 = law_a.rho_max;
          double const rm3 = net_.roads[outg[1]].law.rho_max;
          bool const maxflux = junc.coupling == CouplingKind::one_to_two_maxflux;
          for (int m = 0; m < std::min(n_eta, n); ++m) {
            int const j = n - 1 - m;
            F[j + 1] += maxflux
                            ? coupling::one_to_two_maxflux(rho[j], a2, a3, rm2, rm3, v_a[m], v_b[m])
                            : coupling::one_to_two_distribution(rho[j], a2, a3, rm2, rm3, v_a[m],
                                                                v_b[m]);
          }
          if (maxflux) {
            out.per_road[outg[0]][0] = std::min(a2 * rho[n - 1], rm2) * v_a[0];
            out.per_road[outg[1]][0] = std::min(a3 * rho[n - 1], rm3) * v_b[0];
          } else {
            // F_{1,-1} is g_1 alone (empty own window at the last cell).
            double const total = F[n];
            out.per_road[outg[0]][0] = a2 * total;
            out.per_road[outg[1]][0] = total - a2 * total;
          }
          break;
        }
        case CouplingKind::two_to_one_maxflux:
        case CouplingKind::two_to_one_priority: {
          bool const maxflux = junc.coupling == CouplingKind::two_to_one_maxflux;
          double const rm = law_a.rho_max;
          double influx = 0.0;
          for (std::size_t p = 0; p < 2; ++p) {
            std::size_t const i = in[p];
            std::size_t const other = in[1 - p];
            double const rho_other = state.rho[other].back();
            double const q_self = junc.priority[p];
            double const q_other = junc.priority[1 - p];
            auto const& rho = state.rho[i];
            auto& F = out.per_road[i];
            int const n = static_cast<int>(rho.size());
            for (int m = 0; m < std::min(n_eta, n); ++m) {
              int const j = n - 1 - m;
              F[j + 1] += maxflux ? coupling::two_to_one_maxflux(rho[j], rho_other, q_self, rm,
                                                                 v_a[m])
                                  : coupling::two_to_one_priority(rho[j], rho_other, q_self,
                                                                  q_other, rm, v_a[m]);
            }
            influx += F[n];
          }
          out.per_road[outg[0]][0] = influx;
          break;
        }
      }
    }
  }

}  // namespace nlnet
