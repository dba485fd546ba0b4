#pragma once

#include "nlnet/kernel.hpp"
#include "nlnet/network.hpp"
#include "nlnet/nonlocal_scheme.hpp"
#include "nlnet/trajectory.hpp"

#include <vector>

namespace nlnet::test {

  inline Road road(int id, double a, double b, double v_max = 1.0, double rho_max = 1.0,
                   bool artificial = false) {
    return Road{id, a, b, VelocityLaw{v_max, rho_max}, artificial};
  }

  /// Road 1 on [-len, 0] feeding road 2 on [0, len], both artificial.
  inline Network one_to_one(double len = 1.0, VelocityLaw in = {}, VelocityLaw out = {}) {
    Network net;
    net.roads = {Road{1, -len, 0.0, in, true}, Road{2, 0.0, len, out, true}};
    net.junctions = {Junction{1, {1}, {2}, CouplingKind::one_to_one, {}, {}}};
    return net;
  }

  /// Road 1 feeding roads 2 and 3.
  inline Network one_to_two(CouplingKind kind, double a2 = 0.5, double a3 = 0.5) {
    Network net;
    net.roads = {road(1, -1, 0, 1, 1, true), road(2, 0, 1, 1, 1, true),
                 road(3, 0, 1, 1, 1, true)};
    net.junctions = {Junction{1, {1}, {2, 3}, kind, {{a2, a3}}, {}}};
    return net;
  }

  /// Roads 1 and 2 feeding road 3.
  inline Network two_to_one(CouplingKind kind, double q1 = 0.8, double q2 = 0.2) {
    Network net;
    net.roads = {road(1, -1, 0, 1, 1, true), road(2, -1, 0, 1, 1, true),
                 road(3, 0, 1, 1, 1, true)};
    net.junctions = {Junction{1, {1, 2}, {3}, kind, {}, {q1, q2}}};
    return net;
  }

  inline State uniform(Network const& net, GridSpec const& grid, std::vector<double> rho) {
    State s;
    s.rho.resize(net.roads.size());
    for (std::size_t r = 0; r < net.roads.size(); ++r) {
      s.rho[r].assign(static_cast<std::size_t>(grid.cells[r]), rho[r]);
    }
    return s;
  }

}  // namespace nlnet::test
