#include "nlnet/trajectory.hpp"

#include "nlnet/error.hpp"

#include <cmath>
#include <sstream>

namespace nlnet {

  std::size_t GridSpec::total_cells() const {
    std::size_t n = 0;
    for (int c : cells) {
      n += static_cast<std::size_t>(c);
    }
    return n;
  }

  GridSpec make_grid(Network const& net, double dx, int n_eta) {
    if (!(dx > 0.0)) {
      throw ConfigError("dx must be positive");
    }
    GridSpec g;
    g.dx = dx;
    g.n_eta = n_eta;
    for (auto const& r : net.roads) {
      double const ratio = r.length() / dx;
      double const n = std::round(ratio);
      if (n < 1.0 || std::abs(ratio - n) > 1e-9 * std::max(1.0, ratio)) {
        std::ostringstream msg;
        msg << "road " << r.id << ": length " << r.length() << " is not a multiple of dx=" << dx;
        throw ConfigError(msg.str());
      }
      g.cells.push_back(static_cast<int>(n));
    }
    return g;
  }

  double State::mass(double dx) const {
    double m = 0.0;
    for (auto const& road : rho) {
      for (double v : road) {
        m += v;
      }
    }
    return m * dx;
  }

  std::string to_string(CflMode mode) {
    switch (mode) {
      case CflMode::strict: return "strict";
      case CflMode::relaxed: return "relaxed";
      case CflMode::adaptive: return "adaptive";
    }
    return "unknown";
  }

  CflMode parse_cfl_mode(std::string const& name) {
    if (name == "strict") return CflMode::strict;
    if (name == "relaxed") return CflMode::relaxed;
    if (name == "adaptive") return CflMode::adaptive;
    throw ConfigError("unknown CFL mode '" + name + "'");
  }

  State const& Trajectory::nearest(double t) const {
    State const* best = &final;
    double best_gap = std::abs(final.time - t);
    for (auto const& s : snapshots) {
      double const gap = std::abs(s.state.time - t);
      if (gap < best_gap) {
        best = &s.state;
        best_gap = gap;
      }
    }
    if (std::abs(initial.time - t) < best_gap) {
      best = &initial;
    }
    return *best;
  }

  std::vector<double> cell_centres(Road const& road, double dx, int cells) {
    std::vector<double> x(static_cast<std::size_t>(cells));
    for (int j = 0; j < cells; ++j) {
      x[j] = road.a + (j + 0.5) * dx;
    }
    return x;
  }

}  // namespace nlnet
