#include "nlnet/network.hpp"

#include "nlnet/error.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace nlnet {

  double VelocityLaw::operator()(double rho) const {
    if (!(rho >= 0.0 && rho <= rho_max)) {
      std::ostringstream msg;
      msg << "density " << rho << " outside [0, " << rho_max << "]";
      throw DomainError(msg.str());
    }
    return v_max * (1.0 - rho / rho_max);
  }

  double eval_velocity(VelocityLaw const& law, double rho) { return law(rho); }

  std::string to_string(CouplingKind kind) {
    switch (kind) {
      case CouplingKind::one_to_one: return "one_to_one";
      case CouplingKind::one_to_two_maxflux: return "one_to_two_maxflux";
      case CouplingKind::one_to_two_distribution: return "one_to_two_distribution";
      case CouplingKind::two_to_one_maxflux: return "two_to_one_maxflux";
      case CouplingKind::two_to_one_priority: return "two_to_one_priority";
    }
    return "unknown";
  }

  CouplingKind parse_coupling(std::string const& name) {
    for (auto kind : {CouplingKind::one_to_one, CouplingKind::one_to_two_maxflux,
                      CouplingKind::one_to_two_distribution, CouplingKind::two_to_one_maxflux,
                      CouplingKind::two_to_one_priority}) {
      if (to_string(kind) == name) {
        return kind;
      }
    }
    throw ConfigError("unknown coupling '" + name + "'");
  }

  std::pair<int, int> coupling_arity(CouplingKind kind) {
    switch (kind) {
      case CouplingKind::one_to_one: return {1, 1};
      case CouplingKind::one_to_two_maxflux:
      case CouplingKind::one_to_two_distribution: return {1, 2};
      case CouplingKind::two_to_one_maxflux:
      case CouplingKind::two_to_one_priority: return {2, 1};
    }
    return {0, 0};
  }

  CouplingKind coupling_for(CouplingFamily family, int n_in, int n_out) {
    bool const maxflux = family == CouplingFamily::maxflux;
    if (n_in == 1 && n_out == 1) {
      return CouplingKind::one_to_one;
    }
    if (n_in == 1 && n_out == 2) {
      return maxflux ? CouplingKind::one_to_two_maxflux : CouplingKind::one_to_two_distribution;
    }
    if (n_in == 2 && n_out == 1) {
      return maxflux ? CouplingKind::two_to_one_maxflux : CouplingKind::two_to_one_priority;
    }
    std::ostringstream msg;
    msg << "unsupported junction shape " << n_in << "-to-" << n_out;
    throw ConfigError(msg.str());
  }

  double Junction::alpha(std::size_t in_pos, std::size_t out_pos) const {
    if (outgoing.size() == 1) {
      return 1.0;
    }
    return distribution.at(in_pos).at(out_pos);
  }

  std::optional<std::size_t> Network::road_index(int id) const {
    for (std::size_t i = 0; i < roads.size(); ++i) {
      if (roads[i].id == id) {
        return i;
      }
    }
    return std::nullopt;
  }

  Road const& Network::road(int id) const {
    auto idx = road_index(id);
    if (!idx) {
      throw ConfigError("no road with id " + std::to_string(id));
    }
    return roads[*idx];
  }

  Junction const* Network::downstream_of(int road_id) const {
    for (auto const& j : junctions) {
      if (std::find(j.incoming.begin(), j.incoming.end(), road_id) != j.incoming.end()) {
        return &j;
      }
    }
    return nullptr;
  }

  Junction const* Network::upstream_of(int road_id) const {
    for (auto const& j : junctions) {
      if (std::find(j.outgoing.begin(), j.outgoing.end(), road_id) != j.outgoing.end()) {
        return &j;
      }
    }
    return nullptr;
  }

  double Network::max_speed() const {
    double m = 0.0;
    for (auto const& r : roads) {
      m = std::max(m, r.law.sup_norm());
    }
    return m;
  }

  double Network::max_speed_derivative() const {
    double m = 0.0;
    for (auto const& r : roads) {
      m = std::max(m, r.law.derivative_norm());
    }
    return m;
  }

  double Network::max_density() const {
    double m = 0.0;
    for (auto const& r : roads) {
      m = std::max(m, r.law.rho_max);
    }
    return m;
  }

  void Network::apply_family(CouplingFamily family) {
    for (auto& j : junctions) {
      j.coupling = coupling_for(family, static_cast<int>(j.incoming.size()),
                                static_cast<int>(j.outgoing.size()));
    }
  }

  namespace {

    constexpr double kSumTol = 1e-9;

    template <class... Args>
    std::string cat(Args const&... args) {
      std::ostringstream os;
      (os << ... << args);
      return os.str();
    }

    void check_junction(Network const& net, Junction const& j, std::vector<Violation>& out) {
      auto const m = j.incoming.size();
      auto const n = j.outgoing.size();
      std::string const tag = cat("junction ", j.id, ": ");

      if (m < 1 || n < 1 || m > 2 || n > 2 || m * n > 2) {
        out.push_back({cat(tag, "unsupported shape ", m, "-to-", n)});
        return;
      }
      auto [am, an] = coupling_arity(j.coupling);
      if (static_cast<std::size_t>(am) != m || static_cast<std::size_t>(an) != n) {
        out.push_back({cat(tag, "coupling ", to_string(j.coupling), " does not fit a ", m, "-to-",
                           n, " junction")});
      }

      std::set<int> seen;
      for (int id : j.incoming) {
        if (!seen.insert(id).second) {
          out.push_back({cat(tag, "road ", id, " appears twice")});
        }
      }
      for (int id : j.outgoing) {
        if (!seen.insert(id).second) {
          out.push_back({cat(tag, "road ", id, " appears twice")});
        }
      }
      for (int id : seen) {
        if (!net.road_index(id)) {
          out.push_back({cat(tag, "unknown road ", id)});
        }
      }

      if (n == 2) {
        if (j.distribution.size() != m) {
          out.push_back({cat(tag, "distribution matrix needs ", m, " row(s)")});
        } else {
          for (std::size_t i = 0; i < m; ++i) {
            auto const& row = j.distribution[i];
            if (row.size() != n) {
              out.push_back({cat(tag, "distribution row ", i, " needs ", n, " entries")});
              continue;
            }
            bool in_range = std::all_of(row.begin(), row.end(),
                                        [](double a) { return a >= 0.0 && a <= 1.0; });
            if (!in_range) {
              out.push_back({cat(tag, "distribution row ", i, " has entries outside [0,1]")});
            }
            double const sum = std::accumulate(row.begin(), row.end(), 0.0);
            if (std::abs(sum - 1.0) > kSumTol) {
              out.push_back({cat(tag, "distribution row ", i, " sums to ", sum, ", not 1")});
            }
            if (j.coupling == CouplingKind::one_to_two_distribution &&
                std::any_of(row.begin(), row.end(), [](double a) { return a <= 0.0; })) {
              out.push_back({cat(tag, "distribution coupling requires positive alpha")});
            }
          }
        }
      }
      if (m == 2) {
        if (j.priority.size() != m) {
          out.push_back({cat(tag, "priority vector needs ", m, " entries")});
        } else {
          bool in_range = std::all_of(j.priority.begin(), j.priority.end(),
                                      [](double q) { return q > 0.0 && q < 1.0; });
          if (!in_range) {
            out.push_back({cat(tag, "priority entries must lie in (0,1)")});
          }
          double const sum = std::accumulate(j.priority.begin(), j.priority.end(), 0.0);
          if (std::abs(sum - 1.0) > kSumTol) {
            out.push_back({cat(tag, "priorities sum to ", sum, ", not 1")});
          }
        }
      }
    }

    bool connected(Network const& net) {
      if (net.roads.empty()) {
        return true;
      }
      // Union-find over roads; a junction joins all of its roads.
      std::map<int, int> parent;
      for (auto const& r : net.roads) {
        parent[r.id] = r.id;
      }
      auto find = [&](int x) {
        while (parent[x] != x) {
          parent[x] = parent[parent[x]];
          x = parent[x];
        }
        return x;
      };
      for (auto const& j : net.junctions) {
        std::vector<int> ids = j.incoming;
        ids.insert(ids.end(), j.outgoing.begin(), j.outgoing.end());
        for (std::size_t k = 1; k < ids.size(); ++k) {
          if (parent.count(ids[0]) && parent.count(ids[k])) {
            parent[find(ids[k])] = find(ids[0]);
          }
        }
      }
      int const root = find(net.roads.front().id);
      return std::all_of(net.roads.begin(), net.roads.end(),
                         [&](Road const& r) { return find(r.id) == root; });
    }

  }  // namespace

  namespace {

    bool touches_artificial(Network const& net, int road_id) {
      for (auto const& j : net.junctions) {
        auto const has = [&](std::vector<int> const& v) {
          return std::find(v.begin(), v.end(), road_id) != v.end();
        };
        if (!has(j.incoming) && !has(j.outgoing)) {
          continue;
        }
        for (auto const* side : {&j.incoming, &j.outgoing}) {
          for (int other : *side) {
            auto idx = net.road_index(other);
            if (other != road_id && idx && net.roads[*idx].artificial) {
              return true;
            }
          }
        }
      }
      return false;
    }

  }  // namespace

  std::vector<Violation> validate_network(Network const& net, double eta) {
    std::vector<Violation> out;
    if (!(eta > 0.0)) {
      out.push_back({cat("nonlocal range eta=", eta, " must be positive")});
    }

    std::set<int> ids;
    for (auto const& r : net.roads) {
      std::string const tag = cat("road ", r.id, ": ");
      if (!ids.insert(r.id).second) {
        out.push_back({cat(tag, "duplicate id")});
      }
      if (!(r.law.v_max > 0.0)) {
        out.push_back({cat(tag, "v_max must be positive")});
      }
      if (!(r.law.rho_max > 0.0)) {
        out.push_back({cat(tag, "rho_max must be positive")});
      }
      if (!(r.b > r.a)) {
        out.push_back({cat(tag, "empty interval [", r.a, ", ", r.b, "]")});
      } else if (!r.artificial && !(eta < r.length())) {
        out.push_back({cat(tag, "length ", r.length(), " does not exceed eta=", eta)});
      }
    }

    std::map<int, int> as_incoming;
    std::map<int, int> as_outgoing;
    for (auto const& j : net.junctions) {
      check_junction(net, j, out);
      for (int id : j.incoming) {
        ++as_incoming[id];
      }
      for (int id : j.outgoing) {
        ++as_outgoing[id];
      }
    }

    for (auto const& r : net.roads) {
      int const in = as_incoming[r.id];
      int const outg = as_outgoing[r.id];
      if (in > 1 || outg > 1) {
        out.push_back({cat("road ", r.id, ": attached to more than one junction at one end")});
      }
      if (!net.junctions.empty() && !r.artificial && (in != 1 || outg != 1) &&
          !touches_artificial(net, r.id)) {
        out.push_back({cat("road ", r.id,
                           ": road with an open end must share a junction with an artificial road")});
      }
      if (r.artificial && in + outg == 0 && net.roads.size() > 1) {
        out.push_back({cat("road ", r.id, ": artificial road is not attached to any junction")});
      }
    }

    if (!connected(net)) {
      out.push_back({"network is not connected"});
    }
    return out;
  }

}  // namespace nlnet
