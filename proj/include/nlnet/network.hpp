#pragma once

#include <optional>
#include <string>
#include <vector>

namespace nlnet {

  /// Affine velocity law v(rho) = v_max * (1 - rho / rho_max).
  ///
  /// Kept as a named family rather than an arbitrary callable so that the
  /// sup-norms ||v|| = v_max and ||v'|| = v_max / rho_max entering the CFL
  /// bound are exact.
  struct VelocityLaw {
    double v_max{1.0};
    double rho_max{1.0};

    /// Throws DomainError if rho is outside [0, rho_max].
    double operator()(double rho) const;
    /// Unchecked evaluation, clamped to [0, v_max]. Used in inner loops.
    double eval(double rho) const noexcept {
      double const v = v_max * (1.0 - rho / rho_max);
      return v < 0.0 ? 0.0 : (v > v_max ? v_max : v);
    }
    double sup_norm() const noexcept { return v_max; }
    double derivative_norm() const noexcept { return v_max / rho_max; }
    /// Maximiser of rho * v(rho); rho_max / 2 for the affine law.
    double critical_density() const noexcept { return 0.5 * rho_max; }
    double flux(double rho) const noexcept { return rho * eval(rho); }

    bool operator==(VelocityLaw const&) const = default;
  };

  double eval_velocity(VelocityLaw const& law, double rho);

  struct Road {
    int id{0};
    double a{0.0};
    double b{1.0};
    VelocityLaw law{};
    bool artificial{false};

    double length() const noexcept { return b - a; }

    bool operator==(Road const&) const = default;
  };

  enum class CouplingKind {
    one_to_one,
    one_to_two_maxflux,
    one_to_two_distribution,
    two_to_one_maxflux,
    two_to_one_priority,
  };

  /// Coupling family used by the network-wide model selectors.
  enum class CouplingFamily { maxflux, distribution };

  std::string to_string(CouplingKind kind);
  /// Accepts the snake_case names above; throws ConfigError otherwise.
  CouplingKind parse_coupling(std::string const& name);
  /// Number of incoming/outgoing roads a coupling expects.
  std::pair<int, int> coupling_arity(CouplingKind kind);
  /// The coupling of `family` for a junction with the given shape.
  CouplingKind coupling_for(CouplingFamily family, int n_in, int n_out);

  struct Junction {
    int id{0};
    std::vector<int> incoming;
    std::vector<int> outgoing;
    CouplingKind coupling{CouplingKind::one_to_one};
    /// alpha[i][o], rows indexed like `incoming`, columns like `outgoing`.
    /// Required when two roads leave the junction.
    std::vector<std::vector<double>> distribution;
    /// q[i] per incoming road. Required when two roads enter the junction.
    std::vector<double> priority;

    double alpha(std::size_t in_pos, std::size_t out_pos) const;

    bool operator==(Junction const&) const = default;
  };

  struct Violation {
    std::string what;
  };

  struct Network {
    std::vector<Road> roads;
    std::vector<Junction> junctions;

    /// Index into `roads` of the road with the given id; nullopt if absent.
    std::optional<std::size_t> road_index(int id) const;
    Road const& road(int id) const;
    /// Junction at the downstream end of the road (road is incoming there).
    Junction const* downstream_of(int road_id) const;
    /// Junction at the upstream end of the road (road is outgoing there).
    Junction const* upstream_of(int road_id) const;

    double max_speed() const;
    double max_speed_derivative() const;
    double max_density() const;

    /// Retags every junction with the coupling of `family` for its shape.
    void apply_family(CouplingFamily family);

    bool operator==(Network const&) const = default;
  };

  /// Checks every modelling assumption; an empty result means valid.
  std::vector<Violation> validate_network(Network const& net, double eta);

}  // namespace nlnet
