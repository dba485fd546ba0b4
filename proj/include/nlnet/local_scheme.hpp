#pragma once

#include "nlnet/network.hpp"
#include "nlnet/scheme.hpp"

#include <span>
#include <vector>

namespace nlnet {

  // ---------------------------------------------------------------------------
  // Local LWR baseline (Godunov with demand/supply junction fluxes)
  // ---------------------------------------------------------------------------

  /// Demand and supply of f(rho) = rho v(rho). sigma = rho_max / 2 for the
  /// affine law.
  struct DemandSupply {
    VelocityLaw law;
    double sigma;

    explicit DemandSupply(VelocityLaw l) : law{l}, sigma{l.critical_density()} {}
    double capacity() const noexcept { return law.flux(sigma); }
  };

  /// Throws DomainError outside [0, rho_max].
  double demand(DemandSupply const& ds, double rho);
  double supply(DemandSupply const& ds, double rho);
  /// min{D(rho_left), S(rho_right)}; both states on the same road.
  double godunov_flux(DemandSupply const& ds, double rho_left, double rho_right);

  struct JunctionFlows {
    std::vector<double> incoming;  // flow leaving each incoming road
    std::vector<double> outgoing;  // flow entering each outgoing road
  };

  /// Junction flows from the incoming demands and outgoing supplies, for the
  /// max-flux or the distribution/priority local coupling. 1-to-1 junctions
  /// use min{D, S} for both variants.
  JunctionFlows local_junction_fluxes(Junction const& junction, std::span<double const> demands,
                                      std::span<double const> supplies, CouplingFamily variant);

  class LocalScheme final : public Scheme {
  public:
    LocalScheme(Network net, GridSpec grid, CouplingFamily variant);

    std::string name() const override;
    void fluxes(State const& state, Fluxes& out) const override;
    /// dx / (2 ||v||); relaxed mode uses dx / ||v||.
    double time_step(State const& state, CflMode mode) const override;

    CouplingFamily variant() const noexcept { return variant_; }

  private:
    CouplingFamily variant_;
  };

  // ---------------------------------------------------------------------------
  // Limit eta -> infinity
  // ---------------------------------------------------------------------------

  /// min{rho, rho_max2} v2(0).
  double limit_flux_1to1(double rho, double v2_0, double rho_max2);

  /// Exact entropy solution of the Riemann problem for
  /// rho_t + (min{rho, rho_max2} v2(0))_x = 0 with the jump at x = 0.
  double riemann_limit_1to1(double rho_left, double rho_right, double rho_max2, double v2_0,
                            double t, double x);

  /// Wave pattern of the Riemann solution: states[i] holds on
  /// speeds[i-1] t < x < speeds[i] t.
  struct RiemannFan {
    std::vector<double> states;
    std::vector<double> speeds;

    double sample(double t, double x) const;
  };
  RiemannFan riemann_fan_1to1(double rho_left, double rho_right, double rho_max2, double v2_0);

  /// Inputs of a limit coupling at one incoming-road cell. Outgoing speeds
  /// are the free-flow values v_o(0).
  struct LimitInputs {
    double rho{0.0};
    double rho_other_boundary{0.0};  // 2-to-1 only
    double alpha_2{1.0};
    double alpha_3{0.0};
    double q_self{1.0};
    double q_other{0.0};
    double rho_max_2{1.0};
    double rho_max_3{1.0};
    double v_2{0.0};
    double v_3{0.0};
  };

  /// The nonlocal coupling with every V_o replaced by v_o(0).
  double limit_coupling_flux(CouplingKind kind, LimitInputs const& in);

  /// Limit network model: incoming roads carry the limit coupling flux on
  /// every cell, roads without a downstream junction pure transport
  /// rho v_e(0). Requires every road to touch at most one junction.
  class LimitScheme final : public Scheme {
  public:
    LimitScheme(Network net, GridSpec grid);

    std::string name() const override { return "limit"; }
    void fluxes(State const& state, Fluxes& out) const override;
    double time_step(State const& state, CflMode mode) const override;
  };

}  // namespace nlnet
