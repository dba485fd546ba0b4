#pragma once

#include "nlnet/kernel.hpp"
#include "nlnet/network.hpp"
#include "nlnet/scheme.hpp"

#include <span>

namespace nlnet {

  enum class Side { incoming, outgoing };

  /// Discrete nonlocal velocity at cell j in junction coordinates.
  ///
  /// Incoming side: `rho_road` holds the whole road, junction index j < 0 maps
  /// to rho_road[size + j], and the window stops at the junction:
  ///   V = sum_{k=0}^{min(-j-2, N-1)} gamma_k v(rho_{j+k+1}).
  /// Outgoing side: `rho_road[i]` is cell i >= 0 of the outgoing road and
  ///   V = sum_{k=max(-j-1, 0)}^{N-1} gamma_k v(rho_{j+k+1}).
  /// Empty sums are 0. Throws std::out_of_range when the window needs a cell
  /// the span does not hold.
  double discrete_velocity(VelocityLaw const& law, Side side, int j,
                           std::span<double const> rho_road, QuadratureWeights const& weights);

  /// Upwind scheme for the nonlocal network model.
  ///
  /// Incoming roads carry rho V + g_e in the transition area, outgoing
  /// roads rho V. Roads without a downstream junction extend their last
  /// density beyond x = b; roads without an upstream junction receive
  /// rho_0 V_ghost through x = a.
  class NonlocalScheme final : public Scheme {
  public:
    NonlocalScheme(Network net, GridSpec grid, QuadratureWeights weights);

    std::string name() const override { return "nonlocal"; }
    void fluxes(State const& state, Fluxes& out) const override;
    double time_step(State const& state, CflMode mode) const override;
    std::string diagnose(State const& state) const override;

    QuadratureWeights const& weights() const noexcept { return weights_; }

    /// Own-road nonlocal velocity used by the flux right of `cell`.
    double velocity(int road_id, int cell, State const& state) const;
    /// V_o of outgoing road `out_pos` of a junction, evaluated at the
    /// incoming-road cell that sits `m` cells before the junction (m = 0 is
    /// the last cell).
    double outgoing_velocity(std::size_t junction, std::size_t out_pos, int m,
                             State const& state) const;

  private:
    QuadratureWeights weights_;
  };

  /// CFL bound dx / (gamma_0 ||v'|| ||rho|| + c ||v||) with c = 2 (strict,
  /// adaptive) or c = 1 (relaxed). Adaptive uses the current maximum cell
  /// density for ||rho||; the other modes use max rho_max.
  double cfl_dt(Network const& net, State const& state, QuadratureWeights const& weights,
                CflMode mode);

}  // namespace nlnet
