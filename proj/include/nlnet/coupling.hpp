#pragma once

// Nonlocal junction couplings g_e. Each returns the extra flux carried by an
// incoming road at one cell of its transition area; `v_out` arguments are the
// outgoing roads' nonlocal velocities evaluated at that cell.

namespace nlnet::coupling {

  double one_to_one(double rho_cell, double rho_max_out, double v_out);

  double one_to_two_maxflux(double rho_cell, double alpha_2, double alpha_3, double rho_max_2,
                            double rho_max_3, double v_2, double v_3);

  /// Throws ConfigError if either alpha is not positive.
  double one_to_two_distribution(double rho_cell, double alpha_2, double alpha_3,
                                 double rho_max_2, double rho_max_3, double v_2, double v_3);

  /// `rho_other_boundary` is the other incoming road's last-cell density.
  double two_to_one_maxflux(double rho_cell, double rho_other_boundary, double q_self,
                            double rho_max_out, double v_out);

  double two_to_one_priority(double rho_cell, double rho_other_boundary, double q_self,
                             double q_other, double rho_max_out, double v_out);

}  // namespace nlnet::coupling
