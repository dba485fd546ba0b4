#include "nlnet/coupling.hpp"

#include "nlnet/error.hpp"

#include <algorithm>

namespace nlnet::coupling {

  double one_to_one(double rho_cell, double rho_max_out, double v_out) {
    return std::min(rho_cell, rho_max_out) * v_out;
  }

  double one_to_two_maxflux(double rho_cell, double alpha_2, double alpha_3, double rho_max_2,
                            double rho_max_3, double v_2, double v_3) {
    return std::min(alpha_2 * rho_cell, rho_max_2) * v_2 +
           std::min(alpha_3 * rho_cell, rho_max_3) * v_3;
  }

  double one_to_two_distribution(double rho_cell, double alpha_2, double alpha_3,
                                 double rho_max_2, double rho_max_3, double v_2, double v_3) {
    if (!(alpha_2 > 0.0) || !(alpha_3 > 0.0)) {
      throw ConfigError("distribution coupling requires positive alpha");
    }
    double const desired = rho_cell * (alpha_2 * v_2 + alpha_3 * v_3);
    return std::min({desired, rho_max_2 * v_2 / alpha_2, rho_max_3 * v_3 / alpha_3});
  }

  double two_to_one_maxflux(double rho_cell, double rho_other_boundary, double q_self,
                            double rho_max_out, double v_out) {
    double const cap = std::max(q_self * rho_max_out, rho_max_out - rho_other_boundary);
    return std::min(rho_cell, cap) * v_out;
  }

  double two_to_one_priority(double rho_cell, double rho_other_boundary, double q_self,
                             double q_other, double rho_max_out, double v_out) {
    return std::min({rho_cell, q_self * rho_max_out, (q_self / q_other) * rho_other_boundary}) *
           v_out;
  }

}  // namespace nlnet::coupling
