#pragma once

#include <string>
#include <utility>
#include <vector>

namespace nlnet {

  enum class KernelFamily { linear_decreasing, constant, tabulated };

  std::string to_string(KernelFamily family);
  KernelFamily parse_kernel_family(std::string const& name);

  /// Nonincreasing unit-mass look-ahead kernel on [0, eta].
  class Kernel {
  public:
    /// omega(x) = 2 (eta - x) / eta^2
    static Kernel linear(double eta);
    /// omega(x) = 1 / eta
    static Kernel constant(double eta);
    /// Piecewise-linear interpolation of (x, omega) nodes. Nodes must start
    /// at x = 0, end at x = eta, and be nonincreasing in omega. Tables whose
    /// mass differs from 1 by more than 1e-9 are rescaled and
    /// `renormalised()` reports true.
    static Kernel tabulated(std::vector<std::pair<double, double>> nodes);

    KernelFamily family() const noexcept { return family_; }
    double eta() const noexcept { return eta_; }
    std::vector<std::pair<double, double>> const& nodes() const noexcept { return nodes_; }
    bool renormalised() const noexcept { return renormalised_; }

    double operator()(double x) const;
    /// Exact integral of omega over [lo, hi] (clipped to [0, eta]).
    double integral(double lo, double hi) const;

    /// Same family rescaled to a new range; tabulated nodes are stretched.
    Kernel with_eta(double eta) const;

  private:
    Kernel(KernelFamily family, double eta) : family_{family}, eta_{eta} {}
    double antiderivative(double x) const;

    KernelFamily family_;
    double eta_;
    std::vector<std::pair<double, double>> nodes_;
    std::vector<double> cumulative_;
    bool renormalised_{false};
  };

  /// gamma[k] = integral of omega over [k dx, (k+1) dx], k = 0..n_eta-1.
  struct QuadratureWeights {
    std::vector<double> gamma;
    double dx{0.0};
    int n_eta{0};

    double operator[](std::size_t k) const { return gamma[k]; }
    std::size_t size() const noexcept { return gamma.size(); }
  };

  /// Throws ConfigError unless eta / dx is a positive integer (relative
  /// tolerance 1e-9).
  int cells_per_range(double eta, double dx);

  QuadratureWeights gamma_weights(Kernel const& kernel, double dx);

}  // namespace nlnet
