#include "nlnet/kernel.hpp"

#include "nlnet/error.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <sstream>

namespace nlnet {

  std::string to_string(KernelFamily family) {
    switch (family) {
      case KernelFamily::linear_decreasing: return "linear";
      case KernelFamily::constant: return "constant";
      case KernelFamily::tabulated: return "tabulated";
    }
    return "unknown";
  }

  KernelFamily parse_kernel_family(std::string const& name) {
    if (name == "linear" || name == "linear_decreasing" || name == "linear-decreasing") {
      return KernelFamily::linear_decreasing;
    }
    if (name == "constant") {
      return KernelFamily::constant;
    }
    if (name == "tabulated") {
      return KernelFamily::tabulated;
    }
    throw ConfigError("unknown kernel family '" + name + "'");
  }

  namespace {
    void require_positive_eta(double eta) {
      if (!(eta > 0.0) || !std::isfinite(eta)) {
        std::ostringstream msg;
        msg << "kernel range eta=" << eta << " must be positive and finite";
        throw ConfigError(msg.str());
      }
    }
  }  // namespace

  Kernel Kernel::linear(double eta) {
    require_positive_eta(eta);
    return Kernel(KernelFamily::linear_decreasing, eta);
  }

  Kernel Kernel::constant(double eta) {
    require_positive_eta(eta);
    return Kernel(KernelFamily::constant, eta);
  }

  Kernel Kernel::tabulated(std::vector<std::pair<double, double>> nodes) {
    if (nodes.size() < 2) {
      throw ConfigError("tabulated kernel needs at least two nodes");
    }
    if (nodes.front().first != 0.0) {
      throw ConfigError("tabulated kernel must start at x = 0");
    }
    for (std::size_t i = 1; i < nodes.size(); ++i) {
      if (!(nodes[i].first > nodes[i - 1].first)) {
        throw ConfigError("tabulated kernel abscissae must be strictly increasing");
      }
      if (nodes[i].second > nodes[i - 1].second) {
        throw ConfigError("tabulated kernel must be nonincreasing");
      }
    }
    if (nodes.back().second < 0.0) {
      throw ConfigError("tabulated kernel must be nonnegative");
    }
    double const eta = nodes.back().first;
    require_positive_eta(eta);

    double mass = 0.0;
    for (std::size_t i = 1; i < nodes.size(); ++i) {
      mass += 0.5 * (nodes[i].second + nodes[i - 1].second) * (nodes[i].first - nodes[i - 1].first);
    }
    if (!(mass > 0.0)) {
      throw ConfigError("tabulated kernel has zero mass");
    }
    Kernel k(KernelFamily::tabulated, eta);
    if (std::abs(mass - 1.0) > 1e-9) {
      std::cerr << "warning: tabulated kernel mass " << mass << " renormalised to 1\n";
      for (auto& n : nodes) {
        n.second /= mass;
      }
      k.renormalised_ = true;
    }
    k.cumulative_.assign(nodes.size(), 0.0);
    for (std::size_t i = 1; i < nodes.size(); ++i) {
      k.cumulative_[i] = k.cumulative_[i - 1] + 0.5 * (nodes[i].second + nodes[i - 1].second) *
                                                    (nodes[i].first - nodes[i - 1].first);
    }
    k.nodes_ = std::move(nodes);
    return k;
  }

  Kernel Kernel::with_eta(double eta) const {
    switch (family_) {
      case KernelFamily::linear_decreasing: return linear(eta);
      case KernelFamily::constant: return constant(eta);
      case KernelFamily::tabulated: {
        require_positive_eta(eta);
        double const s = eta / eta_;
        auto nodes = nodes_;
        for (auto& n : nodes) {
          n.first *= s;
          n.second /= s;
        }
        nodes.back().first = eta;
        return tabulated(std::move(nodes));
      }
    }
    return *this;
  }

  double Kernel::operator()(double x) const {
    if (x < 0.0 || x > eta_) {
      return 0.0;
    }
    switch (family_) {
      case KernelFamily::linear_decreasing: return 2.0 * (eta_ - x) / (eta_ * eta_);
      case KernelFamily::constant: return 1.0 / eta_;
      case KernelFamily::tabulated: {
        auto it = std::upper_bound(nodes_.begin(), nodes_.end(), x,
                                   [](double v, auto const& n) { return v < n.first; });
        if (it == nodes_.end()) {
          return nodes_.back().second;
        }
        auto const& hi = *it;
        auto const& lo = *(it - 1);
        double const t = (x - lo.first) / (hi.first - lo.first);
        return lo.second + t * (hi.second - lo.second);
      }
    }
    return 0.0;
  }

  double Kernel::antiderivative(double x) const {
    x = std::clamp(x, 0.0, eta_);
    switch (family_) {
      case KernelFamily::linear_decreasing: return x * (2.0 * eta_ - x) / (eta_ * eta_);
      case KernelFamily::constant: return x / eta_;
      case KernelFamily::tabulated: {
        if (x >= eta_) {
          return cumulative_.back();
        }
        auto it = std::upper_bound(nodes_.begin(), nodes_.end(), x,
                                   [](double v, auto const& n) { return v < n.first; });
        std::size_t const i = static_cast<std::size_t>(it - nodes_.begin()) - 1;
        auto const& lo = nodes_[i];
        auto const& hi = nodes_[i + 1];
        double const slope = (hi.second - lo.second) / (hi.first - lo.first);
        double const h = x - lo.first;
        return cumulative_[i] + lo.second * h + 0.5 * slope * h * h;
      }
    }
    return 0.0;
  }

  double Kernel::integral(double lo, double hi) const {
    return antiderivative(hi) - antiderivative(lo);
  }

  int cells_per_range(double eta, double dx) {
    if (!(dx > 0.0) || !(eta > 0.0)) {
      throw ConfigError("eta and dx must be positive");
    }
    double const ratio = eta / dx;
    double const n = std::round(ratio);
    if (n < 1.0 || std::abs(ratio - n) > 1e-9 * std::max(1.0, ratio)) {
      std::ostringstream msg;
      msg << "eta=" << eta << " is not an integer multiple of dx=" << dx;
      throw ConfigError(msg.str());
    }
    return static_cast<int>(n);
  }

  QuadratureWeights gamma_weights(Kernel const& kernel, double dx) {
    int const n = cells_per_range(kernel.eta(), dx);
    QuadratureWeights w;
    w.dx = dx;
    w.n_eta = n;
    w.gamma.resize(static_cast<std::size_t>(n));
    double const nn = static_cast<double>(n);
    for (int k = 0; k < n; ++k) {
      switch (kernel.family()) {
        // Closed forms in units of eta / n so the weights telescope to 1.
        case KernelFamily::linear_decreasing:
          w.gamma[k] = (2.0 * (nn - k) - 1.0) / (nn * nn);
          break;
        case KernelFamily::constant:
          w.gamma[k] = 1.0 / nn;
          break;
        case KernelFamily::tabulated: {
          double const h = kernel.eta() / nn;
          double const hi = (k + 1 == n) ? kernel.eta() : (k + 1) * h;
          w.gamma[k] = kernel.integral(k * h, hi);
          break;
        }
      }
    }
    return w;
  }

}  // namespace nlnet
