#include "nlnet/nlnet.h"

#include "nlnet/error.hpp"
#include "nlnet/local_scheme.hpp"
#include "nlnet/measures.hpp"
#include "nlnet/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <filesystem>
#include <limits>
#include <new>
#include <string>
#include <vector>

struct nlnet_scenario {
  nlnet::ScenarioConfig config;
  std::vector<std::string> violations;
};

struct nlnet_result {
  nlnet::Trajectory trajectory;
  nlnet::MeasureReport report;
};

namespace {

  thread_local std::string g_last_error;

  nlnet_status fail(nlnet_status status, std::string message) {
    g_last_error = std::move(message);
    return status;
  }

  // Runs f, translating exceptions into status codes.
  template <class F>
  nlnet_status guard(F&& f) {
    try {
      f();
      return NLNET_OK;
    } catch (nlnet::ParseError const& e) {
      return fail(NLNET_ERR_PARSE, e.what());
    } catch (nlnet::ConfigError const& e) {
      return fail(NLNET_ERR_CONFIG, e.what());
    } catch (nlnet::CflViolation const& e) {
      return fail(NLNET_ERR_CFL, e.what());
    } catch (nlnet::DomainError const& e) {
      return fail(NLNET_ERR_DOMAIN, e.what());
    } catch (std::filesystem::filesystem_error const& e) {
      return fail(NLNET_ERR_IO, e.what());
    } catch (std::out_of_range const& e) {
      return fail(NLNET_ERR_ARGUMENT, e.what());
    } catch (std::bad_alloc const&) {
      return fail(NLNET_ERR_INTERNAL, "out of memory");
    } catch (std::exception const& e) {
      return fail(NLNET_ERR_INTERNAL, e.what());
    } catch (...) {
      return fail(NLNET_ERR_INTERNAL, "unknown error");
    }
  }

  nlnet_status null_arg(char const* what) {
    return fail(NLNET_ERR_ARGUMENT, std::string{what} + " must not be null");
  }

  nlnet_status copy_string(std::string const& src, char* buf, size_t cap, size_t* needed) {
    if (needed != nullptr) {
      *needed = src.size() + 1;
    }
    if (buf == nullptr) {
      return NLNET_OK;
    }
    if (cap < src.size() + 1) {
      return fail(NLNET_ERR_ARGUMENT, "buffer too small");
    }
    std::memcpy(buf, src.c_str(), src.size() + 1);
    return NLNET_OK;
  }

  nlnet_status positive(double v, char const* what) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      return fail(NLNET_ERR_CONFIG, std::string{what} + " must be positive and finite");
    }
    return NLNET_OK;
  }

}  // namespace

extern "C" {

const char* nlnet_version(void) { return "1.0.0"; }

const char* nlnet_last_error(void) { return g_last_error.c_str(); }

const char* nlnet_status_name(nlnet_status status) {
  switch (status) {
    case NLNET_OK: return "ok";
    case NLNET_ERR_CONFIG: return "configuration error";
    case NLNET_ERR_PARSE: return "parse error";
    case NLNET_ERR_CFL: return "CFL violation";
    case NLNET_ERR_DOMAIN: return "domain error";
    case NLNET_ERR_ARGUMENT: return "invalid argument";
    case NLNET_ERR_IO: return "I/O error";
    case NLNET_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

nlnet_status nlnet_scenario_load(const char* path, nlnet_scenario** out) {
  if (path == nullptr || out == nullptr) return null_arg("path and out");
  *out = nullptr;
  return guard([&] {
    if (!std::filesystem::exists(path)) {
      throw std::filesystem::filesystem_error("scenario file not found", path,
                                              std::make_error_code(std::errc::no_such_file_or_directory));
    }
    *out = new nlnet_scenario{nlnet::load_scenario(path), {}};
  });
}

nlnet_status nlnet_scenario_parse(const char* json, nlnet_scenario** out) {
  if (json == nullptr || out == nullptr) return null_arg("json and out");
  *out = nullptr;
  return guard([&] { *out = new nlnet_scenario{nlnet::parse_scenario(json), {}}; });
}

nlnet_status nlnet_scenario_builtin(const char* name, nlnet_scenario** out) {
  if (name == nullptr || out == nullptr) return null_arg("name and out");
  *out = nullptr;
  if (std::strcmp(name, "diamond") != 0) {
    return fail(NLNET_ERR_CONFIG, std::string{"unknown builtin scenario '"} + name + "'");
  }
  return guard([&] { *out = new nlnet_scenario{nlnet::builtin_diamond(), {}}; });
}

nlnet_status nlnet_scenario_clone(const nlnet_scenario* s, nlnet_scenario** out) {
  if (s == nullptr || out == nullptr) return null_arg("scenario and out");
  return guard([&] { *out = new nlnet_scenario{*s}; });
}

void nlnet_scenario_free(nlnet_scenario* s) { delete s; }

nlnet_status nlnet_scenario_set_eta(nlnet_scenario* s, double eta) {
  if (s == nullptr) return null_arg("scenario");
  if (auto st = positive(eta, "eta"); st != NLNET_OK) return st;
  s->config.kernel.eta = eta;
  return NLNET_OK;
}

nlnet_status nlnet_scenario_set_dx(nlnet_scenario* s, double dx) {
  if (s == nullptr) return null_arg("scenario");
  if (auto st = positive(dx, "dx"); st != NLNET_OK) return st;
  s->config.dx = dx;
  return NLNET_OK;
}

nlnet_status nlnet_scenario_set_horizon(nlnet_scenario* s, double horizon) {
  if (s == nullptr) return null_arg("scenario");
  if (!(horizon >= 0.0) || !std::isfinite(horizon)) {
    return fail(NLNET_ERR_CONFIG, "horizon must be nonnegative and finite");
  }
  s->config.horizon = horizon;
  return NLNET_OK;
}

nlnet_status nlnet_scenario_set_model(nlnet_scenario* s, const char* model) {
  if (s == nullptr || model == nullptr) return null_arg("scenario and model");
  return guard([&] { s->config.model = nlnet::parse_model(model); });
}

nlnet_status nlnet_scenario_set_cfl(nlnet_scenario* s, const char* mode) {
  if (s == nullptr || mode == nullptr) return null_arg("scenario and mode");
  return guard([&] { s->config.cfl = nlnet::parse_cfl_mode(mode); });
}

nlnet_status nlnet_scenario_set_output_dir(nlnet_scenario* s, const char* dir) {
  if (s == nullptr || dir == nullptr) return null_arg("scenario and dir");
  return guard([&] { s->config.outputs.directory = dir; });
}

nlnet_status nlnet_scenario_set_snapshot_times(nlnet_scenario* s, const double* times, size_t n) {
  if (s == nullptr || (times == nullptr && n > 0)) return null_arg("scenario and times");
  return guard([&] { s->config.outputs.snapshot_times.assign(times, times + n); });
}

nlnet_status nlnet_scenario_set_travel_time_roads(nlnet_scenario* s, const int* roads, size_t n) {
  if (s == nullptr || (roads == nullptr && n > 0)) return null_arg("scenario and roads");
  for (size_t i = 0; i < n; ++i) {
    if (!s->config.network.road_index(roads[i])) {
      return fail(NLNET_ERR_CONFIG, "no road with id " + std::to_string(roads[i]));
    }
  }
  return guard([&] { s->config.outputs.travel_time_roads.assign(roads, roads + n); });
}

nlnet_status nlnet_scenario_get_eta(const nlnet_scenario* s, double* eta) {
  if (s == nullptr || eta == nullptr) return null_arg("scenario and eta");
  *eta = s->config.kernel.eta;
  return NLNET_OK;
}

nlnet_status nlnet_scenario_get_horizon(const nlnet_scenario* s, double* horizon) {
  if (s == nullptr || horizon == nullptr) return null_arg("scenario and horizon");
  *horizon = s->config.horizon;
  return NLNET_OK;
}

nlnet_status nlnet_scenario_get_model(const nlnet_scenario* s, char* buf, size_t cap,
                                      size_t* needed) {
  if (s == nullptr) return null_arg("scenario");
  return copy_string(nlnet::to_string(s->config.model), buf, cap, needed);
}

nlnet_status nlnet_scenario_get_output_dir(const nlnet_scenario* s, char* buf, size_t cap,
                                           size_t* needed) {
  if (s == nullptr) return null_arg("scenario");
  return copy_string(s->config.outputs.directory, buf, cap, needed);
}

nlnet_status nlnet_scenario_save(const nlnet_scenario* s, char** json) {
  if (s == nullptr || json == nullptr) return null_arg("scenario and json");
  *json = nullptr;
  return guard([&] {
    std::string const text = nlnet::save_scenario(s->config);
    char* buf = new char[text.size() + 1];
    std::memcpy(buf, text.c_str(), text.size() + 1);
    *json = buf;
  });
}

void nlnet_string_free(char* str) { delete[] str; }

nlnet_status nlnet_scenario_validate(nlnet_scenario* s, size_t* n_violations) {
  if (s == nullptr || n_violations == nullptr) return null_arg("scenario and n_violations");
  return guard([&] {
    s->violations.clear();
    for (auto const& v : nlnet::validate_scenario(s->config)) {
      s->violations.push_back(v.what);
    }
    *n_violations = s->violations.size();
  });
}

const char* nlnet_scenario_violation(const nlnet_scenario* s, size_t index) {
  if (s == nullptr || index >= s->violations.size()) {
    return nullptr;
  }
  return s->violations[index].c_str();
}

nlnet_status nlnet_simulate(const nlnet_scenario* s, nlnet_result** out) {
  if (s == nullptr || out == nullptr) return null_arg("scenario and out");
  *out = nullptr;
  return guard([&] {
    auto traj = nlnet::simulate(s->config);
    auto report = nlnet::measure(traj, nlnet::measure_options(s->config));
    *out = new nlnet_result{std::move(traj), std::move(report)};
  });
}

void nlnet_result_free(nlnet_result* r) { delete r; }

nlnet_status nlnet_result_measures(const nlnet_result* r, nlnet_measures* out) {
  if (r == nullptr || out == nullptr) return null_arg("result and out");
  auto const& t = r->trajectory;
  double const dm = t.final.mass(t.grid.dx) - t.initial.mass(t.grid.dx);
  out->outflow = r->report.outflow;
  out->total_travel_time = r->report.total_travel_time;
  out->congestion = r->report.congestion;
  out->final_time = t.final.time;
  out->mass_balance_error = std::abs(dm - t.boundary_balance);
  out->steps = t.steps.size();
  return NLNET_OK;
}

nlnet_status nlnet_result_write(const nlnet_result* r, const char* dir) {
  if (r == nullptr || dir == nullptr) return null_arg("result and dir");
  nlnet_status const st = guard([&] { nlnet::write_results(r->trajectory, r->report, dir); });
  return st == NLNET_ERR_CONFIG ? fail(NLNET_ERR_IO, g_last_error) : st;
}

size_t nlnet_result_road_count(const nlnet_result* r) {
  return r == nullptr ? 0 : r->trajectory.network.roads.size();
}

nlnet_status nlnet_result_road_id(const nlnet_result* r, size_t index, int* id) {
  if (r == nullptr || id == nullptr) return null_arg("result and id");
  if (index >= r->trajectory.network.roads.size()) {
    return fail(NLNET_ERR_ARGUMENT, "road index out of range");
  }
  *id = r->trajectory.network.roads[index].id;
  return NLNET_OK;
}

size_t nlnet_result_warning_count(const nlnet_result* r) {
  return r == nullptr ? 0 : r->trajectory.warnings.size();
}

const char* nlnet_result_warning(const nlnet_result* r, size_t index) {
  if (r == nullptr || index >= r->trajectory.warnings.size()) {
    return nullptr;
  }
  return r->trajectory.warnings[index].c_str();
}

nlnet_status nlnet_result_profile(const nlnet_result* r, int road, double t, double* buf,
                                  size_t cap, size_t* n) {
  if (r == nullptr || n == nullptr) return null_arg("result and n");
  auto idx = r->trajectory.network.road_index(road);
  if (!idx) {
    return fail(NLNET_ERR_ARGUMENT, "no road with id " + std::to_string(road));
  }
  auto const& rho = r->trajectory.nearest(t).rho[*idx];
  *n = rho.size();
  if (buf == nullptr) {
    return NLNET_OK;
  }
  if (cap < rho.size()) {
    return fail(NLNET_ERR_ARGUMENT, "buffer too small");
  }
  std::copy(rho.begin(), rho.end(), buf);
  return NLNET_OK;
}

nlnet_status nlnet_result_l1_distance(const nlnet_result* a, const nlnet_result* b, int road,
                                      double t, double* out) {
  if (a == nullptr || b == nullptr || out == nullptr) return null_arg("results and out");
  if (!a->trajectory.network.road_index(road)) {
    return fail(NLNET_ERR_ARGUMENT, "no road with id " + std::to_string(road));
  }
  return guard([&] { *out = nlnet::l1_distance(a->trajectory, b->trajectory, road, t); });
}

nlnet_status nlnet_result_split_ratio_range(const nlnet_result* r, int junction, int out_road,
                                            double flux_floor, double* min, double* max,
                                            size_t* samples) {
  if (r == nullptr || min == nullptr || max == nullptr || samples == nullptr) {
    return null_arg("result and outputs");
  }
  return guard([&] {
    auto const& traj = r->trajectory;
    auto const& net = traj.network;
    auto const it = std::find_if(net.junctions.begin(), net.junctions.end(),
                                 [&](nlnet::Junction const& j) { return j.id == junction; });
    if (it == net.junctions.end() || it->outgoing.size() != 2 ||
        std::find(it->outgoing.begin(), it->outgoing.end(), out_road) == it->outgoing.end()) {
      throw nlnet::ConfigError("junction " + std::to_string(junction) +
                               " has no split onto road " + std::to_string(out_road));
    }
    std::size_t const in = *net.road_index(it->incoming[0]);
    std::size_t const o = *net.road_index(out_road);
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    std::size_t count = 0;
    for (auto const& s : traj.steps) {
      if (s.outflow[in] > flux_floor) {
        double const ratio = s.inflow[o] / s.outflow[in];
        lo = std::min(lo, ratio);
        hi = std::max(hi, ratio);
        ++count;
      }
    }
    *min = lo;
    *max = hi;
    *samples = count;
  });
}

nlnet_status nlnet_riemann_limit_1to1(double rho_left, double rho_right, double rho_max2,
                                      double v2_0, double t, const double* xs, size_t n,
                                      double* out) {
  if ((xs == nullptr || out == nullptr) && n > 0) return null_arg("xs and out");
  if (!(rho_left >= 0.0) || !(rho_right >= 0.0) || !(rho_max2 > 0.0) || !(v2_0 > 0.0) ||
      !(t >= 0.0)) {
    return fail(NLNET_ERR_DOMAIN,
                "Riemann data need rho_left, rho_right >= 0, rho_max2 > 0, v2(0) > 0, t >= 0");
  }
  if (rho_right > rho_max2) {
    return fail(NLNET_ERR_DOMAIN, "rho_right exceeds rho_max2");
  }
  return guard([&] {
    auto const fan = nlnet::riemann_fan_1to1(rho_left, rho_right, rho_max2, v2_0);
    for (size_t i = 0; i < n; ++i) {
      out[i] = fan.sample(t, xs[i]);
    }
  });
}

}  // extern "C"
