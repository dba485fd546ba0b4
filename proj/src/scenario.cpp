#include "nlnet/scenario.hpp"

#include "nlnet/error.hpp"
#include "nlnet/local_scheme.hpp"
#include "nlnet/nonlocal_scheme.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <memory>
#include <sstream>

namespace nlnet {

  using json = nlohmann::ordered_json;

  std::string to_string(ModelKind model) {
    switch (model) {
      case ModelKind::nonlocal: return "nonlocal";
      case ModelKind::nonlocal_maxflux: return "nonlocal-maxflux";
      case ModelKind::nonlocal_distribution: return "nonlocal-distribution";
      case ModelKind::local_maxflux: return "local-maxflux";
      case ModelKind::local_distribution: return "local-distribution";
      case ModelKind::limit: return "limit";
    }
    return "unknown";
  }

  ModelKind parse_model(std::string const& name) {
    for (auto m : {ModelKind::nonlocal, ModelKind::nonlocal_maxflux,
                   ModelKind::nonlocal_distribution, ModelKind::local_maxflux,
                   ModelKind::local_distribution, ModelKind::limit}) {
      if (to_string(m) == name) {
        return m;
      }
    }
    throw ConfigError("unknown model '" + name +
                      "' (expected nonlocal, nonlocal-maxflux, nonlocal-distribution, "
                      "local-maxflux, local-distribution or limit)");
  }

  Kernel KernelSpec::build() const {
    switch (family) {
      case KernelFamily::linear_decreasing: return Kernel::linear(eta);
      case KernelFamily::constant: return Kernel::constant(eta);
      case KernelFamily::tabulated: return Kernel::tabulated(nodes).with_eta(eta);
    }
    throw ConfigError("unknown kernel family");
  }

  ScenarioConfig builtin_diamond() {
    ScenarioConfig c;
    constexpr double v_max[] = {0.5, 0.5, 2.0, 2.0, 0.5, 2.0, 0.5, 1.0, 1.0};
    constexpr double rho0[] = {0.4, 0.4, 0.4, 0.4, 0.8, 0.4, 0.8, 0.2, 0.2};
    for (int id = 0; id <= 8; ++id) {
      Road r;
      r.id = id;
      r.artificial = id == 0 || id == 8;
      r.a = 0.0;
      r.b = r.artificial ? c.artificial_length : 1.0;
      r.law = {v_max[id], 1.0};
      c.network.roads.push_back(r);
      c.initial.push_back({id, {{r.a, r.b, rho0[id]}}});
    }
    auto& J = c.network.junctions;
    J.push_back({1, {0}, {1}, CouplingKind::one_to_one, {}, {}});
    J.push_back({2, {1}, {2, 3}, CouplingKind::one_to_two_maxflux, {{0.5, 0.5}}, {}});
    J.push_back({3, {2}, {4, 5}, CouplingKind::one_to_two_maxflux, {{0.2, 0.8}}, {}});
    J.push_back({4, {3, 4}, {6}, CouplingKind::two_to_one_maxflux, {}, {0.8, 0.2}});
    J.push_back({5, {5, 6}, {7}, CouplingKind::two_to_one_maxflux, {}, {0.8, 0.2}});
    J.push_back({6, {7}, {8}, CouplingKind::one_to_one, {}, {}});
    c.kernel = {KernelFamily::linear_decreasing, 0.5, {}};
    c.dx = 0.01;
    c.model = ModelKind::nonlocal_maxflux;
    c.horizon = 20.0;
    return c;
  }

  // ---------------------------------------------------------------------------
  // Parsing
  // ---------------------------------------------------------------------------

  namespace {

    json const& field(json const& obj, char const* key, std::string const& where) {
      if (!obj.is_object()) {
        throw ParseError(where + ": expected an object");
      }
      auto it = obj.find(key);
      if (it == obj.end()) {
        throw ParseError(where + ": missing field '" + key + "'");
      }
      return *it;
    }

    std::string path(std::string const& where, char const* key) {
      return where.empty() ? std::string{key} : where + "." + key;
    }

    double number(json const& obj, char const* key, std::string const& where) {
      auto const& v = field(obj, key, where);
      if (!v.is_number()) {
        throw ParseError(path(where, key) + ": expected a number");
      }
      return v.get<double>();
    }

    double number_or(json const& obj, char const* key, std::string const& where, double dflt) {
      return obj.contains(key) ? number(obj, key, where) : dflt;
    }

    int integer(json const& obj, char const* key, std::string const& where) {
      auto const& v = field(obj, key, where);
      if (!v.is_number_integer()) {
        throw ParseError(path(where, key) + ": expected an integer");
      }
      return v.get<int>();
    }

    std::string text(json const& obj, char const* key, std::string const& where) {
      auto const& v = field(obj, key, where);
      if (!v.is_string()) {
        throw ParseError(path(where, key) + ": expected a string");
      }
      return v.get<std::string>();
    }

    json const& array(json const& obj, char const* key, std::string const& where) {
      auto const& v = field(obj, key, where);
      if (!v.is_array()) {
        throw ParseError(path(where, key) + ": expected an array");
      }
      return v;
    }

    template <class T>
    std::vector<T> numbers(json const& arr, std::string const& where) {
      std::vector<T> out;
      for (std::size_t i = 0; i < arr.size(); ++i) {
        bool const ok = std::is_integral_v<T> ? arr[i].is_number_integer() : arr[i].is_number();
        if (!ok) {
          throw ParseError(where + "[" + std::to_string(i) + "]: expected a number");
        }
        out.push_back(arr[i].get<T>());
      }
      return out;
    }

    std::string at(std::string const& where, std::size_t i) {
      return where + "[" + std::to_string(i) + "]";
    }

    // Domain exceptions raised while interpreting a field become ParseErrors
    // tagged with that field.
    template <class F>
    auto tagged(std::string const& where, F&& f) {
      try {
        return f();
      } catch (ParseError const&) {
        throw;
      } catch (ConfigError const& e) {
        throw ParseError(where + ": " + e.what());
      }
    }

    Road parse_road(json const& j, std::string const& where, double artificial_length) {
      Road r;
      r.id = integer(j, "id", where);
      if (j.contains("artificial")) {
        auto const& flag = field(j, "artificial", where);
        if (!flag.is_boolean()) {
          throw ParseError(path(where, "artificial") + ": expected true or false");
        }
        r.artificial = flag.get<bool>();
      }
      r.law.v_max = number(j, "v_max", where);
      r.law.rho_max = number(j, "rho_max", where);
      r.a = number_or(j, "a", where, 0.0);
      if (j.contains("b")) {
        r.b = number(j, "b", where);
      } else if (j.contains("length")) {
        r.b = r.a + number(j, "length", where);
      } else if (r.artificial) {
        r.b = r.a + artificial_length;
      } else {
        throw ParseError(where + ": missing field 'b' (or 'length')");
      }
      return r;
    }

    Junction parse_junction(json const& j, std::string const& where) {
      Junction J;
      J.id = integer(j, "id", where);
      J.incoming = numbers<int>(array(j, "incoming", where), path(where, "incoming"));
      J.outgoing = numbers<int>(array(j, "outgoing", where), path(where, "outgoing"));
      if (j.contains("coupling")) {
        auto const name = text(j, "coupling", where);
        J.coupling = tagged(path(where, "coupling"), [&] { return parse_coupling(name); });
      } else {
        J.coupling = tagged(where, [&] {
          return coupling_for(CouplingFamily::maxflux, static_cast<int>(J.incoming.size()),
                              static_cast<int>(J.outgoing.size()));
        });
      }
      if (j.contains("distribution")) {
        auto const& rows = array(j, "distribution", where);
        for (std::size_t i = 0; i < rows.size(); ++i) {
          if (!rows[i].is_array()) {
            throw ParseError(at(path(where, "distribution"), i) + ": expected an array");
          }
          J.distribution.push_back(numbers<double>(rows[i], at(path(where, "distribution"), i)));
        }
      }
      if (j.contains("priority")) {
        J.priority = numbers<double>(array(j, "priority", where), path(where, "priority"));
      }
      return J;
    }

    InitialRoad parse_initial(json const& j, std::string const& where, Network const& net) {
      InitialRoad ir;
      ir.road = integer(j, "road", where);
      auto idx = net.road_index(ir.road);
      if (!idx) {
        throw ParseError(path(where, "road") + ": unknown road " + std::to_string(ir.road));
      }
      Road const& road = net.roads[*idx];
      if (j.contains("rho")) {
        ir.segments.push_back({road.a, road.b, number(j, "rho", where)});
      } else {
        auto const& segs = array(j, "segments", where);
        for (std::size_t i = 0; i < segs.size(); ++i) {
          auto const w = at(path(where, "segments"), i);
          ir.segments.push_back(
              {number(segs[i], "from", w), number(segs[i], "to", w), number(segs[i], "rho", w)});
        }
      }
      for (std::size_t i = 0; i < ir.segments.size(); ++i) {
        auto const& s = ir.segments[i];
        if (!(s.rho >= 0.0 && s.rho <= road.law.rho_max)) {
          std::ostringstream msg;
          msg << where << ": initial density " << s.rho << " outside [0, " << road.law.rho_max
              << "]";
          throw ConfigError(msg.str());
        }
        if (!(s.from < s.to)) {
          throw ParseError(at(path(where, "segments"), i) + ": 'from' must be below 'to'");
        }
      }
      return ir;
    }

  }  // namespace

  ScenarioConfig parse_scenario(std::string const& json_text) {
    json doc;
    try {
      doc = json::parse(json_text);
    } catch (json::parse_error const& e) {
      throw ParseError(std::string{"malformed JSON: "} + e.what());
    }
    if (!doc.is_object()) {
      throw ParseError("scenario: expected a JSON object");
    }

    ScenarioConfig c;
    auto const& grid = field(doc, "grid", "scenario");
    c.dx = number(grid, "dx", "grid");
    c.artificial_length = number_or(grid, "artificial_length", "grid", c.artificial_length);
    if (grid.contains("cfl")) {
      auto const name = text(grid, "cfl", "grid");
      c.cfl = tagged("grid.cfl", [&] { return parse_cfl_mode(name); });
    }
    if (!(c.dx > 0.0)) {
      throw ConfigError("grid.dx must be positive");
    }

    auto const& roads = array(doc, "roads", "scenario");
    for (std::size_t i = 0; i < roads.size(); ++i) {
      c.network.roads.push_back(parse_road(roads[i], at("roads", i), c.artificial_length));
    }
    auto const& junctions = array(doc, "junctions", "scenario");
    for (std::size_t i = 0; i < junctions.size(); ++i) {
      c.network.junctions.push_back(parse_junction(junctions[i], at("junctions", i)));
    }

    auto const& kernel = field(doc, "kernel", "scenario");
    auto const fam = text(kernel, "family", "kernel");
    c.kernel.family = tagged("kernel.family", [&] { return parse_kernel_family(fam); });
    c.kernel.eta = number(kernel, "eta", "kernel");
    if (c.kernel.family == KernelFamily::tabulated) {
      auto const& nodes = array(kernel, "nodes", "kernel");
      for (std::size_t i = 0; i < nodes.size(); ++i) {
        auto const xy = numbers<double>(nodes[i], at("kernel.nodes", i));
        if (xy.size() != 2) {
          throw ParseError(at("kernel.nodes", i) + ": expected [x, omega]");
        }
        c.kernel.nodes.emplace_back(xy[0], xy[1]);
      }
    }
    cells_per_range(c.kernel.eta, c.dx);  // rejects non-integer eta/dx

    auto const& initial = array(doc, "initial", "scenario");
    for (std::size_t i = 0; i < initial.size(); ++i) {
      c.initial.push_back(parse_initial(initial[i], at("initial", i), c.network));
    }

    auto const model = text(doc, "model", "scenario");
    c.model = tagged("model", [&] { return parse_model(model); });
    c.horizon = number(doc, "horizon", "scenario");
    if (!(c.horizon >= 0.0)) {
      throw ConfigError("horizon must be nonnegative");
    }

    auto const& outputs = field(doc, "outputs", "scenario");
    if (outputs.contains("directory")) {
      c.outputs.directory = text(outputs, "directory", "outputs");
    }
    if (outputs.contains("snapshot_times")) {
      c.outputs.snapshot_times =
          numbers<double>(array(outputs, "snapshot_times", "outputs"), "outputs.snapshot_times");
    }
    if (outputs.contains("outflow_roads")) {
      c.outputs.outflow_roads =
          numbers<int>(array(outputs, "outflow_roads", "outputs"), "outputs.outflow_roads");
    }
    if (outputs.contains("travel_time_roads")) {
      c.outputs.travel_time_roads = numbers<int>(array(outputs, "travel_time_roads", "outputs"),
                                                 "outputs.travel_time_roads");
    }
    return c;
  }

  ScenarioConfig load_scenario(std::filesystem::path const& p) {
    std::ifstream in(p);
    if (!in) {
      throw ConfigError("cannot open scenario file " + p.string());
    }
    std::stringstream buf;
    buf << in.rdbuf();
    try {
      return parse_scenario(buf.str());
    } catch (ParseError const& e) {
      throw ParseError(p.string() + ": " + e.what());
    }
  }

  std::string save_scenario(ScenarioConfig const& c) {
    json doc;
    json roads = json::array();
    for (auto const& r : c.network.roads) {
      roads.push_back({{"id", r.id},
                       {"a", r.a},
                       {"b", r.b},
                       {"v_max", r.law.v_max},
                       {"rho_max", r.law.rho_max},
                       {"artificial", r.artificial}});
    }
    json junctions = json::array();
    for (auto const& j : c.network.junctions) {
      json J = {{"id", j.id},
                {"incoming", j.incoming},
                {"outgoing", j.outgoing},
                {"coupling", to_string(j.coupling)}};
      if (!j.distribution.empty()) {
        J["distribution"] = j.distribution;
      }
      if (!j.priority.empty()) {
        J["priority"] = j.priority;
      }
      junctions.push_back(std::move(J));
    }
    json kernel = {{"family", to_string(c.kernel.family)}, {"eta", c.kernel.eta}};
    if (c.kernel.family == KernelFamily::tabulated) {
      json nodes = json::array();
      for (auto const& [x, w] : c.kernel.nodes) {
        nodes.push_back({x, w});
      }
      kernel["nodes"] = std::move(nodes);
    }
    json initial = json::array();
    for (auto const& ir : c.initial) {
      json segs = json::array();
      for (auto const& s : ir.segments) {
        segs.push_back({{"from", s.from}, {"to", s.to}, {"rho", s.rho}});
      }
      initial.push_back({{"road", ir.road}, {"segments", std::move(segs)}});
    }
    json outputs = {{"directory", c.outputs.directory},
                    {"snapshot_times", c.outputs.snapshot_times},
                    {"outflow_roads", c.outputs.outflow_roads},
                    {"travel_time_roads", c.outputs.travel_time_roads}};

    doc["roads"] = std::move(roads);
    doc["junctions"] = std::move(junctions);
    doc["kernel"] = std::move(kernel);
    doc["grid"] = {{"dx", c.dx}, {"artificial_length", c.artificial_length},
                   {"cfl", to_string(c.cfl)}};
    doc["initial"] = std::move(initial);
    doc["model"] = to_string(c.model);
    doc["horizon"] = c.horizon;
    doc["outputs"] = std::move(outputs);
    return doc.dump(2) + "\n";
  }

  // ---------------------------------------------------------------------------
  // Running
  // ---------------------------------------------------------------------------

  namespace {

    bool is_nonlocal(ModelKind m) {
      return m == ModelKind::nonlocal || m == ModelKind::nonlocal_maxflux ||
             m == ModelKind::nonlocal_distribution;
    }

  }  // namespace

  Network effective_network(ScenarioConfig const& c) {
    Network net = c.network;
    switch (c.model) {
      case ModelKind::nonlocal_maxflux:
      case ModelKind::local_maxflux: net.apply_family(CouplingFamily::maxflux); break;
      case ModelKind::nonlocal_distribution:
      case ModelKind::local_distribution: net.apply_family(CouplingFamily::distribution); break;
      case ModelKind::nonlocal:
      case ModelKind::limit: break;
    }
    return net;
  }

  std::vector<Violation> validate_scenario(ScenarioConfig const& c) {
    Network const net = effective_network(c);
    // The range restriction on road lengths concerns the nonlocal models only.
    double const eta = is_nonlocal(c.model) ? c.kernel.eta : c.dx;
    auto out = validate_network(net, eta);
    try {
      cells_per_range(c.kernel.eta, c.dx);
      make_grid(net, c.dx, 1);
    } catch (ConfigError const& e) {
      out.push_back({e.what()});
    }
    for (auto const& ir : c.initial) {
      auto idx = net.road_index(ir.road);
      if (!idx) {
        out.push_back({"initial data for unknown road " + std::to_string(ir.road)});
        continue;
      }
      for (auto const& s : ir.segments) {
        if (!(s.rho >= 0.0 && s.rho <= net.roads[*idx].law.rho_max)) {
          out.push_back({"initial density on road " + std::to_string(ir.road) +
                         " outside [0, rho_max]"});
        }
      }
    }
    if (!(c.horizon >= 0.0)) {
      out.push_back({"horizon must be nonnegative"});
    }
    return out;
  }

  State initial_state(ScenarioConfig const& c, GridSpec const& grid) {
    Network const& net = c.network;
    State s;
    s.rho.resize(net.roads.size());
    for (std::size_t r = 0; r < net.roads.size(); ++r) {
      s.rho[r].assign(static_cast<std::size_t>(grid.cells[r]), 0.0);
    }
    for (auto const& ir : c.initial) {
      auto idx = net.road_index(ir.road);
      if (!idx) {
        throw ConfigError("initial data for unknown road " + std::to_string(ir.road));
      }
      Road const& road = net.roads[*idx];
      auto& rho = s.rho[*idx];
      // Exact cell averages of the piecewise-constant datum.
      for (std::size_t j = 0; j < rho.size(); ++j) {
        double const lo = road.a + static_cast<double>(j) * grid.dx;
        double const hi = lo + grid.dx;
        double acc = 0.0;
        for (auto const& seg : ir.segments) {
          double const overlap = std::min(hi, seg.to) - std::max(lo, seg.from);
          if (overlap > 0.0) {
            acc += overlap * seg.rho;
          }
        }
        rho[j] = std::clamp(acc / grid.dx, 0.0, road.law.rho_max);
      }
    }
    return s;
  }

  MeasureOptions measure_options(ScenarioConfig const& c) {
    return {c.outputs.outflow_roads, c.outputs.travel_time_roads};
  }

  Trajectory simulate(ScenarioConfig const& c, RunOptions const& options) {
    auto const violations = validate_scenario(c);
    if (!violations.empty()) {
      std::string msg = "invalid scenario:";
      for (auto const& v : violations) {
        msg += "\n  - " + v.what;
      }
      throw ConfigError(msg);
    }
    Network net = effective_network(c);
    int const n_eta = cells_per_range(c.kernel.eta, c.dx);
    GridSpec grid = make_grid(net, c.dx, n_eta);
    State init = initial_state(c, grid);

    std::unique_ptr<Scheme> scheme;
    switch (c.model) {
      case ModelKind::nonlocal:
      case ModelKind::nonlocal_maxflux:
      case ModelKind::nonlocal_distribution:
        scheme = std::make_unique<NonlocalScheme>(net, grid, gamma_weights(c.kernel.build(), c.dx));
        break;
      case ModelKind::local_maxflux:
        scheme = std::make_unique<LocalScheme>(net, grid, CouplingFamily::maxflux);
        break;
      case ModelKind::local_distribution:
        scheme = std::make_unique<LocalScheme>(net, grid, CouplingFamily::distribution);
        break;
      case ModelKind::limit: scheme = std::make_unique<LimitScheme>(net, grid); break;
    }

    SimulationOptions opts;
    opts.horizon = c.horizon;
    opts.cfl = c.cfl;
    opts.record_steps = options.record_steps;
    opts.snapshot_times = c.outputs.snapshot_times;
    if (opts.snapshot_times.empty()) {
      opts.snapshot_times = {0.0};
      if (c.horizon > 0.0) {
        opts.snapshot_times.push_back(c.horizon);
      }
    }
    Trajectory traj = scheme->run(std::move(init), opts);
    if (is_nonlocal(c.model)) {
      traj.model = to_string(c.model);
    }
    return traj;
  }

  // ---------------------------------------------------------------------------
  // Output
  // ---------------------------------------------------------------------------

  namespace {

    std::string fmt(double v) {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.12g", v);
      return buf;
    }

    std::ofstream open_csv(std::filesystem::path const& p) {
      std::ofstream out(p);
      if (!out) {
        throw ConfigError("cannot write " + p.string());
      }
      return out;
    }

    void write_state(std::filesystem::path const& p, Network const& net, GridSpec const& grid,
                     State const& s) {
      auto out = open_csv(p);
      out << "road,x,rho\n";
      for (std::size_t r = 0; r < net.roads.size(); ++r) {
        auto const xs = cell_centres(net.roads[r], grid.dx, grid.cells[r]);
        for (std::size_t j = 0; j < xs.size(); ++j) {
          out << net.roads[r].id << ',' << fmt(xs[j]) << ',' << fmt(s.rho[r][j]) << '\n';
        }
      }
    }

    void write_ratios(std::filesystem::path const& p, char const* header,
                      std::vector<RatioSample> const& samples) {
      auto out = open_csv(p);
      out << header << '\n';
      for (auto const& s : samples) {
        out << fmt(s.t) << ',' << s.junction << ',' << s.road << ',';
        if (s.ratio) {
          out << fmt(*s.ratio);
        }
        out << '\n';
      }
    }

  }  // namespace

  ResultFiles write_results(Trajectory const& traj, MeasureReport const& report,
                            std::filesystem::path const& dir) {
    std::filesystem::create_directories(dir);
    ResultFiles files;
    files.snapshots = dir / "snapshots.csv";
    files.measures = dir / "measures.csv";
    files.ratios = dir / "ratios.csv";
    files.priorities = dir / "priorities.csv";

    write_state(files.snapshots, traj.network, traj.grid, traj.final);
    for (std::size_t i = 0; i < traj.snapshots.size(); ++i) {
      auto p = dir / ("snapshot_" + std::to_string(i) + ".csv");
      write_state(p, traj.network, traj.grid, traj.snapshots[i].state);
      files.snapshot_series.push_back(std::move(p));
    }

    {
      auto out = open_csv(files.measures);
      out << "name,value\n";
      out << "outflow," << fmt(report.outflow) << '\n';
      out << "total_travel_time," << fmt(report.total_travel_time) << '\n';
      out << "congestion," << fmt(report.congestion) << '\n';
      for (auto const& r : report.per_road) {
        out << "travel_time_road_" << r.road << ',' << fmt(r.travel_time) << '\n';
        out << "congestion_road_" << r.road << ',' << fmt(r.congestion) << '\n';
      }
      out << "steps," << traj.steps.size() << '\n';
      out << "final_time," << fmt(traj.final.time) << '\n';
      double const dm = traj.final.mass(traj.grid.dx) - traj.initial.mass(traj.grid.dx);
      out << "mass_balance_error," << fmt(std::abs(dm - traj.boundary_balance)) << '\n';
      out << "tv_final," << fmt(tv_seminorm(traj.network, traj.final)) << '\n';
      for (std::size_t i = 0; i < traj.snapshots.size(); ++i) {
        out << "snapshot_" << i << "_time," << fmt(traj.snapshots[i].state.time) << '\n';
      }
    }
    write_ratios(files.ratios, "t,junction,out_road,ratio", report.split_ratios);
    write_ratios(files.priorities, "t,junction,in_road,ratio", report.priority_ratios);
    return files;
  }

}  // namespace nlnet
