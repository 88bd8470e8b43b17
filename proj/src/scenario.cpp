#include "wavectrl/scenario.hpp"

#include <cmath>
#include <numbers>
#include <set>
#include <string>

#include <json.hpp>

#include "wavectrl/errors.hpp"
#include "wavectrl/state_solver.hpp"

namespace wavectrl {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& msg) { throw ValidationError("scenario: " + msg); }

void reject_unknown_keys(const json& obj, const std::string& where,
                         const std::set<std::string>& allowed) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (!allowed.count(it.key())) fail("unknown key \"" + it.key() + "\" in " + where);
  }
}

double require_number(const json& obj, const std::string& where, const std::string& key) {
  if (!obj.contains(key)) fail("missing \"" + key + "\" in " + where);
  if (!obj[key].is_number()) fail("\"" + key + "\" in " + where + " must be a number");
  return obj[key].get<double>();
}

int require_int(const json& obj, const std::string& where, const std::string& key) {
  if (!obj.contains(key)) fail("missing \"" + key + "\" in " + where);
  if (!obj[key].is_number_integer()) fail("\"" + key + "\" in " + where + " must be an integer");
  return obj[key].get<int>();
}

Initializer parse_initializer(const json& obj, const std::string& where) {
  if (!obj.is_object()) fail(where + " must be an object");
  if (!obj.contains("name") || !obj["name"].is_string()) fail(where + " needs a \"name\" string");
  const std::string name = obj["name"].get<std::string>();

  if (name == "zero") {
    reject_unknown_keys(obj, where, {"name"});
    return Initializer::zero();
  }
  if (name == "constant") {
    reject_unknown_keys(obj, where, {"name", "value"});
    return Initializer::constant(require_number(obj, where, "value"));
  }
  if (name == "sine-mode") {
    reject_unknown_keys(obj, where, {"name", "mode", "amplitude"});
    const int mode = require_int(obj, where, "mode");
    if (mode < 1) fail("\"mode\" in " + where + " must be >= 1");
    const double amp = obj.contains("amplitude") ? require_number(obj, where, "amplitude") : 1.0;
    return Initializer::sine(mode, amp);
  }
  if (name == "gaussian-bump") {
    reject_unknown_keys(obj, where, {"name", "center", "width", "amplitude"});
    if (!obj.contains("center")) fail("missing \"center\" in " + where);
    std::array<double, 2> center{0.0, 0.0};
    if (obj["center"].is_number()) {
      center[0] = obj["center"].get<double>();
    } else if (obj["center"].is_array() && (obj["center"].size() == 1 || obj["center"].size() == 2)) {
      center[0] = obj["center"][0].get<double>();
      if (obj["center"].size() == 2) center[1] = obj["center"][1].get<double>();
    } else {
      fail("\"center\" in " + where + " must be a number or an array of 1 or 2 numbers");
    }
    const double width = require_number(obj, where, "width");
    if (width <= 0.0) fail("\"width\" in " + where + " must be positive");
    const double amp = obj.contains("amplitude") ? require_number(obj, where, "amplitude") : 1.0;
    return Initializer::gaussian(center, width, amp);
  }
  if (name == "decaying-exp") {
    reject_unknown_keys(obj, where, {"name", "rate", "mode", "amplitude"});
    const double rate = require_number(obj, where, "rate");
    const int mode = require_int(obj, where, "mode");
    if (mode < 1) fail("\"mode\" in " + where + " must be >= 1");
    const double amp = obj.contains("amplitude") ? require_number(obj, where, "amplitude") : 1.0;
    return Initializer::decaying_sine(rate, mode, amp);
  }
  if (name == "tracked-free-state") {
    reject_unknown_keys(obj, where, {"name"});
    return Initializer::tracked_free_state();
  }
  fail("unknown initializer \"" + name + "\" in " + where);
}

json initializer_to_json(const Initializer& init) {
  json obj;
  switch (init.kind) {
    case Initializer::Kind::zero:
      obj["name"] = "zero";
      break;
    case Initializer::Kind::constant:
      obj["name"] = "constant";
      obj["value"] = init.value;
      break;
    case Initializer::Kind::sine_mode:
      obj["name"] = "sine-mode";
      obj["mode"] = init.mode;
      obj["amplitude"] = init.amplitude;
      break;
    case Initializer::Kind::gaussian_bump:
      obj["name"] = "gaussian-bump";
      obj["center"] = {init.center[0], init.center[1]};
      obj["width"] = init.width;
      obj["amplitude"] = init.amplitude;
      break;
    case Initializer::Kind::decaying_exp_sine:
      obj["name"] = "decaying-exp";
      obj["rate"] = init.rate;
      obj["mode"] = init.mode;
      obj["amplitude"] = init.amplitude;
      break;
    case Initializer::Kind::tracked_free_state:
      obj["name"] = "tracked-free-state";
      break;
  }
  return obj;
}

}  // namespace

double Initializer::eval(const SpatialGrid& g, const std::array<double, 2>& x, double t) const {
  switch (kind) {
    case Kind::zero:
      return 0.0;
    case Kind::constant:
      return value;
    case Kind::sine_mode: {
      double s = amplitude;
      for (int a = 0; a < g.dimension; ++a) {
        s *= std::sin(mode * std::numbers::pi * x[a] / g.extent[a]);
      }
      return s;
    }
    case Kind::gaussian_bump: {
      double q = 0.0;
      for (int a = 0; a < g.dimension; ++a) {
        const double d = x[a] - center[a];
        q += d * d;
      }
      return amplitude * std::exp(-q / (2.0 * width * width));
    }
    case Kind::decaying_exp_sine: {
      double s = amplitude * std::exp(-rate * t);
      for (int a = 0; a < g.dimension; ++a) {
        s *= std::sin(mode * std::numbers::pi * x[a] / g.extent[a]);
      }
      return s;
    }
    case Kind::tracked_free_state:
      throw ValidationError("tracked-free-state cannot be evaluated pointwise");
  }
  throw ValidationError("unreachable initializer kind");
}

Scenario parse_scenario(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) fail("top level must be an object");
  reject_unknown_keys(doc, "scenario",
                      {"grid", "time", "init", "bounds", "control", "cost", "optimizer", "output",
                       "seed"});

  Scenario sc;

  if (!doc.contains("grid")) fail("missing \"grid\" section");
  const json& grid = doc["grid"];
  reject_unknown_keys(grid, "grid", {"dimension", "n", "extent"});
  sc.dimension = require_int(grid, "grid", "dimension");
  if (sc.dimension != 1 && sc.dimension != 2) fail("grid.dimension must be 1 or 2");
  sc.n = require_int(grid, "grid", "n");
  if (sc.n < 2) fail("grid.n must be >= 2");
  sc.extent = grid.contains("extent") ? require_number(grid, "grid", "extent") : 1.0;
  if (sc.extent <= 0.0) fail("grid.extent must be positive");

  if (!doc.contains("time")) fail("missing \"time\" section");
  const json& time = doc["time"];
  reject_unknown_keys(time, "time", {"horizon", "steps"});
  sc.horizon = require_number(time, "time", "horizon");
  if (sc.horizon <= 0.0) fail("time.horizon must be positive");
  sc.steps = require_int(time, "time", "steps");
  if (sc.steps < 2) fail("time.steps must be >= 2");

  if (doc.contains("init")) {
    const json& init = doc["init"];
    reject_unknown_keys(init, "init", {"y0", "y1", "f", "yd"});
    if (init.contains("y0")) sc.y0 = parse_initializer(init["y0"], "init.y0");
    if (init.contains("y1")) sc.y1 = parse_initializer(init["y1"], "init.y1");
    if (init.contains("f")) sc.f = parse_initializer(init["f"], "init.f");
    if (init.contains("yd")) sc.yd = parse_initializer(init["yd"], "init.yd");
  }
  if (sc.y0.kind == Initializer::Kind::tracked_free_state ||
      sc.y1.kind == Initializer::Kind::tracked_free_state ||
      sc.f.kind == Initializer::Kind::tracked_free_state) {
    fail("tracked-free-state is only valid for init.yd");
  }

  if (doc.contains("bounds")) {
    const json& bounds = doc["bounds"];
    reject_unknown_keys(bounds, "bounds", {"alpha", "beta"});
    if (bounds.contains("alpha")) sc.alpha = parse_initializer(bounds["alpha"], "bounds.alpha");
    if (bounds.contains("beta")) sc.beta = parse_initializer(bounds["beta"], "bounds.beta");
  }
  if (sc.alpha.kind == Initializer::Kind::tracked_free_state ||
      sc.beta.kind == Initializer::Kind::tracked_free_state) {
    fail("tracked-free-state is only valid for init.yd");
  }
  if (sc.alpha.kind == Initializer::Kind::constant && sc.beta.kind == Initializer::Kind::constant &&
      sc.alpha.value > sc.beta.value) {
    fail("bounds inverted: alpha > beta");
  }

  if (doc.contains("control")) {
    const json& control = doc["control"];
    reject_unknown_keys(control, "control", {"u0"});
    if (control.contains("u0")) sc.u0 = parse_initializer(control["u0"], "control.u0");
    if (sc.u0.kind == Initializer::Kind::tracked_free_state) {
      fail("tracked-free-state is only valid for init.yd");
    }
  }

  if (doc.contains("cost")) {
    const json& cost = doc["cost"];
    reject_unknown_keys(cost, "cost", {"gamma"});
    if (cost.contains("gamma")) {
      sc.gamma = require_number(cost, "cost", "gamma");
      if (sc.gamma <= 0.0) fail("cost.gamma must be positive");
    }
  }

  if (doc.contains("optimizer")) {
    const json& opt = doc["optimizer"];
    reject_unknown_keys(opt, "optimizer",
                        {"max_iter", "kkt_tol", "armijo_slope", "backtrack", "initial_step",
                         "active_set_eps", "rayleigh_samples", "rayleigh_power_iters"});
    if (opt.contains("max_iter")) sc.optimizer.max_iter = require_int(opt, "optimizer", "max_iter");
    if (opt.contains("kkt_tol")) sc.optimizer.kkt_tol = require_number(opt, "optimizer", "kkt_tol");
    if (opt.contains("armijo_slope"))
      sc.optimizer.armijo_slope = require_number(opt, "optimizer", "armijo_slope");
    if (opt.contains("backtrack"))
      sc.optimizer.backtrack = require_number(opt, "optimizer", "backtrack");
    if (opt.contains("initial_step"))
      sc.optimizer.initial_step = require_number(opt, "optimizer", "initial_step");
    if (opt.contains("active_set_eps"))
      sc.optimizer.active_set_eps = require_number(opt, "optimizer", "active_set_eps");
    if (opt.contains("rayleigh_samples"))
      sc.optimizer.rayleigh_samples = require_int(opt, "optimizer", "rayleigh_samples");
    if (opt.contains("rayleigh_power_iters"))
      sc.optimizer.rayleigh_power_iters = require_int(opt, "optimizer", "rayleigh_power_iters");
    try {
      sc.optimizer.validate();
    } catch (const ValidationError& e) {
      fail(std::string("optimizer: ") + e.what());
    }
  }

  if (doc.contains("output")) {
    const json& output = doc["output"];
    reject_unknown_keys(output, "output", {"dir"});
    if (output.contains("dir")) {
      if (!output["dir"].is_string()) fail("output.dir must be a string");
      sc.output_dir = output["dir"].get<std::string>();
    }
  }

  if (doc.contains("seed")) {
    if (!doc["seed"].is_number_integer() || doc["seed"].get<long long>() < 0) {
      fail("seed must be a non-negative integer");
    }
    sc.seed = doc["seed"].get<std::uint64_t>();
  }

  return sc;
}

std::string serialize_scenario(const Scenario& sc) {
  json doc;
  doc["grid"] = {{"dimension", sc.dimension}, {"n", sc.n}, {"extent", sc.extent}};
  doc["time"] = {{"horizon", sc.horizon}, {"steps", sc.steps}};
  doc["init"] = {{"y0", initializer_to_json(sc.y0)},
                 {"y1", initializer_to_json(sc.y1)},
                 {"f", initializer_to_json(sc.f)},
                 {"yd", initializer_to_json(sc.yd)}};
  doc["bounds"] = {{"alpha", initializer_to_json(sc.alpha)}, {"beta", initializer_to_json(sc.beta)}};
  doc["control"] = {{"u0", initializer_to_json(sc.u0)}};
  doc["cost"] = {{"gamma", sc.gamma}};
  doc["optimizer"] = {{"max_iter", sc.optimizer.max_iter},
                      {"kkt_tol", sc.optimizer.kkt_tol},
                      {"armijo_slope", sc.optimizer.armijo_slope},
                      {"backtrack", sc.optimizer.backtrack},
                      {"initial_step", sc.optimizer.initial_step},
                      {"active_set_eps", sc.optimizer.active_set_eps},
                      {"rayleigh_samples", sc.optimizer.rayleigh_samples},
                      {"rayleigh_power_iters", sc.optimizer.rayleigh_power_iters}};
  doc["output"] = {{"dir", sc.output_dir}};
  doc["seed"] = sc.seed;
  return doc.dump(2);
}

ScalarField make_scalar_field(const Initializer& init, const SpatialGrid& g) {
  ScalarField f(g.point_count());
  std::size_t idx = 0;
  if (g.dimension == 1) {
    for (int i = 0; i < g.n[0]; ++i) {
      f[idx++] = init.eval(g, {g.coord(0, i), 0.0}, 0.0);
    }
  } else {
    for (int j = 0; j < g.n[1]; ++j) {
      for (int i = 0; i < g.n[0]; ++i) {
        f[idx++] = init.eval(g, {g.coord(0, i), g.coord(1, j)}, 0.0);
      }
    }
  }
  return f;
}

SpaceTimeField make_spacetime_field(const Initializer& init, const SpatialGrid& g,
                                    const TimeGrid& tg) {
  SpaceTimeField f(g, tg);
  for (int k = 0; k < tg.node_count(); ++k) {
    const double t = tg.node(k);
    auto s = f.slice(k);
    std::size_t idx = 0;
    if (g.dimension == 1) {
      for (int i = 0; i < g.n[0]; ++i) {
        s[idx++] = init.eval(g, {g.coord(0, i), 0.0}, t);
      }
    } else {
      for (int j = 0; j < g.n[1]; ++j) {
        for (int i = 0; i < g.n[0]; ++i) {
          s[idx++] = init.eval(g, {g.coord(0, i), g.coord(1, j)}, t);
        }
      }
    }
  }
  return f;
}

WaveProblem build_problem(const Scenario& sc, int refine) {
  if (refine < 0) throw ValidationError("refine must be non-negative");

  // Halving dx maps n interior points to 2n + 1; dt is halved by doubling m.
  int n = sc.n;
  int m = sc.steps;
  for (int r = 0; r < refine; ++r) {
    n = 2 * n + 1;
    m *= 2;
  }

  WaveProblem p;
  p.grid = sc.dimension == 1 ? SpatialGrid::interval(sc.extent, n)
                             : SpatialGrid::rectangle(sc.extent, sc.extent, n, n);
  p.time = TimeGrid(sc.horizon, m);
  p.y0 = make_scalar_field(sc.y0, p.grid);
  p.y1 = make_scalar_field(sc.y1, p.grid);
  p.f = make_spacetime_field(sc.f, p.grid, p.time);
  p.u = make_spacetime_field(sc.u0, p.grid, p.time);
  p.alpha = make_spacetime_field(sc.alpha, p.grid, p.time);
  p.beta = make_spacetime_field(sc.beta, p.grid, p.time);
  p.gamma = sc.gamma;

  if (sc.yd.kind == Initializer::Kind::tracked_free_state) {
    // Target = the discrete state with the control switched off, so the
    // tracking term vanishes identically at u = 0.
    WaveProblem free_run = p;
    free_run.u = SpaceTimeField(p.grid, p.time);
    free_run.yd = SpaceTimeField(p.grid, p.time);
    p.yd = solve_forward(free_run).y;
  } else {
    p.yd = make_spacetime_field(sc.yd, p.grid, p.time);
  }

  p.validate();
  return p;
}

}  // namespace wavectrl
