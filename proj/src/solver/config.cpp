#include "alp/solver/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "alp/error.hpp"
#include "alp/spectral/fft.hpp"
#include "alp/spectral/operators.hpp"
#include "alp/spectral/random_field.hpp"
#include "alp/stats.hpp"

namespace alp {

using nlohmann::json;

namespace {

void reject_unknown(const json& j, const std::set<std::string>& allowed, const std::string& where) {
  if (!j.is_object()) throw PreconditionError("config: " + where + " must be an object");
  for (const auto& item : j.items()) {
    if (!allowed.count(item.key())) throw PreconditionError("config: unknown key '" + where + item.key() + "'");
  }
}

template <typename T>
void read(const json& j, const char* key, T& out, const std::string& where, bool required = false) {
  auto it = j.find(key);
  if (it == j.end()) {
    if (required) throw PreconditionError("config: missing required key '" + where + key + "'");
    return;
  }
  try {
    out = it->get<T>();
  } catch (const json::exception&) {
    throw PreconditionError("config: key '" + where + key + "' has the wrong type");
  }
}

json profile_to_json(const ProfileSpec& p) {
  return {{"kind", p.kind},           {"amplitude", p.amplitude}, {"mode", p.mode},
          {"component", p.component}, {"envelope", p.envelope},   {"seed", p.seed}};
}

ProfileSpec profile_from_json(const json& j, const std::string& where) {
  reject_unknown(j, {"kind", "amplitude", "mode", "component", "envelope", "seed"}, where);
  ProfileSpec p;
  read(j, "kind", p.kind, where);
  read(j, "amplitude", p.amplitude, where);
  read(j, "mode", p.mode, where);
  read(j, "component", p.component, where);
  read(j, "envelope", p.envelope, where);
  read(j, "seed", p.seed, where);
  return p;
}

void validate_profile(const ProfileSpec& p, bool vector, const char* name) {
  static const std::set<std::string> scalar_kinds{"zero", "mode", "random"};
  static const std::set<std::string> vector_kinds{"zero", "mode", "taylor_green", "roll", "random"};
  const auto& kinds = vector ? vector_kinds : scalar_kinds;
  if (!kinds.count(p.kind)) throw PreconditionError(std::string("config: unknown profile kind '") + p.kind + "' for " + name);
  if (!std::isfinite(p.amplitude)) throw PreconditionError(std::string("config: non-finite amplitude for ") + name);
  if (p.component < 0 || p.component > 2) throw PreconditionError(std::string("config: component out of range for ") + name);
  if (!(p.envelope >= 0.0)) throw PreconditionError(std::string("config: negative envelope for ") + name);
}

PhysicalField sample(const Grid& g, auto&& f) {
  PhysicalField out(g.size());
  const double h1 = g.length / g.n1, h2 = g.length / g.n2, h3 = g.length / g.n3;
  for (int i = 0; i < g.n1; ++i)
    for (int j = 0; j < g.n2; ++j)
      for (int k = 0; k < g.n3; ++k) out[g.flat(i, j, k)] = f(i * h1, j * h2, k * h3);
  return out;
}

SpectralField3 cosine_mode(const Grid& g, const std::array<int, 3>& xi, double amplitude) {
  if (!g.contains(xi) || !g.contains({-xi[0], -xi[1], -xi[2]})) {
    throw PreconditionError("profile: mode outside the grid");
  }
  SpectralField3 f(g);
  if (xi == std::array<int, 3>{0, 0, 0}) {
    f.at(0) = amplitude;
  } else {
    f.at(g.flat_of(xi)) += 0.5 * amplitude;
    f.at(g.flat_of({-xi[0], -xi[1], -xi[2]})) += 0.5 * amplitude;
  }
  if (!is_dealiased(f)) throw PreconditionError("profile: mode removed by the 2/3 rule");
  return f;
}

}  // namespace

void RunConfig::validate() const {
  grid.validate();
  if (!(dt > 0.0) || !std::isfinite(dt)) throw PreconditionError("config: dt must be positive");
  if (!(t_end >= 0.0) || !std::isfinite(t_end)) throw PreconditionError("config: t_end must be nonnegative");
  if (!(delta >= 0.0)) throw PreconditionError("config: delta must be nonnegative");
  if (!(lambda > 0.0)) throw PreconditionError("config: lambda must be positive");
  if (!(bootstrap_C > 0.0)) throw PreconditionError("config: bootstrap_C must be positive");
  if (!(eps_small > 0.0)) throw PreconditionError("config: eps_small must be positive");
  if (!(snapshot_interval >= 0.0)) throw PreconditionError("config: snapshot_interval must be nonnegative");
  if (!(eps.eps > 0.0) || !(eps.eps <= 1.0)) throw PreconditionError("config: eps must lie in (0, 1]");
  pressure.validate();
  validate_profile(a0, false, "a0");
  validate_profile(v0, true, "v0");
  if (!allow_out_of_range) validate_parameter_range(eps);
}

int RunConfig::steps() const { return static_cast<int>(std::llround(std::ceil(t_end / dt - 1e-9))); }

json to_json(const RunConfig& c) {
  return {{"grid", {c.grid.n1, c.grid.n2, c.grid.n3}},
          {"length", c.grid.length},
          {"eps", c.eps.eps},
          {"alpha", c.eps.alpha},
          {"beta", c.eps.beta},
          {"gamma", c.eps.gamma},
          {"delta", c.delta},
          {"lambda", c.lambda},
          {"dt", c.dt},
          {"t_end", c.t_end},
          {"pressure", {{"max_iters", c.pressure.max_iters}, {"tol", c.pressure.tol}, {"relaxation", c.pressure.relaxation}}},
          {"seed", c.seed},
          {"a0", profile_to_json(c.a0)},
          {"v0", profile_to_json(c.v0)},
          {"bootstrap_C", c.bootstrap_C},
          {"eps_small", c.eps_small},
          {"snapshot_interval", c.snapshot_interval},
          {"allow_out_of_range", c.allow_out_of_range},
          {"flags",
           {{"nonlinear", c.flags.nonlinear},
            {"density_coupling", c.flags.density_coupling},
            {"pressure", c.flags.pressure}}},
          {"output_dir", c.output_dir}};
}

RunConfig run_config_from_json(const json& j) {
  reject_unknown(j,
                 {"grid", "length", "eps", "alpha", "beta", "gamma", "delta", "lambda", "dt", "t_end", "pressure", "seed",
                  "a0", "v0", "bootstrap_C", "eps_small", "snapshot_interval", "allow_out_of_range", "flags",
                  "output_dir"},
                 "");
  RunConfig c;
  auto grid_it = j.find("grid");
  if (grid_it == j.end()) throw PreconditionError("config: missing required key 'grid'");
  if (grid_it->is_number_integer()) {
    const int n = grid_it->get<int>();
    c.grid = Grid::cube(n);
  } else if (grid_it->is_array() && grid_it->size() == 3 && (*grid_it)[0].is_number_integer() &&
             (*grid_it)[1].is_number_integer() && (*grid_it)[2].is_number_integer()) {
    c.grid = Grid{(*grid_it)[0].get<int>(), (*grid_it)[1].get<int>(), (*grid_it)[2].get<int>()};
  } else {
    throw PreconditionError("config: 'grid' must be an integer or three integers");
  }
  read(j, "length", c.grid.length, "");
  read(j, "eps", c.eps.eps, "", true);
  read(j, "alpha", c.eps.alpha, "", true);
  read(j, "beta", c.eps.beta, "", true);
  read(j, "gamma", c.eps.gamma, "", true);
  read(j, "delta", c.delta, "", true);
  read(j, "lambda", c.lambda, "", true);
  read(j, "dt", c.dt, "", true);
  read(j, "t_end", c.t_end, "", true);
  if (auto it = j.find("pressure"); it != j.end()) {
    reject_unknown(*it, {"max_iters", "tol", "relaxation"}, "pressure.");
    read(*it, "max_iters", c.pressure.max_iters, "pressure.");
    read(*it, "tol", c.pressure.tol, "pressure.");
    read(*it, "relaxation", c.pressure.relaxation, "pressure.");
  }
  read(j, "seed", c.seed, "");
  if (auto it = j.find("a0"); it != j.end()) c.a0 = profile_from_json(*it, "a0.");
  if (auto it = j.find("v0"); it != j.end()) c.v0 = profile_from_json(*it, "v0.");
  read(j, "bootstrap_C", c.bootstrap_C, "");
  read(j, "eps_small", c.eps_small, "");
  read(j, "snapshot_interval", c.snapshot_interval, "");
  read(j, "allow_out_of_range", c.allow_out_of_range, "");
  if (auto it = j.find("flags"); it != j.end()) {
    reject_unknown(*it, {"nonlinear", "density_coupling", "pressure"}, "flags.");
    read(*it, "nonlinear", c.flags.nonlinear, "flags.");
    read(*it, "density_coupling", c.flags.density_coupling, "flags.");
    read(*it, "pressure", c.flags.pressure, "flags.");
  }
  read(j, "output_dir", c.output_dir, "");
  c.validate();
  return c;
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw PreconditionError("config: " + path + " is not valid JSON: " + e.what());
  }
}

void apply_override(json& j, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0) throw PreconditionError("override '" + assignment + "' is not key=value");
  const std::string key = assignment.substr(0, eq);
  const std::string text = assignment.substr(eq + 1);
  json value;
  try {
    value = json::parse(text);
  } catch (const json::exception&) {
    value = text;
  }
  json* node = &j;
  std::stringstream path(key);
  std::string part;
  std::vector<std::string> parts;
  while (std::getline(path, part, '.')) {
    if (part.empty()) throw PreconditionError("override '" + assignment + "' has an empty key segment");
    parts.push_back(part);
  }
  for (std::size_t i = 0; i + 1 < parts.size(); ++i) {
    if (!node->is_object()) throw PreconditionError("override '" + assignment + "' descends into a non-object");
    node = &(*node)[parts[i]];
    if (node->is_null()) *node = json::object();
  }
  if (!node->is_object()) throw PreconditionError("override '" + assignment + "' descends into a non-object");
  (*node)[parts.back()] = value;
}

SpectralField3 make_profile(const ProfileSpec& spec, const Grid& grid, int components, std::uint64_t run_seed,
                            std::uint64_t stream) {
  if (components != 1 && components != 3) throw PreconditionError("profile: components must be 1 or 3");
  const bool vector = components == 3;
  validate_profile(spec, vector, vector ? "v0" : "a0");
  const double amp = spec.amplitude;
  const double s = grid.wavenumber_scale();
  if (spec.kind == "zero") return SpectralField3(grid, components);
  if (spec.kind == "mode") {
    SpectralField3 c = cosine_mode(grid, spec.mode, amp);
    if (!vector) return c;
    SpectralField3 v(grid, 3);
    v.set_component(spec.component, c);
    v = leray_project(v);
    if (amp != 0.0 && v.l2_norm() < 1e-14 * std::abs(amp)) {
      throw PreconditionError("profile: mode polarization is parallel to the wavevector");
    }
    return v;
  }
  if (spec.kind == "taylor_green" || spec.kind == "roll") {
    SpectralField3 v(grid, 3);
    const bool tg = spec.kind == "taylor_green";
    for (int c = 0; c < 3; ++c) {
      PhysicalField values = sample(grid, [&](double x, double y, double z) {
        x *= s, y *= s, z *= s;
        if (tg) {
          if (c == 0) return amp * std::sin(x) * std::cos(y) * std::cos(z);
          if (c == 1) return -amp * std::cos(x) * std::sin(y) * std::cos(z);
          return 0.0;
        }
        if (c == 0) return -amp * std::sin(x) * std::cos(z);
        if (c == 2) return amp * std::cos(x) * std::sin(z);
        return 0.0;
      });
      from_physical_into(v, c, values);
    }
    return v;
  }
  const std::uint64_t seed = spec.seed != 0 ? spec.seed : run_seed;
  Rng rng = trial_rng(seed, stream);
  RandomFieldOptions opts;
  opts.envelope = spec.envelope;
  opts.amplitude = amp;
  if (amp == 0.0) return SpectralField3(grid, components);
  return vector ? random_solenoidal(grid, rng, opts) : random_scalar(grid, rng, opts);
}

}  // namespace alp
