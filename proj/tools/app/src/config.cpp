// SPDX-FileCopyrightText: 2026 frontlab authors
// SPDX-License-Identifier: Apache-2.0
#include "frontlab/app/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "frontlab/error.hpp"

namespace frontlab::app {
namespace {

using json = nlohmann::json;

const std::vector<std::pair<Kind, std::string>>& kind_names() {
  static const std::vector<std::pair<Kind, std::string>> names = {
      {Kind::particle, "particle"}, {Kind::brw, "brw"},     {Kind::rebooted, "rebooted"},
      {Kind::coupled, "coupled"},   {Kind::ode, "ode"},     {Kind::pde, "pde"},
      {Kind::speeds, "speeds"},     {Kind::figure1_panel, "figure1_panel"},
  };
  return names;
}

bool is_lattice(Kind k) {
  return k == Kind::particle || k == Kind::brw || k == Kind::rebooted || k == Kind::coupled;
}

/// 1-based line of the first occurrence of "key" in text, or 0.
std::size_t line_of_key(const std::string& text, const std::string& key) {
  const std::string quoted = "\"" + key + "\"";
  const auto pos = text.find(quoted);
  if (pos == std::string::npos) return 0;
  std::size_t line = 1;
  for (std::size_t i = 0; i < pos; ++i) line += text[i] == '\n';
  return line;
}

/// Walks one JSON object, remembering which keys were consumed.
class Reader {
 public:
  Reader(const json& node, std::string path, const std::string& text, std::vector<std::string>& diags)
      : node_(node), path_(std::move(path)), text_(text), diags_(diags) {}

  void error(const std::string& key, const std::string& message) {
    std::ostringstream d;
    d << "field '" << path_ << key << "'";
    if (const auto line = line_of_key(text_, key); line > 0 && !key.empty()) d << " (line " << line << ")";
    d << ": " << message;
    diags_.push_back(d.str());
  }

  bool has(const std::string& key) const { return node_.contains(key); }

  const json* take(const std::string& key, bool required) {
    seen_.insert(key);
    if (!node_.contains(key)) {
      if (required) {
        std::ostringstream d;
        d << "missing required field '" << path_ << key << "'";
        diags_.push_back(d.str());
      }
      return nullptr;
    }
    return &node_.at(key);
  }

  void number(const std::string& key, double& out, bool required = false) {
    if (const json* v = take(key, required)) {
      if (!v->is_number()) return error(key, "expected a number");
      out = v->get<double>();
      if (!std::isfinite(out)) error(key, "must be finite");
    }
  }

  /// Non-negative integer; accepts integral floating values such as 1e6.
  template <class Int>
  void integer(const std::string& key, Int& out, bool required = false) {
    if (const json* v = take(key, required)) {
      if (!v->is_number()) return error(key, "expected an integer");
      const double d = v->get<double>();
      if (v->is_number_float() && (d != std::floor(d) || d < 0.0 || d > 9.0e18)) {
        return error(key, "expected a non-negative integer");
      }
      if (v->is_number_integer() && v->get<std::int64_t>() < 0 && !v->is_number_unsigned()) {
        return error(key, "expected a non-negative integer");
      }
      out = v->is_number_float() ? static_cast<Int>(d) : v->get<Int>();
    }
  }

  void boolean(const std::string& key, bool& out) {
    if (const json* v = take(key, false)) {
      if (!v->is_boolean()) return error(key, "expected true or false");
      out = v->get<bool>();
    }
  }

  void string(const std::string& key, std::string& out, bool required = false) {
    if (const json* v = take(key, required)) {
      if (!v->is_string()) return error(key, "expected a string");
      out = v->get<std::string>();
    }
  }

  /// Capacity: a positive integer or the string "inf".
  void capacity(const std::string& key, std::uint64_t& out, bool required) {
    if (const json* v = take(key, required)) {
      if (v->is_string()) {
        if (v->get<std::string>() == "inf") {
          out = kUnbounded;
        } else {
          error(key, "expected a positive integer or \"inf\"");
        }
        return;
      }
      std::uint64_t k = 0;
      integer(key, k, false);
      if (k == 0) return error(key, "capacity must be at least 1");
      out = k;
    }
  }

  const json* object(const std::string& key, bool required) {
    const json* v = take(key, required);
    if (v && !v->is_object()) {
      error(key, "expected an object");
      return nullptr;
    }
    return v;
  }

  /// Reports every key not consumed by the reads above.
  void finish() {
    for (const auto& [key, value] : node_.items()) {
      if (!seen_.count(key)) error(key, "unknown key");
    }
  }

  const std::string& path() const { return path_; }
  const std::string& text() const { return text_; }
  std::vector<std::string>& diags() { return diags_; }

 private:
  const json& node_;
  std::string path_;
  const std::string& text_;
  std::vector<std::string>& diags_;
  std::set<std::string> seen_;
};

EnvSpec read_env(Reader& parent, const std::string& key, bool required) {
  EnvSpec e;
  const json* node = parent.object(key, required);
  if (!node) return e;
  Reader r(*node, parent.path() + key + "/", parent.text(), parent.diags());
  r.string("type", e.type, true);
  if (e.type == "constant") {
    r.number("r", e.r, true);
  } else if (e.type == "periodic") {
    r.number("period", e.period);
    r.number("mu_plus", e.mu_plus, true);
    r.number("mu_minus", e.mu_minus, true);
  } else if (e.type == "sinusoid") {
    r.number("mean", e.mean, true);
    r.number("amplitude", e.amplitude, true);
    r.number("wavenumber", e.wavenumber);
  } else {
    r.error("type", "unknown environment type '" + e.type + "' (constant, periodic, sinusoid)");
  }
  r.finish();
  try {
    (void)e.build();
  } catch (const Error& err) {
    parent.error(key, err.what());
  }
  return e;
}

InitialSpec read_initial(Reader& parent) {
  InitialSpec s;
  const json* node = parent.object("initial", false);
  if (!node) return s;
  Reader r(*node, parent.path() + "initial/", parent.text(), parent.diags());
  r.string("type", s.type, true);
  r.integer("count", s.count);
  if (s.type == "half_line") {
    r.number("extent", s.extent, true);
    if (!(s.extent > 0.0)) r.error("extent", "must be positive");
  } else if (s.type != "single") {
    r.error("type", "unknown initial type '" + s.type + "' (single, half_line)");
  }
  if (s.count == 0) r.error("count", "must be at least 1");
  r.finish();
  return s;
}

template <class T>
void read_list(Reader& r, const std::string& key, std::vector<T>& out) {
  const json* v = r.take(key, false);
  if (!v) return;
  if (!v->is_array() || v->empty()) return r.error(key, "expected a non-empty array of numbers");
  std::vector<T> values;
  for (const auto& item : *v) {
    if (!item.is_number()) return r.error(key, "expected a non-empty array of numbers");
    const double d = item.get<double>();
    if (!(d > 0.0) || !std::isfinite(d)) return r.error(key, "entries must be positive");
    if constexpr (std::is_integral_v<T>) {
      if (d != std::floor(d)) return r.error(key, "entries must be integers");
    }
    values.push_back(static_cast<T>(d));
  }
  out = values;
}

void require_positive(Reader& r, const std::string& key, double value) {
  if (r.has(key) && !(value > 0.0)) r.error(key, "must be positive");
}

ExperimentConfig parse_object(const json& root, const std::string& text) {
  std::vector<std::string> diags;
  ExperimentConfig c;
  if (!root.is_object()) throw ConfigError({"top level: expected an object"});
  Reader r(root, "/", text, diags);

  std::string kind;
  r.string("kind", kind, true);
  if (!kind.empty()) {
    try {
      c.kind = parse_kind(kind);
    } catch (const ConfigurationError& e) {
      r.error("kind", e.what());
      kind.clear();
    }
  }
  if (kind.empty()) {
    r.finish();
    throw ConfigError(diags);
  }

  r.string("output", c.output);
  if (c.output.empty() || c.output.find("..") != std::string::npos || c.output.front() == '/') {
    r.error("output", "must be a relative directory name without '..'");
  }
  r.integer("seed", c.seed);
  r.integer("replicates", c.replicates);
  if (c.replicates == 0) r.error("replicates", "must be at least 1");
  r.number("window_fraction", c.window_fraction);
  if (!(c.window_fraction > 0.0 && c.window_fraction <= 1.0)) {
    r.error("window_fraction", "must lie in (0, 1]");
  }
  c.environment = read_env(r, "environment", true);

  const Kind k = c.kind;
  if (is_lattice(k) || k == Kind::figure1_panel) {
    r.number("dt", c.dt, true);
    r.number("dx", c.dx, true);
    r.number("T", c.T, true);
    require_positive(r, "dt", c.dt);
    require_positive(r, "dx", c.dx);
    require_positive(r, "T", c.T);
    c.initial = read_initial(r);
    r.integer("record_every", c.record_every);
    if (c.record_every < 1) r.error("record_every", "must be at least 1");
    r.integer("max_window_sites", c.max_window_sites);
    if (k != Kind::coupled) {
      r.number("prune_depth", c.prune_depth);
      if (c.prune_depth < 0.0) r.error("prune_depth", "must be non-negative");
      r.integer("dense_threshold", c.dense_threshold);
    }
  }
  if (is_lattice(k)) {
    r.number("eps", c.eps);
    require_positive(r, "eps", c.eps);
    if (k != Kind::brw) r.capacity("K", c.K, true);
    if (k == Kind::particle) r.boolean("regime_check", c.regime_check);
    if (k == Kind::rebooted) {
      r.integer("period", c.period);
      if (c.period == 0 && c.K != kUnbounded && c.K < 3) {
        r.error("period", "required when K < 3");
      }
      if (c.period == 0 && c.K == kUnbounded) r.error("period", "required when K is infinite");
    }
    if (k == Kind::coupled) {
      if (const json* node = r.object("second", true)) {
        Reader s(*node, "/second/", text, diags);
        c.second_K = c.K;
        s.capacity("K", c.second_K, false);
        if (s.has("environment")) c.second_environment = read_env(s, "environment", false);
        s.finish();
      }
    }
  }
  if (k == Kind::ode) {
    r.number("T", c.T, true);
    r.number("h", c.h, true);
    r.number("x0", c.x0);
    r.integer("record_every", c.record_every);
    require_positive(r, "T", c.T);
    require_positive(r, "h", c.h);
    if (c.record_every < 1) r.error("record_every", "must be at least 1");
  }
  if (k == Kind::pde || k == Kind::figure1_panel) {
    r.number("hx", c.hx);
    require_positive(r, "hx", c.hx);
    r.number("record_dt", c.record_dt);
    require_positive(r, "record_dt", c.record_dt);
    std::string reaction = to_string(c.reaction);
    r.string("reaction", reaction);
    try {
      c.reaction = parse_reaction(reaction);
    } catch (const ConfigurationError& e) {
      r.error("reaction", e.what());
    }
  }
  if (k == Kind::pde) {
    r.number("eps", c.eps);
    require_positive(r, "eps", c.eps);
    r.capacity("K", c.K, true);
    if (c.K == kUnbounded) r.error("K", "the PDE front level 1/K needs a finite K");
    r.number("T", c.T, true);
    require_positive(r, "T", c.T);
    r.number("dt", c.pde_dt);
    if (c.pde_dt < 0.0) r.error("dt", "must be non-negative");
    r.boolean("half_level", c.half_level);
  }
  if (k == Kind::figure1_panel) {
    r.number("h", c.h);
    require_positive(r, "h", c.h);
    r.number("eps_fixed", c.eps_fixed);
    require_positive(r, "eps_fixed", c.eps_fixed);
    r.integer("K_fixed", c.K_fixed);
    if (c.K_fixed == 0) r.error("K_fixed", "must be at least 1");
    read_list(r, "eps_ladder", c.eps_ladder);
    read_list(r, "K_ladder", c.K_ladder);
  }
  if (k == Kind::speeds && c.environment.type != "periodic") {
    r.error("environment", "speeds needs a periodic environment");
  }
  r.finish();
  if (!diags.empty()) throw ConfigError(diags);
  return c;
}

std::string join(const std::vector<std::string>& lines) {
  std::string out;
  for (const auto& l : lines) {
    if (!out.empty()) out += '\n';
    out += l;
  }
  return out;
}

nlohmann::ordered_json env_json(const EnvSpec& e) {
  nlohmann::ordered_json j;
  j["type"] = e.type;
  if (e.type == "constant") {
    j["r"] = e.r;
  } else if (e.type == "periodic") {
    j["period"] = e.period;
    j["mu_plus"] = e.mu_plus;
    j["mu_minus"] = e.mu_minus;
  } else {
    j["mean"] = e.mean;
    j["amplitude"] = e.amplitude;
    j["wavenumber"] = e.wavenumber;
  }
  return j;
}

nlohmann::ordered_json capacity_json(std::uint64_t K) {
  if (K == kUnbounded) return "inf";
  return K;
}

}  // namespace

Kind parse_kind(const std::string& name) {
  for (const auto& [k, n] : kind_names()) {
    if (n == name) return k;
  }
  throw ConfigurationError("unknown experiment kind '" + name +
                           "' (particle, brw, rebooted, coupled, ode, pde, speeds, figure1_panel)");
}

std::string to_string(Kind kind) {
  for (const auto& [k, n] : kind_names()) {
    if (k == kind) return n;
  }
  return "unknown";
}

Environment EnvSpec::build() const {
  if (type == "constant") return Environment::constant(r);
  if (type == "periodic") return Environment::periodic_piecewise(period, mu_plus, mu_minus);
  if (type == "sinusoid") {
    if (!(amplitude >= 0.0) || !(mean > amplitude) || !(wavenumber > 0.0)) {
      throw ConfigurationError("sinusoid needs mean > amplitude >= 0 and wavenumber > 0");
    }
    const double m = mean, a = amplitude, w = wavenumber;
    const double lip = a * w / std::sqrt(2.0 * (m - a));
    std::ostringstream label;
    label.precision(17);
    label << m << " + " << a << " sin(" << w << " x)";
    return Environment::smooth([m, a, w](double, double x) { return m + a * std::sin(w * x); }, m - a,
                               m + a, lip, label.str());
  }
  throw ConfigurationError("unknown environment type '" + type + "'");
}

PopulationState InitialSpec::build(double dx) const {
  if (type == "half_line") {
    const auto sites = static_cast<std::int64_t>(std::ceil(extent / dx));
    return PopulationState::block(-sites, 0, count);
  }
  return PopulationState::single(0, count);
}

ConfigError::ConfigError(std::vector<std::string> diagnostics)
    : std::runtime_error(join(diagnostics)), diagnostics_(std::move(diagnostics)) {}

ExperimentConfig parse_config(const std::string& text, const std::string& source) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1, column = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    std::ostringstream d;
    d << source << ": line " << line << ", column " << column << ": syntax error";
    throw ConfigError({d.str()});
  }
  if (root.is_object() && root.contains("config") && root.contains("frontlab_version")) {
    root = root.at("config");
  }
  try {
    return parse_object(root, text);
  } catch (const ConfigError& e) {
    std::vector<std::string> prefixed;
    for (const auto& d : e.diagnostics()) prefixed.push_back(source + ": " + d);
    throw ConfigError(prefixed);
  }
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError({path + ": cannot open file"});
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), path);
}

nlohmann::ordered_json to_json(const ExperimentConfig& c) {
  nlohmann::ordered_json j;
  const Kind k = c.kind;
  j["kind"] = to_string(k);
  j["output"] = c.output;
  j["seed"] = c.seed;
  j["replicates"] = c.replicates;
  j["window_fraction"] = c.window_fraction;
  j["environment"] = env_json(c.environment);
  if (is_lattice(k) || k == Kind::figure1_panel) {
    j["dt"] = c.dt;
    j["dx"] = c.dx;
    j["T"] = c.T;
    nlohmann::ordered_json init;
    init["type"] = c.initial.type;
    init["count"] = c.initial.count;
    if (c.initial.type == "half_line") init["extent"] = c.initial.extent;
    j["initial"] = init;
    j["record_every"] = c.record_every;
    j["max_window_sites"] = c.max_window_sites;
    if (k != Kind::coupled) {
      j["prune_depth"] = c.prune_depth;
      j["dense_threshold"] = c.dense_threshold;
    }
  }
  if (is_lattice(k)) {
    j["eps"] = c.eps;
    if (k != Kind::brw) j["K"] = capacity_json(c.K);
    if (k == Kind::particle) j["regime_check"] = c.regime_check;
    if (k == Kind::rebooted) j["period"] = c.period;
    if (k == Kind::coupled) {
      nlohmann::ordered_json s;
      s["K"] = capacity_json(c.second_K);
      if (c.second_environment) s["environment"] = env_json(*c.second_environment);
      j["second"] = s;
    }
  }
  if (k == Kind::ode) {
    j["T"] = c.T;
    j["h"] = c.h;
    j["x0"] = c.x0;
    j["record_every"] = c.record_every;
  }
  if (k == Kind::pde || k == Kind::figure1_panel) {
    j["hx"] = c.hx;
    j["record_dt"] = c.record_dt;
    j["reaction"] = to_string(c.reaction);
  }
  if (k == Kind::pde) {
    j["eps"] = c.eps;
    j["K"] = capacity_json(c.K);
    j["T"] = c.T;
    j["dt"] = c.pde_dt;
    j["half_level"] = c.half_level;
  }
  if (k == Kind::figure1_panel) {
    j["h"] = c.h;
    j["eps_fixed"] = c.eps_fixed;
    j["K_fixed"] = c.K_fixed;
    j["eps_ladder"] = c.eps_ladder;
    j["K_ladder"] = c.K_ladder;
  }
  return j;
}

double regime_dx_bound(double r_inf, double dt) {
  return 0.2 * std::sqrt(2.0 * 0.69314718055994530942 * r_inf) * dt;
}

std::vector<std::string> config_warnings(const ExperimentConfig& c) {
  std::vector<std::string> out;
  if (c.kind == Kind::particle && c.regime_check) {
    const double r_inf = c.environment.build().r_inf();
    const double bound = regime_dx_bound(r_inf, c.dt);
    if (!(c.dx <= bound)) {
      std::ostringstream w;
      w.precision(6);
      w << "dx = " << c.dx << " exceeds the regime bound (1/5) sqrt(2 log2 r_inf) dt = " << bound
        << "; the front limit is not guaranteed at this resolution";
      out.push_back(w.str());
    }
  }
  return out;
}

}  // namespace frontlab::app
