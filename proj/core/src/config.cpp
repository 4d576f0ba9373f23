#include "divlab/config.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "divlab/errors.hpp"

namespace divlab {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

[[noreturn]] void config_fail(const std::string& origin, int line, const std::string& msg) {
  fail(ErrorKind::ConfigError, origin + ":" + std::to_string(line) + ": " + msg);
}

// Parses a (possibly nested) numeric array literal.
std::vector<std::vector<double>> parse_array(const std::string& origin, int line,
                                             const std::string& text, bool& flat) {
  std::vector<std::vector<double>> rows;
  std::vector<double> cur;
  flat = true;
  int depth = 0;
  std::string token;
  bool in_inner = false;
  auto flush_token = [&](bool inner) {
    const std::string t = trim(token);
    token.clear();
    if (t.empty()) return;
    try {
      std::size_t used = 0;
      const double v = std::stod(t, &used);
      if (used != t.size()) throw std::invalid_argument(t);
      if (inner)
        cur.push_back(v);
      else
        rows.push_back({v});
    } catch (...) {
      config_fail(origin, line, "expected a number, found '" + t + "'");
    }
  };
  for (char c : text) {
    if (c == '[') {
      ++depth;
      if (depth == 2) {
        in_inner = true;
        flat = false;
        cur.clear();
      }
      if (depth > 2) config_fail(origin, line, "arrays nest at most twice");
      continue;
    }
    if (c == ']') {
      if (depth == 2) {
        flush_token(true);
        rows.push_back(cur);
        in_inner = false;
      }
      if (depth == 1) flush_token(false);
      --depth;
      if (depth < 0) config_fail(origin, line, "unbalanced ']'");
      continue;
    }
    if (c == ',') {
      flush_token(in_inner);
      continue;
    }
    token += c;
  }
  if (depth != 0) config_fail(origin, line, "unbalanced '['");
  return rows;
}

}  // namespace

TomlTable TomlTable::parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::ConfigError, "cannot open config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_string(ss.str(), path);
}

TomlTable TomlTable::parse_string(const std::string& text, const std::string& origin) {
  TomlTable t;
  t.origin_ = origin;
  std::istringstream in(text);
  std::string line, section;
  int lineno = 0;
  std::string pending_key;
  std::string pending_value;
  int pending_line = 0;
  int pending_depth = 0;

  auto commit = [&](const std::string& key, const std::string& value, int vline) {
    Value v;
    v.line = vline;
    const std::string tv = trim(value);
    if (tv.empty()) config_fail(origin, vline, "missing value for key '" + key + "'");
    if (tv.front() == '[') {
      v.is_array = true;
      v.rows = parse_array(origin, vline, tv, v.flat);
      v.raw = tv;
    } else if (tv.front() == '"') {
      if (tv.size() < 2 || tv.back() != '"')
        config_fail(origin, vline, "unterminated string for key '" + key + "'");
      v.raw = tv.substr(1, tv.size() - 2);
    } else {
      v.raw = tv;
    }
    const std::string full = section.empty() ? key : section + "." + key;
    if (t.values_.count(full)) config_fail(origin, vline, "duplicate key '" + full + "'");
    t.values_[full] = std::move(v);
  };

  while (std::getline(in, line)) {
    ++lineno;
    // Strip comments outside strings.
    bool in_str = false;
    std::string stripped;
    for (char c : line) {
      if (c == '"') in_str = !in_str;
      if (c == '#' && !in_str) break;
      stripped += c;
    }
    const std::string body = trim(stripped);

    if (!pending_key.empty()) {
      pending_value += " " + body;
      for (char c : body) {
        if (c == '[') ++pending_depth;
        if (c == ']') --pending_depth;
      }
      if (pending_depth <= 0) {
        commit(pending_key, pending_value, pending_line);
        pending_key.clear();
        pending_value.clear();
      }
      continue;
    }

    if (body.empty()) continue;
    if (body.front() == '[') {
      if (body.back() != ']') config_fail(origin, lineno, "malformed section header");
      section = trim(body.substr(1, body.size() - 2));
      if (section.empty()) config_fail(origin, lineno, "empty section name");
      continue;
    }
    const std::size_t eq = body.find('=');
    if (eq == std::string::npos)
      config_fail(origin, lineno, "expected 'key = value', found '" + body + "'");
    const std::string key = trim(body.substr(0, eq));
    const std::string value = trim(body.substr(eq + 1));
    if (key.empty()) config_fail(origin, lineno, "empty key");
    // Multi-line arrays continue until brackets balance.
    int depth = 0;
    for (char c : value) {
      if (c == '[') ++depth;
      if (c == ']') --depth;
    }
    if (!value.empty() && value.front() == '[' && depth > 0) {
      pending_key = key;
      pending_value = value;
      pending_line = lineno;
      pending_depth = depth;
      continue;
    }
    commit(key, value, lineno);
  }
  if (!pending_key.empty())
    config_fail(origin, pending_line, "unterminated array for key '" + pending_key + "'");
  return t;
}

const TomlTable::Value* TomlTable::find(const std::string& section,
                                        const std::string& key) const {
  const auto it = values_.find(section.empty() ? key : section + "." + key);
  return it == values_.end() ? nullptr : &it->second;
}

bool TomlTable::has(const std::string& section, const std::string& key) const {
  return find(section, key) != nullptr;
}

std::string TomlTable::get_string(const std::string& section, const std::string& key,
                                  const std::string& fallback) const {
  const Value* v = find(section, key);
  return v ? v->raw : fallback;
}

double TomlTable::get_number(const std::string& section, const std::string& key,
                             double fallback) const {
  const Value* v = find(section, key);
  if (!v) return fallback;
  try {
    std::size_t used = 0;
    const double d = std::stod(v->raw, &used);
    if (used != v->raw.size()) throw std::invalid_argument(v->raw);
    return d;
  } catch (...) {
    config_fail(origin_, v->line, "key '" + section + "." + key + "' is not a number");
  }
}

int TomlTable::get_int(const std::string& section, const std::string& key, int fallback) const {
  return static_cast<int>(get_number(section, key, fallback));
}

bool TomlTable::get_bool(const std::string& section, const std::string& key,
                         bool fallback) const {
  const Value* v = find(section, key);
  if (!v) return fallback;
  if (v->raw == "true") return true;
  if (v->raw == "false") return false;
  config_fail(origin_, v->line, "key '" + section + "." + key + "' is not a boolean");
}

std::vector<double> TomlTable::get_array(const std::string& section, const std::string& key,
                                         const std::vector<double>& fallback) const {
  const Value* v = find(section, key);
  if (!v) return fallback;
  if (!v->is_array) config_fail(origin_, v->line, "key '" + section + "." + key + "' is not an array");
  std::vector<double> out;
  for (const auto& row : v->rows)
    for (double d : row) out.push_back(d);
  return out;
}

std::vector<std::vector<double>> TomlTable::get_array2(const std::string& section,
                                                       const std::string& key) const {
  const Value* v = find(section, key);
  if (!v) return {};
  if (!v->is_array || v->flat)
    config_fail(origin_, v->line, "key '" + section + "." + key + "' is not a nested array");
  return v->rows;
}

std::vector<std::string> TomlTable::keys() const {
  std::vector<std::string> out;
  out.reserve(values_.size());
  for (const auto& [k, v] : values_) out.push_back(k);
  return out;
}

namespace {

const char* kKnownKeys[] = {
    "domain.kind",          "domain.params",        "domain.coeffs",
    "domain.center",        "domain.enlargement",   "f.monomials",
    "solver.poisson_charges", "solver.stokes_sources", "solver.collocation_ratio",
    "solver.radius_factor", "solver.svd_cutoff",    "solver.residual_tol",
    "quadrature.radial",    "quadrature.angular",   "quadrature.boundary",
    "norms.m",              "norms.eps1",           "norms.eps2",
    "norms.eps2_grid",      "norms.tie_ratio",      "norms.decay_threshold",
    "lemmas.sweep_i",       "lemmas.sweep_j",       "lemmas.word_cap",
    "tolerances.mean",      "tolerances.div",       "tolerances.boundary",
    "output.dir",           "output.seed",          "output.threads",
};

}  // namespace

RunConfig RunConfig::from_toml(const TomlTable& t) {
  for (const std::string& k : t.keys()) {
    bool known = false;
    for (const char* known_key : kKnownKeys)
      if (k == known_key) { known = true; break; }
    if (!known) fail(ErrorKind::ConfigError, "unknown config key '" + k + "'");
  }

  RunConfig c;
  c.domain_kind = t.get_string("domain", "kind", c.domain_kind);
  c.domain_params = t.get_array("domain", "params", {});
  c.domain_coeffs = t.get_array2("domain", "coeffs");
  const auto center = t.get_array("domain", "center", {0.0, 0.0});
  if (center.size() != 2) fail(ErrorKind::ConfigError, "domain.center needs two entries");
  c.domain_center = {center[0], center[1]};
  c.enlargement = t.get_number("domain", "enlargement", c.enlargement);

  if (t.has("f", "monomials")) c.f_monomials = t.get_array2("f", "monomials");

  c.poisson_charges = t.get_int("solver", "poisson_charges", c.poisson_charges);
  c.stokes_sources = t.get_int("solver", "stokes_sources", c.stokes_sources);
  c.collocation_ratio = t.get_int("solver", "collocation_ratio", c.collocation_ratio);
  c.radius_factor = t.get_number("solver", "radius_factor", c.radius_factor);
  c.svd_cutoff = t.get_number("solver", "svd_cutoff", c.svd_cutoff);
  c.residual_tol = t.get_number("solver", "residual_tol", c.residual_tol);

  c.radial = t.get_int("quadrature", "radial", c.radial);
  c.angular = t.get_int("quadrature", "angular", c.angular);
  c.boundary = t.get_int("quadrature", "boundary", c.boundary);

  c.m_total = t.get_int("norms", "m", c.m_total);
  c.eps2 = t.get_number("norms", "eps2", c.eps2);
  c.eps1 = t.get_number("norms", "eps1", c.eps2 / 100.0);
  c.eps2_grid = t.get_array("norms", "eps2_grid", c.eps2_grid);
  c.tie_ratio = t.get_number("norms", "tie_ratio", c.tie_ratio);
  c.decay_threshold = t.get_number("norms", "decay_threshold", c.decay_threshold);

  c.sweep_i = t.get_int("lemmas", "sweep_i", c.sweep_i);
  c.sweep_j = t.get_int("lemmas", "sweep_j", c.sweep_j);
  c.j_word_cap = t.get_int("lemmas", "word_cap", c.j_word_cap);

  c.mean_tol = t.get_number("tolerances", "mean", c.mean_tol);
  c.div_tol = t.get_number("tolerances", "div", c.div_tol);
  c.boundary_tol = t.get_number("tolerances", "boundary", c.boundary_tol);

  c.out_dir = t.get_string("output", "dir", c.out_dir);
  c.seed = static_cast<std::uint64_t>(t.get_number("output", "seed", 0.0));
  c.threads = t.get_int("output", "threads", c.threads);

  if (c.poisson_charges <= 0 || c.stokes_sources <= 0 || c.radial <= 0 || c.angular <= 0 ||
      c.boundary <= 0 || c.collocation_ratio <= 0)
    fail(ErrorKind::ConfigError, "counts must be positive");
  if (!(c.mean_tol > 0.0 && c.mean_tol < 1.0) || !(c.div_tol > 0.0 && c.div_tol < 1.0) ||
      !(c.boundary_tol > 0.0 && c.boundary_tol < 1.0))
    fail(ErrorKind::ConfigError, "tolerances must lie in (0, 1)");
  if (!(c.eps1 > 0.0 && c.eps1 <= 1.0) || !(c.eps2 > 0.0 && c.eps2 <= 1.0))
    fail(ErrorKind::ConfigError, "norm weights must lie in (0, 1]");
  return c;
}

AnalyticDomain RunConfig::make_domain() const {
  if (domain_kind == "polynomial") {
    std::vector<std::array<double, 3>> terms;
    for (const auto& row : domain_coeffs) {
      if (row.size() != 3)
        fail(ErrorKind::ConfigError, "domain.coeffs rows must be [a, b, coeff]");
      terms.push_back({row[0], row[1], row[2]});
    }
    const Polynomial rho = Polynomial::from_terms(terms);
    return AnalyticDomain::make(domain_kind, domain_params, &rho, domain_center, enlargement);
  }
  return AnalyticDomain::make(domain_kind, domain_params, nullptr, domain_center, enlargement);
}

Polynomial RunConfig::make_f() const {
  std::vector<std::array<double, 3>> terms;
  for (const auto& row : f_monomials) {
    if (row.size() != 3) fail(ErrorKind::ConfigError, "f.monomials rows must be [a, b, coeff]");
    terms.push_back({row[0], row[1], row[2]});
  }
  return Polynomial::from_terms(terms);
}

PipelineOptions RunConfig::pipeline_options() const {
  PipelineOptions p;
  p.poisson.n_charges = poisson_charges;
  p.poisson.collocation_ratio = collocation_ratio;
  p.poisson.radius_factor = radius_factor;
  p.poisson.svd_cutoff = svd_cutoff;
  p.poisson.residual_tol = residual_tol;
  p.stokes.n_sources = stokes_sources;
  p.stokes.collocation_ratio = collocation_ratio;
  p.stokes.radius_factor = radius_factor;
  p.stokes.svd_cutoff = svd_cutoff;
  p.stokes.residual_tol = residual_tol;
  p.mean_tol = mean_tol;
  p.div_tol = div_tol;
  p.boundary_tol = boundary_tol;
  p.quad_radial = radial;
  p.quad_angular = angular;
  p.boundary_points = boundary;
  p.threads = threads;
  return p;
}

ReportOptions RunConfig::report_options() const {
  ReportOptions r;
  r.m_total = m_total;
  r.weights = NormWeights{eps1, eps2, m_total};
  r.certify.eps2_grid = eps2_grid;
  r.certify.tie_ratio = tie_ratio;
  r.certify.decay_threshold = decay_threshold;
  r.certify.m_total = m_total;
  r.bootstrap_eps2 = eps2_grid;
  r.tie_ratio = tie_ratio;
  r.sweep_i = sweep_i;
  r.sweep_j = sweep_j;
  r.table_radial = radial;
  r.table_angular = angular;
  r.threads = threads;
  return r;
}

std::uint64_t fnv1a_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::ConfigError, "cannot open '" + path + "' for hashing");
  std::uint64_t h = 1469598103934665603ull;
  char c;
  while (in.get(c)) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace divlab
