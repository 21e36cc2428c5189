#include "tropifs/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <initializer_list>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string_view>

#include "tropifs/catalog.hpp"
#include "tropifs/errors.hpp"

namespace tropifs {

namespace {

void check_keys(const Json& j, std::initializer_list<std::string_view> allowed, const std::string& where) {
  if (!j.is_object()) throw ConfigError(where + ": expected a JSON object");
  for (const auto& [key, _] : j.items()) {
    bool known = false;
    for (auto a : allowed) known = known || key == a;
    if (!known) throw ConfigError(where + ": unknown key \"" + key + "\"");
  }
}

const Json& require(const Json& j, const char* key, const std::string& where) {
  if (!j.contains(key)) throw ConfigError(where + ": missing \"" + key + "\"");
  return j.at(key);
}

double get_number(const Json& j, const std::string& where) {
  if (!j.is_number()) throw ConfigError(where + ": expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw ConfigError(where + ": expected a finite number");
  return v;
}

std::uint64_t get_count(const Json& j, const std::string& where) {
  if (j.is_number_unsigned()) return j.get<std::uint64_t>();
  if (j.is_number_integer() && j.get<std::int64_t>() >= 0) return static_cast<std::uint64_t>(j.get<std::int64_t>());
  throw ConfigError(where + ": expected a non-negative integer");
}

double get_positive(const Json& j, const std::string& where) {
  const double v = get_number(j, where);
  if (!(v > 0.0)) throw ConfigError(where + ": must be positive");
  return v;
}

std::vector<double> get_number_array(const Json& j, const std::string& where) {
  if (!j.is_array()) throw ConfigError(where + ": expected an array");
  std::vector<double> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(get_number(j[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

std::vector<MaxPlus> get_maxplus_array(const Json& j, const std::string& where) {
  if (!j.is_array()) throw ConfigError(where + ": expected an array");
  std::vector<MaxPlus> out;
  for (const auto& v : j) out.push_back(maxplus_from_json(v));
  return out;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

IndexSpace index_space_from_json(const Json& j, std::size_t m) {
  check_keys(j, {"spacing", "labels", "dist"}, "index_space");
  if (j.contains("spacing")) return IndexSpace::uniform(m, get_positive(j["spacing"], "index_space.spacing"));
  IndexSpace is;
  const Json& dist = require(j, "dist", "index_space");
  if (!dist.is_array() || dist.size() != m) throw ConfigError("index_space.dist must be an m x m array");
  for (const auto& row : dist) {
    const auto r = get_number_array(row, "index_space.dist");
    if (r.size() != m) throw ConfigError("index_space.dist must be an m x m array");
    is.dist.insert(is.dist.end(), r.begin(), r.end());
  }
  if (j.contains("labels")) {
    is.labels = j["labels"].get<std::vector<std::string>>();
    if (is.labels.size() != m) throw ConfigError("index_space.labels must have one entry per map");
  } else {
    for (std::size_t i = 0; i < m; ++i) is.labels.push_back(std::to_string(i + 1));
  }
  if (auto bad = metric_violation(m, is.dist); !bad.empty()) throw ConfigError("index_space.dist: " + bad);
  return is;
}

MpIfs builder_system(const Json& b, std::optional<std::uint64_t> seed) {
  const std::string name = require(b, "name", "builder").get<std::string>();
  if (name == "section31") {
    check_keys(b, {"name", "depth"}, "builder");
    const auto depth = get_count(require(b, "depth", "builder"), "builder.depth");
    if (depth < 2) throw ConfigError("builder.depth must be at least 2");
    return build_section31(depth);
  }
  if (name == "sys_a") {
    check_keys(b, {"name"}, "builder");
    return sys_a();
  }
  if (name == "random") {
    check_keys(b, {"name", "space", "num_maps", "seed", "constant_weights"}, "builder");
    const FiniteSpace space = space_from_json(require(b, "space", "builder"));
    const auto m = get_count(require(b, "num_maps", "builder"), "builder.num_maps");
    std::uint64_t s = b.contains("seed") ? get_count(b["seed"], "builder.seed") : 0;
    if (seed) s = *seed;
    const bool constant = b.value("constant_weights", false);
    return random_system(space, m, s, constant);
  }
  throw ConfigError("builder.name must be section31, sys_a or random");
}

}  // namespace

std::string format_double(double v) {
  if (std::isinf(v)) return v < 0 ? "-inf" : "inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string format_maxplus(MaxPlus v) { return v.is_bottom() ? "-inf" : format_double(v.value()); }

MaxPlus parse_maxplus(const std::string& token) {
  if (token == "-inf") return MaxPlus::bottom();
  double v = 0.0;
  const char* end = token.data() + token.size();
  const auto res = std::from_chars(token.data(), end, v);
  if (res.ec != std::errc() || res.ptr != end || !std::isfinite(v)) {
    throw ConfigError("not a number or -inf: \"" + token + "\"");
  }
  return MaxPlus(v);
}

Json maxplus_to_json(MaxPlus v) { return v.is_bottom() ? Json("-inf") : Json(v.value()); }

MaxPlus maxplus_from_json(const Json& j) {
  if (j.is_string()) return parse_maxplus(j.get<std::string>());
  return MaxPlus(get_number(j, "value"));
}

Json density_to_json(const Density& lambda) {
  Json arr = Json::array();
  for (MaxPlus v : lambda.values()) arr.push_back(maxplus_to_json(v));
  return arr;
}

void write_potential_csv(std::ostream& os, const FiniteSpace& space, const MpMatrix& s) {
  os << "label";
  for (const auto& l : space.labels()) os << ",\"" << l << '"';
  os << '\n';
  for (std::size_t x = 0; x < s.rows(); ++x) {
    os << '"' << space.label(x) << '"';
    for (std::size_t y = 0; y < s.cols(); ++y) os << ',' << format_maxplus(s(x, y));
    os << '\n';
  }
}

MpMatrix read_potential_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw ConfigError("potential CSV: missing header");
  // Labels may contain commas (shift words), so count columns from the rows.
  std::vector<std::vector<MaxPlus>> rows;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const auto close = line.rfind('"');
    if (line.front() != '"' || close == 0 || close == std::string::npos || close + 2 > line.size()) {
      throw ConfigError("potential CSV: row label must be quoted");
    }
    const auto cells = split_csv_line(line.substr(close + 2));
    std::vector<MaxPlus> row;
    for (const auto& c : cells) row.push_back(parse_maxplus(c));
    rows.push_back(std::move(row));
  }
  const std::size_t n = rows.size();
  std::vector<MaxPlus> flat;
  for (const auto& r : rows) {
    if (r.size() != n) throw ConfigError("potential CSV: matrix is not square");
    flat.insert(flat.end(), r.begin(), r.end());
  }
  return MpMatrix(n, n, std::move(flat));
}

void write_fuzzy_csv(std::ostream& os, const FiniteSpace& space, const FuzzySet& u) {
  os << "label,membership\n";
  for (std::size_t x = 0; x < u.size(); ++x) os << '"' << space.label(x) << "\"," << format_double(u[x]) << '\n';
}

void write_trace_csv(std::ostream& os, const std::vector<double>& trace) {
  os << "iteration,d_infty\n";
  for (std::size_t k = 0; k < trace.size(); ++k) os << k + 1 << ',' << format_double(trace[k]) << '\n';
}

FiniteSpace space_from_json(const Json& j) {
  const std::string kind = require(j, "kind", "space").get<std::string>();
  if (kind == "grid") {
    check_keys(j, {"kind", "a", "b", "n"}, "space");
    return build_grid(get_number(require(j, "a", "space"), "space.a"), get_number(require(j, "b", "space"), "space.b"),
                      get_count(require(j, "n", "space"), "space.n"));
  }
  if (kind == "shift") {
    check_keys(j, {"kind", "symbols", "depth"}, "space");
    const auto k = get_count(require(j, "symbols", "space"), "space.symbols");
    const auto d = get_count(require(j, "depth", "space"), "space.depth");
    if (k < 1 || d < 1) throw ConfigError("shift space needs symbols >= 1 and depth >= 1");
    return build_shift_space(static_cast<std::uint32_t>(k), d);
  }
  if (kind == "custom") {
    check_keys(j, {"kind", "labels", "dist", "resolution"}, "space");
    auto labels = require(j, "labels", "space").get<std::vector<std::string>>();
    const Json& dist = require(j, "dist", "space");
    if (!dist.is_array() || dist.size() != labels.size()) throw ConfigError("space.dist must be an n x n array");
    std::vector<double> flat;
    for (const auto& row : dist) {
      const auto r = get_number_array(row, "space.dist");
      if (r.size() != labels.size()) throw ConfigError("space.dist must be an n x n array");
      flat.insert(flat.end(), r.begin(), r.end());
    }
    const double res = j.contains("resolution") ? get_number(j["resolution"], "space.resolution") : 0.0;
    return FiniteSpace(std::move(labels), std::move(flat), res);
  }
  throw ConfigError("space.kind must be grid, shift or custom");
}

MpIfs system_from_json(const Json& j) {
  check_keys(j, {"space", "maps", "weights", "index_space", "maps_exact"}, "system");
  MpIfs s;
  s.space = space_from_json(require(j, "space", "system"));
  const std::size_t n = s.space.size();
  const Json& maps = require(j, "maps", "system");
  if (!maps.is_array() || maps.empty()) throw ConfigError("system.maps must be a nonempty array");
  bool snapped = false;
  for (std::size_t k = 0; k < maps.size(); ++k) {
    const Json& m = maps[k];
    const std::string where = "system.maps[" + std::to_string(k) + "]";
    std::vector<PointIndex> phi(n);
    if (m.contains("targets")) {
      check_keys(m, {"targets"}, where);
      const Json& t = m["targets"];
      if (!t.is_array() || t.size() != n) throw ConfigError(where + ".targets needs one entry per point");
      for (std::size_t x = 0; x < n; ++x) phi[x] = get_count(t[x], where + ".targets");
    } else if (m.contains("affine")) {
      check_keys(m, {"affine"}, where);
      if (s.space.kind() != SpaceKind::kGrid) throw ConfigError(where + ": affine maps need a grid space");
      const Json& a = m["affine"];
      check_keys(a, {"ratio", "offset"}, where + ".affine");
      const double r = get_number(require(a, "ratio", where), where + ".ratio");
      const double c = get_number(require(a, "offset", where), where + ".offset");
      for (std::size_t x = 0; x < n; ++x) phi[x] = snap(s.space, r * s.space.coords()[x] + c);
      snapped = true;
    } else if (m.contains("prepend")) {
      check_keys(m, {"prepend"}, where);
      if (s.space.kind() != SpaceKind::kShift) throw ConfigError(where + ": prepend maps need a shift space");
      const auto sym = get_count(m["prepend"], where + ".prepend");
      if (sym < 1 || sym > s.space.symbols()) throw ConfigError(where + ".prepend: symbol out of range");
      Word w(s.space.depth());
      for (std::size_t x = 0; x < n; ++x) {
        const Word& src = s.space.word(x);
        w[0] = static_cast<std::uint32_t>(sym);
        std::copy(src.begin(), src.end() - 1, w.begin() + 1);
        phi[x] = s.space.index_of(w);
      }
    } else {
      throw ConfigError(where + ": expected targets, affine or prepend");
    }
    s.maps.push_back(std::move(phi));
  }
  const Json& weights = require(j, "weights", "system");
  if (!weights.is_array() || weights.size() != maps.size()) {
    throw ConfigError("system.weights needs one entry per map");
  }
  for (const auto& w : weights) {
    if (w.is_object()) {
      check_keys(w, {"constant"}, "system.weights");
      s.weights.emplace_back(n, maxplus_from_json(require(w, "constant", "system.weights")));
    } else {
      s.weights.push_back(get_maxplus_array(w, "system.weights"));
    }
  }
  s.index_space = j.contains("index_space") ? index_space_from_json(j["index_space"], maps.size())
                                            : IndexSpace::uniform(maps.size(), 2.0 * s.space.diameter());
  s.maps_exact = j.contains("maps_exact") ? j["maps_exact"].get<bool>() : !snapped;
  return s;
}

Json system_to_json(const MpIfs& s) {
  Json space;
  space["kind"] = "custom";
  space["labels"] = s.space.labels();
  Json dist = Json::array();
  for (std::size_t a = 0; a < s.num_points(); ++a) {
    Json row = Json::array();
    for (std::size_t b = 0; b < s.num_points(); ++b) row.push_back(s.space.dist(a, b));
    dist.push_back(std::move(row));
  }
  space["dist"] = std::move(dist);
  space["resolution"] = s.space.resolution();

  Json out;
  out["space"] = std::move(space);
  Json maps = Json::array(), weights = Json::array();
  for (std::size_t j = 0; j < s.num_maps(); ++j) {
    maps.push_back({{"targets", s.maps[j]}});
    Json w = Json::array();
    for (MaxPlus v : s.weights[j]) w.push_back(maxplus_to_json(v));
    weights.push_back(std::move(w));
  }
  out["maps"] = std::move(maps);
  out["weights"] = std::move(weights);
  Json idist = Json::array();
  for (std::size_t a = 0; a < s.index_space.size(); ++a) {
    Json row = Json::array();
    for (std::size_t b = 0; b < s.index_space.size(); ++b) row.push_back(s.index_space.d(a, b));
    idist.push_back(std::move(row));
  }
  out["index_space"] = {{"labels", s.index_space.labels}, {"dist", std::move(idist)}};
  out["maps_exact"] = s.maps_exact;
  return out;
}

namespace {

RunConfig parse_config_impl(const Json& j) {
  check_keys(j, {"system", "builder", "tolerances", "max_iters", "closure", "invariant", "fuzzy", "demo31"}, "config");
  RunConfig c;
  if (j.contains("system") && j.contains("builder")) {
    throw ConfigError("config: \"system\" and \"builder\" are mutually exclusive");
  }
  if (j.contains("system")) c.system = j["system"];
  if (j.contains("builder")) {
    if (!j["builder"].is_object()) throw ConfigError("builder: expected a JSON object");
    c.builder = j["builder"];
  }

  if (j.contains("tolerances")) {
    const Json& t = j["tolerances"];
    check_keys(t, {"aubry", "invariant", "fuzzy"}, "tolerances");
    if (t.contains("aubry")) c.tol_aubry = get_positive(t["aubry"], "tolerances.aubry");
    if (t.contains("invariant")) c.tol_invariant = get_positive(t["invariant"], "tolerances.invariant");
    if (t.contains("fuzzy")) c.tol_fuzzy = get_positive(t["fuzzy"], "tolerances.fuzzy");
  }
  if (j.contains("max_iters")) c.max_iters = get_count(j["max_iters"], "max_iters");
  if (j.contains("closure")) {
    const auto m = j["closure"].get<std::string>();
    if (m == "squaring") c.closure = ClosureMethod::kSquaring;
    else if (m == "floyd_warshall") c.closure = ClosureMethod::kFloydWarshall;
    else throw ConfigError("closure must be squaring or floyd_warshall");
  }

  if (j.contains("invariant")) {
    const Json& inv = j["invariant"];
    check_keys(inv, {"mode", "boundary", "levels"}, "invariant");
    const auto mode = inv.value("mode", std::string("boundary"));
    if (mode == "boundary") c.invariant_mode = InvariantMode::kBoundary;
    else if (mode == "constant") c.invariant_mode = InvariantMode::kConstant;
    else if (mode == "enumerate") c.invariant_mode = InvariantMode::kEnumerate;
    else throw ConfigError("invariant.mode must be boundary, constant or enumerate");
    if (inv.contains("boundary")) {
      const Json& b = inv["boundary"];
      check_keys(b, {"anchor", "values"}, "invariant.boundary");
      c.boundary_anchor = require(b, "anchor", "invariant.boundary").get<std::string>();
      if (b.contains("values")) {
        if (!b["values"].is_object()) throw ConfigError("invariant.boundary.values: expected an object");
        for (const auto& [key, v] : b["values"].items()) c.boundary_values.emplace_back(key, maxplus_from_json(v));
      }
    }
    if (inv.contains("levels")) c.levels = get_maxplus_array(inv["levels"], "invariant.levels");
  }

  if (j.contains("fuzzy")) {
    const Json& f = j["fuzzy"];
    check_keys(f, {"start", "alpha", "values"}, "fuzzy");
    const auto start = f.value("start", std::string("ones"));
    if (start == "ones") c.fuzzy_start = FuzzyStart::kOnes;
    else if (start == "lambda_alpha") c.fuzzy_start = FuzzyStart::kLambdaAlpha;
    else if (start == "membership") c.fuzzy_start = FuzzyStart::kMembership;
    else if (start == "density") c.fuzzy_start = FuzzyStart::kDensity;
    else throw ConfigError("fuzzy.start must be ones, lambda_alpha, membership or density");
    if (f.contains("alpha")) c.fuzzy_alpha = get_number(f["alpha"], "fuzzy.alpha");
    if (f.contains("values")) {
      const Json& v = f["values"];
      if (!v.is_array()) throw ConfigError("fuzzy.values: expected an array");
      for (const auto& e : v) {
        const MaxPlus m = maxplus_from_json(e);
        c.fuzzy_values.push_back(m.is_bottom() ? -std::numeric_limits<double>::infinity() : m.value());
      }
    }
  }

  if (j.contains("demo31")) {
    const Json& d = j["demo31"];
    check_keys(d, {"depth", "alphas"}, "demo31");
    if (d.contains("depth")) c.demo_depth = get_count(d["depth"], "demo31.depth");
    if (d.contains("alphas")) c.demo_alphas = get_number_array(d["alphas"], "demo31.alphas");
  }
  return c;
}

}  // namespace

RunConfig parse_config(const Json& j) {
  try {
    return parse_config_impl(j);
  } catch (const Json::exception& e) {
    throw ConfigError(std::string("malformed config: ") + e.what());
  }
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::exception& e) {
    throw ConfigError("config " + path.string() + " is not valid JSON: " + e.what());
  }
  return parse_config(j);
}

MpIfs build_system(const RunConfig& cfg, std::optional<std::uint64_t> seed) {
  try {
    if (cfg.builder) return builder_system(*cfg.builder, seed);
    if (cfg.system) return system_from_json(*cfg.system);
  } catch (const Json::exception& e) {
    throw ConfigError(std::string("malformed system description: ") + e.what());
  }
  throw ConfigError("config: no \"system\" or \"builder\" given");
}

PointIndex resolve_point(const FiniteSpace& space, const std::string& key) {
  for (std::size_t i = 0; i < space.size(); ++i)
    if (space.label(i) == key) return i;
  std::size_t idx = 0;
  const auto res = std::from_chars(key.data(), key.data() + key.size(), idx);
  if (res.ec == std::errc() && res.ptr == key.data() + key.size() && idx < space.size()) return idx;
  throw ConfigError("unknown point \"" + key + "\"");
}

}  // namespace tropifs
