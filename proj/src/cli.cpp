#include "tropifs/cli.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "tropifs/catalog.hpp"
#include "tropifs/errors.hpp"
#include "tropifs/fuzzy.hpp"
#include "tropifs/invariant.hpp"
#include "tropifs/io.hpp"
#include "tropifs/mane.hpp"
#include "tropifs/parallel.hpp"

namespace tropifs {

namespace fs = std::filesystem;

namespace {

struct Run {
  RunConfig cfg;
  fs::path out_dir;
  std::optional<std::uint64_t> seed;
};

Json real(double v) { return std::isfinite(v) ? Json(v) : Json(format_double(v)); }

Json labels_of(const FiniteSpace& space, const PointSet& pts) {
  Json arr = Json::array();
  for (PointIndex p : pts) arr.push_back(space.label(p));
  return arr;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f || !(f << text)) throw ConfigError("cannot write " + path.string());
}

void write_json(const fs::path& path, const Json& j) { write_text(path, j.dump(2) + "\n"); }

template <class Fn>
void write_stream(const fs::path& path, Fn fn) {
  std::ostringstream ss;
  fn(ss);
  write_text(path, ss.str());
}

MpIfs validated_system(const Run& run) {
  MpIfs s = build_system(run.cfg, run.seed);
  validate(s);
  return s;
}

Json report_json(const ValidationReport& r) {
  Json j;
  j["status"] = r.status == ValidationStatus::kValid       ? "valid"
                : r.status == ValidationStatus::kNormalization ? "normalization_failure"
                                                                : "not_contractive";
  j["gamma_hat"] = real(r.gamma_hat);
  j["lip_c_hat"] = real(r.lip_c_hat);
  j["max_normalization_drift"] = real(r.max_normalization_drift);
  j["renormalized"] = r.renormalized;
  j["constant_weights"] = r.constant_weights;
  j["collapse_depth"] = r.collapse_depth ? Json(*r.collapse_depth) : Json(nullptr);
  j["messages"] = r.messages;
  return j;
}

int cmd_validate(const Run& run, std::ostream& out) {
  MpIfs s = build_system(run.cfg, run.seed);
  ValidationReport r = inspect(s);
  if (r.ok()) r = validate(s);
  Json j = report_json(r);
  j["num_points"] = s.num_points();
  j["num_maps"] = s.num_maps();
  write_json(run.out_dir / "validation.json", j);
  out << "validate: " << j["status"].get<std::string>() << ", gamma_hat " << format_double(r.gamma_hat) << "\n";
  return r.ok() ? kExitOk : kExitDomain;
}

int cmd_mane(const Run& run, std::ostream& out) {
  const MpIfs s = validated_system(run);
  const PotentialMatrix p = mane_potential(s, run.cfg.tol_aubry, run.cfg.closure);
  write_stream(run.out_dir / "S.csv", [&](std::ostream& os) { write_potential_csv(os, s.space, p.s); });
  Json j;
  j["tol_aubry"] = p.tol_aubry;
  j["indices"] = p.aubry;
  j["labels"] = labels_of(s.space, p.aubry);
  write_json(run.out_dir / "aubry.json", j);
  out << "mane: " << p.aubry.size() << " Aubry point(s)\n";
  return kExitOk;
}

int cmd_invariant(const Run& run, std::ostream& out) {
  const RunConfig& cfg = run.cfg;
  const MpIfs s = validated_system(run);
  const PotentialMatrix p = mane_potential(s, cfg.tol_aubry, cfg.closure);

  Json doc;
  doc["labels"] = s.space.labels();
  doc["aubry"] = labels_of(s.space, p.aubry);
  std::vector<Density> found;
  switch (cfg.invariant_mode) {
    case InvariantMode::kBoundary: {
      doc["mode"] = "boundary";
      if (!cfg.boundary_anchor) throw ConfigError("invariant.boundary.anchor is required in boundary mode");
      const PointIndex anchor = resolve_point(s.space, *cfg.boundary_anchor);
      std::map<PointIndex, MaxPlus> values{{anchor, MaxPlus::one()}};
      for (const auto& [key, v] : cfg.boundary_values) {
        const PointIndex z = resolve_point(s.space, key);
        if (z != anchor) values[z] = v;
      }
      found.push_back(build_invariant(p, BoundaryData(anchor, std::move(values))));
      break;
    }
    case InvariantMode::kConstant: {
      doc["mode"] = "constant";
      const CodingMap cm = coding_map(s);
      doc["coding_depth"] = cm.depth;
      doc["zero_weight_maps"] = cm.j0;
      doc["zero_weight_image"] = labels_of(s.space, cm.j0_image);
      found.push_back(constant_weight_density(s, p, cm));
      break;
    }
    case InvariantMode::kEnumerate: {
      doc["mode"] = "enumerate";
      found = enumerate_invariants(s, p, cfg.levels);
      break;
    }
  }

  Json dens = Json::array(), reports = Json::array();
  bool all_pass = true;
  for (const Density& d : found) {
    dens.push_back(density_to_json(d));
    const InvariantReport r = verify_invariant(s, d, cfg.tol_invariant);
    reports.push_back({{"deviation", real(r.deviation)}, {"tol", r.tol}, {"pass", r.pass}});
    all_pass = all_pass && r.pass;
  }
  doc["densities"] = std::move(dens);
  write_json(run.out_dir / "density.json", doc);
  write_json(run.out_dir / "verify.json", Json{{"reports", std::move(reports)}, {"all_pass", all_pass}});
  out << "invariant: " << found.size() << " density(ies), " << (all_pass ? "all verified" : "verification FAILED")
      << "\n";
  return all_pass ? kExitOk : kExitDomain;
}

FuzzySet starting_set(const RunConfig& cfg, const MpIfs& s) {
  switch (cfg.fuzzy_start) {
    case FuzzyStart::kOnes:
      return FuzzySet(std::vector<double>(s.num_points(), 1.0));
    case FuzzyStart::kLambdaAlpha:
      if (s.space.kind() != SpaceKind::kShift || s.space.symbols() != 2) {
        throw ConfigError("fuzzy.start lambda_alpha needs a two-symbol shift space");
      }
      if (!(cfg.fuzzy_alpha >= 0.0 && cfg.fuzzy_alpha < 1.0)) throw ConfigError("fuzzy.alpha must lie in [0, 1)");
      return theta_conjugate(lambda_alpha(s.space.depth(), cfg.fuzzy_alpha));
    case FuzzyStart::kMembership:
      if (cfg.fuzzy_values.size() != s.num_points()) throw ConfigError("fuzzy.values needs one entry per point");
      return FuzzySet(cfg.fuzzy_values);
    case FuzzyStart::kDensity:
      if (cfg.fuzzy_values.size() != s.num_points()) throw ConfigError("fuzzy.values needs one entry per point");
      return theta_conjugate(Density::from_doubles(cfg.fuzzy_values));
  }
  throw InternalError("unhandled fuzzy start");
}

int cmd_fuzzy(const Run& run, std::ostream& out) {
  const MpIfs s = validated_system(run);
  const FuzzySet u0 = starting_set(run.cfg, s);
  if (!u0.is_normal()) throw ConfigError("starting fuzzy set must be normal (max membership 1)");
  const FhbResult r = fhb_iterate(s, u0, run.cfg.tol_fuzzy, run.cfg.max_iters);
  write_stream(run.out_dir / "attractor.csv", [&](std::ostream& os) { write_fuzzy_csv(os, s.space, r.attractor); });
  write_stream(run.out_dir / "trace.csv", [&](std::ostream& os) { write_trace_csv(os, r.trace); });
  if (!r.converged) {
    throw NonConvergenceError("FHB iteration did not converge within the iteration cap (" +
                              std::to_string(r.iterations) + " steps); trace written");
  }
  out << "fuzzy: converged after " << r.iterations << " step(s)\n";
  return kExitOk;
}

// Known values of lambda_alpha on words padded with their last symbol.
Json known_values(const NonuniquenessReport& r, std::size_t depth) {
  struct Probe {
    Word prefix;
    double changes;
  };
  const Probe probes[] = {{{2, 2, 2, 1}, 1.0}, {{2, 1, 1, 2, 1}, 3.0}, {{2, 2, 2, 1, 2}, 2.0}};
  Json arr = Json::array();
  const FiniteSpace& space = r.system.space;
  for (const auto& pr : probes) {
    if (pr.prefix.size() > depth) continue;
    Word w = pr.prefix;
    w.resize(depth, pr.prefix.back());
    const PointIndex x = space.index_of(w);
    for (std::size_t i = 0; i < r.alphas.size(); ++i) {
      const double expected = -pr.changes - (w.back() == 2 ? r.alphas[i] : 0.0);
      const MaxPlus got = r.densities[i][x];
      arr.push_back({{"word", space.label(x)},
                     {"alpha", r.alphas[i]},
                     {"value", maxplus_to_json(got)},
                     {"expected", expected},
                     {"match", got == MaxPlus(expected)}});
    }
  }
  return arr;
}

int cmd_demo31(const Run& run, std::ostream& out) {
  ShiftExampleSpec spec{6, run.cfg.demo_alphas};
  const auto& b = run.cfg.builder;
  if (run.cfg.demo_depth) {
    spec.depth = *run.cfg.demo_depth;
  } else if (b && b->value("name", std::string()) == "section31" && b->contains("depth")) {
    spec.depth = (*b)["depth"].get<std::size_t>();
  }
  const NonuniquenessReport r = demonstrate_nonuniqueness(spec);
  Json j;
  j["depth"] = spec.depth;
  j["alphas"] = r.alphas;
  j["aubry"] = r.aubry_labels;
  j["labels"] = r.system.space.labels();
  Json dens = Json::array();
  for (const auto& d : r.densities) dens.push_back(density_to_json(d));
  j["densities"] = std::move(dens);
  j["deviations"] = r.deviations;
  j["exact_fixed_point"] = r.exact_fixed_point;
  j["pairwise_d_theta"] = r.pairwise_d_theta;
  j["matches_boundary_construction"] = r.matches_boundary_construction;
  j["known_values"] = known_values(r, spec.depth);
  j["notes"] = r.notes;
  write_json(run.out_dir / "demo31.json", j);
  bool known_ok = true;
  for (const auto& k : j["known_values"]) known_ok = known_ok && k["match"].get<bool>();
  out << "demo31: " << r.densities.size() << " distinct invariant densities at depth " << spec.depth << "\n";
  if (!known_ok) throw DemonstrationError("a known value of lambda_alpha did not match");
  return kExitOk;
}

std::optional<unsigned> threads_from_env() {
  const char* v = std::getenv("TROPIFS_THREADS");
  if (v == nullptr || *v == '\0') return std::nullopt;
  unsigned n = 0;
  const char* end = v + std::char_traits<char>::length(v);
  const auto res = std::from_chars(v, end, n);
  if (res.ec != std::errc() || res.ptr != end) throw ConfigError("TROPIFS_THREADS must be a non-negative integer");
  return n;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Invariant idempotent measures of max-plus iterated function systems", "tropifs"};
  std::string command, config_path, out_dir;
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> threads;
  app.add_option("command", command, "validate | mane | invariant | fuzzy | demo31")
      ->required()
      ->check(CLI::IsMember({"validate", "mane", "invariant", "fuzzy", "demo31"}));
  app.add_option("--config", config_path, "JSON run configuration")->required();
  app.add_option("--out", out_dir, "output directory")->required();
  app.add_option("--seed", seed, "seed for random builders");
  app.add_option("--threads", threads, "worker threads (default: TROPIFS_THREADS, else 1)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "tropifs: " << e.what() << "\n" << app.help();
    return kExitUsage;
  }

  try {
    if (!threads) threads = threads_from_env();
    set_thread_count(threads.value_or(1));

    Run run{load_config(config_path), out_dir, seed};
    if (command != "demo31" && !run.cfg.system && !run.cfg.builder) {
      throw ConfigError("config: specify exactly one of \"system\" and \"builder\"");
    }
    fs::create_directories(run.out_dir);

    if (command == "validate") return cmd_validate(run, out);
    if (command == "mane") return cmd_mane(run, out);
    if (command == "invariant") return cmd_invariant(run, out);
    if (command == "fuzzy") return cmd_fuzzy(run, out);
    return cmd_demo31(run, out);
  } catch (const ConfigError& e) {
    err << "tropifs: config error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const DimensionError& e) {
    err << "tropifs: config error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const IndexError& e) {
    err << "tropifs: config error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const fs::filesystem_error& e) {
    err << "tropifs: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "tropifs: " << e.what() << "\n";
    return kExitDomain;
  } catch (const std::exception& e) {
    err << "tropifs: unexpected failure: " << e.what() << "\n";
    return kExitDomain;
  }
}

}  // namespace tropifs
