#include "confstab/cli.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "confstab/cache.hpp"
#include "confstab/complex.hpp"
#include "confstab/errors.hpp"
#include "confstab/graph_io.hpp"
#include "confstab/homology.hpp"
#include "confstab/rep_theory.hpp"
#include "confstab/stability_lab.hpp"

namespace confstab {

using nlohmann::json;

namespace {

json big_json(const BigInt& x) {
  if (x.fits_slong_p()) return x.get_si();
  return x.get_str();
}

json rational_json(const Rational& x) {
  if (x.get_den() == 1) return big_json(x.get_num());
  return x.get_str();
}

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? sep : "") + parts[i];
  return out;
}

std::string label_string(const std::vector<Partition>& labels) {
  std::vector<std::string> parts;
  for (const auto& p : labels) parts.push_back(p.to_string());
  return join(parts, "x");
}

std::string scalar_text(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_null()) return "";
  return v.dump();
}

const std::vector<std::string>& commands() {
  static const std::vector<std::string> list = {"model", "homology", "oracle-compare", "generation-check",
                                                "rep-stability", "tree-generators", "poly-fit"};
  return list;
}

bool uses_graph(const std::string& c) {
  return c == "model" || c == "homology" || c == "oracle-compare" || c == "tree-generators";
}

void check_file(const std::string& path, const char* what) {
  if (path.empty()) throw InvalidArgument(std::string("--") + what + " is required");
  std::error_code ec;
  if (!std::filesystem::is_regular_file(path, ec)) throw InvalidArgument(std::string(what) + " file not found: " + path);
  std::ifstream in(path);
  if (!in) throw InvalidArgument(std::string(what) + " file is not readable: " + path);
}

Graph load_graph(const RunConfig& c, std::vector<std::string>& warnings) {
  Graph g = graph_from_json(read_json_file(c.graph_path));
  if (g.has_loops()) {
    warnings.push_back("loop edges were subdivided once before building the model");
    g = normalize_loops(g);
  }
  return g;
}

FamilyDescriptor load_family(const RunConfig& c) {
  FamilyDescriptor f = family_from_json(read_json_file(c.family_path));
  f.validate();
  return f;
}

// Cache inputs: everything that determines the report, with file contents inlined.
json cache_inputs(const RunConfig& c) {
  json in;
  in["command"] = c.command;
  if (uses_graph(c.command)) in["graph"] = graph_to_json(graph_from_json(read_json_file(c.graph_path)));
  if (!uses_graph(c.command)) in["family"] = family_to_json(family_from_json(read_json_file(c.family_path)));
  in["n"] = c.n;
  in["q"] = c.q;
  in["sinks"] = c.sinks;
  in["oracle"] = c.oracle;
  in["window"] = {c.k0, c.k1};
  in["degree"] = c.degree;
  in["sizes"] = c.sizes;
  in["max_degree"] = c.max_degree;
  in["holdout"] = c.holdout;
  in["max_k"] = c.max_k;
  in["max_cells"] = c.max_cells;
  return in;
}

struct Computed {
  json report;
  int exit_code = kExitOk;
};

Computed run_model(const RunConfig& c, std::vector<std::string>& warnings, bool with_homology) {
  const Graph g = load_graph(c, warnings);
  const BuildOptions opts{c.max_cells};
  const CubeComplex cx = c.oracle ? build_abrams_oracle(g, c.n, opts) : build_model(g, c.n, c.sinks, opts);
  json r;
  r["command"] = c.command;
  r["model"] = c.oracle ? "abrams" : "paper";
  r["n"] = c.n;
  r["sinks"] = c.sinks;
  r["f_vector"] = cx.f_vector();
  r["euler_characteristic"] = cx.euler_characteristic();
  r["total_cells"] = cx.total_cells();
  if (with_homology) {
    const auto groups = homology_groups(cx);
    json list = json::array();
    for (int q = 0; q < static_cast<int>(groups.size()) || q <= c.q; ++q) {
      if (c.q >= 0 && q != c.q) continue;
      json t = json::array();
      std::size_t betti = 0;
      if (q < static_cast<int>(groups.size())) {
        betti = groups[static_cast<std::size_t>(q)].betti;
        for (const auto& d : groups[static_cast<std::size_t>(q)].torsion) t.push_back(big_json(d));
      }
      list.push_back({{"q", q}, {"betti", betti}, {"torsion", t}, {"cells", cx.num_cells(q)}});
    }
    r["groups"] = list;
  }
  return {r, kExitOk};
}

Computed run_oracle_compare(const RunConfig& c, std::vector<std::string>& warnings) {
  if (!c.sinks.empty()) throw InvalidArgument("the oracle models plain configuration spaces; drop --sinks");
  const Graph g = load_graph(c, warnings);
  const BuildOptions opts{c.max_cells};
  const int max_q = c.q >= 0 ? c.q : 2;
  auto paper = betti_numbers(build_model(g, c.n, {}, opts));
  auto oracle = betti_numbers(build_abrams_oracle(g, c.n, opts));
  paper.resize(static_cast<std::size_t>(std::max<int>(max_q + 1, static_cast<int>(paper.size()))), 0);
  oracle.resize(paper.size(), 0);
  bool all = true;
  json rows = json::array();
  for (int q = 0; q <= max_q; ++q) {
    const bool match = paper[static_cast<std::size_t>(q)] == oracle[static_cast<std::size_t>(q)];
    all = all && match;
    rows.push_back({{"q", q}, {"paper", paper[static_cast<std::size_t>(q)]}, {"oracle", oracle[static_cast<std::size_t>(q)]}, {"match", match}});
  }
  json r;
  r["command"] = c.command;
  r["n"] = c.n;
  r["max_q"] = max_q;
  r["rows"] = rows;
  r["status"] = all ? "MATCH" : "MISMATCH";
  return {r, all ? kExitOk : kExitAssertion};
}

const char* kind_name(FamilyKind k) {
  switch (k) {
    case FamilyKind::WedgeFI: return "wedge_fi";
    case FamilyKind::IntervalDelta: return "interval_delta";
    case FamilyKind::CircleLambda: return "circle_lambda";
  }
  return "?";
}

Computed run_generation(const RunConfig& c, double& seconds) {
  const FamilyDescriptor f = load_family(c);
  if (c.degree < 0) throw InvalidArgument("--degree is required");
  if (c.sizes.empty()) throw InvalidArgument("--size is required");
  LabOptions opts{c.max_cells, c.jobs};
  const GenerationReport g = generation_degree_check(f, c.n, std::max(c.q, 0), c.degree, c.sizes, opts);
  seconds = g.seconds;
  json r;
  r["command"] = c.command;
  r["family"] = kind_name(g.kind);
  r["n"] = g.n;
  r["q"] = g.q;
  r["sizes"] = g.sizes;
  r["degree"] = g.degree;
  r["betti"] = g.betti;
  r["over_q"] = g.over_q;
  r["over_z"] = g.over_z;
  r["missing_rank"] = g.missing_rank;
  r["d_min"] = g.d_min ? json(*g.d_min) : json(nullptr);
  r["paper_bound"] = g.paper_bound ? json(*g.paper_bound) : json(nullptr);
  r["pass"] = g.pass ? json(*g.pass) : json(nullptr);
  r["cells"] = g.cells;
  r["partial"] = g.partial;
  r["partial_reason"] = g.partial_reason;
  json trail = json::array();
  for (const auto& v : g.trail) {
    trail.push_back({{"degree", v.degree}, {"over_q", v.over_q}, {"over_z", v.over_z}, {"missing_rank", v.missing_rank},
                     {"supports", v.supports}, {"candidates", v.candidates}});
  }
  r["trail"] = trail;
  if (g.partial) return {r, kExitBudget};
  if (g.over_q && !g.over_z) r["torsion_obstruction"] = true;
  return {r, g.pass == false ? kExitAssertion : kExitOk};
}

void require_window(const RunConfig& c, int min_points) {
  if (c.k0 < 0 || c.k1 < 0) throw InvalidArgument("--window k0..k1 is required");
  if (c.k1 - c.k0 + 1 < min_points) throw InvalidArgument("window has too few points");
}

Computed run_rep_stability(const RunConfig& c) {
  require_window(c, 2);
  const FamilyDescriptor f = load_family(c);
  if (f.kind != FamilyKind::WedgeFI) throw InvalidArgument("rep-stability needs a wedge_fi family");
  CharacterOptions opts;
  opts.max_k = c.max_k;
  opts.max_cells = c.max_cells;
  opts.jobs = c.jobs;
  std::vector<CharacterReport> reports;
  for (int k = c.k0; k <= c.k1; ++k) {
    reports.push_back(character_report(f, FamilySizes(static_cast<std::size_t>(f.arity()), k), c.n, std::max(c.q, 0), opts));
  }
  const StabilityVerdict v = stability_verdict(reports);
  json r;
  r["command"] = c.command;
  r["n"] = c.n;
  r["q"] = std::max(c.q, 0);
  r["window"] = v.window;
  r["stable"] = v.stable;
  json betti = json::array();
  json classes = json::array();
  for (const auto& rep : reports) {
    betti.push_back(rep.betti);
    json cls = json::array();
    for (const auto& cv : rep.class_data) {
      std::vector<std::string> types;
      for (const auto& p : cv.cycle_types) types.push_back(p.to_string());
      cls.push_back({{"cycle_type", join(types, "x")}, {"class_size", big_json(cv.class_size)}, {"value", rational_json(cv.value)}});
    }
    classes.push_back(cls);
  }
  r["betti"] = betti;
  r["characters"] = classes;
  json table = json::array();
  for (const auto& [labels, row] : v.table) {
    json m = json::array();
    for (const auto& x : row) m.push_back(big_json(x));
    table.push_back({{"label", label_string(labels)}, {"multiplicities", m}});
  }
  r["table"] = table;
  r["warnings"] = v.warnings;
  return {r, kExitOk};
}

Computed run_tree(const RunConfig& c, std::vector<std::string>& warnings) {
  const Graph g = load_graph(c, warnings);
  const int q = std::max(c.q, 0);
  const TreeGeneratorReport t = verify_tree_generators(g, c.n, q, LabOptions{c.max_cells, c.jobs});
  json r;
  r["command"] = c.command;
  r["n"] = t.n;
  r["q"] = t.q;
  r["betti"] = t.betti;
  r["candidates"] = t.candidates;
  r["generates_over_q"] = t.verdict.generates_over_q;
  r["generates_over_z"] = t.verdict.generates_over_z;
  r["missing_rank"] = t.verdict.missing_rank;
  return {r, t.verdict.generates_over_z ? kExitOk : kExitAssertion};
}

Computed run_poly_fit(const RunConfig& c) {
  require_window(c, c.max_degree + 1 + c.holdout);
  const FamilyDescriptor f = load_family(c);
  const PolynomialFit p = dimension_polynomial_check(f, c.n, std::max(c.q, 0), c.k0, c.k1, c.max_degree, c.holdout,
                                                     LabOptions{c.max_cells, c.jobs});
  json r;
  r["command"] = c.command;
  r["n"] = c.n;
  r["q"] = std::max(c.q, 0);
  r["ks"] = p.ks;
  r["dims"] = p.dims;
  json coeffs = json::array(), preds = json::array();
  for (const auto& x : p.coefficients) coeffs.push_back(rational_json(x));
  for (const auto& x : p.predictions) preds.push_back(rational_json(x));
  r["coefficients"] = coeffs;
  r["degree"] = p.degree;
  r["max_degree"] = c.max_degree;
  r["holdout"] = c.holdout;
  r["predictions"] = preds;
  r["fits"] = p.fits;
  return {r, kExitOk};
}

Computed compute(const RunConfig& c, std::vector<std::string>& warnings, double& seconds) {
  if (c.command == "model") return run_model(c, warnings, false);
  if (c.command == "homology") return run_model(c, warnings, true);
  if (c.command == "oracle-compare") return run_oracle_compare(c, warnings);
  if (c.command == "generation-check") return run_generation(c, seconds);
  if (c.command == "rep-stability") return run_rep_stability(c);
  if (c.command == "tree-generators") return run_tree(c, warnings);
  return run_poly_fit(c);
}

}  // namespace

void validate(const RunConfig& c) {
  if (std::find(commands().begin(), commands().end(), c.command) == commands().end()) {
    throw InvalidArgument("unknown command '" + c.command + "'");
  }
  if (c.n < 0 || c.n > 8) throw InvalidArgument("--n must be in 0..8");
  if (c.q < -1 || c.q > 8) throw InvalidArgument("--q must be in 0..8");
  if (c.jobs < 1 || c.jobs > 256) throw InvalidArgument("--jobs must be in 1..256");
  if (c.max_cells < 1) throw InvalidArgument("--max-cells must be positive");
  if (c.format != "json" && c.format != "csv") throw InvalidArgument("--format must be json or csv");
  if (c.max_k < 1 || c.max_k > 10) throw InvalidArgument("--max-k must be in 1..10");
  if ((c.k0 >= 0) != (c.k1 >= 0) || c.k0 > c.k1 || c.k1 > c.max_k) {
    throw InvalidArgument("--window must be k0..k1 with 0 <= k0 <= k1 <= max-k");
  }
  if (c.degree < -1) throw InvalidArgument("--degree must be non-negative");
  for (int k : c.sizes) {
    if (k < 0) throw InvalidArgument("--size entries must be non-negative");
  }
  for (int v : c.sinks) {
    if (v < 0) throw InvalidArgument("--sinks entries must be vertex ids");
  }
  if (c.max_degree < 0 || c.max_degree > 10) throw InvalidArgument("--max-degree must be in 0..10");
  if (c.holdout < 0) throw InvalidArgument("--holdout must be non-negative");
  if (c.audit_rate < 0 || c.audit_rate > 1) throw InvalidArgument("--audit-rate must be in [0, 1]");
  if (uses_graph(c.command)) {
    check_file(c.graph_path, "graph");
  } else {
    check_file(c.family_path, "family");
  }
  if (c.oracle && !c.sinks.empty()) throw InvalidArgument("--oracle does not support sinks");
}

RunResult run(const RunConfig& config) {
  RunResult out;
  auto fail = [&](int code, const std::string& message) {
    out.exit_code = code;
    out.report = {{"command", config.command}, {"error", message}, {"exit_code", code}};
    out.csv.clear();
  };
  try {
    validate(config);
    std::optional<ResultCache> cache;
    std::string key;
    if (const auto dir = ResultCache::resolve_dir(config.cache_dir)) {
      cache.emplace(*dir);
      key = cache_key(cache_inputs(config));
    }
    double seconds = 0;
    if (cache) {
      if (auto hit = cache->get(key, out.warnings)) {
        out.cache_hit = true;
        out.report = std::move(*hit);
        out.exit_code = out.report.value("exit_code", 0);
        std::mt19937_64 rng(config.seed ^ fnv1a(key));
        if (std::uniform_real_distribution<double>(0, 1)(rng) < config.audit_rate) {
          Computed fresh = compute(config, out.warnings, seconds);
          fresh.report["exit_code"] = fresh.exit_code;
          if (to_canonical_string(fresh.report) != to_canonical_string(out.report)) {
            out.warnings.push_back("cache entry " + key + " differs from a recomputation; overwritten");
            cache->put(key, fresh.report);
            out.report = fresh.report;
            out.exit_code = fresh.exit_code;
          }
        }
        out.csv = report_csv(out.report);
        return out;
      }
    }
    Computed c = compute(config, out.warnings, seconds);
    c.report["exit_code"] = c.exit_code;
    out.report = std::move(c.report);
    out.exit_code = c.exit_code;
    if (cache && out.exit_code != kExitBudget) cache->put(key, out.report);
    out.csv = report_csv(out.report);
  } catch (const InvalidArgument& e) {
    fail(kExitInvalidConfig, e.what());
  } catch (const BudgetExceeded& e) {
    fail(kExitBudget, e.what());
  } catch (const std::exception& e) {
    fail(kExitAssertion, e.what());
  }
  return out;
}

std::string report_csv(const json& r) {
  std::ostringstream s;
  const std::string command = r.value("command", "");
  if (r.contains("error")) return "";
  if (command == "model") {
    s << "dimension,cells\n";
    const auto& f = r["f_vector"];
    for (std::size_t q = 0; q < f.size(); ++q) s << q << ',' << f[q].dump() << '\n';
  } else if (command == "homology") {
    s << "q,betti,torsion,cells\n";
    for (const auto& g : r["groups"]) {
      std::vector<std::string> t;
      for (const auto& d : g["torsion"]) t.push_back(scalar_text(d));
      s << g["q"].dump() << ',' << g["betti"].dump() << ',' << join(t, ";") << ',' << g["cells"].dump() << '\n';
    }
  } else if (command == "oracle-compare") {
    s << "q,paper,oracle,match\n";
    for (const auto& row : r["rows"]) {
      s << row["q"].dump() << ',' << row["paper"].dump() << ',' << row["oracle"].dump() << ',' << row["match"].dump() << '\n';
    }
  } else if (command == "generation-check") {
    s << "degree,over_q,over_z,missing_rank,supports,candidates\n";
    for (const auto& v : r["trail"]) {
      s << v["degree"].dump() << ',' << v["over_q"].dump() << ',' << v["over_z"].dump() << ',' << v["missing_rank"].dump()
        << ',' << v["supports"].dump() << ',' << v["candidates"].dump() << '\n';
    }
  } else if (command == "rep-stability") {
    s << "label,k,multiplicity\n";
    const auto& window = r["window"];
    for (const auto& row : r["table"]) {
      for (std::size_t i = 0; i < window.size(); ++i) {
        s << row["label"].get<std::string>() << ',' << window[i][0].dump() << ',' << scalar_text(row["multiplicities"][i]) << '\n';
      }
    }
  } else if (command == "tree-generators") {
    s << "n,q,betti,candidates,generates_over_q,generates_over_z,missing_rank\n";
    s << r["n"].dump() << ',' << r["q"].dump() << ',' << r["betti"].dump() << ',' << r["candidates"].dump() << ','
      << r["generates_over_q"].dump() << ',' << r["generates_over_z"].dump() << ',' << r["missing_rank"].dump() << '\n';
  } else if (command == "poly-fit") {
    s << "k,betti,prediction\n";
    for (std::size_t i = 0; i < r["ks"].size(); ++i) {
      s << r["ks"][i].dump() << ',' << r["dims"][i].dump() << ',' << scalar_text(r["predictions"][i]) << '\n';
    }
  }
  return s.str();
}

int cli_main(int argc, char** argv) {
  CLI::App app{"Configuration spaces of graphs: models, homology and stability checks"};
  app.require_subcommand(1);
  RunConfig c;
  std::string window;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--n", c.n, "number of particles")->capture_default_str();
    sub->add_option("--q", c.q, "homology degree");
    sub->add_option("--cache-dir", c.cache_dir, "report cache directory (default $CONFSTAB_CACHE_DIR)");
    sub->add_option("--jobs", c.jobs, "worker threads")->capture_default_str();
    sub->add_option("--max-cells", c.max_cells, "refuse complexes larger than this")->capture_default_str();
    sub->add_option("--format", c.format, "json or csv")->capture_default_str();
    sub->add_option("--out", c.out, "write the report here instead of stdout");
    sub->add_option("--seed", c.seed, "seed for cache audits")->capture_default_str();
    sub->add_option("--audit-rate", c.audit_rate, "share of cache hits that are recomputed")->capture_default_str();
  };
  auto graph_opts = [&](CLI::App* sub) {
    sub->add_option("--graph", c.graph_path, "graph JSON file")->required();
    common(sub);
  };
  auto family_opts = [&](CLI::App* sub) {
    sub->add_option("--family", c.family_path, "family JSON file")->required();
    common(sub);
  };

  auto* model = app.add_subcommand("model", "cell counts of the configuration model");
  graph_opts(model);
  model->add_option("--sinks", c.sinks, "sink vertices")->delimiter(',');
  model->add_flag("--oracle", c.oracle, "build the Abrams model instead");

  auto* homology = app.add_subcommand("homology", "Betti numbers and torsion");
  graph_opts(homology);
  homology->add_option("--sinks", c.sinks, "sink vertices")->delimiter(',');
  homology->add_flag("--oracle", c.oracle, "use the Abrams model");

  auto* compare = app.add_subcommand("oracle-compare", "compare Betti numbers of both models");
  graph_opts(compare);

  auto* gen = app.add_subcommand("generation-check", "finite generation degree check");
  family_opts(gen);
  gen->add_option("--degree", c.degree, "candidate generation degree")->required();
  gen->add_option("--size", c.sizes, "target sizes, one per coordinate")->delimiter(',')->required();

  auto* rep = app.add_subcommand("rep-stability", "multiplicities of irreducibles over a window");
  family_opts(rep);
  rep->add_option("--window", window, "k0..k1")->required();
  rep->add_option("--max-k", c.max_k, "largest symmetric group")->capture_default_str();

  auto* tree = app.add_subcommand("tree-generators", "products of basic cycles generate H_q of a tree");
  graph_opts(tree);

  auto* poly = app.add_subcommand("poly-fit", "exact polynomial fit of Betti numbers");
  family_opts(poly);
  poly->add_option("--window", window, "k0..k1")->required();
  poly->add_option("--max-degree", c.max_degree, "polynomial degree bound")->capture_default_str();
  poly->add_option("--holdout", c.holdout, "points checked after the fit")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInvalidConfig;
  }
  c.command = app.get_subcommands().front()->get_name();
  if (!window.empty()) {
    const auto dots = window.find("..");
    try {
      if (dots == std::string::npos) throw std::invalid_argument("missing ..");
      c.k0 = std::stoi(window.substr(0, dots));
      c.k1 = std::stoi(window.substr(dots + 2));
    } catch (const std::exception&) {
      std::cerr << "error: --window must look like 5..7\n";
      return kExitInvalidConfig;
    }
  }

  const auto start = std::chrono::steady_clock::now();
  const RunResult r = run(c);
  for (const auto& w : r.warnings) std::cerr << "warning: " << w << '\n';
  if (r.report.contains("error")) std::cerr << "error: " << r.report["error"].get<std::string>() << '\n';
  const std::string text = c.format == "csv" && !r.report.contains("error") ? r.csv : r.report.dump(2) + "\n";
  if (!c.out.empty() && r.exit_code != kExitInvalidConfig) {
    std::ofstream out(c.out, std::ios::trunc);
    if (!out) {
      std::cerr << "error: cannot write " << c.out << '\n';
      return kExitInvalidConfig;
    }
    out << text;
  } else {
    std::cout << text;
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::cerr << "confstab " << c.command << ": exit " << r.exit_code << (r.cache_hit ? " (cached)" : "") << " in "
            << seconds << " s\n";
  return r.exit_code;
}

}  // namespace confstab
