#include "selfsim/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "selfsim/dynamics.hpp"
#include "selfsim/errors.hpp"
#include "selfsim/group_spec.hpp"
#include "selfsim/invariants.hpp"
#include "selfsim/quotient.hpp"
#include "selfsim/structure.hpp"

namespace selfsim {

namespace {

struct SpecSource {
  std::string file;
  std::string preset;
  int p = 3;
  std::string alpha;
  int m = 2;
  std::string pattern_group = "symmetric";

  void add_to(CLI::App& app, const std::string& suffix, const std::string& what) {
    app.add_option("--spec" + suffix, file, "JSON spec file for " + what);
    app.add_option("--preset" + suffix, preset, "ggs | grigorchuk | wreath | rooted | trivial");
    app.add_option("--p" + suffix, p, "GGS prime");
    app.add_option("--alpha" + suffix, alpha, "GGS defining vector, e.g. 1,0");
    app.add_option("--m" + suffix, m, "arity for wreath, rooted, trivial");
    app.add_option("--pattern-group" + suffix, pattern_group,
                   "wreath pattern group: cyclic | symmetric");
  }

  GroupSpec load(const std::string& what) const {
    if (!file.empty() && !preset.empty())
      fail(ErrorKind::invalid_argument, "give either a spec file or a preset for " + what);
    if (!file.empty()) return load_spec_file(file);
    if (preset.empty()) fail(ErrorKind::invalid_argument, "no group given for " + what);
    json j;
    j["preset"] = preset;
    if (preset == "ggs") {
      j["p"] = p;
      std::vector<int> a;
      std::stringstream ss(alpha);
      std::string tok;
      while (std::getline(ss, tok, ',')) {
        try {
          std::size_t used = 0;
          a.push_back(std::stoi(tok, &used));
          if (used != tok.size()) throw std::invalid_argument(tok);
        } catch (const std::exception&) {
          fail(ErrorKind::invalid_argument, "--alpha: '" + tok + "' is not an integer");
        }
      }
      j["alpha"] = a;
    } else if (preset == "wreath") {
      j["m"] = m;
      j["pattern_group"] = pattern_group;
    } else if (preset == "rooted" || preset == "trivial") {
      j["m"] = m;
    }
    return parse_spec(j);
  }
};

struct RunConfig {
  SpecSource g, h;
  int levels = 4;
  std::uint64_t max_enum = kDefaultEnumerationCap;
  std::uint64_t max_states = 1'000'000;
  std::string base = "natural";
  std::string ambient = "full";
  std::uint64_t seed = 1;
  std::string out;
  std::string format = "json";
  std::string method = "enumerate";
  int k = 0;           // markov partition level; 0 = detected depth
  int vertex_levels = 1;
  int window = 1;      // measure: section depth d
  int depth = 0;       // patterns / iso: 0 = detect
  int sample_level = 0;
  int count = 1;
};

DisplayBase parse_base(const std::string& s, const GroupSpec& spec) {
  if (s == "natural" || s == "e") return DisplayBase::natural();
  if (s == "m") return DisplayBase::of(static_cast<unsigned long>(spec.arity));
  if (s == "p") {
    if (!spec.ggs) fail(ErrorKind::invalid_argument, "--base p needs a GGS spec");
    return DisplayBase::of(static_cast<unsigned long>(spec.ggs->p));
  }
  try {
    std::size_t used = 0;
    const long b = std::stol(s, &used);
    if (used == s.size() && b >= 2) return DisplayBase::of(static_cast<unsigned long>(b));
  } catch (const std::exception&) {
  }
  fail(ErrorKind::invalid_argument, "--base must be natural, m, p or an integer >= 2, got '" + s + "'");
}

json header(const std::string& command, const RunConfig& cfg, const GroupSpec& spec,
            const DisplayBase& base) {
  json j;
  j["tool"] = "selfsim";
  j["version"] = kVersion;
  j["command"] = command;
  j["spec"] = spec.to_json();
  j["spec_name"] = spec.name;
  if (!spec.warnings.empty()) j["warnings"] = spec.warnings;
  j["conventions"] = {
      {"vertex_order", "breadth-first; lexicographic inside a level; letters 1..m"},
      {"leaf_order", "lexicographic"},
      {"composition", "left to right: gh applies g first"},
      {"portrait", "depth arity; one-line labels in breadth-first order, 1-based"},
      {"circulant", "first row (alpha_1, ..., alpha_{p-1}, 0), cyclic right shifts"},
      {"display_base", base.label()},
      {"rationals", "num/den strings"}};
  j["caps"] = {{"max_enum", cfg.max_enum}, {"max_states", cfg.max_states}};
  j["evidence_level"] = cfg.levels;
  return j;
}

std::string csv_log(const LogQuantity& x, const DisplayBase& base) {
  if (auto e = base.exact(x)) return rational_string(*e);
  std::ostringstream s;
  s.precision(17);
  s << base.in_base(x);
  return s.str();
}

struct Output {
  json report;
  std::string csv;  // filled only for --format csv
  bool failed = false;
};

int emit(const Output& o, const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const std::string text = cfg.format == "csv" ? o.csv : o.report.dump(2) + "\n";
  if (cfg.out.empty()) {
    out << text;
  } else {
    std::ofstream f(cfg.out, std::ios::binary);
    if (!f) {
      err << "error: cannot write " << cfg.out << "\n";
      return exit_usage;
    }
    f << text;
  }
  return o.failed ? exit_check_failed : exit_ok;
}

int detected_depth(const QuotientTower& t, int levels) {
  const DepthReport d = detect_depth(t, levels);
  if (!d.depth)
    fail(ErrorKind::precondition, "no depth detected up to level " + std::to_string(levels) +
                                      "; pass --depth or raise --levels");
  return *d.depth;
}

Output cmd_orders(const RunConfig& cfg, const QuotientTower& t, const DisplayBase& base) {
  Output o;
  json rows = json::array();
  o.csv = "n,order,log_order,index\n";
  for (int n = 1; n <= cfg.levels; ++n) {
    json r;
    r["n"] = n;
    r["order"] = t.order(n).get_str();
    r["log_order"] = to_json(t.log_order(n), base);
    std::string idx;
    if (n < cfg.levels) {
      const mpz_class q = t.order(n + 1) / t.order(n);
      idx = q.get_str();
      r["index_next"] = idx;
    }
    rows.push_back(r);
    o.csv += std::to_string(n) + "," + t.order(n).get_str() + "," + csv_log(t.log_order(n), base) +
             "," + idx + "\n";
  }
  o.report["orders"] = rows;
  return o;
}

Output cmd_f(const RunConfig& cfg, const QuotientTower& t, const DisplayBase& base) {
  Output o;
  const FInvariantReport f = f_invariant(t, cfg.levels);
  o.report["f"] = to_json(f, base);
  o.csv = "n,r\n";
  for (std::size_t i = 0; i < f.depth.r.size(); ++i)
    o.csv += std::to_string(i + 1) + "," + csv_log(f.depth.r[i], base) + "\n";
  return o;
}

Output cmd_hdim(const RunConfig& cfg, const QuotientTower& t, const DisplayBase& base) {
  Output o;
  const HausdorffReport h = hausdorff_dimension(t, cfg.levels, parse_ambient(cfg.ambient));
  o.report["hdim"] = to_json(h, base);
  o.csv = "n,dim_exact,dim\n";
  for (std::size_t i = 0; i < h.dims.size(); ++i) {
    const auto e = h.dims[i].exact();
    std::ostringstream s;
    s.precision(17);
    s << h.dims[i].approx();
    o.csv += std::to_string(i + 1) + "," + (e ? rational_string(*e) : "") + "," + s.str() + "\n";
  }
  return o;
}

Output cmd_invariants(const RunConfig& cfg, const QuotientTower& t, const DisplayBase& base) {
  Output o;
  const FInvariantReport f = f_invariant(t, cfg.levels);
  json r = json::array(), s = json::array();
  const auto rs = r_sequence(t, cfg.levels);
  const auto ss = s_sequence(t, cfg.levels);
  for (const auto& x : rs) r.push_back(to_json(x, base));
  for (const auto& x : ss) s.push_back(to_json(x, base));
  o.report["r"] = r;
  o.report["s"] = s;
  o.report["f"] = to_json(f, base);
  const Ambient amb = parse_ambient(cfg.ambient);
  const HausdorffReport h = hausdorff_dimension(t, cfg.levels, amb, f);
  o.report["hdim"] = to_json(h, base);
  if (f.status == FInvariantReport::Status::evidence) {
    const int D = *f.depth.depth;
    const auto oc = verify_branch_order_condition(t, D, cfg.levels);
    const auto rec = verify_order_recursion(t, D, *f.f, cfg.levels);
    o.report["branch_order_condition"] = to_json(oc);
    o.report["order_recursion"] = to_json(rec, base);
    o.failed = !oc.pass || !rec.pass;
  }
  o.csv = "n,r,s,dim\n";
  for (int n = 1; n <= cfg.levels; ++n) {
    const std::size_t i = static_cast<std::size_t>(n - 1);
    std::ostringstream d;
    d.precision(17);
    d << h.dims[i].approx();
    o.csv += std::to_string(n) + "," + (i < rs.size() ? csv_log(rs[i], base) : "") + "," +
             (i < ss.size() ? csv_log(ss[i], base) : "") + "," + d.str() + "\n";
  }
  return o;
}

std::vector<Vertex> vertices_up_to(int m, int levels) {
  std::vector<Vertex> out;
  for (int l = 0; l <= levels; ++l)
    for (auto& v : level_vertices(m, l)) out.push_back(std::move(v));
  return out;
}

Output cmd_markov(const RunConfig& cfg, const QuotientTower& t) {
  Output o;
  const int k = cfg.k > 0 ? cfg.k : detected_depth(t, cfg.levels);
  const Method method = parse_method(cfg.method);
  json rows = json::array();
  bool all = true;
  for (const Vertex& v : vertices_up_to(t.arity(), cfg.vertex_levels))
    for (int x = 1; x <= t.arity(); ++x) {
      const MarkovReport r = check_markov(t, k, v, x, method);
      all = all && r.pass;
      rows.push_back(to_json(r));
    }
  o.report["k"] = k;
  o.report["method"] = cfg.method;
  o.report["pass"] = all;
  o.report["checks"] = rows;
  o.failed = !all;
  return o;
}

Output cmd_measure(const RunConfig& cfg, const QuotientTower& t) {
  Output o;
  const Method method = parse_method(cfg.method);
  json rows = json::array();
  bool all = true;
  for (const Vertex& v : vertices_up_to(t.arity(), cfg.vertex_levels)) {
    const MeasureReport r = check_measure_preserving(t, v, cfg.window, method);
    all = all && r.pass;
    rows.push_back(to_json(r));
  }
  o.report["d"] = cfg.window;
  o.report["pass"] = all;
  o.report["checks"] = rows;
  o.failed = !all;
  return o;
}

Output cmd_patterns(const RunConfig& cfg, const QuotientTower& t) {
  Output o;
  const int D = cfg.depth > 0 ? cfg.depth : detected_depth(t, cfg.levels);
  const int L = cfg.sample_level > 0 ? cfg.sample_level : D + 1;
  const PatternSet P = extract_pattern_set(t, D, L, parse_method(cfg.method));
  json j = to_json(P);
  j["sample_level"] = L;
  j["equals_G_D"] = mpz_class(P.size()) == t.order(D);
  json rows = json::array();
  bool all = true;
  for (int n = D; n <= cfg.levels; ++n) {
    const mpz_class c = count_pattern_closed(P, n, cfg.max_states);
    const bool eq = c == t.order(n);
    all = all && eq;
    rows.push_back({{"n", n}, {"closure_count", c.get_str()}, {"order", t.order(n).get_str()},
                    {"equal", eq}});
  }
  j["counts"] = rows;
  o.report["patterns"] = j;
  o.report["pass"] = all;
  o.failed = !all;
  return o;
}

Output cmd_iso(const RunConfig& cfg, const QuotientTower& G, const QuotientTower& H) {
  Output o;
  int D = cfg.depth;
  if (D <= 0) D = std::max(detected_depth(G, cfg.levels), detected_depth(H, cfg.levels));
  IsoOptions opt;
  opt.seed = cfg.seed;
  const IsoResult r = build_process_isomorphism(G, H, D, cfg.levels, opt);
  o.report["spec_h"] = H.spec().to_json();
  o.report["transcript"] = r.transcript;
  o.report["bijections"] = to_json(r.bijections);
  return o;
}

Output cmd_sample(const RunConfig& cfg, const QuotientTower& t) {
  Output o;
  const int n = cfg.sample_level > 0 ? cfg.sample_level : cfg.levels;
  json rows = json::array();
  o.csv = "index,seed,portrait\n";
  for (int i = 0; i < cfg.count; ++i) {
    const std::uint64_t s = cfg.seed + static_cast<std::uint64_t>(i);
    const std::string p = haar_sample(t, n, s).serialize();
    rows.push_back({{"seed", s}, {"portrait", p}});
    o.csv += std::to_string(i) + "," + std::to_string(s) + ",\"" + p + "\"\n";
  }
  o.report["level"] = n;
  o.report["samples"] = rows;
  return o;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Congruence quotients, f-invariants and Markov checks for self-similar groups",
               "selfsim"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kVersion));
  RunConfig cfg;

  auto common = [&](CLI::App* c) {
    cfg.g.add_to(*c, "", "the group");
    c->add_option("--levels", cfg.levels, "level bound n_max")->check(CLI::Range(1, 64));
    c->add_option("--max-enum", cfg.max_enum, "enumeration cap")->check(CLI::PositiveNumber);
    c->add_option("--max-states", cfg.max_states, "pattern DP state cap")
        ->check(CLI::PositiveNumber);
    c->add_option("--base", cfg.base, "display base: natural | m | p | integer >= 2");
    c->add_option("--ambient", cfg.ambient, "full | wq")->check(CLI::IsMember({"full", "wq"}));
    c->add_option("--seed", cfg.seed, "random seed");
    c->add_option("--out", cfg.out, "write the report here instead of stdout");
    c->add_option("--format", cfg.format, "json | csv")->check(CLI::IsMember({"json", "csv"}));
  };
  auto with_method = [&](CLI::App* c) {
    c->add_option("--method", cfg.method, "enumerate | stabilizer")
        ->check(CLI::IsMember({"enumerate", "stabilizer"}));
  };

  struct Cmd {
    std::string name, help;
    bool csv;
  };
  const std::vector<Cmd> cmds = {
      {"orders", "orders |G_n| and indices |G_{n+1} : G_n|", true},
      {"invariants", "r, s, f, Hausdorff dimension and order identities", true},
      {"f", "f-invariant with detected depth", true},
      {"hdim", "Hausdorff dimension sequence and limit", true},
      {"markov", "Markov check at level k for every v up to --vertex-levels", false},
      {"measure", "measure preservation of g -> g|_v^d", false},
      {"patterns", "pattern set and closure counts", false},
      {"iso", "coherent bijections G_n -> H_n", false},
      {"sample", "Haar samples from G_n", true}};
  std::map<std::string, CLI::App*> sub;
  for (const auto& c : cmds) sub[c.name] = app.add_subcommand(c.name, c.help);
  for (auto& [name, c] : sub) common(c);
  for (const char* n : {"markov", "measure", "patterns"}) with_method(sub[n]);
  sub["markov"]->add_option("--k", cfg.k, "partition level (default: detected depth)");
  for (const char* n : {"markov", "measure"})
    sub[n]->add_option("--vertex-levels", cfg.vertex_levels, "sweep v on levels 0..L")
        ->check(CLI::NonNegativeNumber);
  sub["measure"]->add_option("--d", cfg.window, "section depth")->check(CLI::NonNegativeNumber);
  for (const char* n : {"patterns", "iso"})
    sub[n]->add_option("--depth", cfg.depth, "pattern depth D (default: detected)");
  sub["patterns"]->add_option("--sample-level", cfg.sample_level, "level L the windows come from");
  sub["sample"]->add_option("--level", cfg.sample_level, "sample from G_n (default --levels)");
  sub["sample"]->add_option("--count", cfg.count, "number of samples")->check(CLI::PositiveNumber);
  cfg.h.add_to(*sub["iso"], "-h", "the second group H");

  std::vector<const char*> argv{"selfsim"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? exit_ok : exit_usage;
  }

  std::string command;
  bool csv_ok = false;
  for (const auto& c : cmds)
    if (sub[c.name]->parsed()) {
      command = c.name;
      csv_ok = c.csv;
    }

  try {
    if (cfg.format == "csv" && !csv_ok)
      fail(ErrorKind::invalid_argument, "csv output is not available for '" + command + "'");
    const GroupSpec spec = cfg.g.load("the group");
    const DisplayBase base = parse_base(cfg.base, spec);
    QuotientTower tower(spec, Limits{cfg.max_enum, cfg.max_states});
    Output o;
    if (command == "orders") o = cmd_orders(cfg, tower, base);
    else if (command == "invariants") o = cmd_invariants(cfg, tower, base);
    else if (command == "f") o = cmd_f(cfg, tower, base);
    else if (command == "hdim") o = cmd_hdim(cfg, tower, base);
    else if (command == "markov") o = cmd_markov(cfg, tower);
    else if (command == "measure") o = cmd_measure(cfg, tower);
    else if (command == "patterns") o = cmd_patterns(cfg, tower);
    else if (command == "sample") o = cmd_sample(cfg, tower);
    else if (command == "iso") {
      const GroupSpec hspec = cfg.h.load("H");
      QuotientTower htower(hspec, Limits{cfg.max_enum, cfg.max_states});
      o = cmd_iso(cfg, tower, htower);
    }
    json full = header(command, cfg, spec, base);
    if (command == "sample" || command == "iso") full["seed"] = cfg.seed;
    for (auto& [key, value] : o.report.items()) full[key] = value;
    o.report = std::move(full);
    return emit(o, cfg, out, err);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    if (e.is_resource_limit()) return exit_resource;
    if (e.kind() == ErrorKind::hypothesis_violation || e.kind() == ErrorKind::extension_failure)
      return exit_check_failed;
    return exit_usage;
  } catch (const json::exception& e) {
    err << "error: " << e.what() << "\n";
    return exit_usage;
  }
}

}  // namespace selfsim
