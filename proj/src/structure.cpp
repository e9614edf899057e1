#include "selfsim/structure.hpp"

#include <algorithm>
#include <set>
#include <unordered_map>

#include "selfsim/errors.hpp"
#include "selfsim/invariants.hpp"

namespace selfsim {

std::string to_string(Method m) { return m == Method::enumerate ? "enumerate" : "stabilizer"; }

Method parse_method(const std::string& s) {
  if (s == "enumerate") return Method::enumerate;
  if (s == "stabilizer") return Method::stabilizer;
  fail(ErrorKind::invalid_argument, "method must be 'enumerate' or 'stabilizer', got '" + s + "'");
}

PatternSet PatternSet::from_portraits(int m, int depth, std::vector<Portrait> patterns) {
  if (depth < 1) fail(ErrorKind::invalid_argument, "pattern depth must be at least 1");
  for (const auto& p : patterns)
    if (p.arity() != m || p.depth() != depth)
      fail(ErrorKind::shape_mismatch, "pattern of wrong arity or depth");
  std::sort(patterns.begin(), patterns.end());
  patterns.erase(std::unique(patterns.begin(), patterns.end()), patterns.end());
  PatternSet s;
  s.m_ = m;
  s.d_ = depth;
  s.items_ = std::move(patterns);
  return s;
}

bool PatternSet::contains(const Portrait& g) const {
  return std::binary_search(items_.begin(), items_.end(), g);
}

SectionImage section_image(const QuotientTower& tower, std::size_t vertex, int d) {
  const int m = tower.arity();
  if (d < 1) fail(ErrorKind::invalid_argument, "section depth must be at least 1");
  const int l = vertex_at(m, vertex).level();
  const LevelQuotient& G = tower.level(l + d);
  SectionImage out;
  out.vertex = vertex;
  out.d = d;
  const StabChain st = G.vertex_stabilizer(vertex);
  out.stabilizer_order = st.order();
  std::vector<Perm> qgens;
  for (const Perm& s : st.generators())
    qgens.push_back(to_vertex_permutation(G.section(s, vertex, d)));
  out.q = StabChain::build(vertex_domain_size(m, d), qgens);
  if (vertex == 0) {
    out.cosets.push_back(out.q.identity());
    return out;
  }
  for (const auto& [w, t] : orbit_transversal(G.degree(), G.generators(), static_cast<Point>(vertex - 1)))
    out.cosets.push_back(to_vertex_permutation(G.section(t, vertex, d)));
  return out;
}

PatternSet extract_pattern_set(const QuotientTower& tower, int D, int L, Method method) {
  const int m = tower.arity();
  if (D < 1 || L < D) fail(ErrorKind::invalid_argument, "need 1 <= D <= L");
  const std::uint64_t cap = tower.limits().max_enum;
  std::set<std::string> seen;
  std::vector<Portrait> out;
  auto add = [&](Portrait p) {
    if (seen.insert(p.raw()).second) out.push_back(std::move(p));
  };
  if (method == Method::enumerate) {
    const LevelQuotient& G = tower.level(L);
    const std::size_t nv = level_offset(m, L - D + 1);
    G.chain().enumerate(cap, [&](const Perm& g) {
      for (std::size_t v = 0; v < nv; ++v) add(G.section(g, v, D));
    });
  } else {
    for (std::size_t v = 0; v < level_offset(m, L - D + 1); ++v) {
      SectionImage img = section_image(tower, v, D);
      img.q.enumerate(cap, [&](const Perm& s) {
        for (const Perm& c : img.cosets) add(from_vertex_permutation(m, D, s * c));
      });
    }
  }
  return PatternSet::from_portraits(m, D, std::move(out));
}

mpz_class count_pattern_closed(const PatternSet& patterns, int n, std::uint64_t max_states) {
  const int D = patterns.depth(), m = patterns.arity();
  if (patterns.size() == 0) fail(ErrorKind::invalid_argument, "empty pattern set");
  if (n < D) fail(ErrorKind::precondition, "count_pattern_closed needs n >= pattern depth");
  std::unordered_map<std::string, std::size_t> ids;
  auto id_of = [&](const std::string& raw) {
    auto [it, fresh] = ids.try_emplace(raw, ids.size());
    if (fresh && ids.size() > max_states)
      fail(ErrorKind::state_space_too_large,
           "pattern DP needs more than " + std::to_string(max_states) + " states");
    return it->second;
  };
  struct Row {
    std::size_t top;
    std::vector<std::size_t> kids;
  };
  std::vector<Row> rows;
  rows.reserve(patterns.size());
  for (const Portrait& P : patterns.items()) {
    Row r;
    r.top = id_of(truncate(P, D - 1).raw());
    for (int i = 1; i <= m; ++i) r.kids.push_back(id_of(section(P, Vertex({i}), D - 1).raw()));
    rows.push_back(std::move(r));
  }
  // C[t]: number of valid subtrees of the current height with top window t.
  std::vector<mpz_class> C(ids.size(), 1), next(ids.size());
  for (int h = D; h <= n; ++h) {
    std::fill(next.begin(), next.end(), 0);
    for (const Row& r : rows) {
      mpz_class prod = 1;
      for (std::size_t k : r.kids) {
        prod *= C[k];
        if (prod == 0) break;
      }
      next[r.top] += prod;
    }
    std::swap(C, next);
  }
  mpz_class total = 0;
  for (const auto& c : C) total += c;
  return total;
}

BranchReport verify_regular_branch(const QuotientTower& tower, int D, int n) {
  const int m = tower.arity();
  if (D < 1 || n < D + 1) fail(ErrorKind::invalid_argument, "need D >= 1 and n >= D+1");
  BranchReport rep;
  rep.D = D;
  rep.n = n;
  const LevelQuotient& Gn = tower.level(n);
  const LevelQuotient& Gp = tower.level(n - 1);
  const Point first = static_cast<Point>(level_offset(m, n) - 1);
  rep.level_transitive =
      orbit_transversal(Gn.degree(), Gn.generators(), first).size() == pow_size(m, n);
  const StabChain K = Gp.level_stabilizer(D - 1);
  const StabChain target = Gn.level_stabilizer(D - 1);
  const auto gens = K.generators();
  rep.generators_checked = gens.size();
  bool embedded = true;
  for (std::size_t gi = 0; gi < gens.size() && embedded; ++gi) {
    const Portrait k = Gp.portrait(gens[gi]);
    for (int x = 1; x <= m; ++x) {
      if (target.contains(to_vertex_permutation(embed_below(k, x)))) continue;
      embedded = false;
      rep.witness = "generator " + std::to_string(gi) + " of St(" + std::to_string(D - 1) +
                    ") in G_" + std::to_string(n - 1) + " placed below vertex " +
                    std::to_string(x) + " is not in G_" + std::to_string(n) + ": " + k.serialize();
      break;
    }
  }
  if (!rep.level_transitive && rep.witness.empty())
    rep.witness = "G_" + std::to_string(n) + " is not transitive on level " + std::to_string(n);
  rep.pass = embedded && rep.level_transitive;
  return rep;
}

FractalityReport fractality_evidence(const QuotientTower& tower, int n) {
  const int m = tower.arity();
  if (n < 2) fail(ErrorKind::invalid_argument, "fractality evidence needs n >= 2");
  FractalityReport rep;
  rep.n = n;
  const LevelQuotient& Gn = tower.level(n);
  const Point first = static_cast<Point>(level_offset(m, n) - 1);
  rep.level_orbit = orbit_transversal(Gn.degree(), Gn.generators(), first).size();
  rep.level_transitive = rep.level_orbit == pow_size(m, n);
  rep.expected = tower.order(n - 1);
  bool all = true;
  for (int x = 1; x <= m; ++x) {
    SectionImage img = section_image(tower, static_cast<std::size_t>(x), n - 1);
    rep.section_orders.push_back(img.q.order());
    all = all && img.q.order() == rep.expected;
  }
  rep.pass = all && rep.level_transitive;
  return rep;
}

mpz_class rigid_stabilizer_index(const QuotientTower& tower, int k, int n) {
  const int m = tower.arity();
  if (k < 1 || k >= n) fail(ErrorKind::invalid_argument, "need 1 <= k < n");
  const LevelQuotient& G = tower.level(n);
  const std::size_t total = G.degree();
  std::vector<Perm> gens;
  const std::size_t first = level_offset(m, k);
  for (std::size_t r = 0; r < pow_size(m, k); ++r) {
    const std::size_t u = first + r;
    // Mark descendants of u strictly below it; every other vertex is fixed.
    std::vector<char> below(total + 1, 0);
    std::size_t lo = u, hi = u;
    for (int j = k; j < n; ++j) {
      lo = m * lo + 1;
      hi = m * hi + m;
      for (std::size_t w = lo; w <= hi; ++w) below[w] = 1;
    }
    std::vector<Point> fixed;
    for (std::size_t w = 1; w <= total; ++w)
      if (!below[w]) fixed.push_back(static_cast<Point>(w - 1));
    for (const Perm& g : G.chain().pointwise_stabilizer(fixed).generators()) gens.push_back(g);
  }
  const StabChain rist = StabChain::build(total, gens);
  return G.order() / rist.order();
}

DepthReport detect_depth(const QuotientTower& tower, int n_max) {
  if (n_max < 2) fail(ErrorKind::invalid_argument, "depth detection needs n_max >= 2");
  DepthReport rep;
  rep.n_max = n_max;
  rep.r = r_sequence(tower, n_max);
  for (int D = 1; D <= n_max - 1; ++D) {
    bool flat = true;
    for (int n = D; n <= n_max - 1; ++n) flat = flat && rep.r[n - 1] == rep.r[D - 1];
    if (!flat) continue;
    BranchReport b = verify_regular_branch(tower, D, D + 1);
    rep.branch_checks.push_back(b);
    if (b.pass) {
      rep.depth = D;
      break;
    }
  }
  return rep;
}

json to_json(const BranchReport& r) {
  json j;
  j["D"] = r.D;
  j["n"] = r.n;
  j["pass"] = r.pass;
  j["level_transitive"] = r.level_transitive;
  j["generators_checked"] = r.generators_checked;
  if (!r.witness.empty()) j["witness"] = r.witness;
  return j;
}

json to_json(const FractalityReport& r) {
  json j;
  j["n"] = r.n;
  j["pass"] = r.pass;
  j["level_transitive"] = r.level_transitive;
  j["level_orbit"] = r.level_orbit;
  json so = json::array();
  for (const auto& o : r.section_orders) so.push_back(o.get_str());
  j["section_orders"] = so;
  j["expected"] = r.expected.get_str();
  return j;
}

json to_json(const PatternSet& p) {
  json j;
  j["depth"] = p.depth();
  j["arity"] = p.arity();
  j["size"] = p.size();
  return j;
}

}  // namespace selfsim
