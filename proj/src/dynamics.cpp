#include "selfsim/dynamics.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>
#include <unordered_map>

#include "selfsim/errors.hpp"

namespace selfsim {

namespace {

void check_vertex(int m, const Vertex& v) {
  for (int x : v.letters)
    if (x < 1 || x > m)
      fail(ErrorKind::invalid_argument,
           "vertex letter " + std::to_string(x) + " outside 1.." + std::to_string(m));
}

std::string concat_raw(const std::vector<Portrait>& ws, std::size_t count) {
  std::string key;
  for (std::size_t i = 0; i < count; ++i) key += ws[i].raw();
  return key;
}

// Every BFS point of w.u with |u| <= k, w ranging over `roots`; the root
// itself is not a point of the vertex domain.
std::vector<Point> subtree_points(int m, const std::vector<std::size_t>& roots, int k) {
  std::set<Point> out;
  std::vector<std::size_t> frontier = roots;
  for (int j = 0; j <= k; ++j) {
    std::vector<std::size_t> next;
    for (std::size_t w : frontier) {
      if (w > 0) out.insert(static_cast<Point>(w - 1));
      if (j < k)
        for (int x = 1; x <= m; ++x) next.push_back(m * w + x);
    }
    frontier = std::move(next);
  }
  return {out.begin(), out.end()};
}

StabChain sections_chain(const LevelQuotient& G, const std::vector<Perm>& gens,
                         std::size_t vertex, int d) {
  std::vector<Perm> q;
  for (const Perm& s : gens) q.push_back(to_vertex_permutation(G.section(s, vertex, d)));
  return StabChain::build(vertex_domain_size(G.arity(), d), q);
}

}  // namespace

std::vector<Vertex> past(const Vertex& v) {
  std::vector<Vertex> out;
  for (int l = 0; l <= v.level(); ++l)
    out.emplace_back(std::vector<int>(v.letters.begin(), v.letters.begin() + l));
  return out;
}

LogQuantity JointDistribution::entropy() const {
  std::vector<mpq_class> p;
  p.reserve(cells.size());
  for (const auto& c : cells) p.push_back(c.prob);
  return shannon_entropy(p);
}

JointDistribution JointDistribution::marginal(const std::vector<std::size_t>& coords) const {
  JointDistribution out;
  out.d = d;
  for (std::size_t c : coords) {
    if (c >= vertices.size()) fail(ErrorKind::invalid_argument, "marginal coordinate out of range");
    out.vertices.push_back(vertices[c]);
  }
  std::map<std::string, Cell> acc;
  for (const auto& cell : cells) {
    std::vector<Portrait> ws;
    for (std::size_t c : coords) ws.push_back(cell.windows[c]);
    auto [it, fresh] = acc.try_emplace(concat_raw(ws, ws.size()), Cell{ws, 0});
    it->second.prob += cell.prob;
  }
  for (auto& [k, c] : acc) out.cells.push_back(std::move(c));
  return out;
}

bool JointDistribution::marginals_uniform(const mpz_class& order) const {
  const mpq_class target(mpz_class(1), order);
  for (std::size_t c = 0; c < vertices.size(); ++c) {
    JointDistribution mg = marginal({c});
    if (mg.cells.size() != order) return false;
    for (const auto& cell : mg.cells)
      if (cell.prob != target) return false;
  }
  return true;
}

JointDistribution joint_section_distribution(const QuotientTower& tower,
                                             const std::vector<Vertex>& vertices, int d) {
  const int m = tower.arity();
  if (d < 0) fail(ErrorKind::invalid_argument, "window depth must be non-negative");
  if (vertices.empty()) fail(ErrorKind::invalid_argument, "need at least one vertex");
  int top = 0;
  for (const auto& v : vertices) {
    check_vertex(m, v);
    top = std::max(top, v.level());
  }
  JointDistribution out;
  out.vertices = vertices;
  out.d = d;
  if (d == 0) {
    out.cells.push_back({std::vector<Portrait>(vertices.size(), Portrait(m, 0)), 1});
    return out;
  }
  const LevelQuotient& G = tower.level(top + d);
  std::vector<std::size_t> idx;
  for (const auto& v : vertices) idx.push_back(vertex_index(m, v));
  std::map<std::string, std::pair<std::vector<Portrait>, mpz_class>> counts;
  G.chain().enumerate(tower.limits().max_enum, [&](const Perm& g) {
    std::vector<Portrait> ws;
    ws.reserve(idx.size());
    for (std::size_t i : idx) ws.push_back(G.section(g, i, d));
    auto [it, fresh] = counts.try_emplace(concat_raw(ws, ws.size()), std::move(ws), 0);
    it->second.second += 1;
  });
  for (auto& [k, wc] : counts) {
    mpq_class p(wc.second, G.order());
    p.canonicalize();
    out.cells.push_back({std::move(wc.first), p});
  }
  return out;
}

MeasureReport check_measure_preserving(const QuotientTower& tower, const Vertex& v, int d,
                                       Method method) {
  const int m = tower.arity();
  check_vertex(m, v);
  if (d < 0) fail(ErrorKind::invalid_argument, "window depth must be non-negative");
  MeasureReport rep;
  rep.v = v;
  rep.d = d;
  rep.method = method;
  rep.target_order = tower.order(d);
  if (d == 0) {
    rep.image_size = 1;
    rep.fibers[tower.order(v.level())] = 1;
    rep.pass = true;
    return rep;
  }
  if (method == Method::enumerate) {
    const JointDistribution j = joint_section_distribution(tower, {v}, d);
    const mpz_class total = tower.order(v.level() + d);
    rep.image_size = j.cells.size();
    for (const auto& c : j.cells) {
      mpq_class f = c.prob * total;
      rep.fibers[f.get_num()] += 1;
    }
  } else {
    const SectionImage img = section_image(tower, vertex_index(m, v), d);
    // Group the coset representatives by the coset Q c_w they define.
    std::vector<std::pair<Perm, mpz_class>> classes;
    for (const Perm& c : img.cosets) {
      bool found = false;
      for (auto& [rep_c, mult] : classes)
        if (img.q.contains(c * rep_c.inverse())) {
          mult += 1;
          found = true;
          break;
        }
      if (!found) classes.emplace_back(c, 1);
    }
    const mpz_class per = img.stabilizer_order / img.q.order();
    rep.image_size = img.q.order() * static_cast<unsigned long>(classes.size());
    for (const auto& [c, mult] : classes) rep.fibers[per * mult] += img.q.order();
  }
  rep.pass = rep.image_size == rep.target_order && rep.fibers.size() == 1;
  return rep;
}

FDirectReport big_f_direct(const QuotientTower& tower, int n, Method method) {
  const int m = tower.arity();
  if (n < 1) fail(ErrorKind::invalid_argument, "F needs n >= 1");
  FDirectReport rep;
  rep.n = n;
  rep.method = method;
  if (method == Method::enumerate) {
    for (int i = 1; i <= m; ++i) {
      const JointDistribution j = joint_section_distribution(tower, {Vertex(), Vertex({i})}, n);
      if (i == 1) rep.h_alpha = j.marginal({0}).entropy();
      rep.h_join.push_back(j.entropy());
    }
  } else {
    // alpha v T_i^{-1} alpha is the partition into cosets of the pointwise
    // stabilizer of levels 1..n together with level n+1 below i.
    rep.h_alpha = tower.log_order(n);
    const LevelQuotient& G = tower.level(n + 1);
    const LogQuantity whole = G.log_order();
    for (int i = 1; i <= m; ++i) {
      std::vector<Point> pts(vertex_domain_size(m, n));
      std::iota(pts.begin(), pts.end(), Point{0});
      for (Point p : subtree_points(m, {static_cast<std::size_t>(i)}, n))
        if (p + 1 >= level_offset(m, n + 1)) pts.push_back(p);
      const StabChain st = G.chain().pointwise_stabilizer(pts);
      rep.h_join.push_back(whole - LogQuantity::log_of(st.order()));
    }
  }
  rep.F = rep.h_alpha * mpq_class(1 - 2 * m);
  for (const auto& h : rep.h_join) rep.F += h;
  return rep;
}

MarkovReport check_markov(const QuotientTower& tower, int k, const Vertex& v, int x,
                          Method method) {
  const int m = tower.arity();
  check_vertex(m, v);
  if (k < 0) fail(ErrorKind::invalid_argument, "window depth must be non-negative");
  if (x < 1 || x > m) fail(ErrorKind::invalid_argument, "child letter out of range");
  MarkovReport rep;
  rep.k = k;
  rep.v = v;
  rep.x = x;
  rep.method = method;
  if (k == 0) {  // depth-0 windows carry no information
    rep.pass = true;
    return rep;
  }
  const Vertex vx = v.child(x);
  const std::vector<Vertex> P = past(v);

  if (method == Method::stabilizer) {
    const int N = v.level() + 1 + k;
    const LevelQuotient& G = tower.level(N);
    std::vector<std::size_t> roots;
    for (const auto& w : P) roots.push_back(vertex_index(m, w));
    const StabChain st = G.chain().pointwise_stabilizer(subtree_points(m, roots, k));
    const StabChain q_path = sections_chain(G, st.generators(), vertex_index(m, vx), k);
    const LevelQuotient& G0 = tower.level(k + 1);
    const StabChain q_0 =
        sections_chain(G0, G0.level_stabilizer(k).generators(), static_cast<std::size_t>(x), k);
    bool inside = true;
    for (const Perm& s : q_path.generators()) inside = inside && q_0.contains(s);
    rep.pass = inside && q_path.order() == q_0.order();
    if (!rep.pass) {
      const Portrait id(m, k);
      MarkovReport::Witness w;
      for (std::size_t i = 0; i < P.size(); ++i) w.cell.push_back(id.serialize());
      w.event = id.serialize();
      w.given_past = mpq_class(mpz_class(1), q_path.order());
      w.given_parent = mpq_class(mpz_class(1), q_0.order());
      rep.witness = w;
    }
    return rep;
  }

  std::vector<Vertex> verts = P;
  verts.push_back(vx);
  const JointDistribution path = joint_section_distribution(tower, verts, k);
  const JointDistribution root = joint_section_distribution(tower, {Vertex(), Vertex({x})}, k);

  struct Cond {
    std::vector<Portrait> given;
    std::map<std::string, std::pair<Portrait, mpq_class>> events;
    mpq_class total = 0;
  };
  auto conditional = [](const JointDistribution& j) {
    const std::size_t c = j.vertices.size() - 1;
    std::map<std::string, Cond> out;
    for (const auto& cell : j.cells) {
      Cond& cd = out[concat_raw(cell.windows, c)];
      if (cd.given.empty()) cd.given.assign(cell.windows.begin(), cell.windows.begin() + c);
      cd.events.try_emplace(cell.windows[c].raw(), cell.windows[c], 0).first->second.second +=
          cell.prob;
      cd.total += cell.prob;
    }
    return out;
  };
  const auto lhs = conditional(path);
  const auto rhs = conditional(root);

  for (const auto& [key, cd] : lhs) {
    ++rep.cells_checked;
    const Portrait& wv = cd.given.back();
    const auto it = rhs.find(wv.raw());
    std::map<std::string, Portrait> events;
    for (const auto& [e, pe] : cd.events) events.emplace(e, pe.first);
    if (it != rhs.end())
      for (const auto& [e, pe] : it->second.events) events.emplace(e, pe.first);
    for (const auto& [e, A] : events) {
      mpq_class a = 0, b = 0;
      if (auto f = cd.events.find(e); f != cd.events.end()) a = f->second.second / cd.total;
      if (it != rhs.end())
        if (auto f = it->second.events.find(e); f != it->second.events.end())
          b = f->second.second / it->second.total;
      if (a == b) continue;
      MarkovReport::Witness w;
      for (const auto& g : cd.given) w.cell.push_back(g.serialize());
      w.event = A.serialize();
      w.given_past = a;
      w.given_parent = b;
      rep.witness = w;
      rep.pass = false;
      return rep;
    }
  }
  rep.pass = true;
  return rep;
}

Portrait haar_sample(const QuotientTower& tower, int n, std::uint64_t seed) {
  if (n < 0) fail(ErrorKind::invalid_argument, "level must be non-negative");
  if (n == 0) return Portrait(tower.arity(), 0);
  const LevelQuotient& G = tower.level(n);
  return G.portrait(G.chain().sample_uniform(seed));
}

// ---------------------------------------------------------------------------
// Process isomorphism

namespace {

using RawMap = std::unordered_map<std::string, Portrait>;

// Replace every label through phi (indices into the sorted level-1 lists).
Portrait relabel(const Portrait& g, const std::map<std::string, std::string>& phi) {
  const int m = g.arity();
  std::string raw = g.raw();
  for (std::size_t u = 0; u < g.internal_count(); ++u) {
    const auto it = phi.find(raw.substr(u * m, m));
    if (it == phi.end()) return Portrait();
    raw.replace(u * m, m, it->second);
  }
  return Portrait::from_raw(m, g.depth(), std::move(raw));
}

// f_D is extendable iff it descends to a map on G_{D-1} that also commutes
// with first-level sections.
std::optional<std::string> coherence_defect(const RawMap& f, int m, int D) {
  if (D < 2) return std::nullopt;
  RawMap phi;
  auto bind = [&](const Portrait& from, const Portrait& to) -> bool {
    auto [it, fresh] = phi.try_emplace(from.raw(), to);
    return fresh || it->second == to;
  };
  for (const auto& [raw, img] : f) {
    const Portrait y = Portrait::from_raw(m, D, raw);
    if (!bind(truncate(y, D - 1), truncate(img, D - 1)))
      return "truncation of " + y.serialize() + " maps inconsistently";
  }
  for (const auto& [raw, img] : f) {
    const Portrait y = Portrait::from_raw(m, D, raw);
    for (int i = 1; i <= m; ++i) {
      const Vertex vi({i});
      const auto it = phi.find(section(y, vi, D - 1).raw());
      if (it == phi.end() || !(it->second == section(img, vi, D - 1)))
        return "section at " + std::to_string(i) + " of " + y.serialize() +
               " does not commute with the map";
    }
  }
  return std::nullopt;
}

class Extender {
 public:
  Extender(int m, int D, RawMap fD) : m_(m), D_(D), fD_(std::move(fD)) {}

  Portrait operator()(const Portrait& g) {
    const int n = g.depth();
    if (n == D_) {
      const auto it = fD_.find(g.raw());
      if (it == fD_.end())
        fail(ErrorKind::extension_failure, "window " + g.serialize() + " is not an element of G_" +
                                               std::to_string(D_));
      return it->second;
    }
    auto& memo = memo_[n];
    if (auto it = memo.find(g.raw()); it != memo.end()) return it->second;
    const Portrait t = (*this)(truncate(g, n - 1));
    std::vector<Portrait> kids;
    for (int i = 1; i <= m_; ++i) kids.push_back((*this)(section(g, Vertex({i}), n - 1)));
    Portrait r = assemble(t.label(0), kids);
    if (!(truncate(r, n - 1) == t))
      fail(ErrorKind::extension_failure, "no coherent extension of " + g.serialize() +
                                             ": truncation and sections disagree");
    memo.emplace(g.raw(), r);
    return r;
  }

 private:
  int m_, D_;
  RawMap fD_;
  std::map<int, RawMap> memo_;
};

std::uint32_t index_in(const std::vector<Portrait>& sorted, const Portrait& p) {
  const auto it = std::lower_bound(sorted.begin(), sorted.end(), p);
  if (it == sorted.end() || !(*it == p)) return UINT32_MAX;
  return static_cast<std::uint32_t>(it - sorted.begin());
}

}  // namespace

IsoResult build_process_isomorphism(const QuotientTower& G, const QuotientTower& H, int D,
                                    int n_max, const IsoOptions& options) {
  const int m = G.arity();
  if (H.arity() != m)
    fail(ErrorKind::hypothesis_violation, "groups act on trees of different arity");
  if (D < 1 || n_max < D) fail(ErrorKind::invalid_argument, "need 1 <= D <= n_max");
  const std::uint64_t cap = std::min(G.limits().max_enum, H.limits().max_enum);

  IsoResult res;
  res.bijections.D = D;
  res.bijections.n_max = n_max;
  json& tr = res.transcript;
  tr["D"] = D;
  tr["n_max"] = n_max;

  json orders = json::array();
  for (int n = D; n <= n_max; ++n) {
    const mpz_class a = G.order(n), b = H.order(n);
    orders.push_back({{"n", n}, {"G", a.get_str()}, {"H", b.get_str()}});
    if (a != b)
      fail(ErrorKind::hypothesis_violation,
           "|G_" + std::to_string(n) + "| = " + a.get_str() + " but |H_" + std::to_string(n) +
               "| = " + b.get_str() + "; equal f and equal |G_D| would force equal orders");
  }
  tr["orders"] = orders;

  const std::vector<Portrait> GD = enumerate_portraits(G.level(D), cap);
  const std::vector<Portrait> HD = enumerate_portraits(H.level(D), cap);

  // f_D: sorted index order first, then labelwise bijections of level 1.
  RawMap fD;
  for (std::size_t i = 0; i < GD.size(); ++i) fD.emplace(GD[i].raw(), HD[i]);
  json fmode;
  if (auto defect = coherence_defect(fD, m, D); !defect) {
    fmode["mode"] = "index";
  } else {
    fmode["index_defect"] = *defect;
    const std::vector<Portrait> G1 = enumerate_portraits(G.level(1), cap);
    const std::vector<Portrait> H1 = enumerate_portraits(H.level(1), cap);
    if (G1.size() != H1.size())
      fail(ErrorKind::extension_failure, "|G_1| != |H_1|: no labelwise bijection");
    mpz_class perms;
    mpz_fac_ui(perms.get_mpz_t(), G1.size());
    if (perms > options.max_label_bijections)
      fail(ErrorKind::extension_failure, "index bijection at level D is not coherent (" + *defect +
                                             ") and |G_1|! is too large to search");
    std::vector<std::size_t> sigma(G1.size());
    std::iota(sigma.begin(), sigma.end(), 0);
    bool found = false;
    std::uint64_t tried = 0;
    do {
      ++tried;
      std::map<std::string, std::string> phi;
      for (std::size_t i = 0; i < G1.size(); ++i) phi[G1[i].raw()] = H1[sigma[i]].raw();
      RawMap cand;
      bool ok = true;
      for (const Portrait& y : GD) {
        Portrait img = relabel(y, phi);
        if (img.depth() != D || !std::binary_search(HD.begin(), HD.end(), img)) {
          ok = false;
          break;
        }
        cand.emplace(y.raw(), std::move(img));
      }
      if (ok) {
        fD = std::move(cand);
        found = true;
        json p = json::array();
        for (std::size_t i = 0; i < G1.size(); ++i)
          p.push_back({G1[i].serialize(), H1[sigma[i]].serialize()});
        fmode["mode"] = "labelwise";
        fmode["phi_1"] = p;
      }
    } while (!found && std::next_permutation(sigma.begin(), sigma.end()));
    fmode["label_bijections_tried"] = tried;
    if (!found)
      fail(ErrorKind::extension_failure,
           "no coherent bijection G_D -> H_D found: index map fails (" + *defect +
               ") and no labelwise bijection of level 1 carries G_D onto H_D");
  }
  tr["f_D"] = fmode;

  LevelBijection top;
  top.n = D;
  top.size = GD.size();
  top.explicit_map = true;
  for (std::size_t i = 0; i < GD.size(); ++i)
    top.pairs.emplace_back(static_cast<std::uint32_t>(i), index_in(HD, fD.at(GD[i].raw())));
  res.bijections.levels.push_back(std::move(top));

  Extender ext(m, D, fD);
  json levels = json::array();
  for (int n = D + 1; n <= n_max; ++n) {
    json lv;
    lv["n"] = n;
    LevelBijection b;
    b.n = n;
    b.size = G.order(n);
    if (G.order(n) <= cap) {
      const std::vector<Portrait> Gn = enumerate_portraits(G.level(n), cap);
      const std::vector<Portrait> Hn = enumerate_portraits(H.level(n), cap);
      std::vector<char> hit(Hn.size(), 0);
      for (std::size_t i = 0; i < Gn.size(); ++i) {
        const Portrait img = ext(Gn[i]);
        const std::uint32_t j = index_in(Hn, img);
        if (j == UINT32_MAX)
          fail(ErrorKind::extension_failure, "extension of " + Gn[i].serialize() +
                                                 " leaves H_" + std::to_string(n));
        if (hit[j]) fail(ErrorKind::extension_failure, "extension is not injective at level " +
                                                           std::to_string(n));
        hit[j] = 1;
        // Partition correspondence: cells of alpha^D go to cells of alpha^D.
        if (!(truncate(img, D) == fD.at(truncate(Gn[i], D).raw())))
          fail(ErrorKind::extension_failure, "cell of " + Gn[i].serialize() + " is not preserved");
        b.pairs.emplace_back(static_cast<std::uint32_t>(i), j);
      }
      b.explicit_map = true;
      lv["mode"] = "explicit";
      lv["checks"] = {"bijective", "projection_coherent", "section_compatible",
                      "partition_correspondence"};
    } else {
      // Ext is injective and every window of Ext(g) lies in H_D; if the
      // pattern closure of H_D has exactly |H_n| elements it is H_n, so Ext
      // is onto.  Samples confirm membership directly.
      const PatternSet pats = PatternSet::from_portraits(m, D, HD);
      const mpz_class closure = count_pattern_closed(pats, n, H.limits().max_states);
      lv["mode"] = "certificate";
      lv["closure_count"] = closure.get_str();
      if (closure != H.order(n))
        fail(ErrorKind::extension_failure,
             "pattern closure of H_D at level " + std::to_string(n) + " has " + closure.get_str() +
                 " elements, not |H_n|; bijectivity cannot be certified");
      const LevelQuotient& Gl = G.level(n);
      const LevelQuotient& Hl = H.level(n);
      std::mt19937_64 rng(options.seed + static_cast<std::uint64_t>(n));
      for (std::size_t s = 0; s < options.spot_checks; ++s) {
        const Portrait g = Gl.portrait(Gl.chain().random_element(rng));
        const Portrait img = ext(g);
        if (!Hl.contains(img))
          fail(ErrorKind::extension_failure,
               "sampled extension of " + g.serialize() + " leaves H_" + std::to_string(n));
      }
      lv["spot_checks"] = options.spot_checks;
      lv["seed"] = options.seed + static_cast<std::uint64_t>(n);
    }
    levels.push_back(lv);
    res.bijections.levels.push_back(std::move(b));
  }
  tr["levels"] = levels;
  return res;
}

// ---------------------------------------------------------------------------

json to_json(const JointDistribution& j) {
  json out;
  json vs = json::array();
  for (const auto& v : j.vertices) vs.push_back(v.to_string());
  out["vertices"] = vs;
  out["d"] = j.d;
  json cells = json::array();
  for (const auto& c : j.cells) {
    json w = json::array();
    for (const auto& p : c.windows) w.push_back(p.serialize());
    cells.push_back({{"windows", w}, {"prob", rational_string(c.prob)}});
  }
  out["cells"] = cells;
  return out;
}

json to_json(const MeasureReport& r) {
  json j;
  j["v"] = r.v.to_string();
  j["d"] = r.d;
  j["method"] = to_string(r.method);
  j["pass"] = r.pass;
  j["image_size"] = r.image_size.get_str();
  j["target_order"] = r.target_order.get_str();
  json f = json::array();
  for (const auto& [size, count] : r.fibers)
    f.push_back({{"fiber_size", size.get_str()}, {"images", count.get_str()}});
  j["fibers"] = f;
  return j;
}

json to_json(const FDirectReport& r, const DisplayBase& base) {
  json j;
  j["n"] = r.n;
  j["method"] = to_string(r.method);
  j["H_alpha"] = to_json(r.h_alpha, base);
  json h = json::array();
  for (const auto& x : r.h_join) h.push_back(to_json(x, base));
  j["H_join"] = h;
  j["F"] = to_json(r.F, base);
  return j;
}

json to_json(const MarkovReport& r) {
  json j;
  j["k"] = r.k;
  j["v"] = r.v.to_string();
  j["x"] = r.x;
  j["method"] = to_string(r.method);
  j["pass"] = r.pass;
  j["cells_checked"] = r.cells_checked;
  if (r.witness) {
    j["witness"] = {{"cell", r.witness->cell},
                    {"event", r.witness->event},
                    {"given_past", rational_string(r.witness->given_past)},
                    {"given_parent", rational_string(r.witness->given_parent)}};
  }
  return j;
}

json to_json(const LevelBijections& b) {
  json j;
  j["D"] = b.D;
  j["n_max"] = b.n_max;
  json lv = json::array();
  for (const auto& l : b.levels) {
    json e;
    e["n"] = l.n;
    e["size"] = l.size.get_str();
    e["explicit"] = l.explicit_map;
    if (l.explicit_map) {
      json p = json::array();
      for (const auto& [a, c] : l.pairs) p.push_back({a, c});
      e["pairs"] = p;
    }
    lv.push_back(e);
  }
  j["levels"] = lv;
  return j;
}

}  // namespace selfsim
