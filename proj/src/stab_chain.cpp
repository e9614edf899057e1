#include "selfsim/stab_chain.hpp"

#include <algorithm>
#include <deque>

#include "selfsim/errors.hpp"

namespace selfsim {

namespace {

constexpr std::size_t kLinearScan = 32;

void check_degree(std::size_t degree, const Perm& g) {
  if (g.degree() != degree)
    fail(ErrorKind::shape_mismatch, "permutation of degree " + std::to_string(g.degree()) +
                                        " used with a group on " + std::to_string(degree) +
                                        " points");
}

}  // namespace

std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t n) {
  if (n <= 1) return 0;
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  for (;;) {
    std::uint64_t x = rng();
    if (x < limit) return x % n;
  }
}

std::optional<std::size_t> StabChain::Level::find(Point x) const {
  if (orbit.size() <= kLinearScan) {
    for (std::size_t k = 0; k < orbit.size(); ++k)
      if (orbit[k] == x) return k;
    return std::nullopt;
  }
  auto it = index.find(x);
  if (it == index.end()) return std::nullopt;
  return it->second;
}

void StabChain::mul_inverse_rep(Perm& h, const Level& L, std::size_t k) const {
  if (k != 0) h *= L.inv[k];
}

void StabChain::add_generator(std::size_t li, std::uint32_t gi) {
  Level& L = levels_[li];
  L.gens.push_back(gi);
  const std::size_t old = L.orbit.size();
  // Close the orbit: only the new generator can move old points out, all
  // generators have to be applied to new points.
  for (std::size_t k = 0; k < L.orbit.size(); ++k) {
    const std::size_t first = k < old ? L.gens.size() - 1 : 0;
    for (std::size_t t = first; t < L.gens.size(); ++t) {
      const Perm& s = (*strong_)[L.gens[t]];
      const Point y = s[L.orbit[k]];
      if (L.find(y)) continue;
      Perm rep = k == 0 ? s : L.reps[k] * s;
      L.inv.push_back(rep.inverse());
      L.reps.push_back(std::move(rep));
      L.orbit.push_back(y);
      L.tested.push_back(0);
      if (L.orbit.size() > kLinearScan) {
        if (L.index.empty())
          for (std::size_t q = 0; q < L.orbit.size(); ++q) L.index.emplace(L.orbit[q], q);
        else
          L.index.emplace(y, L.orbit.size() - 1);
      }
    }
  }
}

std::pair<Perm, std::size_t> StabChain::sift(Perm h, std::size_t from) const {
  for (std::size_t l = from; l < levels_.size(); ++l) {
    const Level& L = levels_[l];
    const Point x = h[L.point];
    if (x == L.point) continue;
    auto k = L.find(x);
    if (!k) return {std::move(h), l};
    h *= L.inv[*k];
  }
  return {std::move(h), levels_.size()};
}

StabChain StabChain::build(std::size_t degree, std::span<const Perm> generators,
                           const ChainOptions& options) {
  if (degree == 0) fail(ErrorKind::invalid_argument, "empty permutation domain");
  StabChain C;
  C.degree_ = degree;

  std::vector<char> used(degree, 0);
  std::vector<Point> base;
  base.reserve(degree);
  for (Point b : options.base_prefix) {
    if (b >= degree) fail(ErrorKind::invalid_argument, "base point outside domain");
    if (used[b]) continue;
    used[b] = 1;
    base.push_back(b);
  }
  for (Point b = 0; b < degree; ++b)
    if (!used[b]) base.push_back(b);

  C.levels_.resize(degree);
  for (std::size_t l = 0; l < degree; ++l) {
    C.levels_[l].point = base[l];
    C.levels_[l].orbit = {base[l]};
    C.levels_[l].reps.emplace_back();
    C.levels_[l].inv.emplace_back();
    C.levels_[l].tested.push_back(0);
  }

  auto reached_known = [&]() {
    if (!options.known_order) return false;
    C.compute_order();
    return C.order_ == *options.known_order;
  };

  for (const Perm& g : generators) {
    check_degree(degree, g);
    if (g.is_identity()) continue;
    if (std::find(C.strong_->begin(), C.strong_->end(), g) != C.strong_->end()) continue;
    const auto gi = static_cast<std::uint32_t>(C.strong_->size());
    C.strong_->push_back(g);
    std::size_t j = 0;
    while (g[C.levels_[j].point] == C.levels_[j].point) ++j;
    for (std::size_t l = 0; l <= j; ++l) C.add_generator(l, gi);
  }

  // Levels are completed from the bottom up; a failed sift adds its residue
  // to levels i+1..j and resumes at j.
  std::size_t i = degree;
  while (i-- > 0) {
    if (reached_known()) break;
    bool restarted = false;
    for (std::size_t k = 0; k < C.levels_[i].orbit.size() && !restarted; ++k) {
      for (;;) {
        Level& L = C.levels_[i];
        if (L.tested[k] >= L.gens.size()) break;
        const std::uint32_t gi = L.gens[L.tested[k]++];
        const Perm& s = (*C.strong_)[gi];
        const Point y = s[L.orbit[k]];
        const std::size_t ky = *L.find(y);
        if (k == 0 && ky == 0) continue;  // s itself, already a generator below
        Perm h = k == 0 ? s : L.reps[k] * s;
        C.mul_inverse_rep(h, L, ky);
        auto [res, j] = C.sift(std::move(h), i + 1);
        if (j == C.levels_.size()) continue;
        const auto ri = static_cast<std::uint32_t>(C.strong_->size());
        C.strong_->push_back(std::move(res));
        for (std::size_t l = i + 1; l <= j; ++l) C.add_generator(l, ri);
        i = j + 1;  // loop decrement lands on j
        restarted = true;
        break;
      }
    }
  }
  C.compute_order();
  if (options.known_order && C.order_ != *options.known_order)
    fail(ErrorKind::invalid_argument, "group order differs from the declared order");
  return C;
}

void StabChain::compute_order() {
  order_ = 1;
  for (const auto& L : levels_)
    if (L.orbit.size() > 1) order_ *= static_cast<unsigned long>(L.orbit.size());
}

std::map<std::uint64_t, std::uint64_t> StabChain::order_factorization() const {
  std::map<std::uint64_t, std::uint64_t> f;
  for (const auto& L : levels_) {
    std::uint64_t n = L.orbit.size();
    for (std::uint64_t p = 2; p * p <= n; ++p)
      while (n % p == 0) {
        ++f[p];
        n /= p;
      }
    if (n > 1) ++f[n];
  }
  return f;
}

bool StabChain::contains(const Perm& g) const {
  check_degree(degree_, g);
  return sift(g).second == levels_.size();
}

std::vector<Point> StabChain::base() const {
  std::vector<Point> b;
  b.reserve(levels_.size());
  for (const auto& L : levels_) b.push_back(L.point);
  return b;
}

Perm StabChain::transversal(std::size_t i, std::size_t k) const {
  return k == 0 ? identity() : levels_[i].reps[k];
}

std::vector<Perm> StabChain::generators() const {
  std::vector<Perm> out;
  if (levels_.empty()) return out;
  for (auto gi : levels_[0].gens) out.push_back((*strong_)[gi]);
  return out;
}

std::vector<Perm> StabChain::strong_generators() const {
  std::vector<std::uint32_t> ids;
  for (const auto& L : levels_) ids.insert(ids.end(), L.gens.begin(), L.gens.end());
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  std::vector<Perm> out;
  for (auto gi : ids) out.push_back((*strong_)[gi]);
  return out;
}

StabChain StabChain::tail(std::size_t i) const {
  if (i > levels_.size()) fail(ErrorKind::invalid_argument, "tail beyond base length");
  StabChain T;
  T.degree_ = degree_;
  T.strong_ = strong_;
  T.levels_.assign(levels_.begin() + static_cast<std::ptrdiff_t>(i), levels_.end());
  T.compute_order();
  return T;
}

StabChain StabChain::pointwise_stabilizer(std::span<const Point> points) const {
  std::vector<char> in(degree_, 0);
  std::size_t count = 0;
  for (Point p : points) {
    if (p >= degree_) fail(ErrorKind::invalid_argument, "point outside domain");
    if (!in[p]) ++count;
    in[p] = 1;
  }
  std::size_t k = 0;
  while (k < levels_.size() && in[levels_[k].point]) ++k;
  StabChain T = tail(k);
  if (k == count) return T;
  std::vector<Point> rest;
  for (std::size_t l = k; l < levels_.size(); ++l)
    if (in[levels_[l].point]) rest.push_back(levels_[l].point);
  std::sort(rest.begin(), rest.end());
  ChainOptions opt;
  opt.base_prefix = rest;
  opt.known_order = T.order();
  // The rebuilt chain also has levels for the already fixed prefix points;
  // those come after `rest`, are trivial, and do not matter.
  auto gens = T.generators();
  StabChain R = build(degree_, gens, opt);
  return R.tail(rest.size());
}

std::vector<std::size_t> StabChain::nontrivial_levels() const {
  std::vector<std::size_t> out;
  for (std::size_t l = 0; l < levels_.size(); ++l)
    if (levels_[l].orbit.size() > 1) out.push_back(l);
  return out;
}

void StabChain::enumerate(std::uint64_t cap,
                          const std::function<void(const Perm&)>& visit) const {
  if (order_ > cap)
    fail(ErrorKind::enumeration_too_large,
         "group of order " + order_.get_str() + " exceeds the enumeration cap " +
             std::to_string(cap));
  const auto lv = nontrivial_levels();
  const std::size_t r = lv.size();
  if (r == 0) {
    visit(identity());
    return;
  }
  // g = u_{r-1} ... u_1 u_0 (deepest factor first); prefix[k] = u_{r-1}...u_k.
  std::vector<std::size_t> idx(r, 0);
  std::vector<Perm> prefix(r + 1);
  prefix[r] = identity();
  auto rebuild = [&](std::size_t from) {
    for (std::size_t k = from + 1; k-- > 0;) {
      prefix[k] = prefix[k + 1];
      if (idx[k] != 0) prefix[k] *= levels_[lv[k]].reps[idx[k]];
    }
  };
  rebuild(r - 1);
  for (;;) {
    visit(prefix[0]);
    std::size_t c = 0;
    while (c < r && ++idx[c] == levels_[lv[c]].orbit.size()) idx[c++] = 0;
    if (c == r) break;
    rebuild(c);
  }
}

std::vector<Perm> StabChain::elements(std::uint64_t cap) const {
  std::vector<Perm> out;
  enumerate(cap, [&](const Perm& g) { out.push_back(g); });
  return out;
}

Perm StabChain::random_element(std::mt19937_64& rng) const {
  const auto lv = nontrivial_levels();
  std::vector<std::size_t> pick(lv.size());
  for (std::size_t k = 0; k < lv.size(); ++k)
    pick[k] = uniform_below(rng, levels_[lv[k]].orbit.size());
  Perm g = identity();
  for (std::size_t k = lv.size(); k-- > 0;)
    if (pick[k] != 0) g *= levels_[lv[k]].reps[pick[k]];
  return g;
}

Perm StabChain::sample_uniform(std::uint64_t seed) const {
  std::mt19937_64 rng(seed);
  return random_element(rng);
}

std::vector<std::pair<Point, Perm>> orbit_transversal(std::size_t degree,
                                                      std::span<const Perm> gens, Point point) {
  std::vector<std::pair<Point, Perm>> out;
  std::unordered_map<Point, std::size_t> seen;
  out.emplace_back(point, Perm(degree));
  seen.emplace(point, 0);
  for (std::size_t k = 0; k < out.size(); ++k)
    for (const Perm& s : gens) {
      const Point y = s[out[k].first];
      if (seen.count(y)) continue;
      seen.emplace(y, out.size());
      out.emplace_back(y, out[k].second * s);
    }
  return out;
}

}  // namespace selfsim
