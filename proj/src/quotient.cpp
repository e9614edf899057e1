#include "selfsim/quotient.hpp"

#include <algorithm>

#include "selfsim/errors.hpp"

namespace selfsim {

LevelQuotient::LevelQuotient(const GroupSpec& spec, int n) : m_(spec.arity), n_(n) {
  if (n < 1) fail(ErrorKind::invalid_argument, "quotient level must be at least 1");
  for (const Portrait& g : level_generators(spec, n)) gens_.push_back(to_vertex_permutation(g));
  chain_ = StabChain::build(vertex_domain_size(m_, n), gens_);
}

LogQuantity LevelQuotient::log_order() const {
  LogQuantity x;
  for (const auto& [p, e] : chain_.order_factorization())
    x += LogQuantity::log_of(mpz_class(static_cast<unsigned long>(p))) *
         mpq_class(static_cast<unsigned long>(e));
  return x;
}

StabChain LevelQuotient::level_stabilizer(int k) const {
  if (k < 0 || k > n_) fail(ErrorKind::invalid_argument, "level outside quotient");
  return chain_.tail(vertex_domain_size(m_, k));
}

StabChain LevelQuotient::vertex_stabilizer(std::size_t vertex) const {
  if (vertex == 0) return chain_;
  const Point p = static_cast<Point>(vertex - 1);
  return chain_.pointwise_stabilizer(std::span<const Point>(&p, 1));
}

bool LevelQuotient::contains(const Portrait& g) const {
  if (g.arity() != m_ || g.depth() != n_)
    fail(ErrorKind::shape_mismatch, "portrait shape differs from the quotient");
  return chain_.contains(to_vertex_permutation(g));
}

QuotientTower::QuotientTower(GroupSpec spec, Limits limits)
    : spec_(std::move(spec)), limits_(limits) {}

const LevelQuotient& QuotientTower::level(int n) const {
  std::lock_guard<std::mutex> lock(mu_);
  auto it = levels_.find(n);
  if (it == levels_.end())
    it = levels_.emplace(n, std::make_unique<LevelQuotient>(spec_, n)).first;
  return *it->second;
}

mpz_class QuotientTower::order(int n) const {
  if (n == 0) return 1;
  return level(n).order();
}

LogQuantity QuotientTower::log_order(int n) const {
  if (n == 0) return {};
  return level(n).log_order();
}

std::vector<Portrait> enumerate_portraits(const LevelQuotient& q, std::uint64_t cap) {
  std::vector<Portrait> out;
  q.chain().enumerate(cap, [&](const Perm& g) { out.push_back(q.portrait(g)); });
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace selfsim
