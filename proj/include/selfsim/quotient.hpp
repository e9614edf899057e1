#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>

#include "selfsim/group_spec.hpp"
#include "selfsim/log_quantity.hpp"
#include "selfsim/stab_chain.hpp"
#include "selfsim/tree.hpp"

namespace selfsim {

struct Limits {
  std::uint64_t max_enum = kDefaultEnumerationCap;
  std::uint64_t max_states = 1'000'000;
};

/// G_n = G / St_G(n) acting on the vertices of levels 1..n (point = BFS
/// index - 1).  With the BFS base, St_G(k) is a tail of the chain.
class LevelQuotient {
 public:
  LevelQuotient(const GroupSpec& spec, int n);

  int arity() const noexcept { return m_; }
  int level() const noexcept { return n_; }
  std::size_t degree() const noexcept { return chain_.degree(); }
  const StabChain& chain() const noexcept { return chain_; }
  const std::vector<Perm>& generators() const noexcept { return gens_; }
  const mpz_class& order() const noexcept { return chain_.order(); }
  LogQuantity log_order() const;

  /// St_{G_n}(k), 0 <= k <= n.
  StabChain level_stabilizer(int k) const;
  /// Stabilizer of a single vertex (BFS index >= 1).
  StabChain vertex_stabilizer(std::size_t vertex) const;

  Portrait portrait(const Perm& g) const { return from_vertex_permutation(m_, n_, g); }
  Perm perm(const Portrait& g) const { return to_vertex_permutation(g); }
  bool contains(const Portrait& g) const;
  Portrait section(const Perm& g, std::size_t vertex, int d) const {
    return section_of_vertex_perm(m_, n_, g, vertex, d);
  }

 private:
  int m_, n_;
  std::vector<Perm> gens_;
  StabChain chain_;
};

/// Lazily built congruence quotients of one spec; safe to share between
/// threads (construction is serialized, built levels are immutable).
class QuotientTower {
 public:
  explicit QuotientTower(GroupSpec spec, Limits limits = {});

  const GroupSpec& spec() const noexcept { return spec_; }
  int arity() const noexcept { return spec_.arity; }
  const Limits& limits() const noexcept { return limits_; }
  void set_limits(const Limits& l) { limits_ = l; }

  const LevelQuotient& level(int n) const;
  /// |G_n|, with |G_0| = 1.
  mpz_class order(int n) const;
  LogQuantity log_order(int n) const;

 private:
  GroupSpec spec_;
  Limits limits_;
  mutable std::mutex mu_;
  mutable std::map<int, std::unique_ptr<LevelQuotient>> levels_;
};

/// Every element of G_n as a portrait, sorted canonically.
std::vector<Portrait> enumerate_portraits(const LevelQuotient& q, std::uint64_t cap);

}  // namespace selfsim
