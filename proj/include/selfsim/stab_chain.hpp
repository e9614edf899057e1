#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <span>
#include <unordered_map>
#include <vector>

#include "selfsim/perm.hpp"

namespace selfsim {

inline constexpr std::uint64_t kDefaultEnumerationCap = 1'000'000;

struct ChainOptions {
  /// Points placed first in the base; the remaining points follow in
  /// increasing order, so every point is a base point.
  std::vector<Point> base_prefix;
  /// If the group order is known in advance the construction stops as soon
  /// as the product of basic orbit lengths reaches it.
  std::optional<mpz_class> known_order;
};

/// Uniform integer in [0, n) from a 64-bit engine by rejection; unlike
/// std::uniform_int_distribution this is identical on every platform.
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t n);

/// Stabilizer chain with a complete base (every point is a base point, most
/// levels trivial).  Built by deterministic Schreier-Sims.
class StabChain {
 public:
  StabChain() = default;

  static StabChain build(std::size_t degree, std::span<const Perm> generators,
                         const ChainOptions& options = {});

  std::size_t degree() const noexcept { return degree_; }
  const mpz_class& order() const noexcept { return order_; }
  /// prime -> exponent of order().
  std::map<std::uint64_t, std::uint64_t> order_factorization() const;

  bool contains(const Perm& g) const;
  /// Residue of g after sifting and the level at which sifting stopped
  /// (base_length() if g sifted to the identity).
  std::pair<Perm, std::size_t> sift(Perm g, std::size_t from = 0) const;

  std::size_t base_length() const noexcept { return levels_.size(); }
  Point base_point(std::size_t i) const { return levels_[i].point; }
  std::vector<Point> base() const;
  const std::vector<Point>& orbit(std::size_t i) const { return levels_[i].orbit; }
  /// u with base_point(i)^u = orbit(i)[k].
  Perm transversal(std::size_t i, std::size_t k) const;

  /// Generators of the group (level 0 of the chain).
  std::vector<Perm> generators() const;
  /// All strong generators used anywhere in the chain.
  std::vector<Perm> strong_generators() const;

  /// Chain of the pointwise stabilizer of the first i base points.
  StabChain tail(std::size_t i) const;
  /// Pointwise stabilizer of an arbitrary point set (base change).
  StabChain pointwise_stabilizer(std::span<const Point> points) const;

  /// Calls visit on every element exactly once, deterministic order.  Throws
  /// enumeration-too-large if order() > cap.
  void enumerate(std::uint64_t cap, const std::function<void(const Perm&)>& visit) const;
  std::vector<Perm> elements(std::uint64_t cap = kDefaultEnumerationCap) const;

  Perm random_element(std::mt19937_64& rng) const;
  Perm sample_uniform(std::uint64_t seed) const;

  Perm identity() const { return Perm(degree_); }

 private:
  struct Level {
    Point point = 0;
    std::vector<std::uint32_t> gens;  // indices into *strong_
    std::vector<Point> orbit;         // orbit[0] == point
    std::vector<Perm> reps;           // reps[0] left empty (identity)
    std::vector<Perm> inv;
    std::vector<std::uint32_t> tested;  // per orbit point: gens already tried
    std::unordered_map<Point, std::uint32_t> index;  // only for large orbits

    std::optional<std::size_t> find(Point x) const;
  };

  void mul_inverse_rep(Perm& h, const Level& L, std::size_t k) const;
  void add_generator(std::size_t level, std::uint32_t gen);
  void compute_order();
  std::vector<std::size_t> nontrivial_levels() const;

  std::size_t degree_ = 0;
  std::vector<Level> levels_;
  std::shared_ptr<std::vector<Perm>> strong_ = std::make_shared<std::vector<Perm>>();
  mpz_class order_ = 1;
};

/// Orbit of `point` under `gens` with one transversal element per orbit point
/// (in BFS discovery order; the first entry is the identity).
std::vector<std::pair<Point, Perm>> orbit_transversal(std::size_t degree,
                                                      std::span<const Perm> gens, Point point);

}  // namespace selfsim
