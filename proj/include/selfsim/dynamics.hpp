#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "selfsim/log_quantity.hpp"
#include "selfsim/quotient.hpp"
#include "selfsim/structure.hpp"

namespace selfsim {

/// Root first, v last.
std::vector<Vertex> past(const Vertex& v);

/// Law of (g|_{v_1}^d, ..., g|_{v_k}^d) for Haar-random g.
struct JointDistribution {
  std::vector<Vertex> vertices;
  int d = 0;
  struct Cell {
    std::vector<Portrait> windows;
    mpq_class prob;
  };
  std::vector<Cell> cells;  // sorted by the concatenated window bytes

  LogQuantity entropy() const;
  JointDistribution marginal(const std::vector<std::size_t>& coords) const;
  /// Every single-coordinate marginal is uniform on a set of size `order`.
  bool marginals_uniform(const mpz_class& order) const;
};

JointDistribution joint_section_distribution(const QuotientTower& tower,
                                             const std::vector<Vertex>& vertices, int d);

struct MeasureReport {
  Vertex v;
  int d = 0;
  Method method = Method::enumerate;
  bool pass = false;
  mpz_class image_size, target_order;
  std::map<mpz_class, mpz_class, MpzLess> fibers;  // fiber size -> how many images
};

/// Is g -> g|_v^d from G_{|v|+d} onto G_d with equal fibers?
MeasureReport check_measure_preserving(const QuotientTower& tower, const Vertex& v, int d,
                                       Method method = Method::enumerate);

struct FDirectReport {
  int n = 0;
  Method method = Method::enumerate;
  LogQuantity h_alpha;              // H(alpha_s^n)
  std::vector<LogQuantity> h_join;  // H(alpha_s^n v T_i^{-1} alpha_s^n), i = 1..m
  LogQuantity F;
};

/// F(T, alpha_s^n) = (1-2m) H(alpha) + sum_i H(alpha v T_i^{-1} alpha).
FDirectReport big_f_direct(const QuotientTower& tower, int n, Method method = Method::enumerate);

struct MarkovReport {
  int k = 0;
  Vertex v;
  int x = 0;
  Method method = Method::enumerate;
  bool pass = false;
  std::size_t cells_checked = 0;
  struct Witness {
    std::vector<std::string> cell;  // past windows
    std::string event;              // window at vx
    mpq_class given_past, given_parent;
  };
  std::optional<Witness> witness;
};

/// Conditional law of the depth-k window at vx given all windows on Past(v)
/// against the law of the window at x given the root window (evaluated at
/// the window of v).
MarkovReport check_markov(const QuotientTower& tower, int k, const Vertex& v, int x,
                          Method method = Method::enumerate);

Portrait haar_sample(const QuotientTower& tower, int n, std::uint64_t seed);

struct LevelBijection {
  int n = 0;
  mpz_class size;
  bool explicit_map = false;
  /// Indices into the sorted portrait lists of G_n and H_n.
  std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
};

struct LevelBijections {
  int D = 0, n_max = 0;
  std::vector<LevelBijection> levels;
};

struct IsoOptions {
  std::size_t spot_checks = 64;
  std::uint64_t seed = 1;
  /// Labelwise search is tried only if |G_1|! stays below this.
  std::uint64_t max_label_bijections = 40320;
};

struct IsoResult {
  LevelBijections bijections;
  json transcript;
};

/// Coherent bijections f_n : G_n -> H_n for D <= n <= n_max, each level
/// extending the previous one through truncation and first-level sections.
/// Levels too large to list are covered by a counting certificate.
IsoResult build_process_isomorphism(const QuotientTower& G, const QuotientTower& H, int D,
                                    int n_max, const IsoOptions& options = {});

json to_json(const JointDistribution& j);
json to_json(const MeasureReport& r);
json to_json(const FDirectReport& r, const DisplayBase& base);
json to_json(const MarkovReport& r);
json to_json(const LevelBijections& b);

}  // namespace selfsim
