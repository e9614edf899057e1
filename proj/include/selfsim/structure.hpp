#pragma once

#include <optional>
#include <string>
#include <vector>

#include "selfsim/quotient.hpp"

namespace selfsim {

/// How a statistic over G_N is obtained: by listing every element, or from
/// stabilizer chains (cosets of pointwise stabilizers) without enumeration.
enum class Method { enumerate, stabilizer };
std::string to_string(Method m);
Method parse_method(const std::string& s);

/// Defining patterns of a group of finite type: depth-D portraits.
class PatternSet {
 public:
  PatternSet() = default;
  /// Validates shape and deduplicates.
  static PatternSet from_portraits(int m, int depth, std::vector<Portrait> patterns);

  int arity() const noexcept { return m_; }
  int depth() const noexcept { return d_; }
  std::size_t size() const noexcept { return items_.size(); }
  const std::vector<Portrait>& items() const noexcept { return items_; }
  bool contains(const Portrait& g) const;

 private:
  int m_ = 2, d_ = 0;
  std::vector<Portrait> items_;  // sorted, unique
};

/// All depth-D windows g|_v^D for g in G_L and v on levels 0..L-D.
PatternSet extract_pattern_set(const QuotientTower& tower, int D, int L,
                               Method method = Method::enumerate);

/// Number of depth-n portraits all of whose depth-D windows lie in H.
mpz_class count_pattern_closed(const PatternSet& patterns, int n,
                               std::uint64_t max_states = 1'000'000);

struct BranchReport {
  int D = 0, n = 0;
  bool pass = false;
  bool level_transitive = false;
  std::size_t generators_checked = 0;
  std::string witness;  // empty on pass
};

/// Regular branch over St(D-1), checked between levels n-1 and n: every
/// generator of St_{G_{n-1}}(D-1) placed below any first-level vertex must
/// lie in St_{G_n}(D-1); also G_n must be transitive on level n.
BranchReport verify_regular_branch(const QuotientTower& tower, int D, int n);

struct FractalityReport {
  int n = 0;
  bool pass = false;
  bool level_transitive = false;
  std::size_t level_orbit = 0;
  std::vector<mpz_class> section_orders;  // per first-level vertex
  mpz_class expected;                     // |G_{n-1}|
};

FractalityReport fractality_evidence(const QuotientTower& tower, int n);

/// |G_n : Rist_{G_n}(k)|.
mpz_class rigid_stabilizer_index(const QuotientTower& tower, int k, int n);

struct DepthReport {
  std::optional<int> depth;
  int n_max = 0;
  std::vector<LogQuantity> r;  // r_1 .. r_{n_max-1}
  std::vector<BranchReport> branch_checks;
};

/// Minimal D <= n_max-1 with r_D = ... = r_{n_max-1} and a passing regular
/// branch check between levels D and D+1.  Evidence at level n_max only.
DepthReport detect_depth(const QuotientTower& tower, int n_max);

/// Image of the section map g -> g|_v^d on G_{l+d} (l = level of v):
/// g = s t_w with s in st(v) and t_w a transversal element taking v to w,
/// so g|_v = s|_v t_w|_v and the image is the union of the cosets Q c_w.
struct SectionImage {
  std::size_t vertex = 0;
  int d = 0;
  StabChain q;               // Q = {s|_v^d : s in st(v)} on vertex_domain_size(m, d) points
  mpz_class stabilizer_order;  // |st(v)| in G_{l+d}
  std::vector<Perm> cosets;  // c_w, one per vertex w in the orbit of v
};
SectionImage section_image(const QuotientTower& tower, std::size_t vertex, int d);

json to_json(const BranchReport& r);
json to_json(const FractalityReport& r);
json to_json(const PatternSet& p);

}  // namespace selfsim
