#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "selfsim/perm.hpp"

namespace selfsim {

// Vertices of the m-adic tree are words over {1..m}.  Internally vertices are
// also addressed by breadth-first index: root 0, children of i are
// m*i+1 .. m*i+m, which coincides with lexicographic order inside a level.

struct Vertex {
  std::vector<int> letters;  // 1-based

  Vertex() = default;
  explicit Vertex(std::vector<int> l) : letters(std::move(l)) {}

  /// "2 1" -> (2,1); "" or "root" -> empty word.
  static Vertex parse(std::string_view text);

  int level() const noexcept { return static_cast<int>(letters.size()); }
  std::string to_string() const;
  Vertex child(int x) const;

  friend bool operator==(const Vertex&, const Vertex&) = default;
  friend auto operator<=>(const Vertex&, const Vertex&) = default;
};

/// Number of vertices on levels 0..k-1, i.e. the BFS index of the first
/// vertex of level k.
std::size_t level_offset(int m, int k);
std::size_t pow_size(int m, int k);
std::size_t vertex_index(int m, const Vertex& v);
Vertex vertex_at(int m, std::size_t index);
/// All vertices of level k in lexicographic order.
std::vector<Vertex> level_vertices(int m, int k);

/// A depth-n truncated tree automorphism: one permutation of {0..m-1} per
/// internal vertex, stored densely in BFS order (m bytes per vertex).
class Portrait {
 public:
  Portrait() = default;
  /// Identity portrait.
  Portrait(int arity, int depth);
  /// Labels in BFS order, 0-based images, m bytes per internal vertex.
  static Portrait from_raw(int arity, int depth, std::string raw);

  int arity() const noexcept { return m_; }
  int depth() const noexcept { return n_; }
  std::size_t internal_count() const noexcept { return level_offset(m_, n_); }

  /// Image of letter x (0-based) under the label at BFS index `vertex`.
  int image(std::size_t vertex, int x) const noexcept {
    return static_cast<unsigned char>(raw_[vertex * m_ + x]);
  }
  Perm label(std::size_t vertex) const;
  bool label_is_identity(std::size_t vertex) const noexcept;
  bool is_identity() const noexcept;

  /// Canonical byte string; also the ordering key used everywhere.
  const std::string& raw() const noexcept { return raw_; }
  /// "depth arity; l; l; ..." with labels 1-based in one-line form.
  std::string serialize() const;
  static Portrait parse(std::string_view text);

  friend bool operator==(const Portrait& a, const Portrait& b) {
    return a.m_ == b.m_ && a.n_ == b.n_ && a.raw_ == b.raw_;
  }
  friend bool operator<(const Portrait& a, const Portrait& b) {
    if (a.m_ != b.m_) return a.m_ < b.m_;
    if (a.n_ != b.n_) return a.n_ < b.n_;
    return a.raw_ < b.raw_;
  }

 private:
  int m_ = 2;
  int n_ = 0;
  std::string raw_;
};

Vertex apply(const Portrait& g, const Vertex& v);
Portrait compose(const Portrait& g, const Portrait& h);
Portrait invert(const Portrait& g);
Portrait section(const Portrait& g, const Vertex& v, int d);
Portrait truncate(const Portrait& g, int d);

/// Depth-(n+1) portrait with the given root label (0-based) and the depth-n
/// portraits `children` hanging below children 1..m.
Portrait assemble(const Perm& root, std::span<const Portrait> children);
/// g placed below first-level vertex x (1-based), identity elsewhere.
Portrait embed_below(const Portrait& g, int x);

/// Leaves in lexicographic order, 0-based ranks.
Perm to_leaf_permutation(const Portrait& g);
Portrait from_leaf_permutation(int m, int n, const Perm& p);

/// Action on all vertices of levels 1..n; point = BFS index - 1.
Perm to_vertex_permutation(const Portrait& g);
Portrait from_vertex_permutation(int m, int n, const Perm& p);
std::size_t vertex_domain_size(int m, int n);

/// Section g|_v^d read directly from a vertex permutation of depth n.
Portrait section_of_vertex_perm(int m, int n, const Perm& p,
                                std::size_t vertex, int d);

}  // namespace selfsim
