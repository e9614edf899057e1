#include "selfsim/tree.hpp"

#include <sstream>

#include "selfsim/errors.hpp"

namespace selfsim {

namespace {

void check_arity(int m) {
  if (m < 2 || m > 255) fail(ErrorKind::invalid_argument, "arity must lie in [2, 255]");
}

void check_vertex(int m, const Vertex& v) {
  for (int x : v.letters)
    if (x < 1 || x > m)
      fail(ErrorKind::invalid_argument,
           "letter " + std::to_string(x) + " outside alphabet of size " + std::to_string(m));
}

void check_shape(const Portrait& g, const Portrait& h) {
  if (g.arity() != h.arity() || g.depth() != h.depth())
    fail(ErrorKind::shape_mismatch, "portraits differ in arity or depth");
}

// BFS images of all vertices of levels 0..upto.
std::vector<std::size_t> vertex_images(const Portrait& g, int upto) {
  const int m = g.arity();
  std::vector<std::size_t> img(level_offset(m, upto + 1));
  img[0] = 0;
  const std::size_t internal = level_offset(m, upto);
  for (std::size_t u = 0; u < internal; ++u)
    for (int x = 0; x < m; ++x) img[m * u + 1 + x] = m * img[u] + 1 + g.image(u, x);
  return img;
}

}  // namespace

Vertex Vertex::parse(std::string_view text) {
  Vertex v;
  std::string s(text);
  if (s == "root" || s == "()") return v;
  for (char& c : s)
    if (c == ',') c = ' ';
  std::istringstream in(s);
  int x;
  while (in >> x) v.letters.push_back(x);
  if (!in.eof()) fail(ErrorKind::invalid_argument, "cannot parse vertex '" + std::string(text) + "'");
  for (int l : v.letters)
    if (l < 1) fail(ErrorKind::invalid_argument, "vertex letters are 1-based");
  return v;
}

std::string Vertex::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < letters.size(); ++i) {
    if (i) out += ' ';
    out += std::to_string(letters[i]);
  }
  return out;
}

Vertex Vertex::child(int x) const {
  Vertex c = *this;
  c.letters.push_back(x);
  return c;
}

std::size_t pow_size(int m, int k) {
  std::size_t r = 1;
  for (int i = 0; i < k; ++i) r *= static_cast<std::size_t>(m);
  return r;
}

std::size_t level_offset(int m, int k) {
  return (pow_size(m, k) - 1) / static_cast<std::size_t>(m - 1);
}

std::size_t vertex_index(int m, const Vertex& v) {
  std::size_t i = 0;
  for (int x : v.letters) i = m * i + static_cast<std::size_t>(x);
  return i;
}

Vertex vertex_at(int m, std::size_t index) {
  std::vector<int> rev;
  while (index > 0) {
    std::size_t parent = (index - 1) / m;
    rev.push_back(static_cast<int>(index - m * parent));
    index = parent;
  }
  return Vertex(std::vector<int>(rev.rbegin(), rev.rend()));
}

std::vector<Vertex> level_vertices(int m, int k) {
  std::vector<Vertex> out;
  const std::size_t first = level_offset(m, k), count = pow_size(m, k);
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(vertex_at(m, first + i));
  return out;
}

Portrait::Portrait(int arity, int depth) : m_(arity), n_(depth) {
  check_arity(arity);
  if (depth < 0) fail(ErrorKind::invalid_argument, "negative depth");
  const std::size_t k = internal_count();
  raw_.resize(k * m_);
  for (std::size_t v = 0; v < k; ++v)
    for (int x = 0; x < m_; ++x) raw_[v * m_ + x] = static_cast<char>(x);
}

Portrait Portrait::from_raw(int arity, int depth, std::string raw) {
  Portrait g;
  check_arity(arity);
  g.m_ = arity;
  g.n_ = depth;
  if (raw.size() != g.internal_count() * arity)
    fail(ErrorKind::shape_mismatch, "label array has wrong length");
  std::vector<char> seen(arity);
  for (std::size_t v = 0; v < g.internal_count(); ++v) {
    std::fill(seen.begin(), seen.end(), 0);
    for (int x = 0; x < arity; ++x) {
      unsigned y = static_cast<unsigned char>(raw[v * arity + x]);
      if (y >= static_cast<unsigned>(arity) || seen[y])
        fail(ErrorKind::not_an_automorphism, "label is not a permutation");
      seen[y] = 1;
    }
  }
  g.raw_ = std::move(raw);
  return g;
}

Perm Portrait::label(std::size_t vertex) const {
  std::vector<Point> img(m_);
  for (int x = 0; x < m_; ++x) img[x] = static_cast<Point>(image(vertex, x));
  return Perm(std::move(img));
}

bool Portrait::label_is_identity(std::size_t vertex) const noexcept {
  for (int x = 0; x < m_; ++x)
    if (image(vertex, x) != x) return false;
  return true;
}

bool Portrait::is_identity() const noexcept {
  for (std::size_t v = 0; v < internal_count(); ++v)
    if (!label_is_identity(v)) return false;
  return true;
}

std::string Portrait::serialize() const {
  std::string out = std::to_string(n_) + " " + std::to_string(m_);
  for (std::size_t v = 0; v < internal_count(); ++v) {
    out += ';';
    for (int x = 0; x < m_; ++x) {
      out += ' ';
      out += std::to_string(image(v, x) + 1);
    }
  }
  return out;
}

Portrait Portrait::parse(std::string_view text) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : text) {
    if (c == ';') {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(cur);
  std::istringstream head(parts[0]);
  int depth = -1, arity = 0;
  if (!(head >> depth >> arity) || depth < 0)
    fail(ErrorKind::invalid_argument, "portrait header must be 'depth arity'");
  check_arity(arity);
  std::string raw;
  for (std::size_t i = 1; i < parts.size(); ++i) {
    Perm p = Perm::from_one_line(parts[i]);
    if (p.degree() != static_cast<std::size_t>(arity))
      fail(ErrorKind::shape_mismatch, "label of wrong size in portrait text");
    for (Point y : p.images()) raw += static_cast<char>(y);
  }
  return from_raw(arity, depth, std::move(raw));
}

Vertex apply(const Portrait& g, const Vertex& v) {
  const int m = g.arity();
  check_vertex(m, v);
  if (v.level() > g.depth())
    fail(ErrorKind::depth_exceeded, "vertex level " + std::to_string(v.level()) +
                                        " exceeds portrait depth " + std::to_string(g.depth()));
  Vertex out;
  out.letters.reserve(v.letters.size());
  std::size_t cur = 0;
  for (int x : v.letters) {
    out.letters.push_back(g.image(cur, x - 1) + 1);
    cur = m * cur + x;
  }
  return out;
}

Portrait compose(const Portrait& g, const Portrait& h) {
  check_shape(g, h);
  const int m = g.arity();
  if (g.depth() == 0) return g;
  auto img = vertex_images(g, g.depth() - 1);
  std::string raw(g.raw().size(), '\0');
  for (std::size_t u = 0; u < g.internal_count(); ++u)
    for (int x = 0; x < m; ++x) raw[u * m + x] = static_cast<char>(h.image(img[u], g.image(u, x)));
  return Portrait::from_raw(m, g.depth(), std::move(raw));
}

Portrait invert(const Portrait& g) {
  const int m = g.arity();
  if (g.depth() == 0) return g;
  auto img = vertex_images(g, g.depth() - 1);
  std::string raw(g.raw().size(), '\0');
  for (std::size_t u = 0; u < g.internal_count(); ++u)
    for (int x = 0; x < m; ++x) raw[img[u] * m + g.image(u, x)] = static_cast<char>(x);
  return Portrait::from_raw(m, g.depth(), std::move(raw));
}

Portrait section(const Portrait& g, const Vertex& v, int d) {
  const int m = g.arity();
  check_vertex(m, v);
  const int k = v.level();
  if (d < 0 || k + d > g.depth())
    fail(ErrorKind::depth_exceeded, "section depth " + std::to_string(d) + " at level " +
                                        std::to_string(k) + " exceeds portrait depth " +
                                        std::to_string(g.depth()));
  const std::size_t rank = vertex_index(m, v) - level_offset(m, k);
  std::string raw;
  raw.reserve(level_offset(m, d) * m);
  for (int j = 0; j < d; ++j) {
    const std::size_t width = pow_size(m, j);
    const std::size_t start = level_offset(m, k + j) + rank * width;
    raw.append(g.raw(), start * m, width * m);
  }
  return Portrait::from_raw(m, d, std::move(raw));
}

Portrait truncate(const Portrait& g, int d) {
  if (d < 0 || d > g.depth())
    fail(ErrorKind::depth_exceeded, "cannot truncate depth " + std::to_string(g.depth()) +
                                        " portrait to depth " + std::to_string(d));
  return Portrait::from_raw(g.arity(), d, g.raw().substr(0, level_offset(g.arity(), d) * g.arity()));
}

Portrait assemble(const Perm& root, std::span<const Portrait> children) {
  const int m = static_cast<int>(root.degree());
  if (children.size() != root.degree())
    fail(ErrorKind::shape_mismatch, "need one child portrait per letter");
  const int d = children[0].depth();
  for (const auto& c : children)
    if (c.arity() != m || c.depth() != d)
      fail(ErrorKind::shape_mismatch, "children portraits differ in shape");
  std::string raw;
  raw.reserve(level_offset(m, d + 1) * m);
  for (Point y : root.images()) raw += static_cast<char>(y);
  for (int j = 0; j < d; ++j) {
    const std::size_t width = pow_size(m, j);
    const std::size_t start = level_offset(m, j);
    for (const auto& c : children) raw.append(c.raw(), start * m, width * m);
  }
  return Portrait::from_raw(m, d + 1, std::move(raw));
}

Portrait embed_below(const Portrait& g, int x) {
  const int m = g.arity();
  if (x < 1 || x > m) fail(ErrorKind::invalid_argument, "letter outside alphabet");
  std::vector<Portrait> kids(m, Portrait(m, g.depth()));
  kids[x - 1] = g;
  return assemble(Perm(m), kids);
}

Perm to_leaf_permutation(const Portrait& g) {
  const int m = g.arity(), n = g.depth();
  if (n < 1) fail(ErrorKind::invalid_argument, "leaf permutation needs depth >= 1");
  auto img = vertex_images(g, n);
  const std::size_t first = level_offset(m, n), count = pow_size(m, n);
  std::vector<Point> out(count);
  for (std::size_t r = 0; r < count; ++r) out[r] = static_cast<Point>(img[first + r] - first);
  return Perm(std::move(out));
}

Portrait from_leaf_permutation(int m, int n, const Perm& p) {
  check_arity(m);
  const std::size_t count = pow_size(m, n);
  if (n < 1 || p.degree() != count)
    fail(ErrorKind::shape_mismatch, "leaf permutation has wrong degree");
  // img[k][r]: image rank of the level-k vertex of rank r
  std::vector<std::vector<std::size_t>> img(n + 1);
  for (int k = 0; k <= n; ++k) img[k].assign(pow_size(m, k), SIZE_MAX);
  for (std::size_t leaf = 0; leaf < count; ++leaf) {
    std::size_t target = p[static_cast<Point>(leaf)];
    std::size_t src = leaf;
    for (int k = n; k >= 0; --k) {
      auto& slot = img[k][src];
      if (slot == SIZE_MAX) slot = target;
      else if (slot != target)
        fail(ErrorKind::not_an_automorphism, "permutation does not respect the tree");
      src /= m;
      target /= m;
    }
  }
  std::string raw(level_offset(m, n) * m, '\0');
  for (int k = 0; k < n; ++k)
    for (std::size_t r = 0; r < img[k].size(); ++r)
      for (int x = 0; x < m; ++x) {
        std::size_t c = img[k + 1][r * m + x];
        if (c / m != img[k][r])
          fail(ErrorKind::not_an_automorphism, "permutation does not respect the tree");
        raw[(level_offset(m, k) + r) * m + x] = static_cast<char>(c % m);
      }
  return Portrait::from_raw(m, n, std::move(raw));
}

std::size_t vertex_domain_size(int m, int n) { return level_offset(m, n + 1) - 1; }

Perm to_vertex_permutation(const Portrait& g) {
  auto img = vertex_images(g, g.depth());
  std::vector<Point> out(img.size() - 1);
  for (std::size_t i = 1; i < img.size(); ++i) out[i - 1] = static_cast<Point>(img[i] - 1);
  return Perm(std::move(out));
}

Portrait from_vertex_permutation(int m, int n, const Perm& p) {
  check_arity(m);
  if (p.degree() != vertex_domain_size(m, n))
    fail(ErrorKind::shape_mismatch, "vertex permutation has wrong degree");
  const std::size_t internal = level_offset(m, n);
  std::string raw(internal * m, '\0');
  std::vector<char> seen(m);
  for (std::size_t u = 0; u < internal; ++u) {
    const std::size_t iu = u == 0 ? 0 : p[static_cast<Point>(u - 1)] + 1;
    std::fill(seen.begin(), seen.end(), 0);
    for (int x = 0; x < m; ++x) {
      const std::size_t c = p[static_cast<Point>(m * u + x)] + 1;
      const std::size_t lo = m * iu + 1;
      if (c < lo || c >= lo + m || seen[c - lo])
        fail(ErrorKind::not_an_automorphism, "vertex permutation does not respect the tree");
      seen[c - lo] = 1;
      raw[u * m + x] = static_cast<char>(c - lo);
    }
  }
  return Portrait::from_raw(m, n, std::move(raw));
}

Portrait section_of_vertex_perm(int m, int n, const Perm& p, std::size_t vertex, int d) {
  const Vertex v = vertex_at(m, vertex);
  const int k = v.level();
  if (k + d > n) fail(ErrorKind::depth_exceeded, "section exceeds quotient depth");
  const std::size_t rank = vertex - level_offset(m, k);
  std::string raw;
  raw.reserve(level_offset(m, d) * m);
  for (int j = 0; j < d; ++j) {
    const std::size_t width = pow_size(m, j);
    const std::size_t start = level_offset(m, k + j) + rank * width;
    for (std::size_t u = start; u < start + width; ++u) {
      const std::size_t iu = u == 0 ? 0 : p[static_cast<Point>(u - 1)] + 1;
      const std::size_t lo = m * iu + 1;
      for (int x = 0; x < m; ++x)
        raw += static_cast<char>(p[static_cast<Point>(m * u + x)] + 1 - lo);
    }
  }
  return Portrait::from_raw(m, d, std::move(raw));
}

}  // namespace selfsim
