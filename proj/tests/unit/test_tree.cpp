#include <doctest.h>

#include "helpers.hpp"
#include "selfsim/errors.hpp"
#include "selfsim/group_spec.hpp"

using namespace selfsim;

namespace {

Portrait rooted(int m, int depth, const Perm& root) {
  std::vector<Portrait> kids(static_cast<std::size_t>(m), Portrait(m, depth - 1));
  return assemble(root, kids);
}

Vertex concat(const Vertex& a, const Vertex& b) {
  Vertex r = a;
  r.letters.insert(r.letters.end(), b.letters.begin(), b.letters.end());
  return r;
}

}  // namespace

TEST_CASE("perm one-line parsing and left-to-right product") {
  const Perm a = Perm::from_one_line("2 3 1");
  const Perm b = Perm::from_one_line("2 1 3");
  CHECK(a.to_string() == "2 3 1");
  // ab applies a first: 1 -> 2 -> 1.
  CHECK((a * b)[0] == 0);
  CHECK((a * b).to_string() == "1 3 2");
  CHECK((a * a.inverse()).is_identity());
  CHECK(element_order(a) == 3);
  CHECK_THROWS_AS(Perm::from_one_line("1 1 2"), Error);
  CHECK_THROWS_AS(Perm::from_one_line("0 1"), Error);
}

TEST_CASE("vertex parsing and BFS indices") {
  CHECK(Vertex::parse("root").level() == 0);
  CHECK(Vertex::parse("2 1").letters == std::vector<int>{2, 1});
  for (int m : {2, 3, 5})
    for (std::size_t i = 0; i < level_offset(m, 4); ++i) CHECK(vertex_index(m, vertex_at(m, i)) == i);
  const auto lv = level_vertices(3, 2);
  CHECK(std::is_sorted(lv.begin(), lv.end()));
  CHECK(vertex_index(3, lv.front()) == level_offset(3, 2));
}

TEST_CASE("apply examples") {
  const Portrait id(3, 2);
  CHECK(apply(id, Vertex::parse("2 1")) == Vertex::parse("2 1"));
  const Portrait a = rooted(3, 2, Perm::from_one_line("2 3 1"));
  CHECK(apply(a, Vertex::parse("1 1")) == Vertex::parse("2 1"));
  const Portrait b = truncate_generator(ggs_spec(3, {1, 0}), "b", 2);
  CHECK(apply(b, Vertex::parse("1 2")) == Vertex::parse("1 3"));
  CHECK(b.label_is_identity(0));
  CHECK(b.label(1) == Perm::from_one_line("2 3 1"));
  CHECK(b.label_is_identity(2));
  CHECK(b.label_is_identity(3));
}

TEST_CASE("compose, invert, section, truncate examples") {
  std::mt19937_64 rng(7);
  const Portrait g = testing::random_portrait(rng, 3, 3);
  CHECK(compose(g, invert(g)).is_identity());
  const Portrait a = rooted(3, 3, Perm::from_one_line("2 3 1"));
  CHECK(compose(a, compose(a, a)).is_identity());
  CHECK(invert(a) == rooted(3, 3, Perm::from_one_line("3 1 2")));
  CHECK(invert(Portrait(2, 3)).is_identity());
  CHECK(section(Portrait(2, 3), Vertex::parse("1 2"), 1).is_identity());
  for (int x = 1; x <= 3; ++x) CHECK(section(a, Vertex({x}), 2).is_identity());
  CHECK(truncate(g, 3) == g);
  CHECK(truncate(g, 0).is_identity());

  const GroupSpec ggs = ggs_spec(3, {1, 0});
  for (int n = 2; n <= 4; ++n)
    CHECK(section(truncate_generator(ggs, "b", n), Vertex({1}), n - 1) ==
          truncate_generator(ggs, "a", n - 1));
}

TEST_CASE("leaf permutation examples") {
  CHECK(to_leaf_permutation(Portrait(2, 2)).is_identity());
  const Portrait s = rooted(2, 2, Perm::from_one_line("2 1"));
  CHECK(to_leaf_permutation(s).to_string() == "3 4 1 2");
  // A permutation that breaks the tree structure.
  CHECK_THROWS_AS(from_leaf_permutation(2, 2, Perm::from_one_line("2 3 1 4")), Error);
}

TEST_CASE("serialization round trip") {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 20; ++i) {
    const Portrait g = testing::random_portrait(rng, 3, 2);
    CHECK(Portrait::parse(g.serialize()) == g);
  }
  CHECK_THROWS_AS(Portrait::parse("2 2; 1 2; 1 1; 1 2"), Error);
}

TEST_CASE("portrait properties on random elements") {
  std::mt19937_64 rng(2024);
  for (int m : {2, 3}) {
    const int n = 4;
    for (int trial = 0; trial < 40; ++trial) {
      const Portrait g = testing::random_portrait(rng, m, n);
      const Portrait h = testing::random_portrait(rng, m, n);
      const Portrait gh = compose(g, h);
      // leaf action is a homomorphism and injective
      CHECK(to_leaf_permutation(gh) == to_leaf_permutation(g) * to_leaf_permutation(h));
      CHECK(from_leaf_permutation(m, n, to_leaf_permutation(g)) == g);
      CHECK(from_vertex_permutation(m, n, to_vertex_permutation(g)) == g);
      CHECK(to_vertex_permutation(gh) == to_vertex_permutation(g) * to_vertex_permutation(h));
      for (int k = 0; k <= n; ++k) {
        CHECK(truncate(gh, k) == compose(truncate(g, k), truncate(h, k)));
        CHECK(truncate(invert(g), k) == invert(truncate(g, k)));
      }
      for (std::size_t vi = 0; vi < level_offset(m, 3); ++vi) {
        const Vertex v = vertex_at(m, vi);
        const int d = n - v.level();
        // section homomorphism
        CHECK(section(gh, v, d) == compose(section(g, v, d), section(h, apply(g, v), d)));
        if (d >= 1) CHECK(truncate(section(g, v, d), d - 1) == section(truncate(g, n - 1), v, d - 1));
        CHECK(section_of_vertex_perm(m, n, to_vertex_permutation(g), vi, d) == section(g, v, d));
        // (vu)^g = v^g u^{g|_v}
        for (const Vertex& u : level_vertices(m, d))
          CHECK(apply(g, concat(v, u)) == concat(apply(g, v), apply(section(g, v, d), u)));
      }
    }
  }
}

TEST_CASE("shape errors") {
  CHECK_THROWS_AS(compose(Portrait(2, 2), Portrait(2, 3)), Error);
  CHECK_THROWS_AS(section(Portrait(2, 2), Vertex::parse("1 1"), 1), Error);
  CHECK_THROWS_AS(truncate(Portrait(2, 2), 3), Error);
  CHECK_THROWS_AS(apply(Portrait(2, 2), Vertex::parse("1 1 1")), Error);
  CHECK_THROWS_AS(apply(Portrait(2, 2), Vertex::parse("3")), Error);
}
