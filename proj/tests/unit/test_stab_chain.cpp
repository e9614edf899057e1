#include <doctest.h>

#include <map>

#include "helpers.hpp"
#include "selfsim/errors.hpp"
#include "selfsim/group_spec.hpp"
#include "selfsim/quotient.hpp"
#include "selfsim/stab_chain.hpp"

using namespace selfsim;

namespace {

std::vector<Perm> level_perms(const GroupSpec& spec, int n) {
  std::vector<Perm> out;
  for (const auto& g : level_generators(spec, n)) out.push_back(to_leaf_permutation(g));
  return out;
}

}  // namespace

TEST_CASE("orders of small groups") {
  const std::vector<Perm> none;
  CHECK(StabChain::build(4, none).order() == 1);
  const std::vector<Perm> cyc{Perm::from_one_line("2 3 4 5 1")};
  CHECK(StabChain::build(5, cyc).order() == 5);
  // GGS p=3 alpha=(1,0) on the 9 leaves of level 2.
  const auto g2 = level_perms(ggs_spec(3, {1, 0}), 2);
  CHECK(StabChain::build(9, g2).order() == 81);
  // root swap plus one swap below each child: all of Aut T_2
  const std::vector<Perm> full{Perm::from_one_line("3 4 1 2"), Perm::from_one_line("2 1 3 4"),
                               Perm::from_one_line("1 2 4 3")};
  const StabChain c = StabChain::build(4, full);
  CHECK(c.order() == 8);
  CHECK(testing::closure(4, full).size() == 8);
}

TEST_CASE("membership") {
  const std::vector<Perm> cyc{Perm::from_one_line("2 3 1")};
  const StabChain c = StabChain::build(3, cyc);
  CHECK(c.contains(c.identity()));
  CHECK_FALSE(c.contains(Perm::from_one_line("2 1 3")));
  CHECK_THROWS_AS(StabChain::build(0, cyc), Error);
}

TEST_CASE("enumeration lists each element once") {
  CHECK(StabChain::build(3, std::vector<Perm>{}).elements().size() == 1);
  const std::vector<Perm> t{Perm::from_one_line("2 1")};
  const auto two = StabChain::build(2, t).elements();
  CHECK(std::set<Perm>(two.begin(), two.end()) == std::set<Perm>{Perm(2), t[0]});
  const auto g2 = level_perms(ggs_spec(3, {1, 0}), 2);
  const StabChain c = StabChain::build(9, g2);
  const auto els = c.elements();
  CHECK(els.size() == 81);
  CHECK(std::set<Perm>(els.begin(), els.end()) == testing::closure(9, g2));
  CHECK_THROWS_AS(c.elements(80), Error);
  try {
    c.elements(80);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::enumeration_too_large);
    CHECK(e.is_resource_limit());
  }
}

TEST_CASE("random groups agree with brute-force closure") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    const int deg = 3 + trial % 5;
    std::vector<Perm> gens;
    for (int k = 0; k < 1 + trial % 3; ++k) gens.push_back(testing::random_perm(rng, deg));
    const auto all = testing::closure(static_cast<std::size_t>(deg), gens);
    const StabChain c = StabChain::build(static_cast<std::size_t>(deg), gens);
    CHECK(c.order() == all.size());
    for (int k = 0; k < 10; ++k) {
      const Perm x = testing::random_perm(rng, deg);
      CHECK(c.contains(x) == (all.count(x) == 1));
    }
    // invariant under reordering and redundant generators
    std::vector<Perm> shuffled(gens.rbegin(), gens.rend());
    shuffled.push_back(gens[0] * gens.back());
    CHECK(StabChain::build(static_cast<std::size_t>(deg), shuffled).order() == c.order());
    // |G : G_P| equals the orbit of the tuple P
    std::vector<Point> pts{0, static_cast<Point>(deg - 1)};
    const StabChain st = c.pointwise_stabilizer(pts);
    CHECK(c.order() % st.order() == 0);
    std::set<std::pair<Point, Point>> orbit;
    for (const Perm& g : all) orbit.insert({g[pts[0]], g[pts[1]]});
    CHECK(c.order() / st.order() == orbit.size());
    for (const Perm& g : st.elements()) CHECK((g[pts[0]] == pts[0] && g[pts[1]] == pts[1]));
  }
}

TEST_CASE("pointwise stabilizer examples") {
  const std::vector<Perm> s3{Perm::from_one_line("2 3 1"), Perm::from_one_line("2 1 3")};
  const StabChain c = StabChain::build(3, s3);
  CHECK(c.pointwise_stabilizer(std::vector<Point>{}).order() == 6);
  CHECK(c.pointwise_stabilizer(std::vector<Point>{0}).order() == 2);
  // level 2 of GGS acts faithfully on its leaves
  QuotientTower t(ggs_spec(3, {1, 0}));
  const LevelQuotient& q = t.level(2);
  std::vector<Point> leaves;
  for (std::size_t v = level_offset(3, 2); v < level_offset(3, 3); ++v)
    leaves.push_back(static_cast<Point>(v - 1));
  CHECK(q.chain().pointwise_stabilizer(leaves).order() == 1);
}

TEST_CASE("uniform sampling") {
  const std::vector<Perm> none;
  CHECK(StabChain::build(3, none).sample_uniform(5).is_identity());
  const std::vector<Perm> t{Perm::from_one_line("2 1")};
  const StabChain c = StabChain::build(2, t);
  std::mt19937_64 rng(99);
  int swaps = 0;
  const int draws = 10000;
  for (int i = 0; i < draws; ++i) swaps += c.random_element(rng).is_identity() ? 0 : 1;
  CHECK(std::abs(swaps / double(draws) - 0.5) < 0.02);
  const auto g2 = level_perms(ggs_spec(3, {1, 0}), 2);
  const StabChain g = StabChain::build(9, g2);
  CHECK(g.sample_uniform(42) == g.sample_uniform(42));
  CHECK(g.contains(g.sample_uniform(42)));
  // pushed to the root action every image is equally likely
  std::map<Point, int> fib;
  std::mt19937_64 r2(5);
  for (int i = 0; i < 3000; ++i) fib[g.random_element(r2)[0] / 3]++;
  CHECK(fib.size() == 3);
  for (auto& [k, c3] : fib) CHECK(std::abs(c3 / 3000.0 - 1.0 / 3) < 0.04);
}

TEST_CASE("uniform_below is unbiased in range") {
  std::mt19937_64 rng(1);
  std::vector<int> hits(7, 0);
  for (int i = 0; i < 7000; ++i) hits[uniform_below(rng, 7)]++;
  for (int h : hits) CHECK(std::abs(h - 1000) < 150);
}
