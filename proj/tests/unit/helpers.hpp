#pragma once

#include <algorithm>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "selfsim/perm.hpp"
#include "selfsim/tree.hpp"

namespace testing {

inline selfsim::Perm random_perm(std::mt19937_64& rng, int m) {
  std::vector<selfsim::Point> v(static_cast<std::size_t>(m));
  std::iota(v.begin(), v.end(), 0);
  for (int i = m - 1; i > 0; --i) {
    std::uniform_int_distribution<int> d(0, i);
    std::swap(v[static_cast<std::size_t>(i)], v[static_cast<std::size_t>(d(rng))]);
  }
  return selfsim::Perm(std::move(v));
}

inline selfsim::Portrait random_portrait(std::mt19937_64& rng, int m, int n) {
  std::string raw;
  for (std::size_t u = 0; u < selfsim::level_offset(m, n); ++u) {
    const selfsim::Perm p = random_perm(rng, m);
    for (auto x : p.images()) raw.push_back(static_cast<char>(x));
  }
  return selfsim::Portrait::from_raw(m, n, raw);
}

// Brute-force closure under right multiplication by generators.
inline std::set<selfsim::Perm> closure(std::size_t degree, const std::vector<selfsim::Perm>& gens) {
  std::set<selfsim::Perm> seen{selfsim::Perm(degree)};
  std::vector<selfsim::Perm> todo{selfsim::Perm(degree)};
  while (!todo.empty()) {
    selfsim::Perm g = todo.back();
    todo.pop_back();
    for (const auto& s : gens) {
      selfsim::Perm h = g * s;
      if (seen.insert(h).second) todo.push_back(h);
    }
  }
  return seen;
}

}  // namespace testing
