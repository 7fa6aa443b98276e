#pragma once

#include <random>
#include <vector>

#include "scenario.hpp"

namespace scfr::testing {

inline SemiCayleyGraph make_graph(std::vector<int64_t> factors,
                                  std::vector<Residues> r,
                                  std::vector<Residues> l,
                                  std::vector<Residues> s) {
  AbelianGroup group(std::move(factors));
  ConnectionSets sets;
  sets.right = std::move(r);
  sets.left = std::move(l);
  sets.spokes = std::move(s);
  return SemiCayleyGraph::build(std::move(group), std::move(sets));
}

inline std::vector<Residues> all_elements(const AbelianGroup& group) {
  std::vector<Residues> out;
  for (int64_t i = 0; i < group.order(); ++i) out.push_back(group.element_at(i));
  return out;
}

// The half-twist family with full spoke set: SC(Z_n, {n/2}, {n/2}, Z_n).
inline SemiCayleyGraph half_twist_graph(int64_t n) {
  AbelianGroup group({n});
  return make_graph({n}, {{n / 2}}, {{n / 2}}, all_elements(group));
}

// Assorted small graphs covering R != L, complex spoke sums, decoupled
// elements and disconnected cases.
inline std::vector<SemiCayleyGraph> small_catalog() {
  std::vector<SemiCayleyGraph> graphs;
  graphs.push_back(make_graph({2}, {}, {}, {{0}}));             // matching
  graphs.push_back(make_graph({2}, {}, {}, {{0}, {1}}));        // 4-cycle
  graphs.push_back(make_graph({2}, {{1}}, {{1}}, {{0}}));       // 4-cycle, spoked
  graphs.push_back(make_graph({3}, {}, {}, {{0}, {1}, {2}}));   // K_{3,3}
  graphs.push_back(half_twist_graph(6));
  graphs.push_back(make_graph({4}, {}, {}, {{1}}));             // disjoint edges, complex chi_S
  graphs.push_back(make_graph({4}, {{1}, {3}}, {{2}}, {{0}, {1}}));  // R != L
  graphs.push_back(make_graph({2, 2}, {{1, 0}}, {{0, 1}}, {{0, 0}, {1, 1}}));
  graphs.push_back(make_graph({2}, {{1}}, {}, {{0}}));          // path P4
  graphs.push_back(make_graph({5}, {{1}, {4}}, {{1}, {4}}, {{0}}));  // non-integral
  graphs.push_back(make_graph({2}, {{1}}, {}, {}));             // disconnected, S empty
  graphs.push_back(make_graph({6}, {{2}, {4}}, {{2}, {4}}, {{0}, {3}}));
  return graphs;
}

struct RandomGraphGen {
  std::mt19937 rng;
  explicit RandomGraphGen(uint32_t seed) : rng(seed) {}

  SemiCayleyGraph next(int64_t max_order = 8) {
    static const std::vector<std::vector<int64_t>> shapes = {
        {2}, {3}, {4}, {5}, {6}, {7}, {8}, {2, 2}, {2, 3}, {2, 4}, {2, 2, 2},
        {3, 3}};
    std::vector<const std::vector<int64_t>*> eligible;
    for (const auto& shape : shapes) {
      int64_t order = 1;
      for (int64_t f : shape) order *= f;
      if (order <= max_order) eligible.push_back(&shape);
    }
    const AbelianGroup group(*eligible[rng() % eligible.size()]);
    std::vector<char> rm(group.order(), 0), lm(group.order(), 0);
    for (int64_t i = 1; i < group.order(); ++i) {
      const int64_t inv = group.index_of(group.negate(group.element_at(i)));
      if (rng() % 2) rm[i] = rm[inv] = 1;
      if (rng() % 2) lm[i] = lm[inv] = 1;
    }
    ConnectionSets sets;
    for (int64_t i = 1; i < group.order(); ++i) {
      if (rm[i]) sets.right.push_back(group.element_at(i));
      if (lm[i]) sets.left.push_back(group.element_at(i));
    }
    for (int64_t i = 0; i < group.order(); ++i)
      if (rng() % 2) sets.spokes.push_back(group.element_at(i));
    return SemiCayleyGraph::build(group, std::move(sets));
  }
};

}  // namespace scfr::testing
