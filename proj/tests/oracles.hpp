#pragma once

// Independent reference computations for the tests. Nothing here calls the
// library's solvers; only Graph is shared.

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "spectral_chroma/graph.hpp"

#ifndef SPECTRAL_CHROMA_TEST_DATA
#define SPECTRAL_CHROMA_TEST_DATA "tests/data"
#endif

namespace oracle {

using spectral_chroma::Graph;

inline Graph random_graph(std::size_t n, double p, std::mt19937_64& rng) {
  std::bernoulli_distribution coin(p);
  std::vector<spectral_chroma::Edge> e;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (coin(rng)) e.emplace_back(i, j);
  return Graph(n, e);
}

inline std::vector<double> random_weights(std::size_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 2.0);
  std::vector<double> w(n);
  for (double& x : w) x = u(rng);
  return w;
}

inline bool independent(const Graph& g, std::uint32_t mask) {
  for (auto [i, j] : g.edges())
    if ((mask >> i & 1u) && (mask >> j & 1u)) return false;
  return true;
}

// α by enumerating all subsets.
inline std::size_t alpha(const Graph& g) {
  std::size_t best = 0;
  for (std::uint32_t s = 0; s < (1u << g.order()); ++s)
    if (independent(g, s)) best = std::max<std::size_t>(best, std::popcount(s));
  return best;
}

// Can the vertices in `mask` be split into k cocliques? Plain backtracking.
inline bool colorable(const Graph& g, std::uint32_t mask, int k) {
  std::vector<std::size_t> vs;
  for (std::size_t v = 0; v < g.order(); ++v)
    if (mask >> v & 1u) vs.push_back(v);
  std::vector<int> col(g.order(), -1);
  auto rec = [&](auto&& self, std::size_t i) -> bool {
    if (i == vs.size()) return true;
    const std::size_t v = vs[i];
    for (int c = 0; c < k; ++c) {
      bool ok = true;
      for (std::size_t u : g.neighbors(v))
        if (col[u] == c) ok = false;
      if (!ok) continue;
      col[v] = c;
      if (self(self, i + 1)) return true;
      col[v] = -1;
    }
    return false;
  };
  return rec(rec, 0);
}

inline std::size_t chi(const Graph& g) {
  const std::uint32_t all = (1u << g.order()) - 1;
  for (int k = 0;; ++k)
    if (colorable(g, all, k)) return static_cast<std::size_t>(k);
}

// Largest induced k-colorable subgraph.
inline std::size_t alpha_k(const Graph& g, int k) {
  std::size_t best = 0;
  for (std::uint32_t s = 0; s < (1u << g.order()); ++s)
    if (static_cast<std::size_t>(std::popcount(s)) > best && colorable(g, s, k)) best = std::popcount(s);
  return best;
}

// Adjacency spectrum of C_n: 2cos(2πj/n).
inline std::vector<double> cycle_spectrum(std::size_t n) {
  std::vector<double> ev;
  for (std::size_t j = 0; j < n; ++j) ev.push_back(2.0 * std::cos(2.0 * std::numbers::pi * j / n));
  std::sort(ev.rbegin(), ev.rend());
  return ev;
}

// ϑ(C_n) for odd n.
inline double theta_odd_cycle(std::size_t n) {
  const double c = std::cos(std::numbers::pi / n);
  return n * c / (1.0 + c);
}

inline long long binomial(int n, int k) {
  long long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// Number of maximal independent sets of C_n (Perrin numbers).
inline long long perrin(int n) {
  std::vector<long long> p{3, 0, 2};
  while (static_cast<int>(p.size()) <= n) p.push_back(p[p.size() - 2] + p[p.size() - 3]);
  return p[n];
}

inline std::vector<std::string> small_graphs() {
  std::ifstream f(std::string(SPECTRAL_CHROMA_TEST_DATA) + "/graphs_upto7.g6");
  std::vector<std::string> out;
  for (std::string line; std::getline(f, line);)
    if (!line.empty()) out.push_back(line);
  return out;
}

}  // namespace oracle
