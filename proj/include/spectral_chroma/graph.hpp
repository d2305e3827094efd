#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "spectral_chroma/linalg.hpp"

namespace spectral_chroma {

using Edge = std::pair<std::size_t, std::size_t>;  // always first < second

// Simple undirected graph on vertices 0..n-1. Immutable after construction.
class Graph {
 public:
  Graph() = default;
  // Self-loops and out-of-range endpoints throw InputError; duplicates
  // (in either orientation) are collapsed.
  Graph(std::size_t n, const std::vector<Edge>& edges);

  static Graph empty(std::size_t n) { return Graph(n, {}); }

  std::size_t order() const noexcept { return n_; }
  std::size_t size() const noexcept { return edges_.size(); }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  bool adjacent(std::size_t i, std::size_t j) const { return adj_[i * n_ + j] != 0; }
  const std::vector<std::size_t>& neighbors(std::size_t i) const { return nbrs_[i]; }
  std::size_t degree(std::size_t i) const { return nbrs_[i].size(); }

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.n_ == b.n_ && a.edges_ == b.edges_;
  }

 private:
  std::size_t n_ = 0;
  std::vector<Edge> edges_;  // sorted lexicographically
  std::vector<unsigned char> adj_;
  std::vector<std::vector<std::size_t>> nbrs_;
};

// Nonnegative vertex weights.
using WeightVector = std::vector<double>;

// Throws InputError unless every entry is finite and ≥ 0 and the length is n.
void check_weights(const WeightVector& w, std::size_t n);

Graph parse_graph6(std::string_view text);
std::string encode_graph6(const Graph& g);
// "p edge n m" header, then "e i j" lines, 1-indexed. "c" lines are comments.
Graph parse_dimacs(std::string_view text);
// One "i j" pair per line, 0-indexed; n is 1 + the largest index unless
// `order` is given.
Graph parse_edge_list(std::string_view text, std::size_t order = 0);

Graph complement(const Graph& g);
SymMatrix adjacency_matrix(const Graph& g);

// Portable 64-bit generator: state advances by the golden-ratio increment
// 0x9E3779B97F4A7C15 and each output is the splitmix64 finalizer of the new
// state. Satisfies UniformRandomBitGenerator.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
  result_type operator()();
  // Uniform double in [0, 1) from the top 53 bits.
  double uniform();

 private:
  std::uint64_t state_;
};

enum class FamilyKind { cycle, complete, empty, kneser, complete_multipartite, petersen, erdos_renyi };

struct FamilySpec {
  FamilyKind kind = FamilyKind::empty;
  // cycle/complete/empty: {n}; kneser: {n, k}; complete-multipartite: part
  // sizes; petersen: {}; erdos-renyi: {n} with probability `p`.
  std::vector<long long> params;
  double p = 0.5;
  std::uint64_t seed = 0;

  // Human-readable name used in reports, e.g. "kneser-7-3".
  std::string name() const;
};

FamilyKind parse_family_kind(std::string_view s);
std::string to_string(FamilyKind k);

// Graph of the family. Kneser vertices are k-subsets in colexicographic order.
// erdos-renyi includes pair (i,j), i<j in lexicographic order, when the next
// SplitMix64 uniform draw is < p.
Graph generate(const FamilySpec& spec);

// k-subsets of {0..n-1} in colexicographic order, as bitmasks.
std::vector<std::uint64_t> colex_subsets(int n, int k);

}  // namespace spectral_chroma
