#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "spectral_chroma/graph.hpp"

namespace spectral_chroma {

// Exact combinatorial routines enumerate with 64-bit masks and refuse larger
// inputs.
constexpr std::size_t kMaxExactOrder = 40;

using VertexSet = std::vector<std::size_t>;  // sorted

bool is_coclique(const Graph& g, const VertexSet& s);

struct FractionalColoring {
  std::vector<VertexSet> cocliques;
  std::vector<double> y;  // aligned with cocliques, ≥ 0
  double value = 0.0;     // Σ y

  // Σ_S y(S)·x_S, one entry per vertex.
  std::vector<double> coverage(std::size_t n) const;
};

struct Rational {
  long long num = 0;
  long long den = 1;
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  std::string str() const;  // "p/q", or "p" when q = 1
  friend bool operator==(const Rational&, const Rational&) = default;
};

// Continued-fraction convergents of x with denominator ≤ max_den; the first one
// within tol of x is returned.
std::optional<Rational> rational_reconstruct(double x, long long max_den, double tol = 1e-7);

// Inclusion-maximal independent sets, each sorted, list in lexicographic order.
std::vector<VertexSet> maximal_cocliques(const Graph& g);
std::size_t stability_number(const Graph& g);
std::size_t clique_number(const Graph& g);

// Proper coloring with the minimum number of colors (DSATUR branch and bound
// with a clique lower bound). colors[v] ∈ [0, χ).
std::vector<int> optimal_coloring(const Graph& g);
std::size_t chromatic_number(const Graph& g);

struct FractionalChromatic {
  double value = 0.0;
  FractionalColoring witness;        // covering form, Ny ≥ 1
  std::optional<Rational> rational;  // denominator ≤ n, verified to 1e-7
};

// min 1ᵀy s.t. Ny ≥ 1, y ≥ 0 over the maximal cocliques.
FractionalChromatic fractional_chromatic(const Graph& g);

// Same value with Ny = 1: over-covered vertices are removed from enough of the
// sets containing them. Sets can shrink to empty; those keep their weight so
// the value is unchanged.
FractionalColoring equality_form(const FractionalColoring& witness, const Graph& g);

}  // namespace spectral_chroma
