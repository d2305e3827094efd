#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "spectral_chroma/certify.hpp"
#include "spectral_chroma/chromatic.hpp"
#include "spectral_chroma/graph.hpp"
#include "spectral_chroma/linalg.hpp"

namespace spectral_chroma {

// A lower-bound certificate is accepted when S(m) of the unit-norm matrix
// exceeds this.
constexpr double kLoCertificateTol = 1e-7;

// S(m) = λ₁ + (m − 1 smallest eigenvalues), from a descending spectrum.
// Requires 2 ≤ m ≤ n.
double hoffman_partial_sum(std::span<const double> descending, int m);
double hoffman_partial_sum(const SymMatrix& z, int m);

// 1 + max{m ∈ [2,n] : S(m) > 1e-9·‖Z‖_F}, or 1 if there is none. A lower bound
// on χ(G) whenever Z is edge-supported.
int hoffman_bound(const SymMatrix& z);

// 1 − λ₁/λₙ. Requires λₙ < 0.
double ratio_bound(const SymMatrix& z);

// Symmetric matrix with the given values on the edges of g (in g.edges()
// order) and zeros elsewhere.
SymMatrix edge_matrix(const Graph& g, std::span<const double> values);

struct SearchBudget {
  int restarts = 20;
  int iterations = 500;
  // Stop as soon as the best value exceeds this.
  double stop_above = std::numeric_limits<double>::infinity();
};

struct ZSearchResult {
  SymMatrix Z;  // unit Frobenius norm, edge-supported
  double S = -std::numeric_limits<double>::infinity();
};

// Projected subgradient ascent of S(m) over unit-norm edge-supported Z. The
// first restart starts from the adjacency matrix, the rest from seeded random
// edge values. Step 1/√t.
ZSearchResult z_search(const Graph& g, int m, const SearchBudget& budget = {}, std::uint64_t seed = 0);

struct ZToW {
  WeightVector w;
  SymMatrix certifying_Z;  // −DZD, edge-supported
  double total = 0.0;      // wᵀ1
  double theta_m = 0.0;    // certified solve of ϑ_m(G;w)
  double upper_bound = 0.0;  // kyfan_sum(√w√wᵀ − DZD, m) = wᵀ1 − S(m)
};

// Requires S(m)(Z) > 0. Conjugates Z by D = diag(±1) so the top eigenvector v is
// nonnegative and sets √w = c·v with c² = λ₁ − λₙ. Verifies ϑ_m(G;w) < wᵀ1 by a
// solve (CertificationError with both sides otherwise).
ZToW z_to_w(const Graph& g, const SymMatrix& z, int m);

struct WToZ {
  SymMatrix Z;  // −Z of the primal optimum, scaled to unit Frobenius norm
  double S = 0.0;            // S(m) of the unit-norm matrix
  double S_unscaled = 0.0;   // S(m) of −Z as solved
  double deficit = 0.0;      // wᵀ1 − ϑ_m(G;w)
  bool meets_deficit = false;  // S_unscaled ≥ deficit − 1e-6
};

// Requires ϑ_m(G;w) < wᵀ1 − 1e-6 (InputError otherwise). Solves the primal
// program and returns −Z; throws CertificationError unless S(m) > 1e-7.
WToZ w_to_z(const Graph& g, const WeightVector& w, int m);

// Smallest integer k ≥ 1 with ϑ_k(G;w) ≥ wᵀ1 − 1e-6, by binary search.
int min_k_for_weight(const Graph& g, const WeightVector& w);

// Local minimization of ϑ_k(G; s²) over s ≥ 0, ‖s‖ = 1. Returns w = s² when
// ϑ_k(G;w) < 1 − 1e-6 is certified.
std::optional<WeightVector> w_search_refute(const Graph& g, int k, const SearchBudget& budget, std::uint64_t seed = 0);

struct LoCertificate {
  enum class Kind { z_search, w_refute };
  Kind kind = Kind::z_search;
  int m = 0;    // certifies h(G) ≥ m + 1
  SymMatrix Z;  // unit norm
  WeightVector w;  // refuting weight for kind w_refute
  double value = 0.0;  // S(m) of Z
};

std::string to_string(LoCertificate::Kind k);

// Fresh eigendecomposition of the normalized Z, edge support and S(m) > tol.
// Returns the recomputed S(m); throws CertificationError on failure.
double verify_lo_certificate(const Graph& g, const LoCertificate& c, double tol = kLoCertificateTol);

struct HBracketOptions {
  SearchBudget z_budget{20, 500};
  SearchBudget w_budget{3, 25};
  bool use_w_search = true;
  std::uint64_t seed = 0;
};

struct HBracket {
  int lo = 1;
  int hi = 1;
  double theta_complement = 0.0;  // ϑ(Ḡ)
  int theta_ceiling = 1;          // ⌈ϑ(Ḡ) − 1e-6⌉
  FractionalChromatic chi_f;
  std::vector<LoCertificate> lo_certificates;
  std::optional<Theorem2Certificate> hi_certificate;  // w = 1
};

// lo = max(⌈ϑ(Ḡ) − 1e-6⌉, 1 + largest certified m), hi = ⌈χ_f⌉. Edgeless graphs
// give (1,1). Throws InternalError if lo > hi.
HBracket h_bracket(const Graph& g, const HBracketOptions& opts = {});

std::string lo_certificate_json(const Graph& g, const LoCertificate& c);
// Parses and re-verifies.
LoCertificate load_lo_certificate(std::string_view text, Graph* graph_out = nullptr);

}  // namespace spectral_chroma
