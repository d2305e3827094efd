#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "spectral_chroma/chromatic.hpp"
#include "spectral_chroma/graph.hpp"
#include "spectral_chroma/linalg.hpp"

namespace spectral_chroma {

struct ClaimCheck {
  std::string name;
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct Theorem2Certificate {
  SymMatrix M;
  double k = 0.0;  // χ_f, the value of the coloring
  WeightVector w;
  FractionalColoring coloring;  // equality form used to build M
  double trace_value = 0.0;
  double objective_value = 0.0;  // ⟨√w√wᵀ, M⟩
  std::vector<ClaimCheck> checks;

  bool pass() const;
};

// M = Σ y(S)·Diag(x_S)√w√wᵀDiag(x_S)/w(S) over the sets with w(S) ≠ 0. A set
// with w(S) = 0 contributes y(S)·Diag(x_S)/|S| instead, so tr M stays equal to
// the coloring value; it adds nothing to ⟨√w√wᵀ, M⟩ and keeps M ≼ I.
// Requires Ny = 1 within 1e-9 (InputError otherwise). Throws
// CertificationError naming the first failed claim.
Theorem2Certificate build_theorem2_matrix(const Graph& g, const WeightVector& w, const FractionalColoring& coloring);

struct DualFeasibilityReport {
  double trace_deviation = 0.0;  // |tr X − k|
  double max_edge_entry = 0.0;
  double min_eigenvalue = 0.0;
  double max_eigenvalue = 0.0;
  double objective = 0.0;  // ⟨√w√wᵀ, X⟩
  bool pass = false;
};

// Constraints of max ⟨√w√wᵀ,X⟩ s.t. tr X = k, X_ij = 0 on edges, 0 ≼ X ≼ I.
DualFeasibilityReport verify_dual_feasible(const Graph& g, const SymMatrix& x, double k, const WeightVector& w,
                                           double tol = 1e-6);

// Self-contained JSON (full double precision). Loading rebuilds M from the
// stored coloring and re-verifies every claim.
std::string theorem2_certificate_json(const Graph& g, const Theorem2Certificate& c);
Theorem2Certificate load_theorem2_certificate(std::string_view text, Graph* graph_out = nullptr);

}  // namespace spectral_chroma
