#pragma once

#include <vector>

#include "spectral_chroma/graph.hpp"
#include "spectral_chroma/linalg.hpp"
#include "spectral_chroma/sdp.hpp"

namespace spectral_chroma {

// Entrywise square root of w; entries below 1e-14 map to exactly 0.
std::vector<double> sqrt_weights(const WeightVector& w);
double weight_total(const WeightVector& w);

// max ⟨J,X⟩ s.t. tr X = 1, X_ij = 0 on edges, X ≽ 0.
BlockSdp lovasz_theta_program(const Graph& g);
double lovasz_theta(const Graph& g, const SdpOptions& opts = {});

// max ⟨√w√wᵀ, X⟩ s.t. tr X = k, X_ij = 0 on edges, 0 ≼ X ≼ I. Blocks are
// [X, I − X]; rows are the trace, one per edge, then X_ij + S'_ij = δ_ij for
// every i ≤ j.
BlockSdp theta_k_dual_program(const Graph& g, const WeightVector& w, double k);

// min kη + tr Y s.t. Y − (√w√wᵀ + Z) + ηI ≽ 0, Y ≽ 0, Z edge-supported. Blocks
// are [Y, W, η] with W the slack matrix; one row per non-edge pair i ≤ j (Z
// absorbs the edge positions). η is kept nonnegative: on the dual side that
// relaxes tr X = k to tr X ≤ k, which has the same optimum because the value
// is nondecreasing in k.
BlockSdp theta_k_primal_program(const Graph& g, const WeightVector& w, double k);

struct ThetaKDual {
  double value = 0.0;
  SymMatrix X;
  double solver_gap = 0.0;
  int iterations = 0;
};

struct ThetaKPrimal {
  double value = 0.0;
  SymMatrix Z;
  SymMatrix Y;
  double eta = 0.0;
  double solver_gap = 0.0;
  int iterations = 0;
};

struct ThetaKResult {
  double value = 0.0;  // objective of the dual witness X
  double k = 0.0;
  WeightVector w;
  SymMatrix dual_x;
  SymMatrix primal_z;
  SymMatrix primal_y;
  double eta = 0.0;
  double dual_value = 0.0;
  double primal_value = 0.0;
  double gap = 0.0;           // |primal_value − dual_value|
  double relative_gap = 0.0;  // gap / (1 + |value|)
};

// k ∈ {0, n} and w = 0 are answered analytically; otherwise the solver runs.
// Throws SolverError if the solve does not reach optimal status.
ThetaKDual theta_k_dual(const Graph& g, const WeightVector& w, double k, const SdpOptions& opts = {});
ThetaKPrimal theta_k_primal(const Graph& g, const WeightVector& w, double k, const SdpOptions& opts = {});

// Both formulations; throws CertificationError ("duality certification
// failed") when the values differ by more than 1e-6·(1 + |value|).
ThetaKResult theta_k(const Graph& g, const WeightVector& w, double k, const SdpOptions& opts = {});

// Throws InputError if Z has an entry above 1e-12 off the edge set (diagonal
// included).
void check_edge_support(const Graph& g, const SymMatrix& z, double tol = 1e-12);

// kyfan_sum(√w√wᵀ + Z, k): an upper bound on ϑ_k(G;w) for edge-supported Z.
double evaluate_Z(const Graph& g, const WeightVector& w, double k, const SymMatrix& z);

struct RecoveredPrimal {
  double eta = 0.0;
  SymMatrix Y;
  double objective = 0.0;  // kη + tr Y
};

// η = λ_k and Y = Σ_{i≤k} (λ_i − λ_k) v_i v_iᵀ from the spectrum of √w√wᵀ + Z.
RecoveredPrimal recover_primal_from_Z(const SymMatrix& z, const WeightVector& w, int k);

// (1 − t)X + tI with t = (ℓ − k)/(n − k): lifts a level-k feasible point of the
// dual program to level ℓ without decreasing the objective.
SymMatrix interpolate_dual(const SymMatrix& x, double k, double ell, std::size_t n);

}  // namespace spectral_chroma
