#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "spectral_chroma/linalg.hpp"
#include "spectral_chroma/lp.hpp"

namespace spectral_chroma {

// One symmetric nonzero of a block-diagonal matrix. Off-diagonal entries
// (row != col) stand for both (row,col) and (col,row).
struct SdpEntry {
  std::size_t block = 0;
  std::size_t row = 0;
  std::size_t col = 0;
  double value = 0.0;
};

using SparseBlockMatrix = std::vector<SdpEntry>;
using BlockMatrix = std::vector<SymMatrix>;

struct SdpConstraint {
  SparseBlockMatrix entries;
  double rhs = 0.0;
};

// Standard form
//   maximize (or minimize) ⟨C, X⟩  s.t.  ⟨A_i, X⟩ = b_i,  X ≽ 0 blockwise,
// with dual (max sense)  minimize bᵀy  s.t.  Σ y_i A_i − C = S ≽ 0,
// and for min sense      maximize bᵀy  s.t.  C − Σ y_i A_i = S ≽ 0.
struct BlockSdp {
  std::vector<std::size_t> blocks;
  SparseBlockMatrix objective;
  std::vector<SdpConstraint> constraints;
  Sense sense = Sense::maximize;

  // Throws InputError on out-of-range entries or an empty constraint list.
  void validate() const;
  // Largest absolute value over C, every A_i and b.
  double data_norm() const;
};

enum class SdpStatus { optimal, inaccurate, failed };
std::string to_string(SdpStatus s);

struct SdpSolution {
  SdpStatus status = SdpStatus::failed;
  BlockMatrix X;
  std::vector<double> y;
  BlockMatrix S;
  double primal_objective = 0.0;
  double dual_objective = 0.0;
  double primal_residual = 0.0;  // ‖b − A(X)‖₂ / (1 + ‖b‖₂)
  double dual_residual = 0.0;    // ‖dual equation residual‖_F / (1 + ‖C‖_F)
  double relative_gap = 0.0;     // |pobj − dobj| / (1 + |pobj| + |dobj|)
  int iterations = 0;
  std::string message;
};

struct SdpOptions {
  int max_iterations = 200;
  double target_tolerance = 1e-8;   // stop when all three measures fall below
  double optimal_tolerance = 1e-6;  // "optimal" status threshold
  double step_fraction = 0.98;
  // Starting point X = S = τI. Zero picks X = ζI, S = ηI per block with
  // ζ, η ≥ max(10, √n) scaled up by the constraint and objective norms.
  double initial_scale = 0.0;
  // One line per iteration on stderr.
  bool verbose = false;
};

// Infeasible-start HKM primal-dual predictor-corrector.
SdpSolution solve_sdp(const BlockSdp& p, const SdpOptions& opts = {});

struct SdpCheck {
  double primal_residual = 0.0;  // max |⟨A_i,X⟩ − b_i|
  double dual_residual = 0.0;    // max-abs entry of the dual equation residual
  double min_eig_X = 0.0;        // over all blocks
  double min_eig_S = 0.0;
  double primal_objective = 0.0;
  double dual_objective = 0.0;
  double relative_gap = 0.0;
  bool pass = false;
};

// Absolute residuals of (X, y, S) against the program; passes when the
// residuals are ≤ tol·(1 + scale), eigenvalues ≥ −tol·(1 + data_norm) and the
// relative gap is ≤ tol.
SdpCheck check_solution(const BlockSdp& p, const SdpSolution& sol, double tol);

// ⟨A, X⟩ for a sparse block matrix A.
double apply(const SparseBlockMatrix& a, const BlockMatrix& x);
BlockMatrix to_dense(const SparseBlockMatrix& a, const std::vector<std::size_t>& blocks);

// JSON interchange: {"schema":1,"sense":"max"|"min","blocks":[...],
// "objective":[[block,row,col,value],...],
// "constraints":[{"rhs":b,"entries":[[block,row,col,value],...]},...]}.
std::string export_sdp_json(const BlockSdp& p);
BlockSdp import_sdp_json(std::string_view text);

}  // namespace spectral_chroma
