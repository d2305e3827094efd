#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "spectral_chroma/linalg.hpp"

namespace spectral_chroma {

enum class Sense { minimize, maximize };
enum class RowRelation { less_equal, equal, greater_equal };
enum class LpStatus { optimal, infeasible, unbounded };

struct LinearProgram {
  Sense sense = Sense::minimize;
  std::vector<double> cost;            // one per variable
  Matrix constraints;                  // rows × variables
  std::vector<double> rhs;             // one per row
  std::vector<RowRelation> relations;  // one per row
  std::vector<double> lower;           // empty ⇒ all zero
  std::vector<std::optional<double>> upper;  // empty ⇒ unbounded above

  std::size_t num_variables() const { return cost.size(); }
  std::size_t num_rows() const { return rhs.size(); }
};

struct LPSolution {
  LpStatus status = LpStatus::infeasible;
  std::vector<double> x;
  // Row multipliers y with the sign convention of the program's sense: for a
  // minimization, c − Aᵀy is nonnegative on nonbasic columns at the lower
  // bound; ≥ rows carry y ≥ 0 and ≤ rows y ≤ 0.
  std::vector<double> duals;
  double objective = 0.0;
  double dual_objective = 0.0;
  double primal_residual = 0.0;  // max violation of rows and bounds
  std::vector<std::size_t> basis;
  int iterations = 0;
};

// Dense two-phase primal simplex; Dantzig pricing with a Bland fallback on
// degenerate stalls.
LPSolution solve_lp(const LinearProgram& lp);

}  // namespace spectral_chroma
