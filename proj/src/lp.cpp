#include "spectral_chroma/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "spectral_chroma/errors.hpp"

namespace spectral_chroma {

namespace {

constexpr double kPivotTol = 1e-9;
constexpr double kCostTol = 1e-10;
constexpr int kMaxPivots = 200000;
constexpr int kBlandAfter = 50;

// Dense tableau over internal columns; row 0..m-1 constraints, basis[i] is
// the column basic in row i. The objective row is kept separately.
struct Tableau {
  std::size_t m = 0;
  std::size_t cols = 0;
  Matrix t;                   // m × (cols + 1), last column = rhs
  std::vector<std::size_t> basis;
  int pivots = 0;

  double& rhs(std::size_t i) { return t(i, cols); }

  void pivot(std::size_t row, std::size_t col, std::vector<double>& obj) {
    const double p = t(row, col);
    auto pr = t.row(row);
    for (double& v : pr) v /= p;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == row) continue;
      const double f = t(i, col);
      if (f == 0.0) continue;
      auto ri = t.row(i);
      for (std::size_t j = 0; j <= cols; ++j) ri[j] -= f * pr[j];
      ri[col] = 0.0;
    }
    const double f = obj[col];
    if (f != 0.0) {
      for (std::size_t j = 0; j <= cols; ++j) obj[j] -= f * pr[j];
      obj[col] = 0.0;
    }
    basis[row] = col;
    if (++pivots > kMaxPivots) throw SolverError("simplex: pivot limit exceeded (cycling guard)");
  }

  // Reduced-cost row for costs c (length cols): obj[j] = c_j − c_Bᵀ B⁻¹A_j,
  // obj[cols] = −c_Bᵀ x_B.
  std::vector<double> objective_row(const std::vector<double>& c) const {
    std::vector<double> obj(cols + 1, 0.0);
    for (std::size_t j = 0; j < cols; ++j) obj[j] = c[j];
    for (std::size_t i = 0; i < m; ++i) {
      const double cb = c[basis[i]];
      if (cb == 0.0) continue;
      auto ri = t.row(i);
      for (std::size_t j = 0; j <= cols; ++j) obj[j] -= cb * ri[j];
    }
    return obj;
  }

  // Dantzig pricing (most negative reduced cost); after a run of degenerate
  // pivots switch to Bland's lowest-index rule, which cannot cycle, until the
  // objective moves again. Ratio ties go to the lowest basic index. Reports
  // unboundedness through `unbounded`.
  int degenerate_run = 0;

  bool step(std::vector<double>& obj, const std::vector<bool>& allowed, bool& unbounded) {
    const bool bland = degenerate_run >= kBlandAfter;
    std::size_t enter = cols;
    double most = -kCostTol;
    for (std::size_t j = 0; j < cols; ++j) {
      if (!allowed[j] || obj[j] >= most) continue;
      enter = j;
      if (bland) break;
      most = obj[j];
    }
    if (enter == cols) return false;
    std::size_t leave = m;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < m; ++i) {
      const double a = t(i, enter);
      if (a <= kPivotTol) continue;
      const double ratio = t(i, cols) / a;
      if (ratio < best - 1e-12 || (std::abs(ratio - best) <= 1e-12 && basis[i] < basis[leave])) {
        best = ratio;
        leave = i;
      }
    }
    if (leave == m) {
      unbounded = true;
      return false;
    }
    degenerate_run = best <= 1e-12 ? degenerate_run + 1 : 0;
    pivot(leave, enter, obj);
    return true;
  }
};

// Solves Bᵀ y = c by Gaussian elimination with partial pivoting.
std::vector<double> solve_transposed(const Matrix& b, std::vector<double> c) {
  const std::size_t n = b.rows();
  Matrix a = b.transposed();
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::abs(a(i, k)) > std::abs(a(p, k))) p = i;
    if (std::abs(a(p, k)) < 1e-14) throw SolverError("simplex: singular basis while recovering duals");
    if (p != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
      std::swap(c[k], c[p]);
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      const double f = a(i, k) / a(k, k);
      if (f == 0.0) continue;
      for (std::size_t j = k; j < n; ++j) a(i, j) -= f * a(k, j);
      c[i] -= f * c[k];
    }
  }
  std::vector<double> y(n);
  for (std::size_t i = n; i-- > 0;) {
    double s = c[i];
    for (std::size_t j = i + 1; j < n; ++j) s -= a(i, j) * y[j];
    y[i] = s / a(i, i);
  }
  return y;
}

}  // namespace

LPSolution solve_lp(const LinearProgram& lp) {
  const std::size_t nv = lp.num_variables();
  const std::size_t mu = lp.num_rows();
  if (lp.constraints.rows() != mu || (mu > 0 && lp.constraints.cols() != nv) || lp.relations.size() != mu)
    throw InputError("solve_lp: inconsistent dimensions");
  if (!lp.lower.empty() && lp.lower.size() != nv) throw InputError("solve_lp: lower bounds length mismatch");
  if (!lp.upper.empty() && lp.upper.size() != nv) throw InputError("solve_lp: upper bounds length mismatch");
  for (double v : lp.constraints.values())
    if (!std::isfinite(v)) throw InputError("solve_lp: non-finite constraint data");
  for (double v : lp.cost)
    if (!std::isfinite(v)) throw InputError("solve_lp: non-finite cost");
  for (double v : lp.rhs)
    if (!std::isfinite(v)) throw InputError("solve_lp: non-finite right-hand side");

  std::vector<double> lower = lp.lower.empty() ? std::vector<double>(nv, 0.0) : lp.lower;
  const double sense_sign = lp.sense == Sense::minimize ? 1.0 : -1.0;

  // Internal rows: user rows then one "x'_j ≤ u_j − l_j" row per upper bound.
  struct Row {
    std::vector<double> a;
    double b;
    RowRelation rel;
  };
  std::vector<Row> rows;
  rows.reserve(mu);
  for (std::size_t i = 0; i < mu; ++i) {
    Row r{std::vector<double>(lp.constraints.row(i).begin(), lp.constraints.row(i).end()), lp.rhs[i],
          lp.relations[i]};
    for (std::size_t j = 0; j < nv; ++j) r.b -= r.a[j] * lower[j];
    rows.push_back(std::move(r));
  }
  if (!lp.upper.empty())
    for (std::size_t j = 0; j < nv; ++j)
      if (lp.upper[j]) {
        Row r{std::vector<double>(nv, 0.0), *lp.upper[j] - lower[j], RowRelation::less_equal};
        r.a[j] = 1.0;
        rows.push_back(std::move(r));
      }
  const std::size_t m = rows.size();

  // Normalize to b ≥ 0.
  std::vector<double> flip(m, 1.0);
  for (std::size_t i = 0; i < m; ++i)
    if (rows[i].b < 0.0) {
      flip[i] = -1.0;
      for (double& v : rows[i].a) v = -v;
      rows[i].b = -rows[i].b;
      if (rows[i].rel == RowRelation::less_equal)
        rows[i].rel = RowRelation::greater_equal;
      else if (rows[i].rel == RowRelation::greater_equal)
        rows[i].rel = RowRelation::less_equal;
    }

  // Column layout: [x' | slack/surplus | artificial].
  std::size_t n_slack = 0;
  std::size_t n_art = 0;
  for (const Row& r : rows) {
    if (r.rel != RowRelation::equal) ++n_slack;
    if (r.rel != RowRelation::less_equal) ++n_art;
  }
  const std::size_t cols = nv + n_slack + n_art;
  const std::size_t art_begin = nv + n_slack;

  Tableau tab;
  tab.m = m;
  tab.cols = cols;
  tab.t = Matrix(m, cols + 1);
  tab.basis.assign(m, 0);
  Matrix original(m, cols);
  {
    std::size_t s = nv;
    std::size_t a = art_begin;
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < nv; ++j) original(i, j) = rows[i].a[j];
      if (rows[i].rel == RowRelation::less_equal) {
        original(i, s) = 1.0;
        tab.basis[i] = s++;
      } else {
        if (rows[i].rel == RowRelation::greater_equal) original(i, s++) = -1.0;
        original(i, a) = 1.0;
        tab.basis[i] = a++;
      }
    }
  }
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < cols; ++j) tab.t(i, j) = original(i, j);
    tab.rhs(i) = rows[i].b;
  }

  LPSolution sol;
  bool unbounded = false;

  // Phase 1.
  if (n_art > 0) {
    std::vector<double> c1(cols, 0.0);
    for (std::size_t j = art_begin; j < cols; ++j) c1[j] = 1.0;
    auto obj = tab.objective_row(c1);
    std::vector<bool> allowed(cols, true);
    while (tab.step(obj, allowed, unbounded)) {
    }
    double infeas = 0.0;
    for (std::size_t i = 0; i < m; ++i)
      if (tab.basis[i] >= art_begin) infeas += tab.rhs(i);
    double bnorm = 0.0;
    for (const Row& r : rows) bnorm = std::max(bnorm, std::abs(r.b));
    if (infeas > 1e-9 * (1.0 + bnorm)) {
      sol.status = LpStatus::infeasible;
      sol.iterations = tab.pivots;
      return sol;
    }
    // Drive zero-level artificials out of the basis where possible.
    for (std::size_t i = 0; i < m; ++i) {
      if (tab.basis[i] < art_begin) continue;
      for (std::size_t j = 0; j < art_begin; ++j)
        if (std::abs(tab.t(i, j)) > kPivotTol) {
          tab.pivot(i, j, obj);
          break;
        }
    }
  }

  // Phase 2.
  std::vector<double> c2(cols, 0.0);
  for (std::size_t j = 0; j < nv; ++j) c2[j] = sense_sign * lp.cost[j];
  auto obj = tab.objective_row(c2);
  std::vector<bool> allowed(cols, true);
  for (std::size_t j = art_begin; j < cols; ++j) allowed[j] = false;
  while (tab.step(obj, allowed, unbounded)) {
  }
  sol.iterations = tab.pivots;
  sol.basis = tab.basis;
  if (unbounded) {
    sol.status = LpStatus::unbounded;
    return sol;
  }

  sol.status = LpStatus::optimal;
  std::vector<double> xi(cols, 0.0);
  for (std::size_t i = 0; i < m; ++i) xi[tab.basis[i]] = tab.rhs(i);
  sol.x.resize(nv);
  for (std::size_t j = 0; j < nv; ++j) sol.x[j] = lower[j] + xi[j];
  sol.objective = 0.0;
  for (std::size_t j = 0; j < nv; ++j) sol.objective += lp.cost[j] * sol.x[j];

  // Duals from the final basis: Bᵀy = c_B.
  Matrix bmat(m, m);
  std::vector<double> cb(m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t r = 0; r < m; ++r) bmat(r, i) = original(r, tab.basis[i]);
    cb[i] = c2[tab.basis[i]];
  }
  std::vector<double> y = m > 0 ? solve_transposed(bmat, cb) : std::vector<double>{};
  double dual_internal = 0.0;
  for (std::size_t i = 0; i < m; ++i) dual_internal += rows[i].b * y[i];
  double shift = 0.0;
  for (std::size_t j = 0; j < nv; ++j) shift += lp.cost[j] * lower[j];
  sol.dual_objective = sense_sign * dual_internal + shift;
  sol.duals.resize(mu);
  for (std::size_t i = 0; i < mu; ++i) sol.duals[i] = sense_sign * flip[i] * y[i];

  double resid = 0.0;
  for (std::size_t i = 0; i < mu; ++i) {
    double ax = 0.0;
    for (std::size_t j = 0; j < nv; ++j) ax += lp.constraints(i, j) * sol.x[j];
    const double d = ax - lp.rhs[i];
    switch (lp.relations[i]) {
      case RowRelation::less_equal: resid = std::max(resid, d); break;
      case RowRelation::greater_equal: resid = std::max(resid, -d); break;
      case RowRelation::equal: resid = std::max(resid, std::abs(d)); break;
    }
  }
  for (std::size_t j = 0; j < nv; ++j) {
    resid = std::max(resid, lower[j] - sol.x[j]);
    if (!lp.upper.empty() && lp.upper[j]) resid = std::max(resid, sol.x[j] - *lp.upper[j]);
  }
  sol.primal_residual = resid;
  return sol;
}

}  // namespace spectral_chroma
