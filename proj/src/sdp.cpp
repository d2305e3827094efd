#include "spectral_chroma/sdp.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include "json.hpp"

#include "spectral_chroma/errors.hpp"

namespace spectral_chroma {

std::string to_string(SdpStatus s) {
  switch (s) {
    case SdpStatus::optimal: return "optimal";
    case SdpStatus::inaccurate: return "inaccurate";
    case SdpStatus::failed: return "failed";
  }
  return "?";
}

void BlockSdp::validate() const {
  if (blocks.empty()) throw InputError("sdp: no blocks");
  if (constraints.empty()) throw InputError("sdp: constraint list is empty");
  for (std::size_t d : blocks)
    if (d == 0) throw InputError("sdp: zero-order block");
  auto check = [&](const SparseBlockMatrix& m, const std::string& what) {
    for (const SdpEntry& e : m) {
      if (e.block >= blocks.size() || e.row >= blocks[e.block] || e.col >= blocks[e.block])
        throw InputError("sdp: entry out of range in " + what);
      if (!std::isfinite(e.value)) throw InputError("sdp: non-finite entry in " + what);
    }
  };
  check(objective, "objective");
  for (std::size_t i = 0; i < constraints.size(); ++i) {
    check(constraints[i].entries, "constraint " + std::to_string(i));
    if (!std::isfinite(constraints[i].rhs)) throw InputError("sdp: non-finite right-hand side");
  }
}

double BlockSdp::data_norm() const {
  double r = 0.0;
  for (const SdpEntry& e : objective) r = std::max(r, std::abs(e.value));
  for (const SdpConstraint& c : constraints) {
    r = std::max(r, std::abs(c.rhs));
    for (const SdpEntry& e : c.entries) r = std::max(r, std::abs(e.value));
  }
  return r;
}

double apply(const SparseBlockMatrix& a, const BlockMatrix& x) {
  double s = 0.0;
  for (const SdpEntry& e : a) {
    const double v = x[e.block](e.row, e.col);
    s += (e.row == e.col ? 1.0 : 2.0) * e.value * v;
  }
  return s;
}

BlockMatrix to_dense(const SparseBlockMatrix& a, const std::vector<std::size_t>& blocks) {
  BlockMatrix out;
  out.reserve(blocks.size());
  for (std::size_t d : blocks) out.emplace_back(d);
  for (const SdpEntry& e : a) out[e.block].add(e.row, e.col, e.value);
  return out;
}

namespace {

// Expanded nonzero: one per orientation of an off-diagonal entry.
struct Term {
  std::size_t block;
  std::size_t p;
  std::size_t q;
  double v;
};

std::vector<Term> expand(const SparseBlockMatrix& a) {
  std::vector<Term> t;
  t.reserve(2 * a.size());
  for (const SdpEntry& e : a) {
    t.push_back({e.block, e.row, e.col, e.value});
    if (e.row != e.col) t.push_back({e.block, e.col, e.row, e.value});
  }
  std::sort(t.begin(), t.end(), [](const Term& x, const Term& y) { return x.block < y.block; });
  return t;
}

// ⟨A, K⟩ = Σ A(p,q) K(p,q) for a general (possibly nonsymmetric) K.
double apply_terms(const std::vector<Term>& terms, const std::vector<Matrix>& k) {
  double s = 0.0;
  for (const Term& t : terms) s += t.v * k[t.block](t.p, t.q);
  return s;
}

double apply_terms(const std::vector<Term>& terms, const BlockMatrix& k) {
  double s = 0.0;
  for (const Term& t : terms) s += t.v * k[t.block](t.p, t.q);
  return s;
}

BlockMatrix zeros(const std::vector<std::size_t>& blocks) {
  BlockMatrix out;
  out.reserve(blocks.size());
  for (std::size_t d : blocks) out.emplace_back(d);
  return out;
}

double block_inner(const BlockMatrix& a, const BlockMatrix& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += inner(a[i], b[i]);
  return s;
}

double block_norm(const BlockMatrix& a) { return std::sqrt(block_inner(a, a)); }

// Largest α ≥ 0 (capped at `cap`) with X + αΔ ≽ 0, given the Cholesky factor
// L of X, from the smallest eigenvalue of L⁻¹ΔL⁻ᵀ.
double max_step(const Matrix& lower, const SymMatrix& delta, double cap) {
  const std::size_t n = delta.size();
  if (n == 1) {
    const double x = lower(0, 0) * lower(0, 0);
    return delta(0, 0) < 0.0 ? std::min(cap, -x / delta(0, 0)) : cap;
  }
  // W = L⁻¹ Δ L⁻ᵀ by two triangular solves.
  Matrix w(n, n);
  for (std::size_t c = 0; c < n; ++c) {
    for (std::size_t i = 0; i < n; ++i) {
      double s = delta(i, c);
      for (std::size_t k = 0; k < i; ++k) s -= lower(i, k) * w(k, c);
      w(i, c) = s / lower(i, i);
    }
  }
  Matrix z(n, n);  // z = w L⁻ᵀ, i.e. solve L zᵀ = wᵀ
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t i = 0; i < n; ++i) {
      double s = w(r, i);
      for (std::size_t k = 0; k < i; ++k) s -= lower(i, k) * z(r, k);
      z(r, i) = s / lower(i, i);
    }
  }
  const double lmin = min_eigenvalue(SymMatrix::symmetrized(z));
  return lmin < 0.0 ? std::min(cap, -1.0 / lmin) : cap;
}

struct Factors {
  std::vector<Matrix> chol;
  bool ok = true;
};

Factors factor_blocks(const BlockMatrix& m) {
  Factors f;
  f.chol.reserve(m.size());
  for (const SymMatrix& b : m) {
    try {
      f.chol.push_back(cholesky_spd(b, 0.0));
    } catch (const SolverError&) {
      f.ok = false;
      return f;
    }
  }
  return f;
}

}  // namespace

SdpSolution solve_sdp(const BlockSdp& p, const SdpOptions& opts) {
  constexpr int kStall = 10;
  p.validate();
  const std::size_t nb = p.blocks.size();
  const std::size_t m = p.constraints.size();
  const double csign = p.sense == Sense::maximize ? 1.0 : -1.0;

  std::vector<std::vector<Term>> terms(m);
  for (std::size_t i = 0; i < m; ++i) terms[i] = expand(p.constraints[i].entries);
  BlockMatrix c = to_dense(p.objective, p.blocks);
  for (auto& blk : c) blk *= csign;
  std::vector<double> b(m);
  for (std::size_t i = 0; i < m; ++i) b[i] = p.constraints[i].rhs;

  std::size_t total_dim = 0;
  for (std::size_t d : p.blocks) total_dim += d;

  const double norm_b = norm2(b);
  const double norm_c = block_norm(c);
  // Per-block start ζI, ηI with the usual size and data-norm safeguards;
  // initial_scale > 0 overrides both.
  std::vector<double> zeta(nb), eta(nb);
  {
    std::vector<std::vector<double>> anorm(nb, std::vector<double>(m, 0.0));
    for (std::size_t i = 0; i < m; ++i)
      for (const Term& t : terms[i]) anorm[t.block][i] += t.v * t.v;
    for (std::size_t k = 0; k < nb; ++k) {
      const double dim = static_cast<double>(p.blocks[k]);
      double z = std::max(10.0, std::sqrt(dim));
      double e = std::max({10.0, std::sqrt(dim), c[k].frobenius_norm()});
      for (std::size_t i = 0; i < m; ++i) {
        const double a = std::sqrt(anorm[k][i]);
        if (a == 0.0) continue;
        z = std::max(z, dim * (1.0 + std::abs(b[i])) / (1.0 + a));
        e = std::max(e, a);
      }
      zeta[k] = opts.initial_scale > 0.0 ? opts.initial_scale : z;
      eta[k] = opts.initial_scale > 0.0 ? opts.initial_scale : e;
    }
  }

  BlockMatrix x = zeros(p.blocks);
  BlockMatrix s = zeros(p.blocks);
  for (std::size_t k = 0; k < nb; ++k) {
    x[k] = zeta[k] * SymMatrix::identity(p.blocks[k]);
    s[k] = eta[k] * SymMatrix::identity(p.blocks[k]);
  }
  std::vector<double> y(m, 0.0);

  auto adjoint = [&](const std::vector<double>& v) {
    BlockMatrix out = zeros(p.blocks);
    for (std::size_t i = 0; i < m; ++i)
      if (v[i] != 0.0)
        for (const SdpEntry& e : p.constraints[i].entries) out[e.block].add(e.row, e.col, v[i] * e.value);
    return out;
  };

  // Σ tr(A_i P A_j Q) over the shared blocks of rows i and j.
  auto pair_matrix = [&](const BlockMatrix& pb, const BlockMatrix& qb) {
    SymMatrix out(m);
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = i; j < m; ++j) {
        double acc = 0.0;
        const auto& ti = terms[i];
        const auto& tj = terms[j];
        std::size_t a0 = 0;
        std::size_t b0 = 0;
        while (a0 < ti.size() && b0 < tj.size()) {
          if (ti[a0].block < tj[b0].block) {
            ++a0;
          } else if (ti[a0].block > tj[b0].block) {
            ++b0;
          } else {
            const std::size_t blk = ti[a0].block;
            std::size_t a1 = a0;
            std::size_t b1 = b0;
            while (a1 < ti.size() && ti[a1].block == blk) ++a1;
            while (b1 < tj.size() && tj[b1].block == blk) ++b1;
            const SymMatrix& xb = pb[blk];
            const SymMatrix& sb = qb[blk];
            for (std::size_t u = a0; u < a1; ++u)
              for (std::size_t v = b0; v < b1; ++v)
                acc += ti[u].v * tj[v].v * xb(ti[u].q, tj[v].p) * sb(tj[v].q, ti[u].p);
            a0 = a1;
            b0 = b1;
          }
        }
        out.set(i, j, acc);
      }
    }
    return out;
  };

  SdpSolution sol;
  sol.status = SdpStatus::inaccurate;

  auto measure = [&](std::vector<double>& rp, BlockMatrix& rd) {
    rp.assign(m, 0.0);
    for (std::size_t i = 0; i < m; ++i) rp[i] = b[i] - apply_terms(terms[i], x);
    BlockMatrix aty = adjoint(y);
    rd = zeros(p.blocks);
    for (std::size_t k = 0; k < nb; ++k) rd[k] = c[k] - aty[k] + s[k];
    sol.primal_objective = block_inner(c, x);
    sol.dual_objective = dot(b, y);
    sol.primal_residual = norm2(rp) / (1.0 + norm_b);
    sol.dual_residual = block_norm(rd) / (1.0 + norm_c);
    sol.relative_gap = std::abs(sol.dual_objective - sol.primal_objective) /
                       (1.0 + std::abs(sol.primal_objective) + std::abs(sol.dual_objective));
  };

  std::vector<double> rp;
  BlockMatrix rd;
  int stalls = 0;
  int it = 0;
  // Best iterate so far; near the optimum the iterates become ill-conditioned
  // and can drift, so the final answer is the best one seen.
  struct Snapshot {
    BlockMatrix x, s;
    std::vector<double> y;
    double pobj = 0, dobj = 0, pres = 0, dres = 0, gap = 0;
    double err = std::numeric_limits<double>::infinity();
  } best;
  int since_best = 0;
  for (;; ++it) {
    measure(rp, rd);
    const double err = std::max({sol.primal_residual, sol.dual_residual, sol.relative_gap});
    if (!(err >= best.err)) {
      best = {x, s, y, sol.primal_objective, sol.dual_objective, sol.primal_residual, sol.dual_residual,
              sol.relative_gap, err};
      since_best = 0;
    } else if (++since_best >= kStall || (since_best >= 4 && best.err <= opts.optimal_tolerance)) {
      sol.message = "no further progress";
      break;
    }
    if (opts.verbose)
      std::fprintf(stderr, "sdp %3d  pobj %+.10e  dobj %+.10e  pres %.2e  dres %.2e  gap %.2e\n", it,
                   csign * sol.primal_objective, csign * sol.dual_objective, sol.primal_residual, sol.dual_residual,
                   sol.relative_gap);
    if (err <= opts.target_tolerance) break;
    if (it >= opts.max_iterations) {
      sol.message = "iteration cap reached";
      break;
    }

    const double mu = block_inner(x, s) / static_cast<double>(total_dim);
    Factors sf = factor_blocks(s);
    Factors xf = factor_blocks(x);
    if (!sf.ok || !xf.ok) {
      sol.message = "lost positive definiteness of the iterate";
      break;
    }
    std::vector<SymMatrix> sinv;
    sinv.reserve(nb);
    for (const Matrix& l : sf.chol) sinv.push_back(cholesky_inverse(l));

    // Schur complement M_ij = Σ tr(A_i X A_j S⁻¹).
    const SymMatrix schur = pair_matrix(x, sinv);

    Matrix schur_chol;
    {
      double reg = 0.0;
      double maxdiag = 0.0;
      for (std::size_t i = 0; i < m; ++i) maxdiag = std::max(maxdiag, schur(i, i));
      for (int attempt = 0;; ++attempt) {
        try {
          SymMatrix mm = schur;
          for (std::size_t i = 0; i < m; ++i) mm.add(i, i, reg);
          schur_chol = cholesky_spd(mm, 0.0);
          break;
        } catch (const SolverError&) {
          if (attempt >= 6) {
            schur_chol = Matrix();
            break;
          }
          reg = (reg == 0.0 ? 1e-14 : reg * 100.0) * std::max(maxdiag, 1.0);
        }
      }
    }
    if (schur_chol.rows() == 0) {
      sol.message = "Cholesky breakdown in the normal equations";
      break;
    }

    // Direction for a given centering σ and second-order term `corr`
    // (ΔX_aff ΔS_aff S⁻¹, or empty).
    auto direction = [&](double sigma, const std::vector<Matrix>* corr, BlockMatrix& dx, std::vector<double>& dy,
                         BlockMatrix& ds) {
      std::vector<Matrix> k(nb);
      for (std::size_t blk = 0; blk < nb; ++blk) {
        Matrix t = x[blk].dense() * rd[blk].dense() * sinv[blk].dense();
        Matrix base = sigma * mu * sinv[blk].dense();
        base -= x[blk].dense();
        base += t;
        if (corr) base -= (*corr)[blk];
        k[blk] = std::move(base);
      }
      std::vector<double> h(m);
      for (std::size_t i = 0; i < m; ++i) h[i] = apply_terms(terms[i], k) - rp[i];
      dy = cholesky_solve(schur_chol, h);
      // A few refinement sweeps against the unregularized matrix.
      for (int sweep = 0; sweep < 3; ++sweep) {
        const std::vector<double> mdy = schur * std::span<const double>(dy);
        std::vector<double> res(m);
        double rn = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
          res[i] = h[i] - mdy[i];
          rn = std::max(rn, std::abs(res[i]));
        }
        if (rn == 0.0) break;
        const std::vector<double> fix = cholesky_solve(schur_chol, res);
        for (std::size_t i = 0; i < m; ++i) dy[i] += fix[i];
      }
      BlockMatrix atdy = adjoint(dy);
      ds = zeros(p.blocks);
      dx = zeros(p.blocks);
      for (std::size_t blk = 0; blk < nb; ++blk) {
        ds[blk] = atdy[blk] - rd[blk];
        Matrix g = sigma * mu * sinv[blk].dense();
        g -= x[blk].dense();
        g -= x[blk].dense() * ds[blk].dense() * sinv[blk].dense();
        if (corr) g -= (*corr)[blk];
        dx[blk] = SymMatrix::symmetrized(g);
      }
    };

    auto step_lengths = [&](const BlockMatrix& dx, const BlockMatrix& ds, double& ap, double& ad) {
      ap = std::numeric_limits<double>::infinity();
      ad = std::numeric_limits<double>::infinity();
      for (std::size_t blk = 0; blk < nb; ++blk) {
        ap = std::min(ap, max_step(xf.chol[blk], dx[blk], ap));
        ad = std::min(ad, max_step(sf.chol[blk], ds[blk], ad));
      }
    };

    BlockMatrix dx;
    BlockMatrix ds;
    std::vector<double> dy;
    direction(0.0, nullptr, dx, dy, ds);
    double ap = 0.0;
    double ad = 0.0;
    step_lengths(dx, ds, ap, ad);
    ap = std::min(1.0, ap);
    ad = std::min(1.0, ad);

    double mu_aff = 0.0;
    for (std::size_t blk = 0; blk < nb; ++blk)
      mu_aff += inner(x[blk] + ap * dx[blk], s[blk] + ad * ds[blk]);
    mu_aff /= static_cast<double>(total_dim);
    const double expon = std::max(1.0, 3.0 * std::min(ap, ad) * std::min(ap, ad));
    const double sigma = std::clamp(std::pow(std::max(mu_aff, 0.0) / mu, expon), 0.0, 1.0);

    std::vector<Matrix> corr(nb);
    for (std::size_t blk = 0; blk < nb; ++blk) corr[blk] = dx[blk] * ds[blk] * sinv[blk];
    direction(sigma, &corr, dx, dy, ds);
    step_lengths(dx, ds, ap, ad);
    ap = std::min(1.0, opts.step_fraction * ap);
    ad = std::min(1.0, opts.step_fraction * ad);

    // Rounding can leave a full step just outside the cone; back off until
    // both iterates factor.
    BlockMatrix xn(nb);
    BlockMatrix sn(nb);
    for (int tries = 0;; ++tries) {
      for (std::size_t blk = 0; blk < nb; ++blk) {
        xn[blk] = x[blk] + ap * dx[blk];
        sn[blk] = s[blk] + ad * ds[blk];
      }
      const bool okx = factor_blocks(xn).ok;
      const bool oks = factor_blocks(sn).ok;
      if (okx && oks) break;
      if (tries >= 30) break;
      if (!okx) ap *= 0.5;
      if (!oks) ad *= 0.5;
    }
    if (opts.verbose) std::fprintf(stderr, "        sigma %.2e  step %.3e / %.3e\n", sigma, ap, ad);
    x = std::move(xn);
    s = std::move(sn);
    for (std::size_t i = 0; i < m; ++i) y[i] += ad * dy[i];

    if (std::max(ap, ad) < 1e-8) {
      if (++stalls >= 3) {
        sol.message = "step lengths collapsed";
        measure(rp, rd);
        break;
      }
    } else {
      stalls = 0;
    }
  }

  sol.iterations = it;
  if (!(best.err >= std::max({sol.primal_residual, sol.dual_residual, sol.relative_gap}))) {
    x = std::move(best.x);
    s = std::move(best.s);
    y = std::move(best.y);
    sol.primal_objective = best.pobj;
    sol.dual_objective = best.dobj;
    sol.primal_residual = best.pres;
    sol.dual_residual = best.dres;
    sol.relative_gap = best.gap;
  }
  const double err = std::max({sol.primal_residual, sol.dual_residual, sol.relative_gap});
  sol.status = err <= opts.optimal_tolerance ? SdpStatus::optimal : SdpStatus::inaccurate;
  if (sol.status == SdpStatus::optimal) sol.message.clear();

  // Report in the caller's sense: for minimization y and the objectives flip.
  if (p.sense == Sense::minimize) {
    for (double& v : y) v = -v;
    sol.primal_objective = -sol.primal_objective;
    sol.dual_objective = -sol.dual_objective;
  }
  sol.X = std::move(x);
  sol.S = std::move(s);
  sol.y = std::move(y);
  return sol;
}

SdpCheck check_solution(const BlockSdp& p, const SdpSolution& sol, double tol) {
  SdpCheck r;
  const std::size_t m = p.constraints.size();
  if (sol.X.size() != p.blocks.size() || sol.S.size() != p.blocks.size() || sol.y.size() != m)
    throw InputError("check_solution: dimension mismatch");
  double bmax = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const double ax = apply(p.constraints[i].entries, sol.X);
    r.primal_residual = std::max(r.primal_residual, std::abs(ax - p.constraints[i].rhs));
    bmax = std::max(bmax, std::abs(p.constraints[i].rhs));
  }
  BlockMatrix c = to_dense(p.objective, p.blocks);
  BlockMatrix aty = zeros(p.blocks);
  for (std::size_t i = 0; i < m; ++i)
    for (const SdpEntry& e : p.constraints[i].entries) aty[e.block].add(e.row, e.col, sol.y[i] * e.value);
  double cmax = 0.0;
  r.min_eig_X = std::numeric_limits<double>::infinity();
  r.min_eig_S = std::numeric_limits<double>::infinity();
  for (std::size_t blk = 0; blk < p.blocks.size(); ++blk) {
    // max: Aᵀy − S − C = 0; min: C − Aᵀy − S = 0.
    SymMatrix res = p.sense == Sense::maximize ? aty[blk] - sol.S[blk] - c[blk] : c[blk] - aty[blk] - sol.S[blk];
    r.dual_residual = std::max(r.dual_residual, res.max_abs());
    cmax = std::max(cmax, c[blk].max_abs());
    r.min_eig_X = std::min(r.min_eig_X, min_eigenvalue(sol.X[blk]));
    r.min_eig_S = std::min(r.min_eig_S, min_eigenvalue(sol.S[blk]));
  }
  r.primal_objective = apply(p.objective, sol.X);
  r.dual_objective = 0.0;
  for (std::size_t i = 0; i < m; ++i) r.dual_objective += p.constraints[i].rhs * sol.y[i];
  r.relative_gap = std::abs(r.dual_objective - r.primal_objective) /
                   (1.0 + std::abs(r.primal_objective) + std::abs(r.dual_objective));
  const double eig_floor = -tol * (1.0 + p.data_norm());
  r.pass = r.primal_residual <= tol * (1.0 + bmax) && r.dual_residual <= tol * (1.0 + cmax) &&
           r.min_eig_X >= eig_floor && r.min_eig_S >= eig_floor && r.relative_gap <= tol;
  return r;
}

// JSON ---------------------------------------------------------------------------

namespace {

nlohmann::json entries_to_json(const SparseBlockMatrix& a) {
  nlohmann::json arr = nlohmann::json::array();
  for (const SdpEntry& e : a) arr.push_back({e.block, e.row, e.col, e.value});
  return arr;
}

SparseBlockMatrix entries_from_json(const nlohmann::json& arr) {
  SparseBlockMatrix out;
  for (const auto& e : arr) {
    if (!e.is_array() || e.size() != 4) throw InputError("sdp json: entries must be [block,row,col,value]");
    std::size_t r = e[1].get<std::size_t>();
    std::size_t c = e[2].get<std::size_t>();
    if (r > c) std::swap(r, c);
    out.push_back({e[0].get<std::size_t>(), r, c, e[3].get<double>()});
  }
  return out;
}

}  // namespace

std::string export_sdp_json(const BlockSdp& p) {
  nlohmann::json j;
  j["schema"] = 1;
  j["sense"] = p.sense == Sense::maximize ? "max" : "min";
  j["blocks"] = p.blocks;
  j["objective"] = entries_to_json(p.objective);
  j["constraints"] = nlohmann::json::array();
  for (const SdpConstraint& c : p.constraints)
    j["constraints"].push_back({{"rhs", c.rhs}, {"entries", entries_to_json(c.entries)}});
  return j.dump();
}

BlockSdp import_sdp_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("sdp json: ") + e.what(), e.byte);
  }
  try {
    if (j.value("schema", 0) != 1) throw InputError("sdp json: unsupported schema");
    BlockSdp p;
    const std::string sense = j.at("sense").get<std::string>();
    if (sense != "max" && sense != "min") throw InputError("sdp json: sense must be max or min");
    p.sense = sense == "max" ? Sense::maximize : Sense::minimize;
    p.blocks = j.at("blocks").get<std::vector<std::size_t>>();
    p.objective = entries_from_json(j.at("objective"));
    for (const auto& c : j.at("constraints"))
      p.constraints.push_back({entries_from_json(c.at("entries")), c.at("rhs").get<double>()});
    p.validate();
    return p;
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("sdp json: ") + e.what());
  }
}

}  // namespace spectral_chroma
