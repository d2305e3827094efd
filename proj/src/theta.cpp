#include "spectral_chroma/theta.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "spectral_chroma/errors.hpp"

namespace spectral_chroma {

namespace {

constexpr double kZeroWeight = 1e-14;
constexpr double kCertifyTol = 1e-6;

void check_level(double k, std::size_t n) {
  if (!(k >= 0.0 && k <= static_cast<double>(n)))
    throw InputError("level k=" + std::to_string(k) + " outside [0, " + std::to_string(n) + "]");
}

bool all_zero(const std::vector<double>& r) {
  return std::all_of(r.begin(), r.end(), [](double v) { return v == 0.0; });
}

void require_optimal(const SdpSolution& s, const char* what) {
  if (s.status != SdpStatus::optimal) {
    std::ostringstream os;
    os << what << ": solver status " << to_string(s.status) << " after " << s.iterations
       << " iterations (primal residual " << s.primal_residual << ", dual residual " << s.dual_residual
       << ", gap " << s.relative_gap << ")";
    if (!s.message.empty()) os << ": " << s.message;
    throw SolverError(os.str());
  }
}

}  // namespace

std::vector<double> sqrt_weights(const WeightVector& w) {
  std::vector<double> r(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) r[i] = w[i] < kZeroWeight ? 0.0 : std::sqrt(w[i]);
  return r;
}

double weight_total(const WeightVector& w) {
  double s = 0.0;
  for (double v : w) s += v;
  return s;
}

BlockSdp lovasz_theta_program(const Graph& g) {
  const std::size_t n = g.order();
  BlockSdp p;
  p.sense = Sense::maximize;
  p.blocks = {n};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) p.objective.push_back({0, i, j, 1.0});
  SdpConstraint trace;
  for (std::size_t i = 0; i < n; ++i) trace.entries.push_back({0, i, i, 1.0});
  trace.rhs = 1.0;
  p.constraints.push_back(std::move(trace));
  for (auto [i, j] : g.edges()) p.constraints.push_back({{{0, i, j, 0.5}}, 0.0});
  return p;
}

double lovasz_theta(const Graph& g, const SdpOptions& opts) {
  if (g.order() == 0) throw InputError("lovasz_theta: empty vertex set");
  if (g.size() == 0) return static_cast<double>(g.order());
  const SdpSolution s = solve_sdp(lovasz_theta_program(g), opts);
  require_optimal(s, "lovasz_theta");
  return s.primal_objective;
}

BlockSdp theta_k_dual_program(const Graph& g, const WeightVector& w, double k) {
  const std::size_t n = g.order();
  check_weights(w, n);
  check_level(k, n);
  const auto r = sqrt_weights(w);
  BlockSdp p;
  p.sense = Sense::maximize;
  p.blocks = {n, n};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j)
      if (r[i] * r[j] != 0.0) p.objective.push_back({0, i, j, r[i] * r[j]});
  SdpConstraint trace;
  for (std::size_t i = 0; i < n; ++i) trace.entries.push_back({0, i, i, 1.0});
  trace.rhs = k;
  p.constraints.push_back(std::move(trace));
  for (auto [i, j] : g.edges()) p.constraints.push_back({{{0, i, j, 0.5}}, 0.0});
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      const double v = i == j ? 1.0 : 0.5;
      p.constraints.push_back({{{0, i, j, v}, {1, i, j, v}}, i == j ? 1.0 : 0.0});
    }
  return p;
}

BlockSdp theta_k_primal_program(const Graph& g, const WeightVector& w, double k) {
  const std::size_t n = g.order();
  check_weights(w, n);
  check_level(k, n);
  const auto r = sqrt_weights(w);
  enum : std::size_t { kY = 0, kW = 1, kEta = 2 };
  BlockSdp p;
  p.sense = Sense::minimize;
  p.blocks = {n, n, 1};
  for (std::size_t i = 0; i < n; ++i) p.objective.push_back({kY, i, i, 1.0});
  p.objective.push_back({kEta, 0, 0, k});
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      if (i != j && g.adjacent(i, j)) continue;
      SdpConstraint c;
      c.rhs = -r[i] * r[j];
      if (i == j) {
        c.entries = {{kY, i, i, -1.0}, {kW, i, i, 1.0}, {kEta, 0, 0, -1.0}};
      } else {
        c.entries = {{kY, i, j, -0.5}, {kW, i, j, 0.5}};
      }
      p.constraints.push_back(std::move(c));
    }
  return p;
}

ThetaKDual theta_k_dual(const Graph& g, const WeightVector& w, double k, const SdpOptions& opts) {
  const std::size_t n = g.order();
  check_weights(w, n);
  check_level(k, n);
  const auto r = sqrt_weights(w);
  ThetaKDual out;
  if (k == 0.0 || all_zero(r)) {
    out.X = SymMatrix(n);
    if (k > 0.0) out.X = (k / static_cast<double>(n)) * SymMatrix::identity(n);
    out.value = 0.0;
    return out;
  }
  if (k == static_cast<double>(n)) {
    out.X = SymMatrix::identity(n);
    out.value = dot(r, r);
    return out;
  }
  const SdpSolution s = solve_sdp(theta_k_dual_program(g, w, k), opts);
  require_optimal(s, "theta_k_dual");
  // Edge entries are equality-constrained to zero; project the residual away.
  SymMatrix x = s.X[0];
  for (auto [i, j] : g.edges()) x.set(i, j, 0.0);
  out.X = std::move(x);
  out.value = inner(SymMatrix::outer(r), out.X);
  out.solver_gap = s.relative_gap;
  out.iterations = s.iterations;
  return out;
}

ThetaKPrimal theta_k_primal(const Graph& g, const WeightVector& w, double k, const SdpOptions& opts) {
  const std::size_t n = g.order();
  check_weights(w, n);
  check_level(k, n);
  const auto r = sqrt_weights(w);
  ThetaKPrimal out;
  out.Z = SymMatrix(n);
  if (all_zero(r)) {
    out.Y = SymMatrix(n);
    return out;
  }
  if (k == 0.0) {
    // Y = 0 and η = λ₁(√w√wᵀ) = wᵀ1 make the matrix inequality hold.
    out.Y = SymMatrix(n);
    out.eta = dot(r, r);
    return out;
  }
  if (k == static_cast<double>(n)) {
    out.Y = SymMatrix::outer(r);
    out.value = dot(r, r);
    return out;
  }
  const SdpSolution s = solve_sdp(theta_k_primal_program(g, w, k), opts);
  require_optimal(s, "theta_k_primal");
  const SymMatrix& y = s.X[0];
  const SymMatrix& slack = s.X[1];
  for (auto [i, j] : g.edges()) out.Z.set(i, j, y(i, j) - slack(i, j) - r[i] * r[j]);
  // The solver's (η, Y) only approximates the best pair for this Z; rebuild it
  // from the spectrum so the reported value is exactly the Ky Fan sum.
  const EigenDecomposition e = eigh(SymMatrix::outer(r) + out.Z);
  const std::size_t f = static_cast<std::size_t>(std::floor(k));
  out.eta = e.values[f];
  out.Y = SymMatrix(n);
  for (std::size_t i = 0; i < f; ++i) {
    const double c = e.values[i] - out.eta;
    if (c > 0.0) out.Y += c * SymMatrix::outer(e.vector(i));
  }
  out.value = kyfan_sum_sorted(e.values, k);
  out.solver_gap = s.relative_gap;
  out.iterations = s.iterations;
  return out;
}

ThetaKResult theta_k(const Graph& g, const WeightVector& w, double k, const SdpOptions& opts) {
  ThetaKDual d = theta_k_dual(g, w, k, opts);
  ThetaKPrimal p = theta_k_primal(g, w, k, opts);
  ThetaKResult res;
  res.k = k;
  res.w = w;
  res.dual_value = d.value;
  res.primal_value = p.value;
  res.value = d.value;
  res.gap = std::abs(p.value - d.value);
  res.relative_gap = res.gap / (1.0 + std::abs(res.value));
  if (res.relative_gap > kCertifyTol) {
    std::ostringstream os;
    os.precision(12);
    os << "duality certification failed: dual program value " << d.value << ", primal program value " << p.value
       << " (k=" << k << ")";
    throw CertificationError(os.str());
  }
  res.dual_x = std::move(d.X);
  res.primal_z = std::move(p.Z);
  res.primal_y = std::move(p.Y);
  res.eta = p.eta;
  return res;
}

void check_edge_support(const Graph& g, const SymMatrix& z, double tol) {
  const std::size_t n = g.order();
  if (z.size() != n) throw InputError("edge-supported matrix has the wrong dimension");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      if (i != j && g.adjacent(i, j)) continue;
      if (std::abs(z(i, j)) > tol)
        throw InputError("matrix entry (" + std::to_string(i) + "," + std::to_string(j) +
                         ") lies off the edge set");
    }
}

double evaluate_Z(const Graph& g, const WeightVector& w, double k, const SymMatrix& z) {
  check_weights(w, g.order());
  check_level(k, g.order());
  check_edge_support(g, z);
  return kyfan_sum(SymMatrix::outer(sqrt_weights(w)) + z, k);
}

RecoveredPrimal recover_primal_from_Z(const SymMatrix& z, const WeightVector& w, int k) {
  const std::size_t n = z.size();
  check_weights(w, n);
  if (k < 1 || static_cast<std::size_t>(k) > n) throw InputError("recover_primal_from_Z: k must lie in [1, n]");
  const EigenDecomposition e = eigh(SymMatrix::outer(sqrt_weights(w)) + z);
  RecoveredPrimal out;
  out.eta = e.values[static_cast<std::size_t>(k) - 1];
  out.Y = SymMatrix(n);
  for (int i = 0; i < k; ++i) {
    const double c = e.values[static_cast<std::size_t>(i)] - out.eta;
    if (c == 0.0) continue;
    out.Y += c * SymMatrix::outer(e.vector(static_cast<std::size_t>(i)));
  }
  out.objective = k * out.eta + out.Y.trace();
  return out;
}

SymMatrix interpolate_dual(const SymMatrix& x, double k, double ell, std::size_t n) {
  const double nn = static_cast<double>(n);
  if (x.size() != n) throw InputError("interpolate_dual: dimension mismatch");
  if (k == nn) throw InputError("interpolate_dual: k must be below n");
  if (!(k >= 0.0 && k < ell && ell <= nn)) throw InputError("interpolate_dual: need 0 <= k < ell <= n");
  const double t = (ell - k) / (nn - k);
  return (1.0 - t) * x + t * SymMatrix::identity(n);
}

}  // namespace spectral_chroma
