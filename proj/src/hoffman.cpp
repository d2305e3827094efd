#include "spectral_chroma/hoffman.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "json_util.hpp"
#include "spectral_chroma/errors.hpp"
#include "spectral_chroma/theta.hpp"

namespace spectral_chroma {

namespace {

constexpr double kMargin = 1e-6;

void check_m(int m, std::size_t n) {
  if (m < 2 || static_cast<std::size_t>(m) > n)
    throw InputError("m=" + std::to_string(m) + " outside [2, " + std::to_string(n) + "]");
}

int ceil_tol(double x) { return static_cast<int>(std::ceil(x - kMargin)); }

std::string spectrum_text(const std::vector<double>& v) {
  std::ostringstream os;
  os.precision(6);
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? " " : "") << v[i];
  return os.str();
}

double frobenius_of_edges(const std::vector<double>& z) {
  double s = 0.0;
  for (double v : z) s += 2.0 * v * v;
  return std::sqrt(s);
}

}  // namespace

double hoffman_partial_sum(std::span<const double> descending, int m) {
  const std::size_t n = descending.size();
  check_m(m, n);
  double s = descending[0];
  for (std::size_t i = n - static_cast<std::size_t>(m) + 1; i < n; ++i) s += descending[i];
  return s;
}

double hoffman_partial_sum(const SymMatrix& z, int m) { return hoffman_partial_sum(eigvalsh(z), m); }

int hoffman_bound(const SymMatrix& z) {
  const std::size_t n = z.size();
  if (n < 2) throw InputError("hoffman_bound: need at least two vertices");
  const double norm = z.frobenius_norm();
  if (norm == 0.0) throw InputError("hoffman_bound: zero matrix");
  const auto ev = eigvalsh(z);
  const double tau = 1e-9 * norm;
  int best = 1;
  for (int m = 2; m <= static_cast<int>(n); ++m)
    if (hoffman_partial_sum(ev, m) > tau) best = m + 1;
  return best;
}

double ratio_bound(const SymMatrix& z) {
  if (z.size() == 0 || z.frobenius_norm() == 0.0) throw InputError("ratio_bound: zero matrix");
  const auto ev = eigvalsh(z);
  if (!(ev.back() < 0.0)) throw InputError("ratio_bound: smallest eigenvalue is not negative");
  return 1.0 - ev.front() / ev.back();
}

SymMatrix edge_matrix(const Graph& g, std::span<const double> values) {
  if (values.size() != g.size()) throw InputError("edge_matrix: one value per edge expected");
  SymMatrix z(g.order());
  for (std::size_t e = 0; e < values.size(); ++e) z.set(g.edges()[e].first, g.edges()[e].second, values[e]);
  return z;
}

ZSearchResult z_search(const Graph& g, int m, const SearchBudget& budget, std::uint64_t seed) {
  const std::size_t n = g.order();
  check_m(m, n);
  const std::size_t ne = g.size();
  if (ne == 0) throw InputError("z_search: graph has no edges");
  const auto mm = static_cast<std::size_t>(m);
  SplitMix64 rng(seed);
  ZSearchResult best;
  for (int r = 0; r < std::max(1, budget.restarts); ++r) {
    std::vector<double> z(ne, 1.0);
    if (r > 0)
      for (double& v : z) v = 2.0 * rng.uniform() - 1.0;
    double nz = frobenius_of_edges(z);
    if (nz == 0.0) continue;
    for (double& v : z) v /= nz;
    for (int t = 1; t <= std::max(1, budget.iterations); ++t) {
      const SymMatrix zm = edge_matrix(g, z);
      const EigenDecomposition e = eigh(zm);
      const double s = hoffman_partial_sum(e.values, m);
      if (s > best.S) {
        best.S = s;
        best.Z = zm;
      }
      if (best.S > budget.stop_above) return best;
      // Subgradient v₁v₁ᵀ + Σ uᵢuᵢᵀ over the m − 1 smallest, read on the edges.
      std::vector<double> grad(ne, 0.0);
      double gn = 0.0;
      for (std::size_t k = 0; k < ne; ++k) {
        const auto [i, j] = g.edges()[k];
        double gij = e.vectors(i, 0) * e.vectors(j, 0);
        for (std::size_t c = n - mm + 1; c < n; ++c) gij += e.vectors(i, c) * e.vectors(j, c);
        grad[k] = 2.0 * gij;
        gn += grad[k] * grad[k];
      }
      gn = std::sqrt(gn);
      if (gn == 0.0) break;
      const double step = 1.0 / std::sqrt(static_cast<double>(t));
      for (std::size_t k = 0; k < ne; ++k) z[k] += step * grad[k] / gn;
      nz = frobenius_of_edges(z);
      if (nz == 0.0) break;
      for (double& v : z) v /= nz;
    }
  }
  return best;
}

ZToW z_to_w(const Graph& g, const SymMatrix& z, int m) {
  const std::size_t n = g.order();
  check_m(m, n);
  check_edge_support(g, z);
  const EigenDecomposition e = eigh(z);
  const double s = hoffman_partial_sum(e.values, m);
  if (!(s > 0.0)) throw InputError("z_to_w: S(m) = " + std::to_string(s) + " is not positive");
  const double spread = e.values.front() - e.values.back();
  if (!(spread > 0.0)) throw InputError("z_to_w: matrix has a flat spectrum");

  std::vector<double> sign(n);
  std::vector<double> v = e.vector(0);
  for (std::size_t i = 0; i < n; ++i) {
    sign[i] = v[i] < 0.0 ? -1.0 : 1.0;
    v[i] = std::abs(v[i]);
  }
  ZToW out;
  out.certifying_Z = SymMatrix(n);
  for (auto [i, j] : g.edges()) out.certifying_Z.set(i, j, -sign[i] * sign[j] * z(i, j));
  out.w.resize(n);
  for (std::size_t i = 0; i < n; ++i) out.w[i] = spread * v[i] * v[i];
  out.total = weight_total(out.w);
  out.upper_bound = kyfan_sum(SymMatrix::outer(sqrt_weights(out.w)) + out.certifying_Z, m);
  out.theta_m = theta_k(g, out.w, m).value;
  if (!(out.theta_m < out.total)) {
    std::ostringstream os;
    os.precision(12);
    os << "z_to_w: theta_" << m << "(G;w) = " << out.theta_m << " is not below w^T 1 = " << out.total;
    throw CertificationError(os.str());
  }
  return out;
}

WToZ w_to_z(const Graph& g, const WeightVector& w, int m) {
  const std::size_t n = g.order();
  check_m(m, n);
  check_weights(w, n);
  const double total = weight_total(w);
  const ThetaKResult res = theta_k(g, w, m);
  if (!(res.value < total - kMargin)) {
    std::ostringstream os;
    os.precision(12);
    os << "w_to_z: precondition theta_" << m << "(G;w) < w^T 1 - 1e-6 fails (" << res.value << " vs " << total << ")";
    throw InputError(os.str());
  }
  WToZ out;
  out.Z = -1.0 * res.primal_z;
  const auto ev = eigvalsh(out.Z);
  out.S_unscaled = hoffman_partial_sum(ev, m);
  const double nrm = out.Z.frobenius_norm();
  if (nrm == 0.0) throw CertificationError("w_to_z: primal matrix is zero");
  out.Z *= 1.0 / nrm;
  out.S = hoffman_partial_sum(eigvalsh(out.Z), m);
  out.deficit = total - res.value;
  out.meets_deficit = out.S_unscaled >= out.deficit - kMargin;
  if (!(out.S > kLoCertificateTol))
    throw CertificationError("w_to_z: S(" + std::to_string(m) + ") = " + std::to_string(out.S) +
                             " not positive; spectrum of -Z: " + spectrum_text(ev));
  return out;
}

int min_k_for_weight(const Graph& g, const WeightVector& w) {
  const std::size_t n = g.order();
  check_weights(w, n);
  const double total = weight_total(w);
  if (!(total > 0.0)) throw InputError("min_k_for_weight: w must be nonzero");
  int lo = 1;
  int hi = static_cast<int>(n);
  while (lo < hi) {
    const int mid = lo + (hi - lo) / 2;
    if (theta_k(g, w, mid).value >= total - kMargin)
      hi = mid;
    else
      lo = mid + 1;
  }
  return lo;
}

std::optional<WeightVector> w_search_refute(const Graph& g, int k, const SearchBudget& budget, std::uint64_t seed) {
  const std::size_t n = g.order();
  if (k < 1 || static_cast<std::size_t>(k) > n) throw InputError("w_search_refute: k outside [1, n]");
  if (static_cast<std::size_t>(k) == n || g.size() == 0) return std::nullopt;
  SplitMix64 rng(seed);
  auto squares = [](const std::vector<double>& s) {
    WeightVector w(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) w[i] = s[i] * s[i];
    return w;
  };
  for (int r = 0; r < std::max(1, budget.restarts); ++r) {
    std::vector<double> s(n, 1.0);
    if (r > 0)
      for (double& v : s) v = 0.1 + rng.uniform();
    double ns = norm2(s);
    for (double& v : s) v /= ns;
    for (int t = 1; t <= std::max(1, budget.iterations); ++t) {
      ThetaKDual d;
      try {
        d = theta_k_dual(g, squares(s), k);
      } catch (const SolverError&) {
        break;
      }
      if (d.value < 1.0 - kMargin) {
        const WeightVector w = squares(s);
        try {
          if (theta_k(g, w, k).value < 1.0 - kMargin) return w;
        } catch (const Error&) {
        }
      }
      // Gradient 2Xs, projected to the tangent space of the sphere.
      std::vector<double> grad = d.X * std::span<const double>(s);
      const double radial = dot(grad, s);
      for (std::size_t i = 0; i < n; ++i) grad[i] = 2.0 * (grad[i] - radial * s[i]);
      const double gn = norm2(grad);
      if (gn < 1e-12) break;
      const double step = 0.5 / std::sqrt(static_cast<double>(t));
      for (std::size_t i = 0; i < n; ++i) s[i] = std::max(0.0, s[i] - step * grad[i] / gn);
      ns = norm2(s);
      if (ns == 0.0) break;
      for (double& v : s) v /= ns;
    }
  }
  return std::nullopt;
}

std::string to_string(LoCertificate::Kind k) { return k == LoCertificate::Kind::z_search ? "z-search" : "w-refute"; }

double verify_lo_certificate(const Graph& g, const LoCertificate& c, double tol) {
  const std::size_t n = g.order();
  check_m(c.m, n);
  if (c.Z.size() != n) throw CertificationError("lower-bound certificate: matrix has the wrong dimension");
  try {
    check_edge_support(g, c.Z);
  } catch (const InputError& e) {
    throw CertificationError(std::string("lower-bound certificate: ") + e.what());
  }
  const double nrm = c.Z.frobenius_norm();
  if (nrm == 0.0) throw CertificationError("lower-bound certificate: zero matrix");
  const double s = hoffman_partial_sum(eigvalsh((1.0 / nrm) * c.Z), c.m);
  if (!(s > tol))
    throw CertificationError("lower-bound certificate at m=" + std::to_string(c.m) + ": S(m) = " + std::to_string(s) +
                             " not above " + std::to_string(tol));
  return s;
}

HBracket h_bracket(const Graph& g, const HBracketOptions& opts) {
  const std::size_t n = g.order();
  if (n == 0) throw InputError("h_bracket: empty vertex set");
  HBracket hb;
  hb.chi_f = fractional_chromatic(g);
  if (hb.chi_f.rational) {
    const Rational& q = *hb.chi_f.rational;
    hb.hi = static_cast<int>((q.num + q.den - 1) / q.den);
  } else {
    hb.hi = ceil_tol(hb.chi_f.value);
  }
  hb.hi_certificate = build_theorem2_matrix(g, WeightVector(n, 1.0), equality_form(hb.chi_f.witness, g));
  hb.theta_complement = lovasz_theta(complement(g));
  hb.theta_ceiling = ceil_tol(hb.theta_complement);
  if (g.size() == 0) {
    hb.lo = 1;
    hb.hi = 1;
    return hb;
  }
  hb.lo = std::max(1, hb.theta_ceiling);
  if (hb.lo > hb.hi)
    throw InternalError("h_bracket: lower end " + std::to_string(hb.lo) + " exceeds upper end " +
                        std::to_string(hb.hi));

  SearchBudget zb = opts.z_budget;
  zb.stop_above = kLoCertificateTol;
  auto accept = [&](LoCertificate c) {
    try {
      c.value = verify_lo_certificate(g, c);
    } catch (const CertificationError&) {
      return false;
    }
    hb.lo_certificates.push_back(std::move(c));
    return true;
  };
  auto mix = [&](int m) { return SplitMix64(opts.seed + static_cast<std::uint64_t>(m))(); };

  for (int m = hb.hi - 1; m >= std::max(hb.lo, 2); --m) {
    const ZSearchResult zr = z_search(g, m, zb, mix(m));
    if (zr.S > kLoCertificateTol && accept({LoCertificate::Kind::z_search, m, zr.Z, {}, zr.S})) {
      hb.lo = m + 1;
      break;
    }
    if (!opts.use_w_search) continue;
    const auto w = w_search_refute(g, m, opts.w_budget, mix(m) ^ 0x5bd1e995u);
    if (!w) continue;
    try {
      const WToZ wz = w_to_z(g, *w, m);
      if (accept({LoCertificate::Kind::w_refute, m, wz.Z, *w, wz.S})) {
        hb.lo = m + 1;
        break;
      }
    } catch (const Error&) {
    }
  }
  // A matrix witnessing the part of lo that came from ϑ(Ḡ), when one is found.
  if (hb.lo_certificates.empty() && hb.lo - 1 >= 2) {
    const int m = hb.lo - 1;
    const ZSearchResult zr = z_search(g, m, zb, mix(m));
    if (zr.S > kLoCertificateTol) accept({LoCertificate::Kind::z_search, m, zr.Z, {}, zr.S});
  }
  if (hb.lo > hb.hi)
    throw InternalError("h_bracket: certified lower end " + std::to_string(hb.lo) + " exceeds upper end " +
                        std::to_string(hb.hi));
  return hb;
}

std::string lo_certificate_json(const Graph& g, const LoCertificate& c) {
  nlohmann::json j;
  j["schema"] = 1;
  j["kind"] = "hoffman-lower";
  j["route"] = to_string(c.kind);
  j["graph6"] = encode_graph6(g);
  j["m"] = c.m;
  j["Z"] = detail::to_json(c.Z);
  if (!c.w.empty()) j["w"] = c.w;
  j["value"] = c.value;
  j["tolerance"] = kLoCertificateTol;
  return j.dump(1);
}

LoCertificate load_lo_certificate(std::string_view text, Graph* graph_out) {
  const nlohmann::json j = detail::parse_json(text, "lower-bound certificate");
  try {
    if (j.value("schema", 0) != 1 || j.value("kind", "") != "hoffman-lower")
      throw InputError("lower-bound certificate: wrong schema or kind");
    const Graph g = parse_graph6(j.at("graph6").get<std::string>());
    LoCertificate c;
    const std::string route = j.at("route").get<std::string>();
    if (route != "z-search" && route != "w-refute") throw InputError("lower-bound certificate: unknown route");
    c.kind = route == "z-search" ? LoCertificate::Kind::z_search : LoCertificate::Kind::w_refute;
    c.m = j.at("m").get<int>();
    c.Z = detail::sym_from_json(j.at("Z"), g.order());
    if (j.contains("w")) c.w = j.at("w").get<WeightVector>();
    c.value = verify_lo_certificate(g, c);
    if (graph_out) *graph_out = g;
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("lower-bound certificate: ") + e.what());
  }
}

}  // namespace spectral_chroma
