#include "spectral_chroma/certify.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "json_util.hpp"
#include "spectral_chroma/errors.hpp"
#include "spectral_chroma/theta.hpp"

namespace spectral_chroma {

namespace {

constexpr double kClaimTol = 1e-7;
constexpr double kEdgeTol = 1e-9;
constexpr double kCoverTol = 1e-9;

ClaimCheck claim(std::string name, double residual, double tol) {
  return {std::move(name), residual, tol, residual <= tol};
}

}  // namespace

bool Theorem2Certificate::pass() const {
  return !checks.empty() && std::all_of(checks.begin(), checks.end(), [](const ClaimCheck& c) { return c.pass; });
}

Theorem2Certificate build_theorem2_matrix(const Graph& g, const WeightVector& w, const FractionalColoring& coloring) {
  const std::size_t n = g.order();
  check_weights(w, n);
  if (coloring.cocliques.size() != coloring.y.size())
    throw InputError("theorem2: coloring weights and sets differ in length");
  for (std::size_t i = 0; i < coloring.cocliques.size(); ++i) {
    if (!is_coclique(g, coloring.cocliques[i])) throw InputError("theorem2: listed set is not a coclique");
    if (!(coloring.y[i] >= 0.0)) throw InputError("theorem2: negative coloring weight");
  }
  const auto cover = coloring.coverage(n);
  for (std::size_t v = 0; v < n; ++v)
    if (std::abs(cover[v] - 1.0) > kCoverTol)
      throw InputError("theorem2: coloring is not in equality form at vertex " + std::to_string(v));

  const auto r = sqrt_weights(w);
  Theorem2Certificate c;
  c.w = w;
  c.coloring = coloring;
  c.M = SymMatrix(n);
  double value = 0.0;
  for (std::size_t s = 0; s < coloring.cocliques.size(); ++s) {
    const VertexSet& set = coloring.cocliques[s];
    const double y = coloring.y[s];
    value += y;
    if (y == 0.0) continue;
    if (set.empty()) {
      if (y > kCoverTol) throw CertificationError("theorem2: empty coclique carries weight " + std::to_string(y));
      continue;
    }
    double ws = 0.0;
    for (std::size_t v : set) ws += r[v] * r[v];
    if (ws > 0.0) {
      for (std::size_t a = 0; a < set.size(); ++a)
        for (std::size_t b = a; b < set.size(); ++b)
          c.M.add(set[a], set[b], y * r[set[a]] * r[set[b]] / ws);
    } else {
      for (std::size_t v : set) c.M.add(v, v, y / static_cast<double>(set.size()));
    }
  }
  c.k = value;
  c.trace_value = c.M.trace();
  c.objective_value = inner(SymMatrix::outer(r), c.M);

  const double total = weight_total(w);
  const auto eig = eigvalsh(c.M);
  double edge = 0.0;
  for (auto [i, j] : g.edges()) edge = std::max(edge, std::abs(c.M(i, j)));
  const auto mr = c.M * std::span<const double>(r);
  double fixed = 0.0;
  for (std::size_t i = 0; i < n; ++i) fixed = std::max(fixed, std::abs(mr[i] - r[i]));

  c.checks.push_back(claim("trace equals chi_f", std::abs(c.trace_value - c.k), kClaimTol));
  c.checks.push_back(claim("M positive semidefinite", std::max(0.0, -eig.back()), kClaimTol));
  c.checks.push_back(claim("M below identity", std::max(0.0, eig.front() - 1.0), kClaimTol));
  c.checks.push_back(claim("zero on edges", edge, kEdgeTol));
  c.checks.push_back(claim("objective equals total weight", std::abs(c.objective_value - total),
                           kClaimTol * std::max(1.0, total)));
  c.checks.push_back(claim("sqrt(w) is a fixed vector", fixed, kClaimTol * std::max(1.0, norm2(r))));
  for (const ClaimCheck& ch : c.checks)
    if (!ch.pass) {
      std::ostringstream os;
      os << "theorem2 certificate failed claim \"" << ch.name << "\": residual " << ch.residual << " above "
         << ch.tolerance;
      throw CertificationError(os.str());
    }
  return c;
}

DualFeasibilityReport verify_dual_feasible(const Graph& g, const SymMatrix& x, double k, const WeightVector& w,
                                           double tol) {
  const std::size_t n = g.order();
  if (x.size() != n) throw InputError("verify_dual_feasible: dimension mismatch");
  check_weights(w, n);
  DualFeasibilityReport rep;
  rep.trace_deviation = std::abs(x.trace() - k);
  for (auto [i, j] : g.edges()) rep.max_edge_entry = std::max(rep.max_edge_entry, std::abs(x(i, j)));
  const auto eig = eigvalsh(x);
  rep.max_eigenvalue = n ? eig.front() : 0.0;
  rep.min_eigenvalue = n ? eig.back() : 0.0;
  rep.objective = inner(SymMatrix::outer(sqrt_weights(w)), x);
  rep.pass = rep.trace_deviation <= tol && rep.max_edge_entry <= tol && rep.min_eigenvalue >= -tol &&
             rep.max_eigenvalue <= 1.0 + tol;
  return rep;
}

std::string theorem2_certificate_json(const Graph& g, const Theorem2Certificate& c) {
  nlohmann::json j;
  j["schema"] = 1;
  j["kind"] = "theorem2";
  j["graph6"] = encode_graph6(g);
  j["k"] = c.k;
  j["w"] = c.w;
  nlohmann::json sets = nlohmann::json::array();
  for (std::size_t i = 0; i < c.coloring.cocliques.size(); ++i)
    sets.push_back({{"set", c.coloring.cocliques[i]}, {"y", c.coloring.y[i]}});
  j["coloring"] = sets;
  j["M"] = detail::to_json(c.M);
  j["trace"] = c.trace_value;
  j["objective"] = c.objective_value;
  nlohmann::json checks = nlohmann::json::array();
  for (const ClaimCheck& ch : c.checks)
    checks.push_back({{"claim", ch.name}, {"residual", ch.residual}, {"tolerance", ch.tolerance}, {"pass", ch.pass}});
  j["checks"] = checks;
  return j.dump(1);
}

Theorem2Certificate load_theorem2_certificate(std::string_view text, Graph* graph_out) {
  const nlohmann::json j = detail::parse_json(text, "theorem2 certificate");
  try {
    if (j.value("schema", 0) != 1 || j.value("kind", "") != "theorem2")
      throw InputError("theorem2 certificate: wrong schema or kind");
    const Graph g = parse_graph6(j.at("graph6").get<std::string>());
    FractionalColoring col;
    for (const auto& e : j.at("coloring")) {
      col.cocliques.push_back(e.at("set").get<VertexSet>());
      col.y.push_back(e.at("y").get<double>());
      col.value += col.y.back();
    }
    Theorem2Certificate c = build_theorem2_matrix(g, j.at("w").get<WeightVector>(), col);
    if (std::abs(c.k - j.at("k").get<double>()) > kClaimTol)
      throw CertificationError("theorem2 certificate: stored k does not match the coloring value");
    if (graph_out) *graph_out = g;
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("theorem2 certificate: ") + e.what());
  }
}

}  // namespace spectral_chroma
