#include "spectral_chroma/chromatic.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>

#include "spectral_chroma/errors.hpp"
#include "spectral_chroma/lp.hpp"

namespace spectral_chroma {

namespace {

using Mask = std::uint64_t;

Mask bit(std::size_t v) { return Mask{1} << v; }

void guard(const Graph& g, const char* what) {
  if (g.order() > kMaxExactOrder)
    throw SizeError(std::string(what) + ": graph has " + std::to_string(g.order()) + " vertices, limit is " +
                    std::to_string(kMaxExactOrder));
}

// Neighborhood masks of g, or of its complement.
std::vector<Mask> masks(const Graph& g, bool complemented) {
  const std::size_t n = g.order();
  const Mask all = n == 64 ? ~Mask{0} : (bit(n) - 1);
  std::vector<Mask> nb(n, 0);
  for (auto [i, j] : g.edges()) {
    nb[i] |= bit(j);
    nb[j] |= bit(i);
  }
  if (complemented)
    for (std::size_t v = 0; v < n; ++v) nb[v] = all & ~nb[v] & ~bit(v);
  return nb;
}

VertexSet to_set(Mask m) {
  VertexSet s;
  while (m) {
    s.push_back(static_cast<std::size_t>(std::countr_zero(m)));
    m &= m - 1;
  }
  return s;
}

// Degeneracy order: repeatedly remove a vertex of minimum remaining degree.
std::vector<std::size_t> degeneracy_order(const std::vector<Mask>& nb) {
  const std::size_t n = nb.size();
  std::vector<std::size_t> order;
  Mask left = n == 64 ? ~Mask{0} : (bit(n) - 1);
  while (left) {
    std::size_t best = 0;
    int best_deg = 1 << 30;
    for (Mask m = left; m; m &= m - 1) {
      const auto v = static_cast<std::size_t>(std::countr_zero(m));
      const int d = std::popcount(nb[v] & left);
      if (d < best_deg) {
        best_deg = d;
        best = v;
      }
    }
    order.push_back(best);
    left &= ~bit(best);
  }
  return order;
}

// Bron–Kerbosch with Tomita pivoting.
void bron_kerbosch(const std::vector<Mask>& nb, Mask r, Mask p, Mask x, std::vector<Mask>& out) {
  if (!p && !x) {
    out.push_back(r);
    return;
  }
  Mask pu = p | x;
  std::size_t pivot = 0;
  int best = -1;
  for (Mask m = pu; m; m &= m - 1) {
    const auto u = static_cast<std::size_t>(std::countr_zero(m));
    const int c = std::popcount(p & nb[u]);
    if (c > best) {
      best = c;
      pivot = u;
    }
  }
  for (Mask m = p & ~nb[pivot]; m; m &= m - 1) {
    const auto v = static_cast<std::size_t>(std::countr_zero(m));
    bron_kerbosch(nb, r | bit(v), p & nb[v], x & nb[v], out);
    p &= ~bit(v);
    x |= bit(v);
  }
}

std::vector<Mask> maximal_cliques(const std::vector<Mask>& nb) {
  std::vector<Mask> out;
  const auto order = degeneracy_order(nb);
  Mask later = 0;
  for (std::size_t v : order) later |= bit(v);
  Mask earlier = 0;
  for (std::size_t v : order) {
    later &= ~bit(v);
    bron_kerbosch(nb, bit(v), later & nb[v], earlier & nb[v], out);
    earlier |= bit(v);
  }
  return out;
}

void max_clique_rec(const std::vector<Mask>& nb, int size, Mask p, int& best) {
  if (!p) {
    best = std::max(best, size);
    return;
  }
  while (p) {
    if (size + std::popcount(p) <= best) return;
    const auto v = static_cast<std::size_t>(std::countr_zero(p));
    max_clique_rec(nb, size + 1, p & nb[v], best);
    p &= ~bit(v);
  }
}

std::size_t max_clique(const std::vector<Mask>& nb) {
  int best = 0;
  const std::size_t n = nb.size();
  max_clique_rec(nb, 0, n == 64 ? ~Mask{0} : (bit(n) - 1), best);
  return static_cast<std::size_t>(best);
}

struct Dsatur {
  std::size_t n = 0;
  const std::vector<Mask>* nb = nullptr;
  std::vector<int> colors;
  std::vector<int> best_colors;
  int best = 0;
  int lower = 0;

  Mask used_around(std::size_t v) const {
    Mask m = 0;
    for (Mask a = (*nb)[v]; a; a &= a - 1) {
      const int c = colors[static_cast<std::size_t>(std::countr_zero(a))];
      if (c >= 0) m |= bit(static_cast<std::size_t>(c));
    }
    return m;
  }

  void search(std::size_t colored, int used) {
    if (used >= best) return;
    if (colored == n) {
      best = used;
      best_colors = colors;
      return;
    }
    std::size_t v = n;
    int sat = -1;
    int deg = -1;
    for (std::size_t u = 0; u < n; ++u) {
      if (colors[u] >= 0) continue;
      const int s = std::popcount(used_around(u));
      int d = 0;
      for (Mask a = (*nb)[u]; a; a &= a - 1)
        if (colors[static_cast<std::size_t>(std::countr_zero(a))] < 0) ++d;
      if (s > sat || (s == sat && d > deg)) {
        v = u;
        sat = s;
        deg = d;
      }
    }
    const Mask forbidden = used_around(v);
    for (int c = 0; c < used; ++c) {
      if (forbidden & bit(static_cast<std::size_t>(c))) continue;
      colors[v] = c;
      search(colored + 1, used);
      if (best <= lower) break;
    }
    if (best > lower && used + 1 < best) {
      colors[v] = used;
      search(colored + 1, used + 1);
    }
    colors[v] = -1;
  }
};

}  // namespace

bool is_coclique(const Graph& g, const VertexSet& s) {
  for (std::size_t a = 0; a < s.size(); ++a) {
    if (s[a] >= g.order()) return false;
    for (std::size_t b = a + 1; b < s.size(); ++b)
      if (s[a] == s[b] || g.adjacent(s[a], s[b])) return false;
  }
  return true;
}

std::vector<double> FractionalColoring::coverage(std::size_t n) const {
  std::vector<double> c(n, 0.0);
  for (std::size_t i = 0; i < cocliques.size(); ++i)
    for (std::size_t v : cocliques[i]) c.at(v) += y[i];
  return c;
}

std::string Rational::str() const {
  if (den == 1) return std::to_string(num);
  return std::to_string(num) + "/" + std::to_string(den);
}

std::optional<Rational> rational_reconstruct(double x, long long max_den, double tol) {
  if (!std::isfinite(x) || max_den < 1) return std::nullopt;
  long long h0 = 1, h1 = 0;  // convergent numerators h_{i-1}, h_{i-2}
  long long k0 = 0, k1 = 1;
  double r = x;
  for (int iter = 0; iter < 64; ++iter) {
    const double a = std::floor(r);
    if (std::abs(a) > 1e15) break;
    const auto ai = static_cast<long long>(a);
    const long long h = ai * h0 + h1;
    const long long k = ai * k0 + k1;
    if (k > max_den) break;
    if (std::abs(static_cast<double>(h) / static_cast<double>(k) - x) <= tol) return Rational{h, k};
    h1 = h0;
    h0 = h;
    k1 = k0;
    k0 = k;
    const double frac = r - a;
    if (frac <= 0.0) break;
    r = 1.0 / frac;
  }
  return std::nullopt;
}

std::vector<VertexSet> maximal_cocliques(const Graph& g) {
  guard(g, "maximal_cocliques");
  if (g.order() == 0) return {};
  std::vector<VertexSet> out;
  for (Mask m : maximal_cliques(masks(g, true))) out.push_back(to_set(m));
  std::sort(out.begin(), out.end());
  return out;
}

std::size_t stability_number(const Graph& g) {
  guard(g, "stability_number");
  return max_clique(masks(g, true));
}

std::size_t clique_number(const Graph& g) {
  guard(g, "clique_number");
  return max_clique(masks(g, false));
}

std::vector<int> optimal_coloring(const Graph& g) {
  guard(g, "chromatic_number");
  const auto nb = masks(g, false);
  Dsatur d;
  d.n = g.order();
  d.nb = &nb;
  d.colors.assign(d.n, -1);
  d.best = static_cast<int>(d.n) + 1;
  d.lower = static_cast<int>(max_clique(nb));
  d.search(0, 0);
  return d.best_colors;
}

std::size_t chromatic_number(const Graph& g) {
  const auto c = optimal_coloring(g);
  int k = 0;
  for (int v : c) k = std::max(k, v + 1);
  return static_cast<std::size_t>(k);
}

FractionalChromatic fractional_chromatic(const Graph& g) {
  guard(g, "fractional_chromatic");
  const std::size_t n = g.order();
  if (n == 0) throw InputError("fractional_chromatic: empty vertex set");
  const auto sets = maximal_cocliques(g);
  LinearProgram lp;
  lp.sense = Sense::minimize;
  lp.cost.assign(sets.size(), 1.0);
  lp.constraints = Matrix(n, sets.size());
  for (std::size_t s = 0; s < sets.size(); ++s)
    for (std::size_t v : sets[s]) lp.constraints(v, s) = 1.0;
  lp.rhs.assign(n, 1.0);
  lp.relations.assign(n, RowRelation::greater_equal);
  const LPSolution sol = solve_lp(lp);
  if (sol.status != LpStatus::optimal) throw SolverError("fractional_chromatic: covering LP did not solve");

  FractionalChromatic out;
  for (std::size_t s = 0; s < sets.size(); ++s) {
    if (sol.x[s] <= 1e-12) continue;
    out.witness.cocliques.push_back(sets[s]);
    out.witness.y.push_back(sol.x[s]);
    out.witness.value += sol.x[s];
  }
  out.value = out.witness.value;
  out.rational = rational_reconstruct(out.value, static_cast<long long>(n));
  return out;
}

FractionalColoring equality_form(const FractionalColoring& witness, const Graph& g) {
  const std::size_t n = g.order();
  guard(g, "equality_form");
  if (witness.cocliques.size() != witness.y.size()) throw InputError("equality_form: weights and sets differ in length");
  std::vector<std::pair<Mask, double>> parts;
  for (std::size_t i = 0; i < witness.cocliques.size(); ++i) {
    if (!is_coclique(g, witness.cocliques[i])) throw InputError("equality_form: listed set is not a coclique");
    if (!(witness.y[i] >= 0.0)) throw InputError("equality_form: negative weight");
    Mask m = 0;
    for (std::size_t v : witness.cocliques[i]) m |= bit(v);
    parts.emplace_back(m, witness.y[i]);
  }
  const std::vector<double> cover = witness.coverage(n);
  for (std::size_t v = 0; v < n; ++v) {
    double excess = cover[v] - 1.0;
    for (std::size_t i = 0; i < parts.size() && excess > 0.0; ++i) {
      auto& [m, y] = parts[i];
      if (!(m & bit(v)) || y <= 0.0) continue;
      const double t = std::min(y, excess);
      y -= t;
      excess -= t;
      parts.emplace_back(m & ~bit(v), t);
    }
  }
  std::map<VertexSet, double> merged;
  for (auto [m, y] : parts)
    if (y > 0.0) merged[to_set(m)] += y;
  FractionalColoring out;
  for (auto& [s, y] : merged) {
    out.cocliques.push_back(s);
    out.y.push_back(y);
    out.value += y;
  }
  return out;
}

}  // namespace spectral_chroma
