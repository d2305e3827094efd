#include "spectral_chroma/graph.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <sstream>

#include "spectral_chroma/errors.hpp"

namespace spectral_chroma {

Graph::Graph(std::size_t n, const std::vector<Edge>& edges) : n_(n), adj_(n * n, 0), nbrs_(n) {
  for (auto [a, b] : edges) {
    if (a >= n || b >= n)
      throw InputError("edge {" + std::to_string(a) + "," + std::to_string(b) + "} has an endpoint outside [0, " +
                       std::to_string(n) + ")");
    if (a == b) throw InputError("self-loop at vertex " + std::to_string(a));
    if (adj_[a * n + b]) continue;
    adj_[a * n + b] = adj_[b * n + a] = 1;
    edges_.emplace_back(std::min(a, b), std::max(a, b));
  }
  std::sort(edges_.begin(), edges_.end());
  for (auto [a, b] : edges_) {
    nbrs_[a].push_back(b);
    nbrs_[b].push_back(a);
  }
  for (auto& nb : nbrs_) std::sort(nb.begin(), nb.end());
}

void check_weights(const WeightVector& w, std::size_t n) {
  if (w.size() != n)
    throw InputError("weight vector has length " + std::to_string(w.size()) + ", expected " + std::to_string(n));
  for (std::size_t i = 0; i < w.size(); ++i)
    if (!std::isfinite(w[i]) || w[i] < 0.0)
      throw InputError("weight " + std::to_string(i) + " is negative or not finite");
}

// graph6 ---------------------------------------------------------------------

namespace {

constexpr int kBias = 63;

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

Graph parse_graph6(std::string_view text) {
  std::size_t base = 0;
  while (base < text.size() && std::isspace(static_cast<unsigned char>(text[base]))) ++base;
  std::string_view s = trim(text);
  constexpr std::string_view header = ">>graph6<<";
  if (s.starts_with(header)) {
    s.remove_prefix(header.size());
    base += header.size();
  }
  if (s.empty()) throw ParseError("graph6: empty input", base);

  for (std::size_t i = 0; i < s.size(); ++i) {
    const int c = static_cast<unsigned char>(s[i]);
    if (c < kBias || c > 126) throw ParseError("graph6: character outside [63,126]", base + i);
  }

  std::size_t pos = 0;
  std::size_t n = 0;
  auto need = [&](std::size_t count) {
    if (pos + count > s.size()) throw ParseError("graph6: truncated size field", base + s.size());
  };
  if (s[0] != 126) {
    n = static_cast<std::size_t>(s[0] - kBias);
    pos = 1;
  } else if (s.size() > 1 && s[1] == 126) {
    pos = 2;
    need(6);
    for (int i = 0; i < 6; ++i) n = (n << 6) | static_cast<std::size_t>(s[pos++] - kBias);
  } else {
    pos = 1;
    need(3);
    for (int i = 0; i < 3; ++i) n = (n << 6) | static_cast<std::size_t>(s[pos++] - kBias);
  }

  const std::size_t bits = n * (n - (n > 0 ? 1 : 0)) / 2;
  const std::size_t bytes = (bits + 5) / 6;
  if (s.size() - pos != bytes)
    throw ParseError("graph6: expected " + std::to_string(bytes) + " data bytes for n=" + std::to_string(n) +
                         ", found " + std::to_string(s.size() - pos),
                     base + std::min(s.size(), pos + bytes));

  std::vector<Edge> edges;
  std::size_t bit = 0;
  for (std::size_t j = 1; j < n; ++j)
    for (std::size_t i = 0; i < j; ++i, ++bit) {
      const int byte = s[pos + bit / 6] - kBias;
      if (byte & (1 << (5 - bit % 6))) edges.emplace_back(i, j);
    }
  if (bytes > 0) {
    const std::size_t pad = bytes * 6 - bits;
    const int last = s[pos + bytes - 1] - kBias;
    if (last & ((1 << pad) - 1)) throw ParseError("graph6: nonzero padding bits", base + pos + bytes - 1);
  }
  return Graph(n, edges);
}

std::string encode_graph6(const Graph& g) {
  const std::size_t n = g.order();
  std::string out;
  if (n <= 62) {
    out.push_back(static_cast<char>(n + kBias));
  } else if (n <= 258047) {
    out.push_back(126);
    for (int shift = 12; shift >= 0; shift -= 6) out.push_back(static_cast<char>(((n >> shift) & 63) + kBias));
  } else {
    out.append(2, static_cast<char>(126));
    for (int shift = 30; shift >= 0; shift -= 6) out.push_back(static_cast<char>(((n >> shift) & 63) + kBias));
  }
  int acc = 0;
  int filled = 0;
  for (std::size_t j = 1; j < n; ++j)
    for (std::size_t i = 0; i < j; ++i) {
      acc = (acc << 1) | (g.adjacent(i, j) ? 1 : 0);
      if (++filled == 6) {
        out.push_back(static_cast<char>(acc + kBias));
        acc = 0;
        filled = 0;
      }
    }
  if (filled > 0) out.push_back(static_cast<char>((acc << (6 - filled)) + kBias));
  return out;
}

// DIMACS / edge list -----------------------------------------------------------

namespace {

std::vector<std::string_view> tokens(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    const std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

long long to_int(std::string_view tok, std::size_t offset) {
  long long v = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc{} || ptr != tok.data() + tok.size())
    throw ParseError("expected an integer, found '" + std::string(tok) + "'", offset);
  return v;
}

template <typename Fn>
void for_each_line(std::string_view text, Fn&& fn) {
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    fn(text.substr(start, end - start), start);
    start = end + 1;
  }
}

}  // namespace

Graph parse_dimacs(std::string_view text) {
  long long n = -1;
  long long declared_edges = 0;
  long long edge_lines = 0;
  std::vector<Edge> edges;
  for_each_line(text, [&](std::string_view line, std::size_t offset) {
    auto t = tokens(line);
    if (t.empty() || t[0] == "c") return;
    if (t[0] == "p") {
      if (n >= 0) throw ParseError("dimacs: duplicate problem line", offset);
      if (t.size() != 4 || (t[1] != "edge" && t[1] != "col"))
        throw ParseError("dimacs: problem line must be 'p edge n m'", offset);
      n = to_int(t[2], offset);
      declared_edges = to_int(t[3], offset);
      if (n < 0 || declared_edges < 0) throw ParseError("dimacs: negative size in problem line", offset);
      return;
    }
    if (t[0] == "e") {
      if (n < 0) throw ParseError("dimacs: edge line before problem line", offset);
      if (t.size() != 3) throw ParseError("dimacs: edge line must be 'e i j'", offset);
      const long long a = to_int(t[1], offset);
      const long long b = to_int(t[2], offset);
      if (a < 1 || a > n || b < 1 || b > n) throw ParseError("dimacs: vertex index out of range", offset);
      if (a == b) throw ParseError("dimacs: self-loop", offset);
      edges.emplace_back(static_cast<std::size_t>(a - 1), static_cast<std::size_t>(b - 1));
      ++edge_lines;
      return;
    }
    throw ParseError("dimacs: unknown line type '" + std::string(t[0]) + "'", offset);
  });
  if (n < 0) throw ParseError("dimacs: missing problem line", 0);
  if (edge_lines != declared_edges)
    throw ParseError("dimacs: header declares " + std::to_string(declared_edges) + " edges, found " +
                         std::to_string(edge_lines),
                     text.size());
  return Graph(static_cast<std::size_t>(n), edges);
}

Graph parse_edge_list(std::string_view text, std::size_t order) {
  std::vector<Edge> edges;
  std::size_t n = order;
  for_each_line(text, [&](std::string_view line, std::size_t offset) {
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    auto t = tokens(line);
    if (t.empty()) return;
    if (t.size() != 2) throw ParseError("edge list: expected two vertex indices per line", offset);
    const long long a = to_int(t[0], offset);
    const long long b = to_int(t[1], offset);
    if (a < 0 || b < 0) throw ParseError("edge list: negative vertex index", offset);
    if (a == b) throw ParseError("edge list: self-loop", offset);
    if (order > 0 && (static_cast<std::size_t>(a) >= order || static_cast<std::size_t>(b) >= order))
      throw ParseError("edge list: vertex index out of range", offset);
    edges.emplace_back(static_cast<std::size_t>(a), static_cast<std::size_t>(b));
    if (order == 0) n = std::max(n, static_cast<std::size_t>(std::max(a, b)) + 1);
  });
  return Graph(n, edges);
}

Graph complement(const Graph& g) {
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < g.order(); ++i)
    for (std::size_t j = i + 1; j < g.order(); ++j)
      if (!g.adjacent(i, j)) edges.emplace_back(i, j);
  return Graph(g.order(), edges);
}

SymMatrix adjacency_matrix(const Graph& g) {
  SymMatrix a(g.order());
  for (auto [i, j] : g.edges()) a.set(i, j, 1.0);
  return a;
}

// generators ------------------------------------------------------------------

SplitMix64::result_type SplitMix64::operator()() {
  std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double SplitMix64::uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

FamilyKind parse_family_kind(std::string_view s) {
  if (s == "cycle") return FamilyKind::cycle;
  if (s == "complete") return FamilyKind::complete;
  if (s == "empty") return FamilyKind::empty;
  if (s == "kneser") return FamilyKind::kneser;
  if (s == "complete-multipartite" || s == "multipartite") return FamilyKind::complete_multipartite;
  if (s == "petersen") return FamilyKind::petersen;
  if (s == "erdos-renyi" || s == "gnp") return FamilyKind::erdos_renyi;
  throw InputError("unknown graph family '" + std::string(s) + "'");
}

std::string to_string(FamilyKind k) {
  switch (k) {
    case FamilyKind::cycle: return "cycle";
    case FamilyKind::complete: return "complete";
    case FamilyKind::empty: return "empty";
    case FamilyKind::kneser: return "kneser";
    case FamilyKind::complete_multipartite: return "complete-multipartite";
    case FamilyKind::petersen: return "petersen";
    case FamilyKind::erdos_renyi: return "erdos-renyi";
  }
  return "?";
}

std::string FamilySpec::name() const {
  std::ostringstream os;
  os << to_string(kind);
  for (long long p : params) os << '-' << p;
  if (kind == FamilyKind::erdos_renyi) os << "-p" << p << "-s" << seed;
  return os.str();
}

std::vector<std::uint64_t> colex_subsets(int n, int k) {
  std::vector<std::uint64_t> out;
  if (k < 0 || k > n || n > 63) return out;
  if (k == 0) return {0};
  // Colex order of k-subsets equals increasing order of their bitmask value.
  std::uint64_t s = (std::uint64_t{1} << k) - 1;
  const std::uint64_t limit = std::uint64_t{1} << n;
  while (s < limit) {
    out.push_back(s);
    const std::uint64_t c = s & (~s + 1);
    const std::uint64_t r = s + c;
    s = (((r ^ s) >> 2) / c) | r;  // Gosper's hack
  }
  return out;
}

namespace {

std::size_t param(const FamilySpec& spec, std::size_t i) {
  if (i >= spec.params.size())
    throw InputError(to_string(spec.kind) + ": missing parameter " + std::to_string(i + 1));
  if (spec.params[i] < 0) throw InputError(to_string(spec.kind) + ": parameters must be nonnegative");
  return static_cast<std::size_t>(spec.params[i]);
}

void expect_params(const FamilySpec& spec, std::size_t count) {
  if (spec.params.size() != count)
    throw InputError(to_string(spec.kind) + " expects " + std::to_string(count) + " parameter(s), got " +
                     std::to_string(spec.params.size()));
}

Graph kneser(std::size_t n, std::size_t k) {
  if (k < 1 || n < 2 * k) throw InputError("kneser(n,k) requires n >= 2k >= 2");
  if (n > 62) throw InputError("kneser: n too large");
  const auto sets = colex_subsets(static_cast<int>(n), static_cast<int>(k));
  std::vector<Edge> edges;
  for (std::size_t a = 0; a < sets.size(); ++a)
    for (std::size_t b = a + 1; b < sets.size(); ++b)
      if ((sets[a] & sets[b]) == 0) edges.emplace_back(a, b);
  return Graph(sets.size(), edges);
}

}  // namespace

Graph generate(const FamilySpec& spec) {
  switch (spec.kind) {
    case FamilyKind::cycle: {
      expect_params(spec, 1);
      const std::size_t n = param(spec, 0);
      if (n < 3) throw InputError("cycle(n) requires n >= 3");
      std::vector<Edge> edges;
      for (std::size_t i = 0; i < n; ++i) edges.emplace_back(i, (i + 1) % n);
      return Graph(n, edges);
    }
    case FamilyKind::complete: {
      expect_params(spec, 1);
      const std::size_t n = param(spec, 0);
      return complement(Graph::empty(n));
    }
    case FamilyKind::empty:
      expect_params(spec, 1);
      return Graph::empty(param(spec, 0));
    case FamilyKind::kneser:
      expect_params(spec, 2);
      return kneser(param(spec, 0), param(spec, 1));
    case FamilyKind::petersen:
      expect_params(spec, 0);
      return kneser(5, 2);
    case FamilyKind::complete_multipartite: {
      if (spec.params.empty()) throw InputError("complete-multipartite needs at least one part size");
      std::vector<std::size_t> part;
      for (std::size_t i = 0; i < spec.params.size(); ++i) {
        const std::size_t s = param(spec, i);
        if (s == 0) throw InputError("complete-multipartite: part sizes must be positive");
        part.insert(part.end(), s, i);
      }
      std::vector<Edge> edges;
      for (std::size_t a = 0; a < part.size(); ++a)
        for (std::size_t b = a + 1; b < part.size(); ++b)
          if (part[a] != part[b]) edges.emplace_back(a, b);
      return Graph(part.size(), edges);
    }
    case FamilyKind::erdos_renyi: {
      expect_params(spec, 1);
      const std::size_t n = param(spec, 0);
      if (!(spec.p >= 0.0 && spec.p <= 1.0)) throw InputError("erdos-renyi: p must lie in [0,1]");
      SplitMix64 rng(spec.seed);
      std::vector<Edge> edges;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
          if (rng.uniform() < spec.p) edges.emplace_back(i, j);
      return Graph(n, edges);
    }
  }
  throw InputError("unknown family");
}

}  // namespace spectral_chroma
