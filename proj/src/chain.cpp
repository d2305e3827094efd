#include "spectral_chroma/chain.hpp"

#include <chrono>
#include <cmath>
#include <sstream>

#include "spectral_chroma/theta.hpp"

namespace spectral_chroma {

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

}  // namespace

ChainReport compute_chain(const Graph& g, const HBracketOptions& opts, std::string name) {
  const auto start = Clock::now();
  ChainReport r;
  r.name = std::move(name);
  r.n = g.order();
  r.m = g.size();

  auto t0 = Clock::now();
  r.alpha = stability_number(g);
  r.chi = chromatic_number(g);
  r.timings.emplace_back("combinatorial", since(t0));

  t0 = Clock::now();
  r.theta = lovasz_theta(g);
  r.timings.emplace_back("theta", since(t0));

  if (g.size() > 0) {
    const SymMatrix a = adjacency_matrix(g);
    r.hoffman_adj = hoffman_bound(a);
    r.ratio_adj = ratio_bound(a);
  }

  t0 = Clock::now();
  r.bracket = h_bracket(g, opts);
  r.theta_complement = r.bracket.theta_complement;
  r.chi_f = r.bracket.chi_f;
  r.timings.emplace_back("h_bracket", since(t0));

  const int tc = r.bracket.theta_ceiling;
  const int lo = r.bracket.lo;
  const int hi = r.bracket.hi;
  const int chi = static_cast<int>(r.chi);
  const int chi_f_ceiling = r.chi_f.rational
                                ? static_cast<int>((r.chi_f.rational->num + r.chi_f.rational->den - 1) /
                                                   r.chi_f.rational->den)
                                : static_cast<int>(std::ceil(r.chi_f.value - 1e-6));
  auto require = [&](bool cond, const std::string& what) {
    if (!cond) r.violations.push_back(what);
  };
  require(tc <= lo, "ceil(theta(complement)) = " + std::to_string(tc) + " exceeds h_lo = " + std::to_string(lo));
  require(lo <= hi, "h_lo = " + std::to_string(lo) + " exceeds h_hi = " + std::to_string(hi));
  require(hi == chi_f_ceiling,
          "h_hi = " + std::to_string(hi) + " differs from ceil(chi_f) = " + std::to_string(chi_f_ceiling));
  require(hi <= chi, "h_hi = " + std::to_string(hi) + " exceeds chi = " + std::to_string(chi));
  if (r.hoffman_adj)
    require(*r.hoffman_adj <= chi,
            "Hoffman bound " + std::to_string(*r.hoffman_adj) + " exceeds chi = " + std::to_string(chi));
  r.ok = r.violations.empty();
  r.seconds = since(start);
  return r;
}

ChainViolation::ChainViolation(ChainReport r)
    : InternalError("chain violation\n" + describe(r)), report_(std::move(r)) {}

ChainReport verify_chain(const Graph& g, const HBracketOptions& opts, std::string name) {
  ChainReport r = compute_chain(g, opts, std::move(name));
  if (!r.ok) throw ChainViolation(std::move(r));
  return r;
}

std::string describe(const ChainReport& r) {
  std::ostringstream os;
  os.precision(9);
  os << "graph " << (r.name.empty() ? "(unnamed)" : r.name) << ": n=" << r.n << " m=" << r.m << "\n";
  os << "  alpha = " << r.alpha << "\n";
  os << "  theta = " << r.theta << "\n";
  os << "  theta(complement) = " << r.theta_complement << "\n";
  os << "  chi_f = " << r.chi_f.value;
  if (r.chi_f.rational) os << " (" << r.chi_f.rational->str() << ")";
  os << "\n  chi = " << r.chi << "\n";
  if (r.hoffman_adj) os << "  hoffman(adjacency) = " << *r.hoffman_adj << "\n";
  if (r.ratio_adj) os << "  ratio(adjacency) = " << *r.ratio_adj << "\n";
  os << "  h bracket = [" << r.bracket.lo << ", " << r.bracket.hi << "]";
  for (const LoCertificate& c : r.bracket.lo_certificates)
    os << "\n    lower certificate: m=" << c.m << " via " << to_string(c.kind) << ", S(m)=" << c.value;
  os << "\n  chain " << (r.ok ? "ok" : "VIOLATED");
  for (const std::string& v : r.violations) os << "\n    " << v;
  os << "\n";
  return os.str();
}

std::vector<FamilySpec> corpus_specs(bool random) {
  std::vector<FamilySpec> out;
  for (long long n = 3; n <= 11; ++n) out.push_back({FamilyKind::cycle, {n}});
  for (long long n = 1; n <= 8; ++n) out.push_back({FamilyKind::complete, {n}});
  out.push_back({FamilyKind::petersen, {}});
  out.push_back({FamilyKind::kneser, {5, 2}});
  out.push_back({FamilyKind::kneser, {7, 3}});
  for (std::vector<long long> parts : std::vector<std::vector<long long>>{
           {1, 1}, {2, 3}, {3, 3}, {1, 2, 3}, {2, 2, 2}, {3, 3, 3}, {1, 2, 3, 4}, {4, 4, 4}, {2, 2, 2, 2, 2, 2}, {5, 7}})
    out.push_back({FamilyKind::complete_multipartite, parts});
  if (random)
    for (long long s = 0; s < 50; ++s) {
      FamilySpec f{FamilyKind::erdos_renyi, {5 + s % 6}};
      f.seed = static_cast<std::uint64_t>(s);
      out.push_back(f);
    }
  return out;
}

std::vector<NamedGraph> builtin_corpus(bool random) {
  std::vector<NamedGraph> out;
  for (const FamilySpec& f : corpus_specs(random)) out.push_back({f.name(), generate(f)});
  return out;
}

}  // namespace spectral_chroma
