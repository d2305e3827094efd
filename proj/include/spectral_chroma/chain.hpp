#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "spectral_chroma/chromatic.hpp"
#include "spectral_chroma/errors.hpp"
#include "spectral_chroma/graph.hpp"
#include "spectral_chroma/hoffman.hpp"

namespace spectral_chroma {

struct ChainReport {
  std::string name;
  std::size_t n = 0;
  std::size_t m = 0;
  std::size_t alpha = 0;
  double theta = 0.0;             // ϑ(G)
  double theta_complement = 0.0;  // ϑ(Ḡ)
  FractionalChromatic chi_f;
  std::size_t chi = 0;
  std::optional<int> hoffman_adj;    // hoffman_bound(A); none without edges
  std::optional<double> ratio_adj;   // ratio_bound(A); none without edges
  HBracket bracket;
  bool ok = false;
  std::vector<std::string> violations;
  std::vector<std::pair<std::string, double>> timings;  // seconds per stage
  double seconds = 0.0;
};

// Every quantity of ⌈ϑ(Ḡ) − 1e-6⌉ ≤ lo ≤ hi = ⌈χ_f⌉ ≤ χ, plus the adjacency
// bounds. Inequality failures are collected in `violations`, not thrown.
ChainReport compute_chain(const Graph& g, const HBracketOptions& opts = {}, std::string name = "");

// Thrown by verify_chain; what() carries the full report.
class ChainViolation : public InternalError {
 public:
  explicit ChainViolation(ChainReport r);
  const ChainReport& report() const noexcept { return report_; }

 private:
  ChainReport report_;
};

// compute_chain, then ChainViolation unless every inequality holds.
ChainReport verify_chain(const Graph& g, const HBracketOptions& opts = {}, std::string name = "");

// Multi-line human-readable dump.
std::string describe(const ChainReport& r);

struct NamedGraph {
  std::string name;
  Graph graph;
};

// C3..C11, K1..K8, petersen, kneser(5,2), kneser(7,3) and complete multipartite
// graphs up to 12 vertices; with `random`, also 50 seeded G(n,1/2) with
// n = 5 + seed mod 6.
std::vector<FamilySpec> corpus_specs(bool random = true);
std::vector<NamedGraph> builtin_corpus(bool random = true);

}  // namespace spectral_chroma
