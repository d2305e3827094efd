#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "spectral_chroma/chain.hpp"

using namespace spectral_chroma;

namespace {

Graph family(FamilyKind k, std::vector<long long> p = {}) { return generate({k, std::move(p)}); }

}  // namespace

TEST_CASE("C5 chain") {
  const auto r = verify_chain(family(FamilyKind::cycle, {5}), {}, "C5");
  CHECK(r.ok);
  CHECK(r.name == "C5");
  CHECK(r.alpha == 2);
  CHECK(r.theta == doctest::Approx(std::sqrt(5.0)).epsilon(1e-7));
  CHECK(r.theta_complement == doctest::Approx(std::sqrt(5.0)).epsilon(1e-7));
  CHECK(r.chi_f.rational->str() == "5/2");
  CHECK(r.chi == 3);
  CHECK(r.bracket.lo == 3);
  CHECK(r.bracket.hi == 3);
  CHECK(r.hoffman_adj == 3);
}

TEST_CASE("Petersen chain") {
  const auto r = verify_chain(family(FamilyKind::petersen));
  CHECK(r.theta == doctest::Approx(4.0).epsilon(1e-7));
  CHECK(std::ceil(r.theta_complement - 1e-6) == 3);
  CHECK(r.bracket.lo == 3);
  CHECK(r.bracket.hi == 3);
  CHECK(r.chi == 3);
  CHECK(r.ratio_adj == doctest::Approx(2.5));
}

TEST_CASE("Kneser(7,3) chain") {
  const auto r = verify_chain(family(FamilyKind::kneser, {7, 3}));
  CHECK(r.chi_f.rational->str() == "7/3");
  // Kneser χ = n − 2k + 2
  CHECK(r.chi == 3);
  CHECK(r.bracket.hi == 3);
  CHECK(r.bracket.lo <= 3);
  CHECK(r.alpha == 15);
}

TEST_CASE("edgeless graphs") {
  const auto r = verify_chain(Graph::empty(4));
  CHECK(r.ok);
  CHECK(r.bracket.lo == 1);
  CHECK(r.bracket.hi == 1);
  CHECK(!r.hoffman_adj.has_value());
  CHECK(!r.ratio_adj.has_value());
  CHECK(r.alpha == 4);
}

TEST_CASE("chain values agree with brute force on random graphs") {
  std::mt19937_64 rng(44);
  for (int t = 0; t < 10; ++t) {
    const Graph g = oracle::random_graph(8, 0.5, rng);
    const auto r = verify_chain(g);
    CHECK(r.alpha == oracle::alpha(g));
    CHECK(r.chi == oracle::chi(g));
    CHECK(r.theta >= static_cast<double>(r.alpha) - 1e-6);
    // ϑ(G)ϑ(Ḡ) ≥ n
    CHECK(r.theta * r.theta_complement >= 8.0 - 1e-5);
  }
}

TEST_CASE("describe and the corpus") {
  const auto r = compute_chain(family(FamilyKind::cycle, {7}), {}, "C7");
  const std::string d = describe(r);
  CHECK(d.find("C7") != std::string::npos);
  CHECK(d.find("7/3") != std::string::npos);
  CHECK(d.find("chain ok") != std::string::npos);
  CHECK(r.timings.size() >= 2);

  const auto fixed = corpus_specs(false);
  const auto all = corpus_specs(true);
  CHECK(all.size() == fixed.size() + 50);
  for (const auto& f : all) {
    if (f.kind == FamilyKind::complete_multipartite) {
      long long total = 0;
      for (long long p : f.params) total += p;
      CHECK(total <= 12);
    }
    if (f.kind == FamilyKind::erdos_renyi) CHECK(f.params[0] <= 10);
  }
  CHECK(builtin_corpus(false).front().name == "cycle-3");
}

TEST_CASE("a violated chain throws with the report") {
  ChainReport r;
  r.name = "forged";
  r.violations.push_back("hi = 4 but ceil(chi_f) = 3");
  ChainViolation v(r);
  CHECK(std::string(v.what()).find("forged") != std::string::npos);
  CHECK(v.report().violations.size() == 1);
}
