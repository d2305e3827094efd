#include <chrono>

#include "doctest.h"
#include "oracles.hpp"
#include "spectral_chroma/chromatic.hpp"
#include "spectral_chroma/errors.hpp"

using namespace spectral_chroma;

namespace {

Graph family(FamilyKind k, std::vector<long long> p = {}) { return generate({k, std::move(p)}); }

void check_proper(const Graph& g, const std::vector<int>& c) {
  REQUIRE(c.size() == g.order());
  for (auto [i, j] : g.edges()) CHECK(c[i] != c[j]);
}

}  // namespace

TEST_CASE("exact parameters match brute force on every graph up to 6 vertices") {
  for (const auto& s : oracle::small_graphs()) {
    const Graph g = parse_graph6(s);
    if (g.order() > 6) continue;
    CHECK(stability_number(g) == oracle::alpha(g));
    CHECK(clique_number(g) == oracle::alpha(complement(g)));
    CHECK(chromatic_number(g) == oracle::chi(g));
    check_proper(g, optimal_coloring(g));
  }
}

TEST_CASE("exact parameters on random graphs") {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 40; ++t) {
    const Graph g = oracle::random_graph(9 + t % 4, 0.5, rng);
    CHECK(stability_number(g) == oracle::alpha(g));
    CHECK(chromatic_number(g) == oracle::chi(g));
  }
}

TEST_CASE("maximal cocliques of cycles are counted by Perrin numbers") {
  for (int n = 3; n <= 14; ++n) {
    const Graph c = family(FamilyKind::cycle, {n});
    const auto sets = maximal_cocliques(c);
    CHECK(static_cast<long long>(sets.size()) == oracle::perrin(n));
    for (const auto& s : sets) CHECK(is_coclique(c, s));
  }
  // Kneser(7,3): maximal cocliques include the 7 stars of size 15
  const auto k73 = maximal_cocliques(family(FamilyKind::kneser, {7, 3}));
  CHECK(std::count_if(k73.begin(), k73.end(), [](const VertexSet& s) { return s.size() == 15; }) == 7);
}

TEST_CASE("fractional chromatic numbers") {
  struct Case {
    Graph g;
    Rational want;
  };
  const std::vector<Case> cases{
      {family(FamilyKind::cycle, {5}), {5, 2}},      {family(FamilyKind::cycle, {7}), {7, 3}},
      {family(FamilyKind::cycle, {6}), {2, 1}},      {family(FamilyKind::petersen), {5, 2}},
      {family(FamilyKind::complete, {6}), {6, 1}},   {family(FamilyKind::empty, {4}), {1, 1}},
      {family(FamilyKind::kneser, {7, 3}), {7, 3}},  {family(FamilyKind::kneser, {6, 2}), {3, 1}},
      {family(FamilyKind::complete_multipartite, {1, 2, 3}), {3, 1}},
  };
  for (const auto& c : cases) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto f = fractional_chromatic(c.g);
    CHECK(std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() < 5.0);
    REQUIRE(f.rational.has_value());
    CHECK(*f.rational == c.want);
    CHECK(f.value == doctest::Approx(c.want.value()).epsilon(1e-9));
    // witness is a valid covering
    const auto cov = f.witness.coverage(c.g.order());
    for (double x : cov) CHECK(x >= 1.0 - 1e-9);
    for (const auto& s : f.witness.cocliques) CHECK(is_coclique(c.g, s));
  }
}

TEST_CASE("rational reconstruction") {
  CHECK(rational_reconstruct(2.5, 5) == Rational{5, 2});
  CHECK(rational_reconstruct(7.0 / 3.0 + 3e-8, 35) == Rational{7, 3});
  CHECK(rational_reconstruct(3.0, 1) == Rational{3, 1});
  CHECK(!rational_reconstruct(std::sqrt(2.0), 10).has_value());
  CHECK(!rational_reconstruct(2.0 / 7.0, 5).has_value());
  CHECK(Rational{5, 2}.str() == "5/2");
  CHECK(Rational{4, 1}.str() == "4");
}

TEST_CASE("equality form turns an over-cover into an exact cover") {
  // P3 = 0-1-2 with {0,2} and {1} at weight 1 and again at 1/4: every vertex
  // carries 1.25
  const Graph p3(3, {{0, 1}, {1, 2}});
  FractionalColoring over;
  over.cocliques = {{0, 2}, {1}, {0, 2}, {1}};
  over.y = {1.0, 1.0, 0.25, 0.25};
  over.value = 2.5;
  const auto eq = equality_form(over, p3);
  CHECK(eq.value == doctest::Approx(2.5));
  for (double c : eq.coverage(3)) CHECK(c == doctest::Approx(1.0));
  for (const auto& s : eq.cocliques) CHECK(is_coclique(p3, s));

  // optimal witnesses become exact covers with empty sets carrying nothing
  const Graph c7 = family(FamilyKind::cycle, {7});
  const auto f = fractional_chromatic(c7);
  const auto e = equality_form(f.witness, c7);
  CHECK(e.value == doctest::Approx(7.0 / 3.0));
  for (double c : e.coverage(7)) CHECK(c == doctest::Approx(1.0));
  for (std::size_t i = 0; i < e.cocliques.size(); ++i)
    if (e.cocliques[i].empty()) CHECK(e.y[i] < 1e-9);

  FractionalColoring bad;
  bad.cocliques = {{0, 1}};
  bad.y = {1.0};
  CHECK_THROWS_AS(equality_form(bad, p3), InputError);
}

TEST_CASE("size guard") {
  const Graph big = Graph::empty(41);
  CHECK_THROWS_AS(stability_number(big), SizeError);
  CHECK_THROWS_AS(chromatic_number(big), SizeError);
  CHECK_THROWS_AS(fractional_chromatic(big), SizeError);
  CHECK_THROWS_AS(maximal_cocliques(big), SizeError);
  CHECK(stability_number(Graph::empty(40)) == 40);
}
