#include "doctest.h"
#include "oracles.hpp"
#include "spectral_chroma/errors.hpp"
#include "spectral_chroma/sdp.hpp"
#include "spectral_chroma/theta.hpp"

using namespace spectral_chroma;

namespace {

// max ⟨C, X⟩ s.t. tr X = 1, X ≽ 0 has value λ_max(C).
BlockSdp top_eigenvalue_program(const SymMatrix& c) {
  BlockSdp p;
  p.blocks = {c.size()};
  for (std::size_t i = 0; i < c.size(); ++i)
    for (std::size_t j = i; j < c.size(); ++j)
      if (c(i, j) != 0.0) p.objective.push_back({0, i, j, c(i, j)});
  SdpConstraint tr;
  for (std::size_t i = 0; i < c.size(); ++i) tr.entries.push_back({0, i, i, 1.0});
  tr.rhs = 1.0;
  p.constraints.push_back(tr);
  return p;
}

}  // namespace

TEST_CASE("trace-one program returns the top eigenvalue") {
  const std::vector<double> d{2.0, -1.0, 0.5};
  SymMatrix c = SymMatrix::diagonal(d);
  c.set(0, 1, 1.0);
  // eigenvalues of [[2,1],[1,-1]] are (1 ± √13)/2
  const double want = (1.0 + std::sqrt(13.0)) / 2.0;
  const auto sol = solve_sdp(top_eigenvalue_program(c));
  REQUIRE(sol.status == SdpStatus::optimal);
  CHECK(sol.primal_objective == doctest::Approx(want).epsilon(1e-7));
  CHECK(sol.dual_objective == doctest::Approx(want).epsilon(1e-7));
  const auto chk = check_solution(top_eigenvalue_program(c), sol, 1e-6);
  CHECK(chk.pass);
}

TEST_CASE("minimization sense") {
  // min ⟨C, X⟩ s.t. tr X = 1 has value λ_min(C)
  SymMatrix c = SymMatrix::diagonal(std::vector<double>{3.0, 1.0, 2.0});
  auto p = top_eigenvalue_program(c);
  p.sense = Sense::minimize;
  const auto sol = solve_sdp(p);
  REQUIRE(sol.status == SdpStatus::optimal);
  CHECK(sol.primal_objective == doctest::Approx(1.0).epsilon(1e-7));
}

TEST_CASE("multi-block program with a scalar block") {
  // max x + tr Y s.t. x + tr Y = 3, Y_00 = 1: value 3
  BlockSdp p;
  p.blocks = {1, 2};
  p.objective = {{0, 0, 0, 1.0}, {1, 0, 0, 1.0}, {1, 1, 1, 1.0}};
  p.constraints.push_back({{{0, 0, 0, 1.0}, {1, 0, 0, 1.0}, {1, 1, 1, 1.0}}, 3.0});
  p.constraints.push_back({{{1, 0, 0, 1.0}}, 1.0});
  const auto sol = solve_sdp(p);
  REQUIRE(sol.status == SdpStatus::optimal);
  CHECK(sol.primal_objective == doctest::Approx(3.0).epsilon(1e-7));
  CHECK(sol.X[1](0, 0) == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("Lovasz program of C5 from the exported JSON") {
  const Graph c5 = generate({FamilyKind::cycle, {5}});
  const BlockSdp p = lovasz_theta_program(c5);
  const BlockSdp q = import_sdp_json(export_sdp_json(p));
  CHECK(q.blocks == p.blocks);
  CHECK(q.constraints.size() == p.constraints.size());
  const auto sol = solve_sdp(q);
  REQUIRE(sol.status == SdpStatus::optimal);
  CHECK(sol.primal_objective == doctest::Approx(std::sqrt(5.0)).epsilon(1e-7));
  CHECK(check_solution(q, sol, 1e-6).pass);
}

TEST_CASE("validation and malformed JSON") {
  BlockSdp p;
  p.blocks = {2};
  CHECK_THROWS_AS(p.validate(), InputError);  // no constraints
  p.constraints.push_back({{{0, 0, 2, 1.0}}, 1.0});
  CHECK_THROWS_AS(p.validate(), InputError);  // column out of range
  CHECK_THROWS_AS(import_sdp_json("{\"schema\":1"), ParseError);
  CHECK_THROWS_AS(import_sdp_json("{\"schema\":2,\"sense\":\"max\",\"blocks\":[1],\"objective\":[],\"constraints\":[]}"),
                  InputError);
}

TEST_CASE("apply and to_dense agree") {
  const SparseBlockMatrix a{{0, 0, 1, 2.0}, {1, 0, 0, 3.0}};
  const std::vector<std::size_t> blocks{2, 1};
  const BlockMatrix d = to_dense(a, blocks);
  CHECK(d[0](1, 0) == 2.0);
  CHECK(d[1](0, 0) == 3.0);
  BlockMatrix x{SymMatrix::identity(2), SymMatrix::identity(1)};
  x[0].set(0, 1, 0.5);
  // off-diagonal counts twice
  CHECK(spectral_chroma::apply(a, x) == doctest::Approx(2.0 * 2.0 * 0.5 + 3.0));
}

TEST_CASE("infeasible data does not report optimal") {
  // tr X = -1 with X ≽ 0 has no solution
  BlockSdp p;
  p.blocks = {2};
  p.objective = {{0, 0, 0, 1.0}};
  SdpConstraint c;
  c.entries = {{0, 0, 0, 1.0}, {0, 1, 1, 1.0}};
  c.rhs = -1.0;
  p.constraints.push_back(c);
  SdpOptions o;
  o.max_iterations = 60;
  CHECK(solve_sdp(p, o).status != SdpStatus::optimal);
}
