#include "doctest.h"
#include "spectral_chroma/lp.hpp"

using namespace spectral_chroma;

namespace {

LinearProgram make(Sense sense, std::vector<double> cost, std::vector<std::vector<double>> rows, std::vector<double> rhs,
                   std::vector<RowRelation> rel) {
  LinearProgram lp;
  lp.sense = sense;
  lp.cost = std::move(cost);
  lp.constraints = Matrix(rows.size(), lp.cost.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j) lp.constraints(i, j) = rows[i][j];
  lp.rhs = std::move(rhs);
  lp.relations = std::move(rel);
  return lp;
}

constexpr auto LE = RowRelation::less_equal;
constexpr auto GE = RowRelation::greater_equal;
constexpr auto EQ = RowRelation::equal;

}  // namespace

TEST_CASE("textbook maximization") {
  // max 3x + 5y, x ≤ 4, 2y ≤ 12, 3x + 2y ≤ 18: optimum 36 at (2, 6)
  const auto lp = make(Sense::maximize, {3, 5}, {{1, 0}, {0, 2}, {3, 2}}, {4, 12, 18}, {LE, LE, LE});
  const auto s = solve_lp(lp);
  REQUIRE(s.status == LpStatus::optimal);
  CHECK(s.objective == doctest::Approx(36.0));
  CHECK(s.x[0] == doctest::Approx(2.0));
  CHECK(s.x[1] == doctest::Approx(6.0));
  CHECK(s.dual_objective == doctest::Approx(36.0));
  // shadow prices (0, 3/2, 1)
  CHECK(s.duals[1] == doctest::Approx(1.5));
  CHECK(s.duals[2] == doctest::Approx(1.0));
}

TEST_CASE("minimization with equality and covering rows") {
  // min x + 2y + 3z, x + y + z = 1, y + z ≥ 0.5: optimum 1.5 at (0.5, 0.5, 0)
  const auto lp = make(Sense::minimize, {1, 2, 3}, {{1, 1, 1}, {0, 1, 1}}, {1, 0.5}, {EQ, GE});
  const auto s = solve_lp(lp);
  REQUIRE(s.status == LpStatus::optimal);
  CHECK(s.objective == doctest::Approx(1.5));
  CHECK(s.dual_objective == doctest::Approx(1.5));
  CHECK(s.primal_residual < 1e-9);
}

TEST_CASE("infeasible and unbounded programs are reported") {
  CHECK(solve_lp(make(Sense::minimize, {1}, {{1}, {1}}, {1, 2}, {LE, GE})).status == LpStatus::infeasible);
  CHECK(solve_lp(make(Sense::maximize, {1, 1}, {{1, -1}}, {1}, {LE})).status == LpStatus::unbounded);
}

TEST_CASE("Beale's cycling example terminates at the optimum") {
  // min −3/4 x4 + 20 x5 − 1/2 x6 + 6 x7 (Beale 1955); Dantzig's rule cycles
  // without an anti-cycling safeguard. Optimum −5/4.
  const auto lp = make(Sense::minimize, {-0.75, 20, -0.5, 6},
                       {{0.25, -8, -1, 9}, {0.5, -12, -0.5, 3}, {0, 0, 1, 0}}, {0, 0, 1}, {LE, LE, LE});
  const auto s = solve_lp(lp);
  REQUIRE(s.status == LpStatus::optimal);
  CHECK(s.objective == doctest::Approx(-1.25));
}

TEST_CASE("variable bounds") {
  // max x + y, x + y ≤ 10, 1 ≤ x ≤ 3, y ≤ 2: optimum 5
  auto lp = make(Sense::maximize, {1, 1}, {{1, 1}}, {10}, {LE});
  lp.lower = {1, 0};
  lp.upper = {3.0, 2.0};
  const auto s = solve_lp(lp);
  REQUIRE(s.status == LpStatus::optimal);
  CHECK(s.objective == doctest::Approx(5.0));
  CHECK(s.x[0] == doctest::Approx(3.0));
}

TEST_CASE("fractional covering LP of C5 has value 5/2") {
  // cocliques of C5 are the five pairs {i, i+2}
  LinearProgram lp;
  lp.sense = Sense::minimize;
  lp.cost.assign(5, 1.0);
  lp.constraints = Matrix(5, 5);
  for (std::size_t s = 0; s < 5; ++s) {
    lp.constraints(s, s) = 1.0;
    lp.constraints((s + 2) % 5, s) = 1.0;
  }
  lp.rhs.assign(5, 1.0);
  lp.relations.assign(5, GE);
  const auto s = solve_lp(lp);
  REQUIRE(s.status == LpStatus::optimal);
  CHECK(s.objective == doctest::Approx(2.5));
  double dual = 0.0;
  for (double y : s.duals) {
    CHECK(y >= -1e-12);
    dual += y;
  }
  CHECK(dual == doctest::Approx(2.5));
}
