#include "lamemono/solutions.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <vector>

using namespace lamemono;

namespace {

Rational q(long n, long d = 1) {
  Rational r(n, d);
  r.canonicalize();
  return r;
}

Cplx generic_point(const std::string& label) {
  return label == "3" ? Cplx(3.1, 0.2) : Cplx(2.2, 0.25);
}

// u1 u2' - u2 u1' squares to 1/P, so W^2 P is a unit-modulus probe
double wronskian_defect(const SolutionBasis& basis, const PointEvaluation& ev) {
  Cplx W = ev.u1 * ev.u2d - ev.u2 * ev.u1d;
  Cplx P = weierstrass_cubic(basis.params).eval_complex(ev.x0);
  return std::abs(W * W * P - Cplx(1.0));
}

}  // namespace

TEST_CASE("solution bases have the classified shapes") {
  struct Row {
    const char* label;
    int chainDegree;
    int branchCount;
  };
  const Row rows[] = {
      {"1", 2, 24}, {"2a", 3, 24}, {"2b", 3, 60}, {"2c", 21, 60}, {"3", 5, 60}};

  for (const auto& row : rows) {
    INFO("case " << row.label);
    SolutionBasis b = solution_basis(row.label);
    CHECK(b.caseLabel == row.label);
    CHECK(b.params == known_instance(row.label).params);
    CHECK(b.chain().map_degree() == row.chainDegree);
    CHECK(b.polyhedral.degree == row.branchCount);

    REQUIRE(b.prefactor.factors.size() == 1);
    CHECK(b.prefactor.factors[0].first == weierstrass_cubic(b.params));
    CHECK(b.prefactor.factors[0].second == q(-1, 4));
  }

  CHECK(solution_basis("2c").extraComposition.has_value());
  CHECK(!solution_basis("1").extraComposition.has_value());
  CHECK_THROWS_AS(solution_basis("4"), std::invalid_argument);
}

TEST_CASE("branch labels are deterministic and complete") {
  SolutionBasis b = solution_basis("1");
  Cplx ref(2.0, 0.0);
  auto once = branch_labels(b, ref);
  auto again = branch_labels(b, ref);
  REQUIRE(once.size() == 24);
  CHECK(once == again);
  // reference labels are sorted by argument first
  for (std::size_t i = 0; i + 1 < once.size(); ++i)
    CHECK(std::arg(once[i]) <= std::arg(once[i + 1]) + 1e-15);

  auto moved = branch_labels(b, generic_point("1"));
  CHECK(moved.size() == 24);
}

TEST_CASE("evaluations satisfy the equation") {
  for (const char* label : {"1", "2a", "2b", "2c", "3"}) {
    INFO("case " << label);
    SolutionBasis b = solution_basis(label);
    Cplx x0 = generic_point(label);

    for (int branch : {0, b.polyhedral.degree / 2, b.polyhedral.degree - 1}) {
      auto ev = evaluate(b, x0, branch);
      CHECK(ev.branchIndex == branch);
      CHECK(ev.branchCount == b.polyhedral.degree);
      CHECK(ev.residuals.first < 1e-8);
      CHECK(ev.residuals.second < 1e-8);
      CHECK(ev.definingDefect < 1e-9);
      CHECK(std::abs(ev.u2 / ev.u1 - ev.tau) < 1e-9);
      CHECK(wronskian_defect(b, ev) < 1e-6);
    }
  }
}

TEST_CASE("every branch of the quintic case solves the equation") {
  SolutionBasis b = solution_basis("3");
  Cplx x0 = generic_point("3");
  RationalOperator L = lame_operator(b.params);
  double worst = 0.0;
  for (int k = 0; k < 60; ++k) {
    auto ev = evaluate(b, x0, k);
    worst = std::max({worst, ev.residuals.first, ev.residuals.second});
    CHECK(residual(L, ev) == ev.residuals);
  }
  CHECK(worst < 1e-8);
}

TEST_CASE("a perturbed accessory parameter is detected") {
  SolutionBasis b = solution_basis("1");
  LameParameters wrong = b.params;
  wrong.accessoryB = q(1);
  RationalOperator bad = lame_operator(wrong);

  double best = std::numeric_limits<double>::infinity();
  for (int branch : {0, 7, 19}) {
    auto ev = evaluate(b, generic_point("1"), branch);
    auto r = residual(bad, ev);
    best = std::min({best, r.first, r.second});
  }
  CHECK(best > 1e-3);
}

TEST_CASE("loops around branch points act as fixed-point-free involutions") {
  SolutionBasis b = solution_basis("1");
  auto sings = operator_singularities_numeric(lame_operator(b.params));
  REQUIRE(sings.size() == 3);
  Cplx base = default_basepoint(sings);

  for (std::size_t i = 0; i < sings.size(); ++i) {
    auto loop = keyhole_loop(sings, i, base, MonodromyConfig{});
    auto perm = branch_permutation(b, loop);
    REQUIRE(perm.size() == 24);
    int transpositions = 0;
    for (std::size_t k = 0; k < perm.size(); ++k) {
      CHECK(perm[perm[k]] == k);
      CHECK(perm[k] != k);
      transpositions += perm[k] > k;
    }
    CHECK(transpositions == 12);
  }

  SECTION("a contractible loop fixes every branch") {
    LoopPath sq{base, {base, base + Cplx(0.4, 0.0), base + Cplx(0.4, 0.4),
                       base + Cplx(0.0, 0.4), base}};
    auto perm = branch_permutation(b, sq);
    for (std::size_t k = 0; k < perm.size(); ++k) CHECK(perm[k] == k);
  }
}

TEST_CASE("reduction on the elliptic curve") {
  auto r2a = curve_branch_reduction("2a");
  CHECK(r2a.reduced);
  REQUIRE(r2a.witnessSquare);
  CHECK(!r2a.note.empty());

  auto r1 = curve_branch_reduction("1");
  CHECK(!r1.reduced);
  CHECK(!r1.witnessSquare);
  CHECK(!r1.note.empty());

  // consistent with the curve groups: 24 -> 12 for 2a, 24 stays for 1
  CHECK(known_instance("2a").curveGroup.order() == 12);
  CHECK(known_instance("1").curveGroup.order() == 24);

  CHECK_THROWS_AS(curve_branch_reduction("2b"), std::invalid_argument);
  CHECK_THROWS_AS(curve_branch_reduction("3"), std::invalid_argument);
}

TEST_CASE("evaluation rejects bad input") {
  SolutionBasis b1 = solution_basis("1");
  CHECK_THROWS_AS(evaluate(b1, Cplx(1.0, 0.0), 0), std::invalid_argument);
  CHECK_THROWS_AS(evaluate(b1, Cplx(0.0, 0.0), 0), std::invalid_argument);
  CHECK_THROWS_AS(evaluate(b1, generic_point("1"), -1), std::out_of_range);
  CHECK_THROWS_AS(evaluate(b1, generic_point("1"), 24), std::out_of_range);

  SolutionBasis b3 = solution_basis("3");
  // x = 1 is the quintic map's pole, not a singular point of the curve
  CHECK_THROWS_AS(evaluate(b3, Cplx(1.0, 0.0), 0), std::invalid_argument);
}
