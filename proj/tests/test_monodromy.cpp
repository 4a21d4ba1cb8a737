#include "lamemono/lame.hpp"
#include "lamemono/monodromy.hpp"
#include "lamemono/schwarz.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>

using namespace lamemono;

namespace {

Rational q(long n, long d = 1) {
  Rational r(n, d);
  r.canonicalize();
  return r;
}

using OrderCensus = std::map<int, std::size_t>;

// element order -> count in the three polyhedral rotation groups
const OrderCensus kTetrahedral = {{1, 1}, {2, 3}, {3, 8}};
const OrderCensus kOctahedral = {{1, 1}, {2, 9}, {3, 8}, {4, 6}};
const OrderCensus kIcosahedral = {{1, 1}, {2, 15}, {3, 20}, {5, 24}};

Matrix2 rotation(double angle) {
  return {std::polar(1.0, angle), 0.0, 0.0, std::polar(1.0, -angle), true};
}

}  // namespace

TEST_CASE("projective matrix algebra") {
  Matrix2 id = Matrix2::identity();
  Matrix2 r5 = rotation(M_PI / 5.0);

  CHECK(max_abs_diff(r5 * r5.inverse(), id) < 1e-14);
  CHECK(std::abs(r5.det() - Cplx(1.0)) < 1e-14);
  CHECK(projective_order(r5) == 5);
  CHECK(projective_order(id) == 1);
  CHECK(projective_order(rotation(M_PI / 2.0)) == 2);  // -1 ~ 1 projectively

  SECTION("identification is up to sign") {
    CHECK(projective_match(r5, -r5, 1e-12));
    CHECK(projective_distance(r5, rotation(M_PI / 7.0)) > 1e-3);
  }

  SECTION("an irrational rotation never closes") {
    CHECK(projective_order(rotation(1.0), 1e-9, 300) == 0);
  }

  SECTION("singular matrices are rejected") {
    Matrix2 s{1.0, 1.0, 1.0, 1.0, false};
    CHECK_THROWS_AS(s.inverse(), std::runtime_error);
    CHECK_THROWS_AS(s.detNormalized(), std::runtime_error);
  }
}

TEST_CASE("numeric singular locations") {
  RationalOperator L = lame_operator({q(1, 6), q(0), q(4), q(0)});
  auto sings = operator_singularities_numeric(L);
  REQUIRE(sings.size() == 3);
  CHECK(std::abs(sings[0] - Cplx(-1.0)) < 1e-12);
  CHECK(std::abs(sings[1] - Cplx(0.0)) < 1e-12);
  CHECK(std::abs(sings[2] - Cplx(1.0)) < 1e-12);

  CHECK_THROWS_AS(singular_locations_numeric(Polynomial<Rational>()),
                  std::invalid_argument);
  CHECK(singular_locations_numeric(Polynomial<Rational>(q(3))).empty());
}

TEST_CASE("analytic continuation basics") {
  RationalOperator L = lame_operator({q(1, 6), q(0), q(4), q(0)});

  SECTION("a contractible loop is the identity") {
    Cplx b(5.0, 0.0);
    LoopPath sq{b, {b, b + Cplx(0.5, 0.0), b + Cplx(0.5, 0.5),
                    b + Cplx(0.0, 0.5), b}};
    Matrix2 T = analytic_continue(L, sq);
    CHECK(max_abs_diff(T, Matrix2::identity()) < 1e-9);
  }

  SECTION("a loop around a branch point is an involution of determinant -1") {
    auto sings = operator_singularities_numeric(L);
    Cplx b = default_basepoint(sings);
    for (std::size_t i = 0; i < sings.size(); ++i) {
      LoopPath loop = keyhole_loop(sings, i, b, MonodromyConfig{});
      REQUIRE(loop.waypoints.size() > 2);
      CHECK(std::abs(loop.waypoints.front() - b) < 1e-15);
      CHECK(std::abs(loop.waypoints.back() - b) < 1e-15);
      Matrix2 T = analytic_continue(L, loop);
      CHECK(projective_order(T) == 2);
      // Abel: det T = exp(-loop integral of A), residue 1/2 at each point
      CHECK(std::abs(T.det() + Cplx(1.0)) < 1e-9);
    }
  }

  SECTION("input validation") {
    CHECK_THROWS_AS(analytic_continue(L, LoopPath{}), std::invalid_argument);
    LoopPath through{Cplx(5.0), {Cplx(5.0), Cplx(1.0), Cplx(5.0)}};
    CHECK_THROWS_AS(analytic_continue(L, through), std::runtime_error);
    auto sings = operator_singularities_numeric(L);
    CHECK_THROWS_AS(keyhole_loop(sings, 9, Cplx(5.0), MonodromyConfig{}),
                    std::invalid_argument);
    CHECK_THROWS_AS(
        full_circle_loop({}, Cplx(5.0), MonodromyConfig{}),
        std::invalid_argument);
  }
}

TEST_CASE("monodromy groups of the five instances") {
  struct Row {
    const char* label;
    GroupTag group;
    OrderCensus census;
    int infinityOrder;
  };
  const Row rows[] = {
      {"1", octahedral_group(), kOctahedral, 3},
      {"2a", octahedral_group(), kOctahedral, 4},
      {"2b", icosahedral_group(), kIcosahedral, 5},
      {"2c", icosahedral_group(), kIcosahedral, 5},
      {"3", icosahedral_group(), kIcosahedral, 3},
  };
  for (const auto& row : rows) {
    INFO("instance " << row.label);
    auto rep = monodromy_group(lame_operator(known_instance(row.label).params));
    CHECK(rep.group == row.group);
    CHECK(rep.closureSize == static_cast<std::size_t>(row.group.order()));
    CHECK(rep.closureOrderCounts == row.census);
    CHECK(rep.maxResidual < 1e-8);
    CHECK(rep.productDefect < 1e-8);

    REQUIRE(rep.singularities.size() == 3);
    REQUIRE(rep.generators.size() == 4);
    // branch-point loops are involutions; the last generator is infinity
    CHECK(rep.projectiveOrders[0] == 2);
    CHECK(rep.projectiveOrders[1] == 2);
    CHECK(rep.projectiveOrders[2] == 2);
    CHECK(rep.projectiveOrders[3] == row.infinityOrder);

    auto order = rep.productOrder;
    std::sort(order.begin(), order.end());
    CHECK(order == std::vector<std::size_t>{0, 1, 2});
  }
}

TEST_CASE("monodromy on the elliptic curve") {
  // even words halve the group exactly when -1 rides on an odd word
  auto r1 = monodromy_group(lame_operator(known_instance("1").params));
  auto c1 = even_subgroup(r1);
  CHECK(c1.group == octahedral_group());
  CHECK(c1.closureSize == 24);

  auto r2a = monodromy_group(lame_operator(known_instance("2a").params));
  auto c2a = even_subgroup(r2a);
  CHECK(c2a.group == tetrahedral_group());
  CHECK(c2a.closureSize == 12);
  CHECK(c2a.closureOrderCounts == kTetrahedral);

  auto r2b = monodromy_group(lame_operator(known_instance("2b").params));
  CHECK(even_subgroup(r2b).group == icosahedral_group());

  SECTION("needs at least two generators") {
    MonodromyReport stub;
    stub.generators.push_back(Matrix2::identity());
    CHECK_THROWS_AS(even_subgroup(stub), std::invalid_argument);
  }
}

TEST_CASE("infinite monodromy overflows the closure") {
  MonodromyConfig cfg;
  cfg.closureCap = 150;
  auto rep = monodromy_group(lame_operator({q(1, 3), q(0), q(4), q(0)}), cfg);
  CHECK(rep.group.kind == GroupTag::Kind::InfiniteOrUndetermined);
  CHECK(rep.closureSize > 150);
}

TEST_CASE("the result does not depend on the basepoint") {
  RationalOperator L = lame_operator(known_instance("2b").params);
  MonodromyConfig a, b;
  a.basepointReal = 4.0;
  b.basepointReal = 7.5;
  auto ra = monodromy_group(L, a);
  auto rb = monodromy_group(L, b);
  CHECK(ra.group == rb.group);
  CHECK(ra.closureSize == rb.closureSize);
  CHECK(ra.closureOrderCounts == rb.closureOrderCounts);
  CHECK(std::abs(ra.basepoint - Cplx(4.0)) < 1e-15);

  SECTION("a basepoint on a singular point is rejected") {
    MonodromyConfig bad;
    bad.basepointReal = 1.0;
    CHECK_THROWS_AS(monodromy_group(lame_operator({q(1, 6), q(0), q(4), q(0)}),
                                    bad),
                    std::invalid_argument);
  }
}

TEST_CASE("hypergeometric monodromy") {
  auto rep = monodromy_group(hypergeometric_operator({q(1, 2), q(1, 3), q(1, 5)}));
  CHECK(rep.group == icosahedral_group());
  CHECK(rep.closureSize == 60);
  REQUIRE(rep.generators.size() == 3);
  CHECK(rep.projectiveOrders == std::vector<int>{2, 3, 5});
  CHECK(rep.maxResidual < 1e-8);
  CHECK(rep.productDefect < 1e-8);
}

TEST_CASE("an operator without singular points is trivial") {
  auto rep = monodromy_group(RationalOperator{});
  CHECK(rep.group == cyclic_group(1));
  CHECK(rep.closureSize == 1);
  CHECK(rep.singularities.empty());
}
