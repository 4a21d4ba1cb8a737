#include "lamemono/lame.hpp"
#include "lamemono/pullback.hpp"
#include "lamemono/schwarz.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>

using namespace lamemono;
using RF = RationalFunction<Rational>;

namespace {

Rational q(long n, long d = 1) {
  Rational r(n, d);
  r.canonicalize();
  return r;
}

RF normal_pullback(const RationalOperator& target, const RF& xi) {
  return normal_form(strong_pullback(target, xi));
}

/* The four verified certificates as (operator, triple, map) rows, for the
 * transport and degree cross-checks. */
struct CertRow {
  RationalOperator L;
  SchwarzTriple t;
  RF xi;
  int degree;
};

std::vector<CertRow> verified_rows() {
  return {
      {lame_operator({q(1, 6), q(0), q(4), q(0)}),
       {q(1, 2), q(1, 3), q(1, 4)}, named_map("harmonic-quadratic").xi, 2},
      {lame_operator({q(1, 4), q(0), q(0), q(4)}),
       {q(1, 2), q(1, 3), q(1, 4)}, named_map("equianharmonic-cubic").xi, 3},
      {lame_operator({q(1, 6), q(-1, 9), q(80, 3), q(-80, 3)}),
       {q(1, 2), q(1, 3), q(1, 5)}, named_map("prop32-quintic").xi, 5},
      {hypergeometric_operator({q(1, 2), q(1, 3), q(2, 5)}),
       {q(1, 2), q(1, 3), q(1, 5)}, named_map("klein-caseXIV").xi, 7},
  };
}

}  // namespace

TEST_CASE("strong pullback basics") {
  RationalOperator T = hypergeometric_operator({q(1, 2), q(1, 3), q(1, 5)});
  RF x = RF::variable();

  SECTION("the identity map changes nothing") {
    auto L = strong_pullback(T, x);
    CHECK(L.A.is_zero());
    CHECK(L.B == T.B);
  }

  SECTION("pulling back along 1/x is the chart at infinity") {
    auto L = strong_pullback(T, RF(q(1)) / x);
    auto C = infinity_chart(T);
    CHECK(L.A == C.A);
    CHECK(L.B == C.B);
  }

  SECTION("rejects non-normal targets and constant maps") {
    RationalOperator notNormal{x, T.B};
    CHECK_THROWS_AS(strong_pullback(notNormal, x), std::invalid_argument);
    CHECK_THROWS_AS(strong_pullback(T, RF(q(3))), std::invalid_argument);
  }

  SECTION("transitivity on normal forms (Schwarzian cocycle)") {
    for (const auto& [xi, eta] :
         {std::pair<RF, RF>{x * x, x * x * x - RF(q(2))},
          std::pair<RF, RF>{(x - RF(q(1))) / (x + RF(q(2))), x * x}}) {
      RF once = normal_pullback(T, xi.compose(eta));
      RationalOperator mid{RF(), normal_pullback(T, xi)};
      CHECK(once == normal_pullback(mid, eta));
    }
  }
}

TEST_CASE("named maps registry") {
  const auto& table = named_maps();
  REQUIRE(table.size() == 4);
  CHECK(table[0].name == "harmonic-quadratic");
  CHECK(table[1].name == "equianharmonic-cubic");
  CHECK(table[2].name == "prop32-quintic");
  CHECK(table[3].name == "klein-caseXIV");

  CHECK(named_map("harmonic-quadratic").xi.map_degree() == 2);
  CHECK(named_map("equianharmonic-cubic").xi.map_degree() == 3);
  CHECK(named_map("prop32-quintic").xi.map_degree() == 5);
  CHECK(named_map("klein-caseXIV").xi.map_degree() == 7);
  CHECK_THROWS_AS(named_map("cubic"), std::invalid_argument);
}

TEST_CASE("the named certificates verify exactly") {
  for (const char* name : {"harmonic-quadratic", "equianharmonic-cubic",
                           "prop32-quintic", "klein-caseXIV"}) {
    auto cert = named_certificate(name);
    INFO(name);
    CHECK(cert.verified);
    CHECK(!cert.residualWitness);
  }

  SECTION("the B=0 families verify for every ell") {
    for (const Rational& l : {q(2, 5), q(1), q(7, 3), q(-1, 10)}) {
      CHECK(named_certificate("harmonic-quadratic", l).verified);
      CHECK(named_certificate("equianharmonic-cubic", l).verified);
    }
  }

  SECTION("parameter validation") {
    CHECK_THROWS_AS(named_certificate("prop32-quintic", q(1, 5)),
                    std::invalid_argument);
    CHECK(named_certificate("prop32-quintic", q(1, 6)).verified);
    CHECK_THROWS_AS(named_certificate("klein-caseXIV", q(1, 6)),
                    std::invalid_argument);
  }
}

TEST_CASE("failed certificates carry a witness") {
  RF xi = named_map("harmonic-quadratic").xi;
  SchwarzTriple t{q(1, 2), q(1, 3), q(1, 4)};

  SECTION("perturbed accessory parameter") {
    RationalOperator L0 = lame_operator({q(1, 6), q(0), q(4), q(0)});
    RationalOperator L1 = lame_operator({q(1, 6), q(1, 7), q(4), q(0)});
    auto cert = is_weak_pullback(L1, t, xi);
    CHECK(!cert.verified);
    REQUIRE(cert.residualWitness);
    CHECK(!cert.residualWitness->is_zero());
    // the B=0 certificate is exact, so the witness is the accessory shift
    CHECK(*cert.residualWitness == normal_form(L1) - normal_form(L0));
  }

  SECTION("wrong source triple") {
    auto cert = is_weak_pullback(lame_operator({q(1, 6), q(0), q(4), q(0)}),
                                 {q(1, 2), q(1, 3), q(1, 3)}, xi);
    CHECK(!cert.verified);
  }

  SECTION("perturbed map") {
    auto cert = is_weak_pullback(lame_operator({q(1, 6), q(0), q(4), q(0)}), t,
                                 xi + RF(q(1, 100)));
    CHECK(!cert.verified);
  }
}

TEST_CASE("exponent differences transport through the maps") {
  for (const auto& row : verified_rows()) {
    auto rep = check_exponent_transport(row.L, row.t, row.xi);
    INFO("degree " << row.degree);
    for (const auto& f : rep.failures) INFO(f);
    CHECK(rep.ok);
    CHECK(rep.failures.empty());
  }

  SECTION("a wrong triple is caught with a message") {
    auto rep = check_exponent_transport(
        lame_operator({q(1, 6), q(0), q(4), q(0)}), {q(1, 2), q(1, 3), q(1, 3)},
        named_map("harmonic-quadratic").xi);
    CHECK(!rep.ok);
    CHECK(!rep.failures.empty());
  }
}

TEST_CASE("degree bookkeeping") {
  SECTION("each certificate admits exactly its map degree") {
    for (const auto& row : verified_rows()) {
      auto rel = degree_formula(exponent_difference_list(row.L), 0,
                                {row.t.lambda, row.t.mu, row.t.nu});
      auto d = rel.admissibleDegree();
      REQUIRE(d);
      CHECK(*d == row.degree);
      CHECK(rel.admits(Integer(row.degree)));
      CHECK(!rel.admits(Integer(row.degree + 1)));
    }
  }

  SECTION("degenerate and non-integral relations") {
    // lambda + mu + nu = 1 makes the per-degree weight vanish
    auto flat = degree_formula({q(1, 2)}, 0, {q(1, 2), q(1, 3), q(1, 6)});
    CHECK(flat.rhsPerDegree == 0);
    CHECK(!flat.admissibleDegree());
    // genus one drives the left side negative
    auto neg = degree_formula({q(1, 2)}, 1, {q(1, 2), q(1, 3), q(1, 5)});
    CHECK(!neg.admissibleDegree());
    // a fractional quotient
    auto frac = degree_formula({q(1, 2), q(3, 4)}, 0, {q(1, 2), q(1, 3), q(1, 5)});
    CHECK(!frac.admissibleDegree());
  }
}

TEST_CASE("ramification profile enumeration") {
  RationalOperator Lh = lame_operator({q(1, 6), q(0), q(4), q(0)});
  auto classes = singular_classes(Lh);
  REQUIRE(classes.size() == 4);  // three split branch points and infinity

  SECTION("the icosahedral assignment has the unique quintic solution") {
    std::vector<SingularFiberAssignment> a = {
        {q(1, 2), 1, 0, 1}, {q(1, 2), 1, 0, 1}, {q(1, 2), 1, 0, 1},
        {q(2, 3), 1, 1, 2}};
    auto profiles =
        ramification_profiles(a, {q(1, 2), q(1, 3), q(1, 5)}, 60);
    REQUIRE(profiles.size() == 1);
    const auto& p = profiles.front();
    CHECK(p.degree == 5);
    CHECK(p.totalPoints() == 7);
    // one ordinary point in each fiber
    for (int z = 0; z < 3; ++z) {
      int ordinary = 0;
      for (const auto& e : p.fiberData[z])
        if (!e.singular) ordinary += e.count;
      CHECK(ordinary == 1);
    }
  }

  SECTION("the octahedral assignment reproduces the quadratic map's fibers") {
    std::vector<SingularFiberAssignment> a = {
        {q(1, 2), 1, 0, {}}, {q(1, 2), 1, 0, {}},  // e1, e2 over 0
        {q(2, 3), 1, 1, {}},                       // infinity over 1
        {q(1, 2), 1, 2, {}}};                      // e3 over infinity
    auto profiles =
        ramification_profiles(a, {q(1, 2), q(1, 3), q(1, 4)}, 60);
    bool foundQuadratic = false;
    for (const auto& p : profiles)
      if (p.degree == 2) {
        foundQuadratic = true;
        CHECK(p.pointsInFiber(0) == 2);
        CHECK(p.pointsInFiber(1) == 1);
        CHECK(p.pointsInFiber(2) == 1);
        // matches the exact fibers of (x^2-1)/x^2
        RF xi = named_map("harmonic-quadratic").xi;
        CHECK(exact_fiber_profile(xi, std::optional<Rational>(q(0))) ==
              std::vector<std::pair<int, int>>{{1, 2}});
        CHECK(exact_fiber_profile(xi, std::optional<Rational>(q(1))) ==
              std::vector<std::pair<int, int>>{{2, 1}});
        CHECK(exact_fiber_profile(xi, std::nullopt) ==
              std::vector<std::pair<int, int>>{{2, 1}});
      }
    CHECK(foundQuadratic);
  }

  SECTION("transport obstructions empty the list") {
    // rho = 1/2 over the 1/5 fiber would need multiplicity 5/2
    std::vector<SingularFiberAssignment> a = {{q(1, 2), 3, 2, {}},
                                              {q(2, 3), 1, 1, {}}};
    CHECK(ramification_profiles(a, {q(1, 2), q(1, 3), q(1, 5)}, 60).empty());
  }

  SECTION("forced multiplicities are validated") {
    std::vector<SingularFiberAssignment> bad = {{q(1, 2), 3, 0, 2},
                                                {q(2, 3), 1, 1, 2}};
    CHECK_THROWS_AS(
        ramification_profiles(bad, {q(1, 2), q(1, 3), q(1, 5)}, 60),
        std::invalid_argument);
    std::vector<SingularFiberAssignment> off = {{q(1, 2), 3, 5, {}}};
    CHECK_THROWS_AS(
        ramification_profiles(off, {q(1, 2), q(1, 3), q(1, 5)}, 60),
        std::invalid_argument);
  }

  SECTION("no tetrahedral covering exists when 2l is not an integer") {
    for (const Rational& l : {q(1, 6), q(2, 5), q(1, 10), q(7, 10)}) {
      auto cls = singular_classes(lame_operator({l, q(0), q(4), q(0)}));
      CHECK(ramification_profile_sweep(cls, {q(1, 2), q(1, 3), q(1, 3)}, 60)
                .empty());
    }
    // and on a curve with an irreducible quadratic factor
    auto cls = singular_classes(lame_operator({q(1, 3), q(0), q(0), q(4)}));
    CHECK(ramification_profile_sweep(cls, {q(1, 2), q(1, 3), q(1, 3)}, 60)
              .empty());
  }

  SECTION("the icosahedral sweep does find coverings at l = 1/6") {
    auto sweep =
        ramification_profile_sweep(classes, {q(1, 2), q(1, 3), q(1, 5)}, 60);
    bool quintic = std::any_of(sweep.begin(), sweep.end(),
                               [](const RamificationProfile& p) {
                                 return p.degree == 5 && p.totalPoints() == 7;
                               });
    CHECK(quintic);
  }
}

TEST_CASE("fibers of the named maps match an enumerated profile") {
  for (const auto& row : verified_rows()) {
    int d = row.xi.map_degree();
    long total0 = 0;
    for (const auto& z0 : {std::optional<Rational>(q(0)),
                           std::optional<Rational>(q(1)), std::optional<Rational>()}) {
      auto prof = exact_fiber_profile(row.xi, z0);
      long mass = 0;
      for (const auto& [m, c] : prof) {
        mass += long(m) * c;
        total0 += c;
      }
      CHECK(mass == d);  // multiplicities fill the whole fiber
    }
    CHECK(total0 == 2 + d);  // genus-zero Hurwitz count over {0,1,inf}
  }
}
