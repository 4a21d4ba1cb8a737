#include "lamemono/pullback.hpp"
#include "lamemono/schwarz.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <set>
#include <vector>

using namespace lamemono;

namespace {

Rational q(long n, long d = 1) {
  Rational r(n, d);
  r.canonicalize();
  return r;
}

using Profile = std::vector<std::pair<int, int>>;

/* Profiles over the three distinguished base points, as a multiset; the
 * entries' conventions differ in which point carries which ramification. */
std::multiset<Profile> special_profiles(const SchwarzEntry& e) {
  return {exact_fiber_profile(e.map, std::optional<Rational>(q(0))),
          exact_fiber_profile(e.map, std::optional<Rational>(q(1))),
          exact_fiber_profile(e.map, std::nullopt)};
}

}  // namespace

TEST_CASE("group tags") {
  CHECK(cyclic_group(5).name() == "C5");
  CHECK(cyclic_group(5).order() == 5);
  CHECK(dihedral_group(7).name() == "D7");
  CHECK(dihedral_group(7).order() == 14);
  CHECK(tetrahedral_group().order() == 12);
  CHECK(octahedral_group().order() == 24);
  CHECK(icosahedral_group().order() == 60);
  CHECK(octahedral_group().name() == "S4");
  CHECK(GroupTag{}.name() == "infinite-or-undetermined");
  CHECK(GroupTag{}.order() == 0);
  CHECK(cyclic_group(3) != cyclic_group(4));
  CHECK(icosahedral_group() == icosahedral_group());
}

TEST_CASE("hypergeometric operators realize their triple") {
  for (const SchwarzTriple& t :
       {SchwarzTriple{q(1, 2), q(1, 3), q(1, 5)},
        SchwarzTriple{q(2, 5), q(2, 5), q(2, 5)},
        SchwarzTriple{q(1, 7), q(3, 8), q(2, 9)}}) {
    RationalOperator H = hypergeometric_operator(t);
    CHECK(H.A.is_zero());
    CHECK(fuchs_relation_defect(H) == 0);
    auto diffs = exponent_difference_list(H);
    std::sort(diffs.begin(), diffs.end());
    auto want = t.as_array();
    std::sort(want.begin(), want.end());
    REQUIRE(diffs.size() == 3);
    CHECK(diffs[0] == want[0]);
    CHECK(diffs[1] == want[1]);
    CHECK(diffs[2] == want[2]);
  }
}

TEST_CASE("triple normalization") {
  SchwarzTriple base{q(1, 2), q(1, 3), q(1, 5)};
  SchwarzTriple canon = normalize_triple(base);

  SECTION("idempotent") { CHECK(normalize_triple(canon) == canon); }

  SECTION("invariant under permutation, sign, and even shift") {
    for (const SchwarzTriple& t :
         {SchwarzTriple{q(1, 3), q(1, 2), q(1, 5)},
          SchwarzTriple{q(-1, 2), q(1, 3), q(1, 5)},
          SchwarzTriple{q(1, 2), q(1, 3), q(6, 5)},     // one sign + one shift
          SchwarzTriple{q(5, 2), q(-4, 3), q(11, 5)}})  // stacked moves
      CHECK(normalize_triple(t) == canon);
  }

  SECTION("all-integer triples with odd parity are rejected") {
    CHECK_THROWS_AS(normalize_triple({q(1), q(2), q(2)}), std::domain_error);
  }
}

TEST_CASE("the fourteen sporadic rows") {
  const auto& rows = schwarz_rows();
  REQUIRE(rows.size() == 14);
  CHECK(std::string(rows.front().label) == "II");
  CHECK(std::string(rows.back().label) == "XV");

  std::set<std::array<Rational, 3>> canonicals;
  for (const auto& row : rows) {
    canonicals.insert(normalize_triple(row.triple).as_array());
    auto r = full_schwarz_lookup(row.triple);
    CHECK(r.algebraic);
    CHECK(r.caseLabel == row.label);
    CHECK(r.group == row.group);
  }
  // the rows are projectively distinct, so the lookup is unambiguous
  CHECK(canonicals.size() == 14);

  int tet = 0, oct = 0, ico = 0;
  for (const auto& row : rows) {
    tet += row.group == tetrahedral_group();
    oct += row.group == octahedral_group();
    ico += row.group == icosahedral_group();
  }
  CHECK(tet == 2);
  CHECK(oct == 2);
  CHECK(ico == 10);
}

TEST_CASE("full lookup covers the families") {
  SECTION("sporadic rows reached through equivalence moves") {
    CHECK(full_schwarz_lookup({q(1, 3), q(1, 2), q(1, 5)}).caseLabel == "VI");
    CHECK(full_schwarz_lookup({q(1, 2), q(1, 3), q(6, 5)}).caseLabel == "VI");
    CHECK(full_schwarz_lookup({q(-1, 2), q(2, 5), q(1, 3)}).caseLabel == "XIV");
    CHECK(full_schwarz_lookup({q(2, 3), q(1, 3), q(11, 5)}).caseLabel == "XII");
    // an odd shift leaves the list: (2/3, 4/3, 1/5) ~ (1/3, 1/3, 1/5)
    CHECK(!full_schwarz_lookup({q(2, 3), q(4, 3), q(1, 5)}).algebraic);
  }

  SECTION("dihedral family") {
    auto r = full_schwarz_lookup({q(1, 2), q(1, 2), q(3, 7)});
    CHECK(r.algebraic);
    CHECK(r.caseLabel == "I");
    CHECK(r.group == dihedral_group(7));
    // three halves: the Klein four-group, i.e. the n = 2 dihedral
    auto v4 = full_schwarz_lookup({q(1, 2), q(1, 2), q(1, 2)});
    CHECK(v4.group == dihedral_group(2));
  }

  SECTION("cyclic family, integer entry in any slot") {
    for (const SchwarzTriple& t :
         {SchwarzTriple{q(1, 3), q(1), q(1, 3)},
          SchwarzTriple{q(1), q(1, 3), q(1, 3)},
          SchwarzTriple{q(1, 3), q(1, 3), q(1)},
          SchwarzTriple{q(1, 3), q(2), q(2, 3)}}) {
      auto r = full_schwarz_lookup(t);
      CHECK(r.algebraic);
      CHECK(r.caseLabel == "cyclic");
      CHECK(r.group == cyclic_group(3));
      CHECK(r.canonical == SchwarzTriple{q(0), q(1, 3), q(2, 3)});
    }
  }

  SECTION("non-algebraic triples") {
    auto r = full_schwarz_lookup({q(1, 2), q(1, 3), q(1, 7)});
    CHECK(!r.algebraic);
    CHECK(r.caseLabel.empty());
    CHECK(!full_schwarz_lookup({q(1, 2), q(1, 3), q(2, 7)}).algebraic);
  }

  SECTION("logarithmic degenerations are rejected") {
    CHECK_THROWS_AS(full_schwarz_lookup({q(1), q(1, 2), q(1, 3)}),
                    std::domain_error);
    CHECK_THROWS_AS(full_schwarz_lookup({q(1, 3), q(1, 4), q(2)}),
                    std::domain_error);
  }
}

TEST_CASE("basic covering maps") {
  auto entries = basic_list(5);
  REQUIRE(entries.size() == 5);

  SECTION("degrees equal group orders and map degrees") {
    for (const auto& e : entries) {
      CHECK(e.degree == e.group.order());
      CHECK(e.map.map_degree() == e.degree);
    }
    CHECK(entries[0].group == cyclic_group(5));
    CHECK(entries[1].group == dihedral_group(5));
    CHECK(entries[2].group == tetrahedral_group());
    CHECK(entries[3].group == octahedral_group());
    CHECK(entries[4].group == icosahedral_group());
  }

  SECTION("labels match the lookup table") {
    CHECK(entries[0].caseLabel == "cyclic");
    CHECK(entries[1].caseLabel == "I");
    CHECK(entries[2].caseLabel == "II");
    CHECK(entries[3].caseLabel == "IV");
    CHECK(entries[4].caseLabel == "VI");
    for (const auto& e : entries)
      if (e.caseLabel != "cyclic")
        CHECK(full_schwarz_lookup(e.triple).caseLabel == e.caseLabel);
  }

  SECTION("rational coefficient form") {
    CHECK_THROWS_AS(entries[2].rationalMap(), std::domain_error);
    for (std::size_t i : {std::size_t(0), std::size_t(1), std::size_t(3),
                          std::size_t(4)}) {
      auto rm = entries[i].rationalMap();
      CHECK(rm.map_degree() == entries[i].degree);
    }
  }
}

TEST_CASE("ramification over the distinguished points") {
  auto entries = basic_list(6);

  SECTION("cyclic: total branching at two points") {
    std::multiset<Profile> want = {{{1, 6}}, {{6, 1}}, {{6, 1}}};
    CHECK(special_profiles(entries[0]) == want);
  }

  SECTION("dihedral") {
    std::multiset<Profile> want = {{{2, 6}}, {{2, 6}}, {{6, 2}}};
    CHECK(special_profiles(entries[1]) == want);
  }

  SECTION("tetrahedral") {
    std::multiset<Profile> want = {{{2, 6}}, {{3, 4}}, {{3, 4}}};
    CHECK(special_profiles(entries[2]) == want);
  }

  SECTION("octahedral") {
    std::multiset<Profile> want = {{{2, 12}}, {{3, 8}}, {{4, 6}}};
    CHECK(special_profiles(entries[3]) == want);
  }

  SECTION("icosahedral") {
    std::multiset<Profile> want = {{{2, 30}}, {{3, 20}}, {{5, 12}}};
    CHECK(special_profiles(entries[4]) == want);
  }

  SECTION("generic fibers are unramified") {
    for (const auto& e : entries) {
      Profile simple = {{1, e.degree}};
      CHECK(exact_fiber_profile(e.map, std::optional<Rational>(q(7))) ==
            simple);
    }
  }
}

TEST_CASE("numeric fibers agree with the exact profiles") {
  auto ico = basic_icosahedral_entry();

  SECTION("over an exact branch point") {
    for (const auto& z0 : {std::optional<Rational>(q(0)),
                           std::optional<Rational>(q(1)), std::optional<Rational>()}) {
      auto fiber = polyhedral_fiber(ico.map, z0);
      long total = 0;
      for (const auto& p : fiber) total += p.multiplicity;
      CHECK(total == 60);
      // all points in one special fiber share a multiplicity
      for (const auto& p : fiber) CHECK(p.multiplicity == fiber.front().multiplicity);
    }
  }

  SECTION("over a generic complex point") {
    auto fiber = polyhedral_fiber(ico.map, Cplx(0.31, 0.4));
    CHECK(fiber.size() == 60);
    for (const auto& p : fiber) {
      CHECK(p.multiplicity == 1);
      CHECK(!p.atInfinity);
    }
  }
}
