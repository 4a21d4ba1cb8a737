#pragma once

#include "lamemono/lame.hpp"
#include "lamemono/operators.hpp"
#include "lamemono/parse.hpp"
#include "lamemono/rational_function.hpp"
#include "lamemono/schwarz.hpp"

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace lamemono {

/* Pullback of a normal-form operator w'' + B'(z) w = 0 along z = xi(x):
 *   D^2 - (xi''/xi') D + (xi')^2 B'(xi(x)),
 * the substitution that keeps the leading coefficient monic. */
template <class K>
DifferentialOperator<K> strong_pullback(const DifferentialOperator<K>& target,
                                        const RationalFunction<K>& xi) {
  if (!target.A.is_zero())
    throw std::invalid_argument("strong_pullback target must be normal form");
  if (xi.is_constant())
    throw std::invalid_argument("pullback along a constant map");
  RationalFunction<K> d1 = xi.derivative();
  RationalFunction<K> d2 = d1.derivative();
  RationalFunction<K> theta = d2 / d1;  // xi''/xi'
  return {-theta, d1 * d1 * target.B.compose(xi)};
}

/* Certificate of the weak-pullback identity
 *   -A'/2 - A^2/4 + B  =  (1/2)(xi''/xi')' - (1/4)(xi''/xi')^2
 *                         + (xi')^2 B'(xi(x)),
 * i.e. projective equivalence of the tested operator with the strong
 * pullback of the hypergeometric operator of the given triple.  The check
 * is an exact rational-function identity; residualWitness holds the
 * difference of the two sides whenever it is nonzero. */
struct PullbackCertificate {
  RationalFunction<Rational> xi;
  SchwarzTriple sourceTriple{{0}, {0}, {0}};  // hypergeometric being pulled back
  RationalOperator target;                    // the operator under test
  bool verified = false;
  std::optional<RationalFunction<Rational>> residualWitness;
};

inline PullbackCertificate is_weak_pullback(const RationalOperator& L,
                                            const SchwarzTriple& t,
                                            const RationalFunction<Rational>& xi) {
  PullbackCertificate cert;
  cert.xi = xi;
  cert.sourceTriple = t;
  cert.target = L;
  RationalOperator hyper = hypergeometric_operator(t);
  RationalFunction<Rational> residual =
      normal_form(L) - normal_form(strong_pullback(hyper, xi));
  cert.verified = residual.is_zero();
  if (!cert.verified) cert.residualWitness = residual;
  return cert;
}

/* Both sides of the covering-degree relation
 *   2 - 2g + sum(rho_i - 1) = d * [2 + sum(rho'_i - 1)]:
 * rho over the source's singular exponent differences, rho' over the
 * target's.  A candidate degree d is admissible iff lhs = d * rhsPerDegree. */
struct DegreeRelation {
  Rational lhs, rhsPerDegree;

  bool admits(const Integer& d) const {
    return lhs == Rational(d) * rhsPerDegree;
  }
  /* The unique admissible degree when rhsPerDegree != 0 and the quotient is
   * a positive integer. */
  std::optional<Integer> admissibleDegree() const {
    if (rhsPerDegree == 0) return std::nullopt;
    Rational q = lhs / rhsPerDegree;
    if (!is_integer(q) || q <= 0) return std::nullopt;
    return q.get_num();
  }
};

inline DegreeRelation degree_formula(const std::vector<Rational>& rhoF,
                                     int genus,
                                     const std::vector<Rational>& rhoFprime) {
  Rational lhs(2 - 2 * genus);
  for (const auto& r : rhoF) lhs += r - 1;
  Rational rhs(2);
  for (const auto& r : rhoFprime) rhs += r - 1;
  return {lhs, rhs};
}

/* Exponent differences of all singular points of an operator, expanded per
 * conjugate point, absolute values.  Throws when a difference is irrational
 * (outside the scope of the degree bookkeeping). */
inline std::vector<Rational> exponent_difference_list(
    const RationalOperator& op) {
  std::vector<Rational> out;
  for (const auto& p : singular_points(op)) {
    Rational d = rational_abs(p.exponentDifference().as_rational());
    for (int i = 0; i < p.conjugates; ++i) out.push_back(d);
  }
  return out;
}

/* Singular classes of an operator as (|rho|, conjugate count) pairs, the
 * shape the profile enumerator consumes.  Conjugate points of one
 * irreducible location always share a fiber under a rational map, which is
 * why the class, not the point, is the assignment unit. */
inline std::vector<std::pair<Rational, int>> singular_classes(
    const RationalOperator& op) {
  std::vector<std::pair<Rational, int>> out;
  for (const auto& p : singular_points(op))
    out.emplace_back(rational_abs(p.exponentDifference().as_rational()),
                     p.conjugates);
  return out;
}

/* ---- ramification-profile enumeration ------------------------------- */

/* One singular class assigned to a fiber of the sought map over 0, 1 or
 * infinity.  rho is the class's exponent difference; count its number of
 * conjugate points.  forcedMultiplicity pins the local multiplicity h
 * (otherwise h = rho / rho'_fiber is computed, and must come out a positive
 * integer for any profile to exist). */
struct SingularFiberAssignment {
  Rational rho;
  int count = 1;
  int fiber = 0;  // 0, 1, 2 <-> over 0, 1, infinity
  std::optional<int> forcedMultiplicity;
};

struct FiberEntry {
  bool singular = false;  // carries a singular class vs ordinary points
  int multiplicity = 1;
  int count = 1;
};

struct RamificationProfile {
  int degree = 0;
  std::array<std::vector<FiberEntry>, 3> fiberData;  // over 0, 1, infinity

  int pointsInFiber(int z) const {
    int n = 0;
    for (const auto& e : fiberData[z]) n += e.count;
    return n;
  }
  int totalPoints() const {
    return pointsInFiber(0) + pointsInFiber(1) + pointsInFiber(2);
  }
};

/* All integer ramification profiles compatible with the given assignment of
 * singular classes to fibers: per fiber the multiplicities must sum to the
 * degree, ordinary points in the fiber over a target point with exponent
 * difference 1/k must have multiplicity exactly k, and the genus-0 Hurwitz
 * count |xi^{-1}({0,1,inf})| = 2 + degree must hold.  Returns profiles for
 * every degree up to maxDegree; an empty result is a proof that no such
 * covering exists (the classification theorems' contradictions). */
inline std::vector<RamificationProfile> ramification_profiles(
    const std::vector<SingularFiberAssignment>& assignment,
    const SchwarzTriple& t, int maxDegree = 60) {
  std::array<Rational, 3> rhoPrime = {t.lambda, t.mu, t.nu};
  /* Multiplicity of each assigned class, and per-fiber singular totals. */
  std::array<std::vector<FiberEntry>, 3> singularEntries;
  std::array<int, 3> singularMass = {0, 0, 0};
  std::array<int, 3> singularPoints = {0, 0, 0};
  for (const auto& a : assignment) {
    if (a.fiber < 0 || a.fiber > 2)
      throw std::invalid_argument("fiber index must be 0, 1 or 2");
    if (rhoPrime[a.fiber] == 0) return {};
    Rational h = a.rho / rhoPrime[a.fiber];
    if (!is_integer(h) || h <= 0) return {};  // no covering can exist
    int hi = static_cast<int>(h.get_num().get_si());
    if (a.forcedMultiplicity && *a.forcedMultiplicity != hi)
      throw std::invalid_argument(
          "forced multiplicity contradicts exponent transport");
    singularEntries[a.fiber].push_back({true, hi, a.count});
    singularMass[a.fiber] += hi * a.count;
    singularPoints[a.fiber] += a.count;
  }
  /* Ordinary points over the fiber of rho' = 1/k must have multiplicity k;
   * over a non-unit fraction no ordinary point is possible. */
  std::array<std::optional<int>, 3> ordinaryMult;
  for (int z = 0; z < 3; ++z) {
    if (rhoPrime[z] > 0 && rhoPrime[z].get_num() == 1)
      ordinaryMult[z] = static_cast<int>(rhoPrime[z].get_den().get_si());
  }
  std::vector<RamificationProfile> out;
  for (int d = 1; d <= maxDegree; ++d) {
    std::array<int, 3> n = {0, 0, 0};
    bool ok = true;
    for (int z = 0; z < 3 && ok; ++z) {
      int rest = d - singularMass[z];
      if (rest < 0) {
        ok = false;
      } else if (rest == 0) {
        n[z] = 0;
      } else if (!ordinaryMult[z] || rest % *ordinaryMult[z] != 0) {
        ok = false;
      } else {
        n[z] = rest / *ordinaryMult[z];
      }
    }
    if (!ok) continue;
    int points = singularPoints[0] + singularPoints[1] + singularPoints[2] +
                 n[0] + n[1] + n[2];
    if (points != 2 + d) continue;
    RamificationProfile prof;
    prof.degree = d;
    for (int z = 0; z < 3; ++z) {
      prof.fiberData[z] = singularEntries[z];
      if (n[z] > 0) prof.fiberData[z].push_back({false, *ordinaryMult[z], n[z]});
    }
    out.push_back(std::move(prof));
  }
  return out;
}

/* Sweep over every way to send the singular classes into the three fibers;
 * the classification proofs case-split on xi(infinity), and this enumerates
 * all the cases at once.  Classes are (rho, count) pairs. */
inline std::vector<RamificationProfile> ramification_profile_sweep(
    const std::vector<std::pair<Rational, int>>& classes,
    const SchwarzTriple& t, int maxDegree = 60) {
  std::vector<RamificationProfile> out;
  std::size_t m = classes.size();
  std::size_t total = 1;
  for (std::size_t i = 0; i < m; ++i) total *= 3;
  for (std::size_t code = 0; code < total; ++code) {
    std::vector<SingularFiberAssignment> assignment;
    std::size_t c = code;
    for (std::size_t i = 0; i < m; ++i) {
      assignment.push_back(
          {classes[i].first, classes[i].second, static_cast<int>(c % 3),
           std::nullopt});
      c /= 3;
    }
    for (auto& p : ramification_profiles(assignment, t, maxDegree))
      out.push_back(std::move(p));
  }
  return out;
}

/* ---- exponent transport (exact check on a certificate) --------------- */

struct TransportReport {
  bool ok = true;
  std::vector<std::string> failures;
};

/* Verify, exactly, that exponent differences transport through xi: for each
 * singular point P of L lying over z in {0,1,inf} with local multiplicity h,
 * rho(L, P) = h * rho'_z; and every other point of those fibers gets an
 * integral difference h * rho'_z (an ordinary or apparent point).  Also
 * demands that every singular point of L lands in one of the three fibers. */
inline TransportReport check_exponent_transport(
    const RationalOperator& L, const SchwarzTriple& t,
    const RationalFunction<Rational>& xi) {
  TransportReport rep;
  auto fail = [&rep](const std::string& s) {
    rep.ok = false;
    rep.failures.push_back(s);
  };
  int d = xi.map_degree();
  auto pts = singular_points(L);
  std::vector<bool> matched(pts.size(), false);
  const std::array<Rational, 3> rhoPrime = {t.lambda, t.mu, t.nu};
  for (int z = 0; z < 3; ++z) {
    Polynomial<Rational> F;
    if (z == 0)
      F = xi.num();
    else if (z == 1)
      F = xi.num() - xi.den();
    else
      F = xi.den();
    for (const auto& [part, h] : squarefree_decomposition(F)) {
      Polynomial<Rational> rest = part;
      for (std::size_t i = 0; i < pts.size(); ++i) {
        if (pts[i].atInfinity || pts[i].minimal.degree() < 1) continue;
        if ((rest % pts[i].minimal).is_zero()) {
          matched[i] = true;
          rest = rest / pts[i].minimal;
          Rational rho =
              rational_abs(pts[i].exponentDifference().as_rational());
          if (rho != Rational(h) * rhoPrime[z])
            fail("class " + pts[i].minimal.str() + " over fiber " +
                 std::to_string(z) + ": rho = " + rho.get_str() +
                 " but h*rho' = " + Rational(Rational(h) * rhoPrime[z]).get_str());
        }
      }
      if (rest.degree() > 0) {
        Rational induced = Rational(h) * rhoPrime[z];
        if (!is_integer(induced) || induced <= 0)
          fail("ordinary points over fiber " + std::to_string(z) +
               " would get non-integral difference " + induced.get_str());
      }
    }
    /* The point at infinity lies in this fiber iff the fiber polynomial
     * drops degree. */
    int hInf = d - F.degree();
    if (hInf > 0) {
      for (std::size_t i = 0; i < pts.size(); ++i) {
        if (!pts[i].atInfinity) continue;
        matched[i] = true;
        Rational rho = rational_abs(pts[i].exponentDifference().as_rational());
        if (rho != Rational(hInf) * rhoPrime[z])
          fail("infinity over fiber " + std::to_string(z) + ": rho = " +
               rho.get_str() + " but h*rho' = " +
               Rational(Rational(hInf) * rhoPrime[z]).get_str());
      }
    }
  }
  for (std::size_t i = 0; i < pts.size(); ++i)
    if (!matched[i])
      fail(std::string("singular point ") +
           (pts[i].atInfinity ? "at infinity" : pts[i].minimal.str()) +
           " does not lie over 0, 1 or infinity");
  return rep;
}

/* ---- the named maps --------------------------------------------------- */

struct NamedMap {
  std::string name;
  RationalFunction<Rational> xi;
  SchwarzTriple sourceTriple{{0}, {0}, {0}};  // pulled-back hypergeometric
  std::string targetDescription;
};

inline const std::vector<NamedMap>& named_maps() {
  static const std::vector<NamedMap> table = [] {
    std::vector<NamedMap> t;
    t.push_back({"harmonic-quadratic",
                 parse_rational_function("(x^2-1)/x^2"),
                 {{1, 2}, {1, 3}, {1, 4}},
                 "harmonic Lame operators with B=0; the triple generalizes "
                 "to (1/2,(2l+1)/4,1/4) for other l"});
    t.push_back({"equianharmonic-cubic",
                 parse_rational_function("1-x^3"),
                 {{1, 2}, {1, 3}, {1, 4}},
                 "equianharmonic Lame operators with B=0; the triple "
                 "generalizes to (1/2,1/3,(2l+1)/6) for other l"});
    t.push_back({"prop32-quintic",
                 parse_rational_function("(3x^3-20x+20)(2x-5)^2/(12(x-1)^5)"),
                 {{1, 2}, {1, 3}, {1, 5}},
                 "the J=-80 instance l=1/6, B=-1/9, g2=80/3, g3=-80/3"});
    t.push_back({"klein-caseXIV",
                 parse_rational_function(
                     "s(157464s^3-352107s^2+708750s-546875)^2/(189s-125)^5"),
                 {{1, 2}, {1, 3}, {1, 5}},
                 "degree-7 covering pulling the (1/2,1/3,1/5) operator back "
                 "to the (1/2,1/3,2/5) operator"});
    return t;
  }();
  return table;
}

inline const NamedMap& named_map(const std::string& name) {
  for (const auto& m : named_maps())
    if (m.name == name) return m;
  throw std::invalid_argument("unknown named map: " + name);
}

/* Build and check the certificate a named map stands for.  For the two
 * B = 0 families, ell selects the family member (default: the value with
 * algebraic solutions, 1/6 resp. 1/4).  The quintic is a single instance;
 * the Klein map certifies a hypergeometric-to-hypergeometric pullback and
 * takes no ell. */
inline PullbackCertificate named_certificate(
    const std::string& name, const std::optional<Rational>& ell = std::nullopt) {
  const NamedMap& m = named_map(name);
  if (name == "harmonic-quadratic") {
    Rational l = ell.value_or(Rational(1, 6));
    SchwarzTriple t{Rational(1, 2), (2 * l + 1) / 4, Rational(1, 4)};
    return is_weak_pullback(lame_operator({l, Rational(0), Rational(4),
                                           Rational(0)}),
                            t, m.xi);
  }
  if (name == "equianharmonic-cubic") {
    Rational l = ell.value_or(Rational(1, 4));
    SchwarzTriple t{Rational(1, 2), Rational(1, 3), (2 * l + 1) / 6};
    return is_weak_pullback(lame_operator({l, Rational(0), Rational(0),
                                           Rational(4)}),
                            t, m.xi);
  }
  if (name == "prop32-quintic") {
    if (ell && *ell != Rational(1, 6))
      throw std::invalid_argument("the quintic instance has ell = 1/6");
    return is_weak_pullback(
        lame_operator({{1, 6}, {-1, 9}, {80, 3}, {-80, 3}}), m.sourceTriple,
        m.xi);
  }
  if (ell)
    throw std::invalid_argument("the Klein covering takes no ell parameter");
  /* klein-caseXIV: the (1/2,1/3,2/5) operator is the pullback. */
  return is_weak_pullback(
      hypergeometric_operator({{1, 2}, {1, 3}, {2, 5}}), m.sourceTriple,
      m.xi);
}

}  // namespace lamemono
