#pragma once

#include "lamemono/operators.hpp"
#include "lamemono/polynomial.hpp"
#include "lamemono/rational.hpp"
#include "lamemono/rational_function.hpp"
#include "lamemono/schwarz.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace lamemono {

/* Parameters of the algebraic-form Lame operator
 *   u'' + (P'/2P) u' - (l(l+1)x + B)/(4P) u = 0,
 * with P(x) = x^3 - (g2/4)x - (g3/4), so the branch points e_i sum to 0.
 * B is the accessory parameter. */
struct LameParameters {
  Rational ell, accessoryB, g2, g3;

  bool operator==(const LameParameters& o) const {
    return ell == o.ell && accessoryB == o.accessoryB && g2 == o.g2 &&
           g3 == o.g3;
  }
};

struct EllipticCurveData {
  Rational g2, g3, discriminant, jInvariant;
};

inline Rational curve_discriminant(const Rational& g2, const Rational& g3) {
  return g2 * g2 * g2 - Rational(27) * g3 * g3;
}

inline Rational j_invariant(const Rational& g2, const Rational& g3) {
  Rational d = curve_discriminant(g2, g3);
  if (d == 0)
    throw std::domain_error("zero discriminant: the cubic has a double root");
  return g2 * g2 * g2 / d;
}

inline EllipticCurveData curve_data(const Rational& g2, const Rational& g3) {
  return {g2, g3, curve_discriminant(g2, g3), j_invariant(g2, g3)};
}

inline Polynomial<Rational> weierstrass_cubic(const LameParameters& p) {
  Polynomial<Rational> x = Polynomial<Rational>::variable();
  return x.pow(3) - Polynomial<Rational>(p.g2 / 4) * x -
         Polynomial<Rational>(p.g3 / 4);
}

inline RationalOperator lame_operator(const LameParameters& p) {
  if (curve_discriminant(p.g2, p.g3) == 0)
    throw std::domain_error("zero discriminant: the cubic has a double root");
  Polynomial<Rational> P = weierstrass_cubic(p);
  Polynomial<Rational> x = Polynomial<Rational>::variable();
  RationalFunction<Rational> A(P.derivative(), P * Rational(2));
  RationalFunction<Rational> B(
      -(Polynomial<Rational>(p.ell * (p.ell + 1)) * x +
        Polynomial<Rational>(p.accessoryB)),
      P * Rational(4));
  return {A, B};
}

/* x -> x/alpha carries the operator for p to the operator for these
 * parameters; J is unchanged, B is not scale-invariant. */
inline LameParameters scale(const LameParameters& p, const Rational& alpha) {
  if (alpha == 0) throw std::invalid_argument("scale factor must be nonzero");
  return {p.ell, alpha * p.accessoryB, alpha * alpha * p.g2,
          alpha * alpha * alpha * p.g3};
}

/* Is ell in Z + r or Z - r? */
inline bool member_z_pm(const Rational& ell, const Rational& r) {
  return is_integer(ell - r) || is_integer(ell + r);
}

/* One admissible finite-monodromy alternative for a given ell, together
 * with the membership condition that witnesses it.  curveGroup is only
 * populated in the Weierstrass-form scope (the operator lifted to the
 * elliptic curve double cover). */
struct AdmissibleEntry {
  GroupTag baseGroup;
  std::optional<GroupTag> curveGroup;
  std::string condition;  // e.g. "ell in Z+-1/6"
};

struct ClassificationVerdict {
  enum class Scope { AlgebraicForm, WeierstrassForm };
  Scope scope = Scope::AlgebraicForm;
  bool classicalFlag = false;  // 2*ell integral: dihedral-range classical theory
  std::vector<AdmissibleEntry> admissible;
};

/* Necessary conditions on ell for the algebraic-form operator to have
 * finite projective monodromy, assuming 2*ell is not an integer: the group
 * can only be octahedral (ell in Z+-1/6 or Z+-1/4) or icosahedral (ell in
 * Z+-1/10, Z+-1/6, or Z+-3/10).  Tetrahedral, cyclic, and dihedral cannot
 * occur off the classical 2*ell range.  An empty list means the monodromy
 * is necessarily infinite for every B, g2, g3. */
inline ClassificationVerdict classify_algebraic(const Rational& ell) {
  ClassificationVerdict v;
  v.scope = ClassificationVerdict::Scope::AlgebraicForm;
  if (is_integer(Rational(2) * ell)) {
    v.classicalFlag = true;
    return v;
  }
  auto add = [&v](GroupTag g, const char* cond) {
    v.admissible.push_back({g, std::nullopt, cond});
  };
  if (member_z_pm(ell, Rational(1, 6)))
    add(octahedral_group(), "ell in Z+-1/6");
  if (member_z_pm(ell, Rational(1, 4)))
    add(octahedral_group(), "ell in Z+-1/4");
  if (member_z_pm(ell, Rational(1, 10)))
    add(icosahedral_group(), "ell in Z+-1/10");
  if (member_z_pm(ell, Rational(1, 6)))
    add(icosahedral_group(), "ell in Z+-1/6");
  if (member_z_pm(ell, Rational(3, 10)))
    add(icosahedral_group(), "ell in Z+-3/10");
  return v;
}

/* The same classification for the operator pulled up to the elliptic curve:
 * pairs (curve group, base group).  The curve group can drop to a subgroup
 * of index two because the double cover kills the sheet swap. */
inline ClassificationVerdict classify_weierstrass(const Rational& ell) {
  ClassificationVerdict v;
  v.scope = ClassificationVerdict::Scope::WeierstrassForm;
  if (is_integer(Rational(2) * ell)) {
    v.classicalFlag = true;
    return v;
  }
  auto add = [&v](GroupTag curve, GroupTag base, const char* cond) {
    v.admissible.push_back({base, curve, cond});
  };
  if (member_z_pm(ell, Rational(1, 4)))
    add(tetrahedral_group(), octahedral_group(), "ell in Z+-1/4");
  if (member_z_pm(ell, Rational(1, 6)))
    add(octahedral_group(), octahedral_group(), "ell in Z+-1/6");
  if (member_z_pm(ell, Rational(1, 10)))
    add(icosahedral_group(), icosahedral_group(), "ell in Z+-1/10");
  if (member_z_pm(ell, Rational(1, 6)))
    add(icosahedral_group(), icosahedral_group(), "ell in Z+-1/6");
  if (member_z_pm(ell, Rational(3, 10)))
    add(icosahedral_group(), icosahedral_group(), "ell in Z+-3/10");
  return v;
}

/* The five explicitly solvable instances with their projective monodromy
 * groups, base and curve.  These are the regression anchors: each row's
 * pullback certificate verifies exactly and the numerically computed groups
 * match the tags. */
struct KnownInstance {
  std::string label;
  LameParameters params;
  GroupTag baseGroup;
  GroupTag curveGroup;
};

inline const std::vector<KnownInstance>& known_instances() {
  static const std::vector<KnownInstance> rows = {
      {"1", {{1, 6}, {0}, {4}, {0}}, octahedral_group(), octahedral_group()},
      {"2a", {{1, 4}, {0}, {0}, {4}}, octahedral_group(), tetrahedral_group()},
      {"2b", {{1, 10}, {0}, {0}, {4}}, icosahedral_group(), icosahedral_group()},
      {"2c", {{7, 10}, {0}, {0}, {4}}, icosahedral_group(), icosahedral_group()},
      {"3",
       {{1, 6}, {-1, 9}, {80, 3}, {-80, 3}},
       icosahedral_group(),
       icosahedral_group()},
  };
  return rows;
}

inline const KnownInstance& known_instance(const std::string& label) {
  for (const auto& r : known_instances())
    if (r.label == label) return r;
  throw std::invalid_argument("unknown instance label: " + label);
}

}  // namespace lamemono
