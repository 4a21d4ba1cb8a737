#pragma once

#include "lamemono/number_field.hpp"
#include "lamemono/operators.hpp"
#include "lamemono/polynomial.hpp"
#include "lamemono/rational.hpp"
#include "lamemono/rational_function.hpp"
#include "lamemono/roots.hpp"

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace lamemono {

/* Angular-parameter triple (lambda, mu, nu) of a hypergeometric equation in
 * normal form: exponent differences at z = 0, 1, infinity in that order. */
struct SchwarzTriple {
  Rational lambda, mu, nu;

  std::array<Rational, 3> as_array() const { return {lambda, mu, nu}; }
  bool operator==(const SchwarzTriple& o) const {
    return lambda == o.lambda && mu == o.mu && nu == o.nu;
  }
  bool operator!=(const SchwarzTriple& o) const { return !(*this == o); }

  std::string str() const {
    return "(" + lambda.get_str() + ", " + mu.get_str() + ", " +
           nu.get_str() + ")";
  }
};

/* Projective monodromy group, tagged by isomorphism type.  n parametrizes
 * the cyclic and dihedral families and is zero otherwise. */
struct GroupTag {
  enum class Kind {
    Cyclic,
    Dihedral,
    Tetrahedral,
    Octahedral,
    Icosahedral,
    InfiniteOrUndetermined
  };
  Kind kind = Kind::InfiniteOrUndetermined;
  int n = 0;

  long order() const {
    switch (kind) {
      case Kind::Cyclic: return n;
      case Kind::Dihedral: return 2L * n;
      case Kind::Tetrahedral: return 12;
      case Kind::Octahedral: return 24;
      case Kind::Icosahedral: return 60;
      default: return 0;
    }
  }

  std::string name() const {
    switch (kind) {
      case Kind::Cyclic: return "C" + std::to_string(n);
      case Kind::Dihedral: return "D" + std::to_string(n);
      case Kind::Tetrahedral: return "A4";
      case Kind::Octahedral: return "S4";
      case Kind::Icosahedral: return "A5";
      default: return "infinite-or-undetermined";
    }
  }

  bool operator==(const GroupTag& o) const {
    if (kind != o.kind) return false;
    if (kind == Kind::Cyclic || kind == Kind::Dihedral) return n == o.n;
    return true;
  }
  bool operator!=(const GroupTag& o) const { return !(*this == o); }
};

inline GroupTag cyclic_group(int n) { return {GroupTag::Kind::Cyclic, n}; }
inline GroupTag dihedral_group(int n) { return {GroupTag::Kind::Dihedral, n}; }
inline GroupTag tetrahedral_group() { return {GroupTag::Kind::Tetrahedral, 0}; }
inline GroupTag octahedral_group() { return {GroupTag::Kind::Octahedral, 0}; }
inline GroupTag icosahedral_group() { return {GroupTag::Kind::Icosahedral, 0}; }

/* Hypergeometric operator in projective normal form, u'' + B u = 0, whose
 * exponent differences at 0, 1, infinity are the given triple. */
inline RationalOperator hypergeometric_operator(const SchwarzTriple& t) {
  using P = Polynomial<Rational>;
  using RF = RationalFunction<Rational>;
  P z = P::variable();
  const Rational &l = t.lambda, &m = t.mu, &n = t.nu;
  RF B = RF(P(1 - l * l), z.pow(2) * Rational(4)) +
         RF(P(1 - m * m), (z - P(1)).pow(2) * Rational(4)) +
         RF(P(l * l + m * m - 1 - n * n), z * (z - P(1)) * Rational(4));
  return {RF(), B};
}

/* Canonical representative of a triple under the moves that preserve the
 * projective monodromy: permutations, sign changes, and integer shifts of
 * even total.  Concretely: for each sign vector s let v_i = frac(s_i t_i)
 * and a_i = v_i - s_i t_i; the vector is admissible when sum a_i is even,
 * and the canonical form is the lexicographically least sorted admissible v.
 * Flipping the sign of a non-integral entry flips the parity, so admissible
 * vectors always exist unless some entries are integers. */
inline SchwarzTriple normalize_triple(const SchwarzTriple& t) {
  auto arr = t.as_array();
  std::optional<std::array<Rational, 3>> best;
  for (int mask = 0; mask < 8; ++mask) {
    std::array<Rational, 3> v;
    Rational shift(0);
    for (int i = 0; i < 3; ++i) {
      Rational st = (mask >> i & 1) ? Rational(-arr[i]) : arr[i];
      v[i] = fractional_part(st);
      shift += v[i] - st;
    }
    if (!is_even(shift.get_num())) continue;  // shift is an integer here
    std::sort(v.begin(), v.end());
    if (!best || v < *best) best = v;
  }
  if (!best)
    throw std::domain_error(
        "triple has no admissible normalization (all-integer parity "
        "obstruction): " + t.str());
  return {(*best)[0], (*best)[1], (*best)[2]};
}

/* One row of the classical list of algebraic hypergeometric equations:
 * the fixed triples II..XV (I is the dihedral family, handled separately). */
struct SchwarzRow {
  const char* label;
  SchwarzTriple triple;
  GroupTag group;
};

inline const std::vector<SchwarzRow>& schwarz_rows() {
  static const std::vector<SchwarzRow> rows = {
      {"II", {{1, 2}, {1, 3}, {1, 3}}, tetrahedral_group()},
      {"III", {{2, 3}, {1, 3}, {1, 3}}, tetrahedral_group()},
      {"IV", {{1, 2}, {1, 3}, {1, 4}}, octahedral_group()},
      {"V", {{2, 3}, {1, 4}, {1, 4}}, octahedral_group()},
      {"VI", {{1, 2}, {1, 3}, {1, 5}}, icosahedral_group()},
      {"VII", {{2, 5}, {1, 3}, {1, 3}}, icosahedral_group()},
      {"VIII", {{2, 3}, {1, 5}, {1, 5}}, icosahedral_group()},
      {"IX", {{1, 2}, {2, 5}, {1, 5}}, icosahedral_group()},
      {"X", {{3, 5}, {1, 3}, {1, 5}}, icosahedral_group()},
      {"XI", {{2, 5}, {2, 5}, {2, 5}}, icosahedral_group()},
      {"XII", {{2, 3}, {1, 3}, {1, 5}}, icosahedral_group()},
      {"XIII", {{4, 5}, {1, 5}, {1, 5}}, icosahedral_group()},
      {"XIV", {{1, 2}, {2, 5}, {1, 3}}, icosahedral_group()},
      {"XV", {{3, 5}, {2, 5}, {1, 3}}, icosahedral_group()},
  };
  return rows;
}

struct SchwarzLookupResult {
  bool algebraic = false;
  GroupTag group;
  std::string caseLabel;  // "I".."XV", "cyclic", or "" when not algebraic
  SchwarzTriple canonical{{0}, {0}, {0}};
};

namespace detail {

/* Equivalence with the degenerate reducible pattern (k, 1, k): some
 * placement of an integral middle entry, outer entries congruent after a
 * sign choice, and the combined shift even.  The parameter of the cyclic
 * group is the denominator of the common outer fractional part. */
inline std::optional<int> cyclic_family_parameter(const SchwarzTriple& t) {
  auto arr = t.as_array();
  static const int perms[3][3] = {{0, 1, 2}, {1, 0, 2}, {0, 2, 1}};
  for (const auto& p : perms) {
    const Rational& mid = arr[p[1]];
    if (!is_integer(mid)) continue;
    for (int mask = 0; mask < 8; ++mask) {
      Rational sx = (mask & 1) ? Rational(-arr[p[0]]) : arr[p[0]];
      Rational sm = (mask & 2) ? Rational(-mid) : mid;
      Rational sy = (mask & 4) ? Rational(-arr[p[2]]) : arr[p[2]];
      Rational rho = fractional_part(sx);
      if (fractional_part(sy) != rho) continue;
      Rational shift = (rho - sx) + (Rational(1) - sm) + (rho - sy);
      if (!is_even(shift.get_num())) continue;
      return static_cast<int>(rho.get_den().get_si());
    }
  }
  return std::nullopt;
}

}  // namespace detail

/* Decide whether a hypergeometric equation with this exponent-difference
 * triple has finite projective monodromy, and name the group.  Covers the
 * full classical list: the cyclic degenerate family, the dihedral family
 * (row I), and the fourteen sporadic rows II..XV.  A triple with an
 * integral entry outside the cyclic family is rejected: such equations
 * carry logarithmic solutions and no finite classification applies. */
inline SchwarzLookupResult full_schwarz_lookup(const SchwarzTriple& t) {
  SchwarzLookupResult out;
  bool anyIntegral = is_integer(t.lambda) || is_integer(t.mu) ||
                     is_integer(t.nu);
  if (anyIntegral) {
    auto n = detail::cyclic_family_parameter(t);
    if (!n)
      throw std::domain_error(
          "integral exponent difference outside the cyclic family: " +
          t.str());
    out.algebraic = true;
    out.group = cyclic_group(*n);
    out.caseLabel = "cyclic";
    out.canonical = {Rational(0), Rational(1, *n),
                     Rational(*n - 1, *n)};
    return out;
  }
  SchwarzTriple c = normalize_triple(t);
  out.canonical = c;
  for (const auto& row : schwarz_rows()) {
    if (normalize_triple(row.triple) == c) {
      out.algebraic = true;
      out.group = row.group;
      out.caseLabel = row.label;
      return out;
    }
  }
  auto arr = c.as_array();
  int halves = 0;
  for (const auto& r : arr) halves += (r == Rational(1, 2)) ? 1 : 0;
  if (halves >= 2) {
    Rational nuPrime = (halves == 3) ? Rational(1, 2) : arr[0];
    out.algebraic = true;
    out.group = dihedral_group(static_cast<int>(nuPrime.get_den().get_si()));
    out.caseLabel = "I";
    return out;
  }
  return out;  // not algebraic
}

/* One realized row of the pullback table: the triple, the group, and the
 * explicit covering map carrying the group's natural coordinate to the base
 * of the hypergeometric equation. */
struct SchwarzEntry {
  std::string caseLabel;
  SchwarzTriple triple{{0}, {0}, {0}};
  GroupTag group;
  RationalFunction<NumberFieldElement> map;
  int degree = 0;

  /* The map with rational coefficients; throws for the tetrahedral entry,
   * whose classical form needs sqrt(-3). */
  RationalFunction<Rational> rationalMap() const {
    auto drop = [](const Polynomial<NumberFieldElement>& p) {
      std::vector<Rational> c;
      c.reserve(p.coefficients().size());
      for (const auto& e : p.coefficients()) c.push_back(e.as_rational());
      return Polynomial<Rational>(std::move(c));
    };
    return {drop(map.num()), drop(map.den())};
  }
};

namespace detail {

using NPoly = Polynomial<NumberFieldElement>;
using NRF = RationalFunction<NumberFieldElement>;

inline NPoly npoly(std::vector<std::pair<std::size_t, Rational>> terms) {
  std::vector<std::pair<std::size_t, NumberFieldElement>> t;
  t.reserve(terms.size());
  for (auto& [k, c] : terms) t.emplace_back(k, NumberFieldElement(c));
  return NPoly::from_terms(t);
}

}  // namespace detail

/* The basic pullback table: for each finite projective group, the triple of
 * the hypergeometric equation it solves and the covering map exhibiting the
 * solutions.  These are the classical polyhedral maps. */
inline SchwarzEntry basic_cyclic_entry(int n) {
  if (n < 1) throw std::invalid_argument("cyclic entry needs n >= 1");
  SchwarzEntry e;
  e.caseLabel = "cyclic";
  e.triple = {Rational(1, n), Rational(1), Rational(1, n)};
  e.group = cyclic_group(n);
  e.map = detail::NRF(detail::npoly({{static_cast<std::size_t>(n), Rational(1)}}));
  e.degree = n;
  return e;
}

inline SchwarzEntry basic_dihedral_entry(int n) {
  if (n < 1) throw std::invalid_argument("dihedral entry needs n >= 1");
  using namespace detail;
  SchwarzEntry e;
  e.caseLabel = "I";
  e.triple = {Rational(1, 2), Rational(1, 2), Rational(1, n)};
  e.group = dihedral_group(n);
  std::size_t un = static_cast<std::size_t>(n);
  NPoly wn = npoly({{un, Rational(1)}});
  NPoly one = npoly({{0, Rational(1)}});
  e.map = NRF((wn + one) * (wn + one), wn * NumberFieldElement(4));
  e.degree = 2 * n;
  return e;
}

inline SchwarzEntry basic_tetrahedral_entry() {
  using namespace detail;
  SchwarzEntry e;
  e.caseLabel = "II";
  e.triple = {Rational(1, 2), Rational(1, 3), Rational(1, 3)};
  e.group = tetrahedral_group();
  NumberFieldElement rt = NumberFieldElement::generator(sqrt_minus_three_field());
  NPoly w2 = npoly({{2, Rational(1)}});
  NPoly quartic = npoly({{4, Rational(1)}, {0, Rational(-1)}});  // w^4 - 1
  NPoly denBase = npoly({{4, Rational(1)}, {0, Rational(1)}}) +
                  NPoly::monomial(rt * NumberFieldElement(2), 2);
  e.map = NRF(NPoly(rt * NumberFieldElement(12)) * w2 * quartic * quartic,
              denBase * denBase * denBase);
  e.degree = 12;
  return e;
}

inline SchwarzEntry basic_octahedral_entry() {
  using namespace detail;
  SchwarzEntry e;
  e.caseLabel = "IV";
  e.triple = {Rational(1, 2), Rational(1, 3), Rational(1, 4)};
  e.group = octahedral_group();
  NPoly t = npoly({{12, Rational(1)},
                   {8, Rational(-33)},
                   {4, Rational(-33)},
                   {0, Rational(1)}});
  NPoly w4 = npoly({{4, Rational(1)}});
  NPoly quartic = npoly({{4, Rational(1)}, {0, Rational(-1)}});
  e.map = NRF(-(t * t),
              NumberFieldElement(108) * w4 * quartic.pow(4));
  e.degree = 24;
  return e;
}

inline SchwarzEntry basic_icosahedral_entry() {
  using namespace detail;
  SchwarzEntry e;
  e.caseLabel = "VI";
  e.triple = {Rational(1, 2), Rational(1, 3), Rational(1, 5)};
  e.group = icosahedral_group();
  NPoly t = npoly({{30, Rational(1)},
                   {25, Rational(522)},
                   {20, Rational(-10005)},
                   {10, Rational(-10005)},
                   {5, Rational(-522)},
                   {0, Rational(1)}});
  NPoly w5 = npoly({{5, Rational(1)}});
  NPoly f = npoly({{10, Rational(1)}, {5, Rational(11)}, {0, Rational(-1)}});
  e.map = NRF(t * t, NumberFieldElement(1728) * w5 * f.pow(5));
  e.degree = 60;
  return e;
}

inline std::vector<SchwarzEntry> basic_list(int n) {
  return {basic_cyclic_entry(n), basic_dihedral_entry(n),
          basic_tetrahedral_entry(), basic_octahedral_entry(),
          basic_icosahedral_entry()};
}

/* Exact ramification profile of the fiber of a degree-d map over an exact
 * base point (nullopt = infinity): pairs (multiplicity, number of points).
 * Multiplicities of finite fiber points are read off the squarefree
 * decomposition; a degree drop is the multiplicity of the point at
 * infinity in the fiber. */
template <class K>
std::vector<std::pair<int, int>> exact_fiber_profile(
    const RationalFunction<K>& map, const std::optional<Rational>& z0) {
  int d = map.map_degree();
  Polynomial<K> F =
      z0 ? map.num() - lift<K>(Polynomial<Rational>(*z0)) * map.den()
         : map.den();
  if (F.is_zero()) throw std::domain_error("constant map has no fibers");
  std::vector<std::pair<int, int>> profile;  // (multiplicity, count)
  auto add = [&profile](int mult, int count) {
    for (auto& pc : profile)
      if (pc.first == mult) {
        pc.second += count;
        return;
      }
    profile.emplace_back(mult, count);
  };
  for (const auto& [part, mult] : squarefree_decomposition(F))
    add(mult, part.degree());
  if (F.degree() < d) add(d - F.degree(), 1);  // the point at infinity
  std::sort(profile.begin(), profile.end());
  int total = 0;
  for (auto& [m, c] : profile) total += m * c;
  if (total != d)
    throw std::logic_error("fiber multiplicities do not sum to the degree");
  return profile;
}

struct FiberPointNumeric {
  Cplx location{};
  int multiplicity = 1;
  bool atInfinity = false;
};

/* Numeric fiber of a map over an exact base point, with multiplicities
 * certified by the squarefree decomposition; each squarefree part has only
 * simple roots, so the root solve stays at full accuracy even on the
 * quartic and quintic ramification points. */
template <class K>
std::vector<FiberPointNumeric> polyhedral_fiber(
    const RationalFunction<K>& map, const std::optional<Rational>& z0,
    double rootResidual = 1e-12) {
  int d = map.map_degree();
  Polynomial<K> F =
      z0 ? map.num() - lift<K>(Polynomial<Rational>(*z0)) * map.den()
         : map.den();
  std::vector<FiberPointNumeric> out;
  for (const auto& [part, mult] : squarefree_decomposition(F)) {
    auto rr = find_roots(part.complex_coefficients());
    if (rr.maxResidual > rootResidual)
      throw std::runtime_error("fiber root solve exceeded residual budget");
    for (const Cplx& z : rr.roots) out.push_back({z, mult, false});
  }
  if (F.degree() < d) out.push_back({Cplx{}, d - F.degree(), true});
  return out;
}

/* Numeric fiber over a generic complex point.  Multiplicities come from
 * clustering and are only reliable when the point is not a branch point (a
 * generic point: every polyhedral map branches over 0, 1, infinity only). */
template <class K>
std::vector<FiberPointNumeric> polyhedral_fiber(
    const RationalFunction<K>& map, const Cplx& z0,
    double clusterRadius = 1e-6) {
  auto nc = map.num().complex_coefficients();
  auto dc = map.den().complex_coefficients();
  std::size_t len = std::max(nc.size(), dc.size());
  std::vector<Cplx> F(len, 0.0);
  for (std::size_t i = 0; i < nc.size(); ++i) F[i] += nc[i];
  for (std::size_t i = 0; i < dc.size(); ++i) F[i] -= z0 * dc[i];
  while (!F.empty() && std::abs(F.back()) < 1e-13) F.pop_back();
  int d = map.map_degree();
  std::vector<FiberPointNumeric> out;
  if (F.size() > 1) {
    auto rr = find_roots(F);
    for (const auto& [z, m] : cluster_roots(rr.roots, clusterRadius))
      out.push_back({z, m, false});
  }
  int found = 0;
  for (const auto& p : out) found += p.multiplicity;
  if (found < d) out.push_back({Cplx{}, d - found, true});
  return out;
}

}  // namespace lamemono
