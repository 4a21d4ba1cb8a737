// Explicit algebraic solution bases for the five classified equations.  In
// every case the ratio tau of two solutions is an algebraic function of x,
// defined by equating a polyhedral map of tau with a rational map of x, and
// the solutions themselves are
//
//     u1 = P(x)^(-1/4) / sqrt(dtau/dx),     u2 = tau * u1,
//
// with P the Weierstrass cubic.  Evaluation inverts the polyhedral map
// numerically at one point while all derivatives of the implicit relation
// are formed exactly as rational functions, so the residual check is not
// limited by numerical differentiation.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "lamemono/lame.hpp"
#include "lamemono/monodromy.hpp"
#include "lamemono/pullback.hpp"
#include "lamemono/roots.hpp"
#include "lamemono/schwarz.hpp"

namespace lamemono {

/* ------------------------------------------------------------------ */
/*  solution bases                                                    */
/* ------------------------------------------------------------------ */

struct SolutionBasis {
  std::string caseLabel;
  LameParameters params;
  Wronskian prefactor;  // the cubic raised to -1/4, as exact factored data
  RationalFunction<Rational> xi;
  SchwarzEntry polyhedral;
  // Only one case needs a second stage: its tau satisfies
  // polyhedral(tau) = extraComposition(xi(x)).
  std::optional<RationalFunction<Rational>> extraComposition;

  RationalFunction<Rational> chain() const {
    return extraComposition ? extraComposition->compose(xi) : xi;
  }
};

inline SolutionBasis solution_basis(const std::string& caseLabel) {
  auto inst = known_instance(caseLabel);
  SolutionBasis b;
  b.caseLabel = caseLabel;
  b.params = inst.params;
  b.prefactor =
      Wronskian{{{weierstrass_cubic(inst.params),
                  Rational(-1, 4)}}};
  if (caseLabel == "1") {
    b.xi = named_map("harmonic-quadratic").xi;
    b.polyhedral = basic_octahedral_entry();
  } else if (caseLabel == "2a") {
    b.xi = named_map("equianharmonic-cubic").xi;
    b.polyhedral = basic_octahedral_entry();
  } else if (caseLabel == "2b") {
    b.xi = named_map("equianharmonic-cubic").xi;
    b.polyhedral = basic_icosahedral_entry();
  } else if (caseLabel == "2c") {
    b.xi = named_map("equianharmonic-cubic").xi;
    b.polyhedral = basic_icosahedral_entry();
    b.extraComposition = named_map("klein-caseXIV").xi;
  } else if (caseLabel == "3") {
    b.xi = named_map("prop32-quintic").xi;
    b.polyhedral = basic_icosahedral_entry();
  } else {
    throw std::invalid_argument("solution_basis: unknown case " + caseLabel);
  }
  return b;
}

/* ------------------------------------------------------------------ */
/*  point evaluation                                                  */
/* ------------------------------------------------------------------ */

struct PointEvaluation {
  Cplx x0{0.0};
  int branchIndex = 0;
  int branchCount = 0;
  Cplx tau{0.0}, dtau{0.0};
  Cplx u1{0.0}, u2{0.0};
  Cplx u1d{0.0}, u1dd{0.0}, u2d{0.0}, u2dd{0.0};
  std::pair<double, double> residuals{0.0, 0.0};
  double definingDefect = 0.0;  // |polyhedral(tau) - chain(x0)|
};

// Relative defect of u'' + A u' + B u at ev.x0, one value per basis element.
inline std::pair<double, double> residual(const RationalOperator& op,
                                          const PointEvaluation& ev) {
  Cplx a = op.A.eval_complex(ev.x0);
  Cplx b = op.B.eval_complex(ev.x0);
  auto rel = [&](const Cplx& u, const Cplx& ud, const Cplx& udd) {
    double scale = std::max({std::abs(u), std::abs(ud), std::abs(udd), 1e-300});
    return std::abs(udd + a * ud + b * u) / scale;
  };
  return {rel(ev.u1, ev.u1d, ev.u1dd), rel(ev.u2, ev.u2d, ev.u2dd)};
}

namespace detail {

// Fiber of the polyhedral map over z0: roots of num - z0 * den.
inline std::vector<Cplx> polyhedral_fiber_points(
    const RationalFunction<Rational>& map, const Cplx& z0) {
  auto nc = map.num().complex_coefficients();
  auto dc = map.den().complex_coefficients();
  std::vector<Cplx> f(std::max(nc.size(), dc.size()), Cplx(0.0));
  for (std::size_t i = 0; i < nc.size(); ++i) f[i] += nc[i];
  for (std::size_t i = 0; i < dc.size(); ++i) f[i] -= z0 * dc[i];
  auto rr = find_roots(f);
  if (rr.maxResidual > 1e-9)
    throw std::runtime_error("polyhedral inversion: root residual " +
                             std::to_string(rr.maxResidual));
  return rr.roots;
}

inline double min_separation(const std::vector<Cplx>& pts) {
  double m = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j)
      m = std::min(m, std::abs(pts[i] - pts[j]));
  return m;
}

// Reorder the fiber over `to` so that entry k continues tracking[k].  If the
// points moved too much relative to their separation the step is split.
inline void track_fiber(const RationalFunction<Rational>& map,
                        std::vector<Cplx>& tracking, const Cplx& from,
                        const Cplx& to,
                        const RationalFunction<Rational>& chain, int depth) {
  if (depth > 40)
    throw std::runtime_error(
        "branch tracking: step subdivision exhausted (near a branch point?)");
  Cplx z1 = chain.eval_complex(to);
  auto next = polyhedral_fiber_points(map, z1);
  double sep = std::min(min_separation(tracking), min_separation(next));
  std::vector<Cplx> matched(tracking.size());
  std::vector<bool> used(next.size(), false);
  bool ok = true;
  for (std::size_t i = 0; i < tracking.size() && ok; ++i) {
    double best = std::numeric_limits<double>::infinity();
    std::size_t at = 0;
    for (std::size_t j = 0; j < next.size(); ++j) {
      double d = std::abs(next[j] - tracking[i]);
      if (d < best) {
        best = d;
        at = j;
      }
    }
    if (best > 0.35 * sep || used[at]) ok = false;
    used[at] = true;
    matched[i] = next[at];
  }
  if (ok) {
    tracking = matched;
    return;
  }
  Cplx mid = from + 0.5 * (to - from);
  track_fiber(map, tracking, from, mid, chain, depth + 1);
  track_fiber(map, tracking, mid, to, chain, depth + 1);
}

// Reference points fixing the branch labels of each case.
inline Cplx reference_point(const std::string& caseLabel) {
  return caseLabel == "3" ? Cplx(3.0, 0.0) : Cplx(2.0, 0.0);
}

inline bool arg_modulus_less(const Cplx& a, const Cplx& b) {
  double aa = std::arg(a), ab = std::arg(b);
  if (aa != ab) return aa < ab;
  return std::abs(a) < std::abs(b);
}

}  // namespace detail

// Branch labels at x0: the fiber at the case's reference point is sorted by
// (argument, modulus) and then transported to x0 by continuity along the
// straight segment.  At the reference point itself this is just the sort.
inline std::vector<Cplx> branch_labels(const SolutionBasis& basis,
                                       const Cplx& x0) {
  auto map = basis.polyhedral.rationalMap();
  auto chain = basis.chain();
  Cplx ref = detail::reference_point(basis.caseLabel);
  auto pts = detail::polyhedral_fiber_points(map, chain.eval_complex(ref));
  std::sort(pts.begin(), pts.end(), detail::arg_modulus_less);
  if (std::abs(x0 - ref) > 0.0)
    detail::track_fiber(map, pts, ref, x0, chain, 0);
  return pts;
}

inline PointEvaluation evaluate(const SolutionBasis& basis, const Cplx& x0,
                                int branch, double tol = 1e-9) {
  auto map = basis.polyhedral.rationalMap();
  auto chain = basis.chain();

  // reject singular x0: singular points of the operator or poles of the chain
  Polynomial<Rational> cubic =
      weierstrass_cubic(basis.params);
  if (std::abs(cubic.eval_complex(x0)) < 1e-10)
    throw std::invalid_argument("evaluate: x0 is a singular point");
  if (std::abs(chain.den().eval_complex(x0)) < 1e-10)
    throw std::invalid_argument("evaluate: x0 is a pole of the defining map");

  Cplx z0 = chain.eval_complex(x0);
  auto fiber = branch_labels(basis, x0);
  int count = static_cast<int>(fiber.size());
  if (branch < 0 || branch >= count)
    throw std::out_of_range("evaluate: branch index out of range");
  if (detail::min_separation(fiber) < tol)
    throw std::runtime_error(
        "evaluate: branch collision near a ramification point");

  PointEvaluation ev;
  ev.x0 = x0;
  ev.branchIndex = branch;
  ev.branchCount = count;
  ev.tau = fiber[static_cast<std::size_t>(branch)];
  ev.definingDefect = std::abs(map.eval_complex(ev.tau) - z0);

  // implicit derivatives of z(tau) = chain(x) at (tau, x0), all three taken
  // exactly in rational-function form before evaluating
  auto zp = map.derivative();
  auto zpp = zp.derivative();
  auto zppp = zpp.derivative();
  auto cp = chain.derivative();
  auto cpp = cp.derivative();
  auto cppp = cpp.derivative();

  Cplx Zp = zp.eval_complex(ev.tau);
  if (std::abs(Zp) < tol)
    throw std::runtime_error("evaluate: x0 maps to a branch point of the inversion");
  Cplx Zpp = zpp.eval_complex(ev.tau);
  Cplx Zppp = zppp.eval_complex(ev.tau);
  Cplx C1 = cp.eval_complex(x0);
  Cplx C2 = cpp.eval_complex(x0);
  Cplx C3 = cppp.eval_complex(x0);

  Cplx t1 = C1 / Zp;                                        // tau'
  Cplx t2 = (C2 - Zpp * t1 * t1) / Zp;                      // tau''
  Cplx t3 = (C3 - Zppp * t1 * t1 * t1 - 3.0 * Zpp * t1 * t2) / Zp;  // tau'''
  ev.dtau = t1;

  // prefactor E = prod (x0 - e_i)^(-1/4), principal branch per factor;
  // its logarithmic derivatives are rational
  auto er = find_roots(cubic.complex_coefficients());
  Cplx E = 1.0;
  for (const auto& e : er.roots) E *= std::pow(x0 - e, -0.25);
  RationalFunction<Rational> logd(cubic.derivative() * Rational(-1, 4), cubic);
  Cplx L1 = logd.eval_complex(x0);
  Cplx L2 = logd.derivative().eval_complex(x0) + L1 * L1;
  Cplx Ep = E * L1;
  Cplx Epp = E * L2;

  // v1 = (tau')^(-1/2) and v2 = tau * v1, with one consistent square root
  Cplx s = std::pow(t1, -0.5);
  Cplx s3 = s * s * s, s5 = s3 * s * s;
  Cplx v1 = s;
  Cplx v1p = -0.5 * s3 * t2;
  Cplx v1pp = 0.75 * s5 * t2 * t2 - 0.5 * s3 * t3;
  Cplx v2 = ev.tau * s;
  Cplx v2p = t1 * s + ev.tau * v1p;
  Cplx v2pp = t2 * s + 2.0 * t1 * v1p + ev.tau * v1pp;

  ev.u1 = E * v1;
  ev.u1d = Ep * v1 + E * v1p;
  ev.u1dd = Epp * v1 + 2.0 * Ep * v1p + E * v1pp;
  ev.u2 = E * v2;
  ev.u2d = Ep * v2 + E * v2p;
  ev.u2dd = Epp * v2 + 2.0 * Ep * v2p + E * v2pp;

  ev.residuals = residual(lame_operator(basis.params), ev);
  return ev;
}

/* ------------------------------------------------------------------ */
/*  branch monodromy                                                  */
/* ------------------------------------------------------------------ */

// Permutation of the branch labels induced by one circuit of `loop` in the
// x plane: entry k is the label the k-th branch lands on.  Around a finite
// singular point of the operator this is an involution (the local exponent
// difference is one half).
inline std::vector<std::size_t> branch_permutation(const SolutionBasis& basis,
                                                   const LoopPath& loop) {
  auto map = basis.polyhedral.rationalMap();
  auto chain = basis.chain();
  auto start = branch_labels(basis, loop.basepoint);
  std::vector<Cplx> tracking = start;
  for (std::size_t i = 0; i + 1 < loop.waypoints.size(); ++i)
    detail::track_fiber(map, tracking, loop.waypoints[i],
                        loop.waypoints[i + 1], chain, 0);

  double sep = detail::min_separation(start);
  std::vector<std::size_t> perm(start.size());
  std::vector<bool> used(start.size(), false);
  for (std::size_t i = 0; i < tracking.size(); ++i) {
    double best = std::numeric_limits<double>::infinity();
    std::size_t at = 0;
    for (std::size_t j = 0; j < start.size(); ++j) {
      double d = std::abs(tracking[i] - start[j]);
      if (d < best) {
        best = d;
        at = j;
      }
    }
    if (best > 0.35 * sep || used[at])
      throw std::runtime_error("branch_permutation: endpoint matching failed");
    used[at] = true;
    perm[i] = at;
  }
  return perm;
}

/* ------------------------------------------------------------------ */
/*  reduction on the elliptic curve                                   */
/* ------------------------------------------------------------------ */

struct CurveReduction {
  bool reduced = false;
  // For the reduced case: the square of the degree-12 relation's left side,
  // equal to y^2 = 4x^3 - g2 x - g3 once the defining equation is imposed.
  std::optional<RationalFunction<Rational>> witnessSquare;
  std::string note;
};

namespace detail {

// Squares in the function field of y^2 = 4P: an element of C(x) is a square
// there iff it or its quotient by 4P has even valuation everywhere, the
// cross term forcing every candidate root into C(x) or y * C(x).
inline bool rational_square(const RationalFunction<Rational>& f) {
  if (f.is_zero()) return true;
  for (const auto& part : {f.num(), f.den()})
    for (const auto& [factor, mult] : squarefree_decomposition(part))
      if (mult % 2 != 0 && factor.degree() > 0) return false;
  return true;
}

inline bool square_on_curve(const RationalFunction<Rational>& f,
                            const Polynomial<Rational>& cubic) {
  RationalFunction<Rational> fourP(cubic * Rational(4),
                                   Polynomial<Rational>::from_terms({{0, 1}}));
  return rational_square(f) || rational_square(f / fourP);
}

}  // namespace detail

// Whether the branch count of tau halves over the elliptic curve: the
// degree-24 octahedral relation splits over C(x,y) exactly when -4 xi is a
// square there, because the octahedral map itself is -1/4 times the square
// of a degree-12 rational function.
inline CurveReduction curve_branch_reduction(const std::string& caseLabel) {
  if (caseLabel != "1" && caseLabel != "2a")
    throw std::invalid_argument(
        "curve_branch_reduction: only the octahedral cases 1 and 2a");
  SolutionBasis basis = solution_basis(caseLabel);
  Polynomial<Rational> cubic =
      weierstrass_cubic(basis.params);

  // W^2 with W = (t^12 - 33 t^8 - 33 t^4 + 1) / (sqrt(27) t^2 (t^4 - 1)^2):
  // the octahedral map must equal -W^2/4 identically.
  Polynomial<Rational> N = Polynomial<Rational>::from_terms(
      {{12, 1}, {8, -33}, {4, -33}, {0, 1}});
  Polynomial<Rational> t2 = Polynomial<Rational>::monomial(Rational(1), 2);
  Polynomial<Rational> q = Polynomial<Rational>::from_terms({{4, 1}, {0, -1}});
  RationalFunction<Rational> w2(N * N, (t2 * q * q) * (t2 * q * q) * Rational(27));
  if (basis.polyhedral.rationalMap() != w2 * Rational(-1, 4))
    throw std::runtime_error(
        "curve_branch_reduction: octahedral square decomposition failed");

  CurveReduction out;
  out.reduced = detail::square_on_curve(basis.xi * Rational(-4), cubic);
  if (out.reduced) {
    out.witnessSquare = w2;
    out.note =
        "-4(1-x^3) = 4x^3-4 = y^2 on the curve, so the degree-12 relation "
        "W(tau) = +-y splits the octahedral equation";
  } else {
    out.note =
        "-4 xi has odd-order zeros both before and after division by the "
        "curve quadric, so no degree-12 factor exists over C(x,y)";
  }
  return out;
}

}  // namespace lamemono
