// Numerical monodromy of second-order Fuchsian operators: analytic
// continuation along polygonal loops by local Taylor series, keyhole loop
// generators around every finite singular point, closure of the projective
// image, and recognition of the finite subgroups of PGL(2,C).
//
// Everything here is double precision.  The tolerances live in one
// MonodromyConfig that is copied into every report, so a result can always
// be traced back to the settings that produced it.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "lamemono/operators.hpp"
#include "lamemono/roots.hpp"
#include "lamemono/schwarz.hpp"

namespace lamemono {

/* ------------------------------------------------------------------ */
/*  2x2 complex matrices                                              */
/* ------------------------------------------------------------------ */

struct Matrix2 {
  // row major: [[a, b], [c, d]]
  Cplx a{1.0}, b{0.0}, c{0.0}, d{1.0};
  bool unitDet = false;  // set once the matrix has been det-normalized

  static Matrix2 identity() { return {}; }

  Matrix2 operator*(const Matrix2& o) const {
    return {a * o.a + b * o.c, a * o.b + b * o.d,
            c * o.a + d * o.c, c * o.b + d * o.d, false};
  }
  Matrix2 operator-() const { return {-a, -b, -c, -d, unitDet}; }

  Cplx det() const { return a * d - b * c; }
  Cplx trace() const { return a + d; }

  Matrix2 inverse() const {
    Cplx dt = det();
    if (std::abs(dt) == 0.0)
      throw std::runtime_error("Matrix2::inverse: singular matrix");
    return {d / dt, -b / dt, -c / dt, a / dt, false};
  }

  double maxAbs() const {
    return std::max(std::max(std::abs(a), std::abs(b)),
                    std::max(std::abs(c), std::abs(d)));
  }

  bool finite() const {
    auto ok = [](const Cplx& z) {
      return std::isfinite(z.real()) && std::isfinite(z.imag());
    };
    return ok(a) && ok(b) && ok(c) && ok(d);
  }

  // Scale to determinant one.  Either square root of det works; callers
  // that care about the sign compare through projective_distance instead.
  Matrix2 detNormalized() const {
    Cplx s = std::sqrt(det());
    if (std::abs(s) == 0.0)
      throw std::runtime_error("Matrix2::detNormalized: singular matrix");
    return {a / s, b / s, c / s, d / s, true};
  }
};

inline double max_abs_diff(const Matrix2& x, const Matrix2& y) {
  return std::max(std::max(std::abs(x.a - y.a), std::abs(x.b - y.b)),
                  std::max(std::abs(x.c - y.c), std::abs(x.d - y.d)));
}

// Distance in PGL(2,C): both arguments are brought to determinant one and
// compared up to the residual sign ambiguity.
inline double projective_distance(const Matrix2& x, const Matrix2& y) {
  Matrix2 xn = x.unitDet ? x : x.detNormalized();
  Matrix2 yn = y.unitDet ? y : y.detNormalized();
  return std::min(max_abs_diff(xn, yn), max_abs_diff(xn, -yn));
}

inline bool projective_match(const Matrix2& x, const Matrix2& y, double tol) {
  return projective_distance(x, y) <= tol;
}

// Order of the image in PGL(2,C); 0 means the cap was exceeded.
inline int projective_order(const Matrix2& m, double tol = 1e-6,
                            int cap = 400) {
  Matrix2 mn = m.detNormalized();
  Matrix2 acc = mn;
  Matrix2 id = Matrix2::identity();
  for (int k = 1; k <= cap; ++k) {
    if (projective_match(acc, id, tol)) return k;
    if (!acc.finite()) return 0;
    acc = acc * mn;
  }
  return 0;
}

/* ------------------------------------------------------------------ */
/*  configuration and report types                                    */
/* ------------------------------------------------------------------ */

struct MonodromyConfig {
  double integrationTol = 1e-12;  // local truncation error per step
  double matchTol = 1e-6;         // projective identification tolerance
  double rootResidual = 1e-12;    // acceptance bound for singular locations
  std::size_t closureCap = 400;   // closure sizes beyond this mean "infinite"
  int taylorTerms = 40;           // series length per step
  double stepFactor = 0.35;       // step <= this fraction of the distance
                                  // to the nearest singular point
  double clearanceFactor = 0.45;  // keyhole radius as a fraction of the
                                  // nearest-neighbour distance
  int circleChords = 16;          // polygon sides approximating each circle
  std::optional<double> basepointReal;  // override the automatic basepoint
};

struct LoopPath {
  Cplx basepoint{0.0};
  std::vector<Cplx> waypoints;  // closed: front() == back() == basepoint
};

// The exception requested when two closure elements land between the match
// tolerance and ten times it: the answer would depend on the tie-break, so
// the caller should rerun with tighter integration instead.
struct PrecisionEscalationRequired : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct MonodromyReport {
  // Finite singular points sorted by (Re, Im); generators[i] is the loop
  // around singularities[i], and generators.back() is the point at
  // infinity, reconstructed as the inverse of the ordered finite product.
  std::vector<Cplx> singularities;
  std::vector<Matrix2> generators;
  std::vector<int> projectiveOrders;   // one per generator, 0 = undetermined
  std::vector<std::size_t> productOrder;  // traversal order of the finite
                                          // generators in the full-turn
                                          // relation (indices into the above)
  GroupTag group;
  std::size_t closureSize = 0;
  std::map<int, std::size_t> closureOrderCounts;  // element order -> count
  double maxResidual = 0.0;    // worst Wronskian defect over all loops
  double productDefect = 0.0;  // ordered product vs an independently
                               // integrated full circle
  Cplx basepoint{0.0};
  MonodromyConfig config;
};

/* ------------------------------------------------------------------ */
/*  singular locations                                                */
/* ------------------------------------------------------------------ */

inline std::vector<Cplx> singular_locations_numeric(
    const Polynomial<Rational>& p, double residualTol = 1e-12) {
  if (p.is_zero())
    throw std::invalid_argument("singular_locations_numeric: zero polynomial");
  if (p.degree() == 0) return {};
  auto rr = find_roots(p.complex_coefficients());
  if (rr.maxResidual > residualTol)
    throw std::runtime_error(
        "singular_locations_numeric: root residual " +
        std::to_string(rr.maxResidual) + " exceeds the acceptance bound");
  std::sort(rr.roots.begin(), rr.roots.end(), [](const Cplx& x, const Cplx& y) {
    if (x.real() != y.real()) return x.real() < y.real();
    return x.imag() < y.imag();
  });
  return rr.roots;
}

// Finite singular points of u'' + A u' + B u = 0: the roots of the reduced
// denominators.  Multiplicities are stripped exactly before the numeric
// solve, so the residual bound applies to simple roots only.
inline std::vector<Cplx> operator_singularities_numeric(
    const RationalOperator& op, double residualTol = 1e-12) {
  Polynomial<Rational> den = op.A.den() * op.B.den();
  if (den.degree() <= 0) return {};
  return singular_locations_numeric(squarefree_part(den), residualTol);
}

/* ------------------------------------------------------------------ */
/*  loop construction                                                 */
/* ------------------------------------------------------------------ */

namespace detail {

inline double nearest_neighbour(const std::vector<Cplx>& pts, std::size_t i) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < pts.size(); ++j)
    if (j != i) best = std::min(best, std::abs(pts[j] - pts[i]));
  return best;
}

// Protective radius around each singular point that straight path segments
// must not enter.
inline double protect_radius(const std::vector<Cplx>& pts, std::size_t i,
                             const MonodromyConfig& cfg) {
  double nn = nearest_neighbour(pts, i);
  if (!std::isfinite(nn)) nn = 1.0;  // lone singularity
  return cfg.clearanceFactor * nn;
}

inline double dist_to_segment(const Cplx& p, const Cplx& a, const Cplx& b) {
  Cplx ab = b - a;
  double len2 = std::norm(ab);
  if (len2 == 0.0) return std::abs(p - a);
  double t = ((p - a) * std::conj(ab)).real() / len2;
  t = std::clamp(t, 0.0, 1.0);
  return std::abs(p - (a + t * ab));
}

// Append the polyline from a to b (excluding a itself), detouring around
// every singular point other than `ignore` whose protective disc the
// straight segment would clip.  The detour replaces the closest approach by
// a vertex pushed out to `altitude` protective radii on the far side of the
// blocking point, then routes both halves recursively.  Loops aimed at more
// distant targets are given larger altitudes so that their tails clear the
// tails of nearer loops instead of crossing them; crossing tails would break
// the full-turn product relation.
inline void route_segment(std::vector<Cplx>& out, const Cplx& a, const Cplx& b,
                          const std::vector<Cplx>& sings,
                          const std::vector<double>& protect,
                          std::ptrdiff_t ignore, double altitude, int depth) {
  if (depth > 12)
    throw std::runtime_error("loop routing: detour recursion exceeded");
  std::ptrdiff_t worst = -1;
  double worstGap = 0.0;
  for (std::size_t j = 0; j < sings.size(); ++j) {
    if (static_cast<std::ptrdiff_t>(j) == ignore) continue;
    double d = dist_to_segment(sings[j], a, b);
    double gap = protect[j] - d;
    if (gap > 1e-12 && gap > worstGap) {
      worstGap = gap;
      worst = static_cast<std::ptrdiff_t>(j);
    }
  }
  if (worst < 0) {
    out.push_back(b);
    return;
  }
  const Cplx s = sings[static_cast<std::size_t>(worst)];
  Cplx ab = b - a;
  double t = ((s - a) * std::conj(ab)).real() / std::norm(ab);
  t = std::clamp(t, 0.05, 0.95);
  Cplx foot = a + t * ab;
  Cplx away = foot - s;
  if (std::abs(away) < 1e-12 * std::max(1.0, std::abs(ab)))
    away = Cplx(0.0, 1.0);  // blocking point dead ahead: pass above
  else
    away /= std::abs(away);
  Cplx vertex = s + altitude * protect[static_cast<std::size_t>(worst)] * away;
  route_segment(out, a, vertex, sings, protect, ignore, altitude, depth + 1);
  route_segment(out, vertex, b, sings, protect, ignore, altitude, depth + 1);
}

inline void append_circle(std::vector<Cplx>& out, const Cplx& center,
                          double radius, const Cplx& start, int chords) {
  double phi0 = std::arg(start - center);
  for (int k = 1; k <= chords; ++k) {
    double phi = phi0 + 2.0 * M_PI * k / chords;
    out.push_back(center + radius * Cplx(std::cos(phi), std::sin(phi)));
  }
  out.back() = start;  // close exactly despite rounding
}

}  // namespace detail

inline Cplx default_basepoint(const std::vector<Cplx>& sings) {
  if (sings.empty()) return Cplx(1.0, 0.0);
  double xmax = sings.front().real();
  for (const auto& s : sings) xmax = std::max(xmax, s.real());
  double spread = 1.0;
  for (const auto& s : sings)
    for (const auto& t : sings) spread = std::max(spread, std::abs(s - t));
  return Cplx(xmax + 0.75 * spread, 0.0);
}

// Keyhole loop around sings[index]: basepoint -> rim of a circle of radius
// clearanceFactor x nearest-neighbour distance -> one full counterclockwise
// turn -> back.  Straight stretches detour around every other singular
// point they would otherwise graze.
inline LoopPath keyhole_loop(const std::vector<Cplx>& sings, std::size_t index,
                             const Cplx& basepoint,
                             const MonodromyConfig& cfg = {}) {
  if (index >= sings.size())
    throw std::invalid_argument("keyhole_loop: index out of range");
  std::vector<double> protect(sings.size());
  for (std::size_t j = 0; j < sings.size(); ++j)
    protect[j] = detail::protect_radius(sings, j, cfg);

  // altitude rank: loops to farther targets detour higher
  std::size_t rank = 0;
  for (std::size_t j = 0; j < sings.size(); ++j)
    if (std::abs(sings[j] - basepoint) < std::abs(sings[index] - basepoint) ||
        (std::abs(sings[j] - basepoint) == std::abs(sings[index] - basepoint) &&
         j < index))
      ++rank;
  double altitude = 1.6 + 0.45 * static_cast<double>(rank);

  const Cplx s = sings[index];
  double r = std::min(protect[index], 0.5 * std::abs(basepoint - s));
  if (r <= 0.0) throw std::runtime_error("keyhole_loop: basepoint too close");

  LoopPath loop;
  loop.basepoint = basepoint;
  loop.waypoints.push_back(basepoint);
  Cplx entry = s + r * (basepoint - s) / std::abs(basepoint - s);
  detail::route_segment(loop.waypoints, basepoint, entry, sings, protect,
                        static_cast<std::ptrdiff_t>(index), altitude, 0);
  detail::append_circle(loop.waypoints, s, r, entry, cfg.circleChords);
  // return leg: the approach vertices again, walked in reverse
  std::vector<Cplx> approach;
  for (const auto& w : loop.waypoints) {
    approach.push_back(w);
    if (w == entry) break;
  }
  for (std::size_t k = approach.size() - 1; k-- > 0;)
    loop.waypoints.push_back(approach[k]);
  return loop;
}

// One counterclockwise turn around every finite singular point, used as the
// independent check on the ordered product of keyhole generators.
inline LoopPath full_circle_loop(const std::vector<Cplx>& sings,
                                 const Cplx& basepoint,
                                 const MonodromyConfig& cfg = {}) {
  if (sings.empty())
    throw std::invalid_argument("full_circle_loop: no singular points");
  Cplx center = 0.0;
  for (const auto& s : sings) center += s;
  center /= static_cast<double>(sings.size());
  double far = 0.0;
  for (const auto& s : sings) far = std::max(far, std::abs(s - center));
  double radius = std::max(1.5 * std::max(far, 0.1),
                           std::abs(basepoint - center) + 0.25);
  Cplx start = center + radius;

  std::vector<double> protect(sings.size());
  for (std::size_t j = 0; j < sings.size(); ++j)
    protect[j] = detail::protect_radius(sings, j, cfg);

  LoopPath loop;
  loop.basepoint = basepoint;
  loop.waypoints.push_back(basepoint);
  detail::route_segment(loop.waypoints, basepoint, start, sings, protect, -1,
                        1.6, 0);
  detail::append_circle(loop.waypoints, center, radius, start,
                        2 * cfg.circleChords);
  std::vector<Cplx> approach;
  for (const auto& w : loop.waypoints) {
    approach.push_back(w);
    if (w == start) break;
  }
  for (std::size_t k = approach.size() - 1; k-- > 0;)
    loop.waypoints.push_back(approach[k]);
  return loop;
}

/* ------------------------------------------------------------------ */
/*  analytic continuation                                             */
/* ------------------------------------------------------------------ */

namespace detail {

// Coefficients of p(z0 + t) in t, by repeated synthetic division.
inline std::vector<Cplx> taylor_shift(std::vector<Cplx> c, const Cplx& z0) {
  if (c.empty()) return c;
  for (std::size_t i = 0; i + 1 < c.size(); ++i)
    for (std::size_t j = c.size() - 1; j-- > i;) c[j] += z0 * c[j + 1];
  return c;
}

// First n coefficients of num/den as a power series; den[0] != 0.
inline std::vector<Cplx> series_divide(const std::vector<Cplx>& num,
                                       const std::vector<Cplx>& den, int n) {
  std::vector<Cplx> s(static_cast<std::size_t>(n), Cplx(0.0));
  if (std::abs(den[0]) == 0.0)
    throw std::runtime_error("series_divide: expansion at a pole");
  for (int k = 0; k < n; ++k) {
    Cplx acc = k < static_cast<int>(num.size()) ? num[static_cast<std::size_t>(k)]
                                                : Cplx(0.0);
    int jmax = std::min<int>(k, static_cast<int>(den.size()) - 1);
    for (int j = 1; j <= jmax; ++j)
      acc -= den[static_cast<std::size_t>(j)] * s[static_cast<std::size_t>(k - j)];
    s[static_cast<std::size_t>(k)] = acc / den[0];
  }
  return s;
}

struct LocalSeries {
  std::vector<Cplx> a, b;  // expansions of A and B in t = z - z0
};

struct ContinuationState {
  std::vector<Cplx> numA, denA, numB, denB;  // global coefficients
  std::vector<Cplx> sings;                   // step-size control
};

inline LocalSeries expand_at(const ContinuationState& st, const Cplx& z0,
                             int terms) {
  LocalSeries ls;
  ls.a = series_divide(taylor_shift(st.numA, z0), taylor_shift(st.denA, z0),
                       terms);
  ls.b = series_divide(taylor_shift(st.numB, z0), taylor_shift(st.denB, z0),
                       terms);
  return ls;
}

// Taylor coefficients of the solution with u(z0) = c0, u'(z0) = c1.  The
// recurrence is the coefficient of t^k in u'' + A u' + B u = 0.
inline std::vector<Cplx> solution_series(const LocalSeries& ls, const Cplx& c0,
                                         const Cplx& c1, int terms) {
  std::vector<Cplx> c(static_cast<std::size_t>(terms), Cplx(0.0));
  c[0] = c0;
  if (terms > 1) c[1] = c1;
  for (int k = 0; k + 2 < terms; ++k) {
    Cplx acc = 0.0;
    for (int j = 0; j <= k; ++j) {
      acc += ls.a[static_cast<std::size_t>(j)] *
             (static_cast<double>(k + 1 - j) * c[static_cast<std::size_t>(k + 1 - j)]);
      acc += ls.b[static_cast<std::size_t>(j)] * c[static_cast<std::size_t>(k - j)];
    }
    c[static_cast<std::size_t>(k + 2)] =
        -acc / (static_cast<double>(k + 2) * static_cast<double>(k + 1));
  }
  return c;
}

struct StepResult {
  Matrix2 transfer;   // (u, u') at z0+h in terms of (u, u') at z0
  Cplx aIntegral;     // integral of A over the step, for Abel's identity
  double tailError;   // truncation estimate, relative to the value scale
};

inline StepResult take_step(const ContinuationState& st, const Cplx& z0,
                            const Cplx& h, int terms) {
  LocalSeries ls = expand_at(st, z0, terms);
  std::vector<Cplx> c1 = solution_series(ls, 1.0, 0.0, terms);
  std::vector<Cplx> c2 = solution_series(ls, 0.0, 1.0, terms);

  auto horner = [&](const std::vector<Cplx>& c) {
    Cplx acc = 0.0;
    for (std::size_t i = c.size(); i-- > 0;) acc = acc * h + c[i];
    return acc;
  };
  auto horner_deriv = [&](const std::vector<Cplx>& c) {
    Cplx acc = 0.0;
    for (std::size_t i = c.size(); i-- > 1;)
      acc = acc * h + static_cast<double>(i) * c[i];
    return acc;
  };

  StepResult out;
  out.transfer = {horner(c1), horner(c2), horner_deriv(c1), horner_deriv(c2),
                  false};

  Cplx ai = 0.0;
  Cplx hk = h;
  for (std::size_t j = 0; j < ls.a.size(); ++j) {
    ai += ls.a[j] * hk / static_cast<double>(j + 1);
    hk *= h;
  }
  out.aIntegral = ai;

  double scale = std::max(1.0, out.transfer.maxAbs());
  double tail = 0.0;
  double habs = std::abs(h);
  for (std::size_t i = c1.size() - 3; i < c1.size(); ++i) {
    double hp = std::pow(habs, static_cast<double>(i));
    tail = std::max(tail, std::abs(c1[i]) * hp);
    tail = std::max(tail, std::abs(c2[i]) * hp);
    tail = std::max(tail, static_cast<double>(i) * std::abs(c1[i]) * hp / habs);
    tail = std::max(tail, static_cast<double>(i) * std::abs(c2[i]) * hp / habs);
  }
  out.tailError = tail / scale;
  return out;
}

struct ContinuationResult {
  Matrix2 transfer;
  double wronskianDefect = 0.0;  // |det T - exp(-int A)| after the full path
};

inline ContinuationResult continue_along(const ContinuationState& st,
                                         const LoopPath& path,
                                         const MonodromyConfig& cfg) {
  if (path.waypoints.size() < 2)
    throw std::invalid_argument("analytic_continue: empty path");
  Matrix2 total = Matrix2::identity();
  Cplx aTotal = 0.0;

  for (std::size_t seg = 0; seg + 1 < path.waypoints.size(); ++seg) {
    Cplx z = path.waypoints[seg];
    const Cplx target = path.waypoints[seg + 1];
    double remaining = std::abs(target - z);
    if (remaining == 0.0) continue;
    Cplx dir = (target - z) / remaining;

    int guard = 0;
    while (remaining > 1e-14) {
      if (++guard > 100000)
        throw std::runtime_error("analytic_continue: step count exceeded");
      double nearest = std::numeric_limits<double>::infinity();
      for (const auto& s : st.sings) nearest = std::min(nearest, std::abs(z - s));
      double hmag = std::min(remaining, cfg.stepFactor * nearest);
      if (!(hmag > 0.0))
        throw std::runtime_error("analytic_continue: path touches a singular point");

      StepResult sr;
      int halvings = 0;
      for (;;) {
        sr = take_step(st, z, hmag * dir, cfg.taylorTerms);
        if (sr.tailError <= cfg.integrationTol || hmag <= 1e-13) break;
        hmag *= 0.5;
        if (++halvings > 60)
          throw std::runtime_error(
              "analytic_continue: step size underflow near a singular point");
      }
      if (!sr.transfer.finite())
        throw std::runtime_error("analytic_continue: non-finite values");
      total = sr.transfer * total;
      aTotal += sr.aIntegral;
      z += hmag * dir;
      remaining = std::abs(target - z);
    }
  }

  ContinuationResult res;
  res.transfer = total;
  Cplx expected = std::exp(-aTotal);
  res.wronskianDefect =
      std::abs(total.det() - expected) / std::max(1.0, std::abs(expected));
  return res;
}

inline ContinuationState make_state(const RationalOperator& op,
                                    double rootResidual) {
  ContinuationState st;
  st.numA = op.A.num().complex_coefficients();
  st.denA = op.A.den().complex_coefficients();
  st.numB = op.B.num().complex_coefficients();
  st.denB = op.B.den().complex_coefficients();
  st.sings = operator_singularities_numeric(op, rootResidual);
  return st;
}

}  // namespace detail

// Transfer matrix of one circuit of `path`: the continued solution's value
// vector (u, u') at the basepoint equals the matrix times the original one.
// Continuation along a concatenation multiplies matrices left of earlier
// ones, i.e. T(first then second) = T(second) * T(first).
inline Matrix2 analytic_continue(const RationalOperator& op,
                                 const LoopPath& path,
                                 const MonodromyConfig& cfg = {}) {
  auto st = detail::make_state(op, cfg.rootResidual);
  return detail::continue_along(st, path, cfg).transfer;
}

inline Matrix2 analytic_continue(const RationalOperator& op,
                                 const LoopPath& path, double tol) {
  MonodromyConfig cfg;
  cfg.integrationTol = tol;
  return analytic_continue(op, path, cfg);
}

/* ------------------------------------------------------------------ */
/*  projective closure                                                */
/* ------------------------------------------------------------------ */

struct ClosureResult {
  std::vector<Matrix2> elements;  // det-normalized, one per +-pair
  bool overflowed = false;
};

// Breadth-first closure of the generated group in PGL(2,C).  Members are
// det-normalized and identified up to sign with matchTol; a candidate whose
// best distance to the list falls between matchTol and 10x matchTol is
// ambiguous and triggers a precision escalation request.  Inverses are not
// seeded: in a finite group every inverse is a power, and a closure that
// never terminates hits the cap anyway.
inline ClosureResult projective_closure(const std::vector<Matrix2>& seeds,
                                        const MonodromyConfig& cfg = {}) {
  ClosureResult res;
  res.elements.push_back(Matrix2::identity().detNormalized());

  auto locate = [&](const Matrix2& m) -> std::ptrdiff_t {
    double best = std::numeric_limits<double>::infinity();
    std::ptrdiff_t at = -1;
    double mt = std::abs(m.trace());
    for (std::size_t i = 0; i < res.elements.size(); ++i) {
      // cheap trace screen: matching matrices have |trace| within 2 tol
      if (std::abs(std::abs(res.elements[i].trace()) - mt) > 25.0 * cfg.matchTol)
        continue;
      double d = projective_distance(res.elements[i], m);
      if (d < best) {
        best = d;
        at = static_cast<std::ptrdiff_t>(i);
      }
    }
    if (best <= cfg.matchTol) return at;
    if (best <= 10.0 * cfg.matchTol)
      throw PrecisionEscalationRequired(
          "projective closure: element distance " + std::to_string(best) +
          " is inside the ambiguity band; rerun with tighter integration");
    return -1;
  };

  std::vector<Matrix2> queue;
  for (const auto& g : seeds) {
    if (!g.finite()) {
      res.overflowed = true;
      return res;
    }
    Matrix2 gn = g.detNormalized();
    if (locate(gn) < 0) {
      res.elements.push_back(gn);
      queue.push_back(gn);
    }
  }

  while (!queue.empty()) {
    Matrix2 m = queue.back();
    queue.pop_back();
    std::size_t snapshot = res.elements.size();
    for (std::size_t i = 0; i < snapshot; ++i) {
      for (Matrix2 prod : {m * res.elements[i], res.elements[i] * m}) {
        if (!prod.finite()) {
          res.overflowed = true;
          return res;
        }
        Matrix2 pn = prod.detNormalized();
        if (locate(pn) < 0) {
          res.elements.push_back(pn);
          queue.push_back(pn);
          if (res.elements.size() > cfg.closureCap) {
            res.overflowed = true;
            return res;
          }
        }
      }
    }
  }
  return res;
}

// Re-verify the closure axioms after construction; cheap for the group
// sizes we recognize and a strong guard against tolerance accidents.
inline bool closure_is_group(const std::vector<Matrix2>& elements,
                             double matchTol) {
  auto member = [&](const Matrix2& m) {
    for (const auto& e : elements)
      if (projective_match(e, m, matchTol)) return true;
    return false;
  };
  for (const auto& e : elements)
    if (!member(e.inverse())) return false;
  for (const auto& x : elements)
    for (const auto& y : elements)
      if (!member(x * y)) return false;
  return true;
}

/* ------------------------------------------------------------------ */
/*  recognition                                                       */
/* ------------------------------------------------------------------ */

// Element orders of a finite closure, as order -> count.
inline std::map<int, std::size_t> closure_order_counts(
    const std::vector<Matrix2>& elements, double matchTol, int cap = 400) {
  std::map<int, std::size_t> counts;
  for (const auto& e : elements) ++counts[projective_order(e, matchTol, cap)];
  return counts;
}

// A finite subgroup of PGL(2,C) is cyclic, dihedral, or one of the three
// polyhedral groups.  Cyclic and dihedral are recognized structurally from
// the maximal element order; the polyhedral groups additionally check the
// full element-order multiset, which is what separates a genuine S4 from an
// A4 closure that happened to miss elements.
inline GroupTag recognize_group(const std::vector<Matrix2>& elements,
                                const std::map<int, std::size_t>& orderCounts) {
  std::size_t n = elements.size();
  if (n == 0) return {};
  if (orderCounts.count(0)) return {};  // an element order hit the cap

  int maxOrder = 0;
  for (const auto& [ord, cnt] : orderCounts) maxOrder = std::max(maxOrder, ord);

  if (static_cast<std::size_t>(maxOrder) == n)
    return cyclic_group(static_cast<int>(n));
  if (n % 2 == 0 && static_cast<std::size_t>(maxOrder) == n / 2 && n >= 4)
    return dihedral_group(static_cast<int>(n / 2));

  auto ordersWithin = [&](std::initializer_list<int> allowed) {
    for (const auto& [ord, cnt] : orderCounts) {
      (void)cnt;
      bool ok = false;
      for (int a : allowed) ok = ok || (ord == a);
      if (!ok) return false;
    }
    return true;
  };
  if (n == 12 && ordersWithin({1, 2, 3})) return tetrahedral_group();
  if (n == 24 && ordersWithin({1, 2, 3, 4}) && orderCounts.count(4))
    return octahedral_group();
  if (n == 60 && ordersWithin({1, 2, 3, 5}) && orderCounts.count(5))
    return icosahedral_group();
  return {};  // InfiniteOrUndetermined
}

/* ------------------------------------------------------------------ */
/*  the full monodromy computation                                    */
/* ------------------------------------------------------------------ */

namespace detail {

// All traversal orders of the finite generators are compared against the
// independently integrated full circle; the best one is the full-turn
// relation.  The search is factorial but n is the number of singular
// points of one operator, three or four in practice.
inline std::pair<std::vector<std::size_t>, double> best_product_order(
    const std::vector<Matrix2>& gens, const Matrix2& circle) {
  std::vector<std::size_t> idx(gens.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  if (gens.size() > 7)
    return {idx, std::numeric_limits<double>::infinity()};

  std::vector<std::size_t> best = idx;
  double bestDefect = std::numeric_limits<double>::infinity();
  std::sort(idx.begin(), idx.end());
  do {
    // traversal order idx[0], idx[1], ...; matrices compose on the left
    Matrix2 prod = Matrix2::identity();
    for (std::size_t k : idx) prod = gens[k] * prod;
    double defect =
        max_abs_diff(prod, circle) / std::max(1.0, circle.maxAbs());
    if (defect < bestDefect) {
      bestDefect = defect;
      best = idx;
    }
  } while (std::next_permutation(idx.begin(), idx.end()));
  return {best, bestDefect};
}

}  // namespace detail

inline MonodromyReport monodromy_group(const RationalOperator& op,
                                       const MonodromyConfig& cfg = {}) {
  MonodromyReport rep;
  rep.config = cfg;

  auto st = detail::make_state(op, cfg.rootResidual);
  rep.singularities = st.sings;

  if (st.sings.empty()) {
    // no finite singular points: the equation is globally holomorphic and
    // the monodromy is trivial
    rep.group = cyclic_group(1);
    rep.closureSize = 1;
    rep.basepoint = cfg.basepointReal ? Cplx(*cfg.basepointReal, 0.0)
                                      : Cplx(0.0, 0.0);
    rep.closureOrderCounts[1] = 1;
    return rep;
  }

  Cplx p = cfg.basepointReal ? Cplx(*cfg.basepointReal, 0.0)
                             : default_basepoint(st.sings);
  for (const auto& s : st.sings)
    if (std::abs(p - s) < 1e-9)
      throw std::invalid_argument("monodromy_group: basepoint occupied by a singular point");
  rep.basepoint = p;

  std::vector<Matrix2> finiteGens;
  for (std::size_t i = 0; i < st.sings.size(); ++i) {
    LoopPath loop = keyhole_loop(st.sings, i, p, cfg);
    auto cr = detail::continue_along(st, loop, cfg);
    rep.maxResidual = std::max(rep.maxResidual, cr.wronskianDefect);
    finiteGens.push_back(cr.transfer);
  }

  LoopPath circle = full_circle_loop(st.sings, p, cfg);
  auto circleRes = detail::continue_along(st, circle, cfg);
  rep.maxResidual = std::max(rep.maxResidual, circleRes.wronskianDefect);

  auto [order, defect] =
      detail::best_product_order(finiteGens, circleRes.transfer);
  rep.productOrder = order;
  rep.productDefect = defect;

  Matrix2 prod = Matrix2::identity();
  for (std::size_t k : order) prod = finiteGens[k] * prod;
  Matrix2 gInf = prod.inverse();

  rep.generators = finiteGens;
  rep.generators.push_back(gInf);
  for (const auto& g : rep.generators)
    rep.projectiveOrders.push_back(
        projective_order(g, cfg.matchTol, static_cast<int>(cfg.closureCap)));

  auto closure = projective_closure(rep.generators, cfg);
  rep.closureSize = closure.elements.size();
  if (closure.overflowed) {
    rep.group = GroupTag{};  // InfiniteOrUndetermined
    return rep;
  }
  rep.closureOrderCounts = closure_order_counts(
      closure.elements, cfg.matchTol, static_cast<int>(cfg.closureCap));
  rep.group = recognize_group(closure.elements, rep.closureOrderCounts);
  if (rep.group.kind != GroupTag::Kind::InfiniteOrUndetermined &&
      !closure_is_group(closure.elements, 10.0 * cfg.matchTol))
    throw std::runtime_error("monodromy_group: closure failed re-verification");
  return rep;
}

// Monodromy of the pulled-back operator on the elliptic curve: the loops
// that lift closed to the double cover are the words of even length in the
// branch-point generators, so the group is generated by the pairwise
// products.  The quotient by the resulting normal subgroup has order 1 or 2.
inline MonodromyReport even_subgroup(const MonodromyReport& rep) {
  const auto& g = rep.generators;
  if (g.size() < 2)
    throw std::invalid_argument("even_subgroup: need at least two generators");

  MonodromyReport out;
  out.singularities = rep.singularities;
  out.basepoint = rep.basepoint;
  out.config = rep.config;
  out.maxResidual = rep.maxResidual;      // inherited from the integrations
  out.productDefect = rep.productDefect;  // no product relation of its own

  for (std::size_t i = 0; i < g.size(); ++i)
    for (std::size_t j = 0; j < g.size(); ++j)
      if (i != j) out.generators.push_back(g[i] * g[j]);
  for (const auto& m : out.generators)
    out.projectiveOrders.push_back(projective_order(
        m, rep.config.matchTol, static_cast<int>(rep.config.closureCap)));

  auto closure = projective_closure(out.generators, rep.config);
  out.closureSize = closure.elements.size();
  if (closure.overflowed) {
    out.group = GroupTag{};
    return out;
  }
  out.closureOrderCounts =
      closure_order_counts(closure.elements, rep.config.matchTol,
                           static_cast<int>(rep.config.closureCap));
  out.group = recognize_group(closure.elements, out.closureOrderCounts);
  return out;
}

}  // namespace lamemono
