#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

namespace lamemono {

using Cplx = std::complex<double>;

inline Cplx poly_eval(const std::vector<Cplx>& c, const Cplx& z) {
  Cplx acc = 0.0;
  for (std::size_t i = c.size(); i-- > 0;) acc = acc * z + c[i];
  return acc;
}

inline Cplx poly_eval_derivative(const std::vector<Cplx>& c, const Cplx& z) {
  Cplx acc = 0.0;
  for (std::size_t i = c.size(); i-- > 1;)
    acc = acc * z + c[i] * static_cast<double>(i);
  return acc;
}

struct RootSolveResult {
  std::vector<Cplx> roots;
  double maxResidual = 0.0;  // relative backward error, max over roots
  int iterations = 0;
};

/* All complex roots by Aberth-Ehrlich simultaneous iteration with a spiral
 * of initial guesses, then a few Newton polish steps per root.  Coefficients
 * lowest degree first.  Residuals are relative to sum |a_i| |z|^i, so 1e-12
 * is achievable for simple roots at any scale. */
inline RootSolveResult find_roots(std::vector<Cplx> coeff) {
  while (!coeff.empty() && std::abs(coeff.back()) == 0.0) coeff.pop_back();
  if (coeff.size() <= 1)
    throw std::invalid_argument("find_roots: polynomial has no roots");

  RootSolveResult out;
  /* Exact zero roots come off first; they would otherwise stall the
   * iteration at the origin. */
  std::size_t zeros = 0;
  while (zeros < coeff.size() - 1 && std::abs(coeff[zeros]) == 0.0) ++zeros;
  for (std::size_t i = 0; i < zeros; ++i) out.roots.push_back(0.0);
  coeff.erase(coeff.begin(), coeff.begin() + static_cast<long>(zeros));

  const std::size_t n = coeff.size() - 1;
  if (n == 0) return out;
  const Cplx lead = coeff.back();
  for (Cplx& c : coeff) c /= lead;

  /* Fujiwara's bound scales with the coefficients instead of just taking
   * their maximum; the plain Cauchy bound can be so large that evaluating a
   * degree-n polynomial on the guess circle overflows to inf and the whole
   * iteration silently fills with NaN. */
  double outer = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double a = std::abs(coeff[i]);
    if (i == 0) a *= 0.5;
    if (a > 0.0)
      outer = std::max(outer, std::pow(a, 1.0 / static_cast<double>(n - i)));
  }
  outer = 2.0 * outer + 1e-12;
  /* Same bound on the reversed polynomial gives a lower bound on |root|. */
  double rev = 0.0;
  for (std::size_t i = 1; i <= n; ++i) {
    double a = std::abs(coeff[i] / coeff[0]);
    if (i == n) a *= 0.5;
    if (a > 0.0) rev = std::max(rev, std::pow(a, 1.0 / static_cast<double>(i)));
  }
  double inner = (rev > 0.0) ? 1.0 / (2.0 * rev) : 0.5 * outer;
  inner = std::min(inner, outer);

  std::vector<Cplx> z(n);
  for (std::size_t j = 0; j < n; ++j) {
    double t = (n == 1) ? 0.5 : static_cast<double>(j) / (n - 1);
    double r = inner + (outer - inner) * (0.15 + 0.7 * t);
    double ang = 2.0 * M_PI * j / n + 0.7436;  // irrational-ish offset, avoids axes
    z[j] = std::polar(r, ang);
  }
  auto reseed = [&](std::size_t i, int round) {
    double ang = 2.399963 * (round + 1) + 2.0 * M_PI * i / n;
    double r = inner + (outer - inner) * (0.2 + 0.6 * ((i + round) % 5) / 4.0);
    z[i] = std::polar(r, ang);
  };

  const int maxIter = 300;
  int it = 0;
  for (; it < maxIter; ++it) {
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      Cplx p = poly_eval(coeff, z[i]);
      Cplx dp = poly_eval_derivative(coeff, z[i]);
      if (!std::isfinite(std::abs(p)) || !std::isfinite(std::abs(dp))) {
        reseed(i, it);
        worst = 1.0;
        continue;
      }
      if (std::abs(dp) == 0.0) {
        z[i] += 1e-8 * (1.0 + std::abs(z[i]));
        worst = 1.0;
        continue;
      }
      Cplx ratio = p / dp;
      Cplx sum = 0.0;
      for (std::size_t j = 0; j < n; ++j)
        if (j != i) sum += 1.0 / (z[i] - z[j]);
      Cplx w = ratio / (1.0 - ratio * sum);
      double step = std::abs(w);
      if (!std::isfinite(step)) {
        reseed(i, it);
        worst = 1.0;
        continue;
      }
      z[i] -= w;
      worst = std::max(worst, step / (1.0 + std::abs(z[i])));
    }
    if (worst < 1e-15) break;
  }
  out.iterations = it;

  /* Newton polish; keep the best iterate rather than the last. */
  for (std::size_t i = 0; i < n; ++i) {
    Cplx best = z[i];
    double bestAbs = std::abs(poly_eval(coeff, best));
    Cplx cur = best;
    for (int k = 0; k < 6; ++k) {
      Cplx dp = poly_eval_derivative(coeff, cur);
      if (std::abs(dp) == 0.0) break;
      cur -= poly_eval(coeff, cur) / dp;
      double a = std::abs(poly_eval(coeff, cur));
      if (a < bestAbs) {
        bestAbs = a;
        best = cur;
      }
    }
    z[i] = best;
  }

  for (std::size_t i = 0; i < n; ++i) {
    double scale = 0.0, zp = 1.0;
    for (std::size_t k = 0; k < coeff.size(); ++k) {
      scale += std::abs(coeff[k]) * zp;
      zp *= std::abs(z[i]);
    }
    double rel = std::abs(poly_eval(coeff, z[i])) / std::max(scale, 1e-300);
    if (!std::isfinite(rel)) rel = std::numeric_limits<double>::infinity();
    out.maxResidual = std::max(out.maxResidual, rel);
    out.roots.push_back(z[i]);
  }
  std::sort(out.roots.begin(), out.roots.end(), [](const Cplx& a, const Cplx& b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  return out;
}

/* Group numerically coincident roots: returns (representative, count) pairs
 * with representatives averaged over each cluster.  Only trustworthy when
 * the clusters are separated by much more than the radius. */
inline std::vector<std::pair<Cplx, int>> cluster_roots(
    const std::vector<Cplx>& roots, double radius = 1e-6) {
  std::vector<std::pair<Cplx, int>> out;
  std::vector<bool> used(roots.size(), false);
  for (std::size_t i = 0; i < roots.size(); ++i) {
    if (used[i]) continue;
    Cplx sum = roots[i];
    int cnt = 1;
    used[i] = true;
    for (std::size_t j = i + 1; j < roots.size(); ++j) {
      if (!used[j] && std::abs(roots[j] - roots[i]) < radius) {
        used[j] = true;
        sum += roots[j];
        ++cnt;
      }
    }
    out.emplace_back(sum / static_cast<double>(cnt), cnt);
  }
  return out;
}

}  // namespace lamemono
