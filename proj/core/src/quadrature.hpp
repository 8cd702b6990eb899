#pragma once

#include <algorithm>
#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <queue>
#include <string>
#include <vector>

#include "liddi/errors.hpp"

namespace liddi::detail {

template <class T>
struct QuadResult {
  T value{};
  double error = 0;
  double l1 = 0;
  bool converged = false;
};

struct QuadOptions {
  double rel_tol = 1e-10;
  double abs_tol = 0;
  // Relative tolerance is measured against max(|I|, l1_floor * L1) so that
  // integrals that cancel to nearly zero still terminate.
  double l1_floor = 1e-2;
  int max_intervals = 4000;
};

// Globally adaptive Gauss-Kronrod (7/15) over the pieces [pts[k], pts[k+1]].
// Bisection order depends only on the integrand, so results are deterministic.
template <class T, class F>
QuadResult<T> integrate(F&& f, const std::vector<double>& pts, const QuadOptions& opt = {}) {
  using GK = boost::math::quadrature::gauss_kronrod<double, 15>;
  using GL = boost::math::quadrature::gauss<double, 7>;
  static const auto& xk = GK::abscissa();
  static const auto& wk = GK::weights();
  static const auto& wg = GL::weights();

  struct Piece {
    double a, b;
    T value;
    double err, l1;
    bool operator<(const Piece& o) const {
      return err != o.err ? err < o.err : a > o.a;
    }
  };

  auto eval = [&](double a, double b) {
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    const T f0 = f(c);
    T k = wk[0] * f0;
    T g = wg[0] * f0;
    double l1 = wk[0] * std::abs(f0);
    for (std::size_t i = 1; i < xk.size(); ++i) {
      const T fp = f(c + h * xk[i]);
      const T fm = f(c - h * xk[i]);
      k += wk[i] * (fp + fm);
      l1 += wk[i] * (std::abs(fp) + std::abs(fm));
      if (i % 2 == 0) g += wg[i / 2] * (fp + fm);
    }
    return Piece{a, b, k * h, std::abs((k - g) * h), l1 * std::abs(h)};
  };

  std::priority_queue<Piece> heap;
  QuadResult<T> r;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    if (!(pts[i + 1] > pts[i])) continue;
    auto p = eval(pts[i], pts[i + 1]);
    r.value += p.value;
    r.error += p.err;
    r.l1 += p.l1;
    heap.push(p);
  }
  auto target = [&] {
    return std::max(opt.abs_tol, opt.rel_tol * std::max(std::abs(r.value), opt.l1_floor * r.l1));
  };
  int count = static_cast<int>(heap.size());
  while (!heap.empty() && r.error > target() && count < opt.max_intervals) {
    Piece p = heap.top();
    heap.pop();
    const double m = 0.5 * (p.a + p.b);
    if (!(m > p.a && m < p.b)) break;  // interval exhausted at machine precision
    auto lo = eval(p.a, m), hi = eval(m, p.b);
    r.value += lo.value + hi.value - p.value;
    r.error += lo.err + hi.err - p.err;
    r.l1 += lo.l1 + hi.l1 - p.l1;
    heap.push(lo);
    heap.push(hi);
    ++count;
  }
  // Re-sum from the leaves to shed the drift of incremental updates.
  T total{};
  double err = 0, l1 = 0;
  std::vector<Piece> leaves;
  leaves.reserve(heap.size());
  while (!heap.empty()) {
    leaves.push_back(heap.top());
    heap.pop();
  }
  std::sort(leaves.begin(), leaves.end(), [](const Piece& x, const Piece& y) { return x.a < y.a; });
  for (const auto& p : leaves) {
    total += p.value;
    err += p.err;
    l1 += p.l1;
  }
  r.value = total;
  r.error = err;
  r.l1 = l1;
  r.converged = r.error <= target();
  return r;
}

template <class T, class F>
T integrate_or_throw(F&& f, const std::vector<double>& pts, const QuadOptions& opt,
                     const char* what) {
  auto r = integrate<T>(std::forward<F>(f), pts, opt);
  if (!r.converged)
    throw QuadratureFailure(std::string(what) + ": adaptive quadrature did not reach tolerance");
  return r.value;
}

}  // namespace liddi::detail
