#pragma once

// Piecewise (polynomial of degree <= 5) * exponential functions on the real
// line, closed under sums, products, convolution with the half-plane Green
// kernel, pointwise evaluation and integration. All catalog potentials and
// everything derived from them (G*q, G'*q, bilinear forms, Weyl functions)
// live in this algebra, so the "closed form" evaluation path is exact up to
// rounding. Templated on the scalar so the same code runs on plain complex
// numbers or on dual numbers carrying d/dk. The polynomial factors appear
// only where a potential rate resonates with +-ik (k near i*mu), where the
// kernel split is expanded to fifth order instead of dividing by the
// vanishing rate difference.

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <vector>

#include "pointspec/detail/dual.hpp"
#include "pointspec/errors.hpp"

namespace pointspec::detail {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

inline constexpr int kMaxPolyDeg = 5;

template <class S>
struct ExpTerm {
  std::array<S, kMaxPolyDeg + 1> c{};  // sum_n c[n] x^n
  S rate{};
  int deg = 0;
};

template <class S>
ExpTerm<S> make_term(S coef, S rate) {
  ExpTerm<S> t;
  t.c[0] = coef;
  t.rate = rate;
  return t;
}

template <class S>
struct Piece {
  double lo = 0, hi = 0;  // lo may be -inf, hi may be +inf
  std::vector<ExpTerm<S>> terms;
};

template <class S>
struct PiecewiseExp {
  std::vector<Piece<S>> pieces;  // disjoint, ascending; gaps are zero

  bool empty() const { return pieces.empty(); }
};

// ---------------------------------------------------------------------------
// Integral primitives
// ---------------------------------------------------------------------------

/// J_m(d, w) = int_0^d t^m e^{w t} dt, m <= kMaxPolyDeg, d >= 0.
template <class S>
S poly_exp_J(int m, double d, const S& w) {
  const double wd_mag = magnitude(w) * d;
  if (wd_mag <= 0.5) {
    // sum_j w^j d^{m+j+1} / (j! (m+j+1))
    S sum = S(0.0);
    S pw = S(1.0);  // w^j / j!
    double dp = std::pow(d, m + 1);
    for (int j = 0; j < 30; ++j) {
      const S term = pw * S(dp / (m + j + 1));
      sum = sum + term;
      if (magnitude(term) <= 1e-18 * (magnitude(sum) + 1e-300)) break;
      pw = pw * w / S(double(j + 1));
      dp *= d;
    }
    return sum;
  }
  const S ewd = exp(w * S(d));
  S J = (ewd - S(1.0)) / w;  // J_0
  double dm = 1.0;
  for (int mm = 1; mm <= m; ++mm) {
    dm *= d;
    J = (S(dm) * ewd - S(double(mm)) * J) / w;
  }
  return J;
}

inline double binom6(int n, int m) {
  static const double tbl[6][6] = {{1, 0, 0, 0, 0, 0},  {1, 1, 0, 0, 0, 0},
                                   {1, 2, 1, 0, 0, 0},  {1, 3, 3, 1, 0, 0},
                                   {1, 4, 6, 4, 1, 0},  {1, 5, 10, 10, 5, 1}};
  return tbl[n][m];
}

/// int_a^b x^n e^{w x} dx on a finite interval, anchored at the endpoint
/// where |e^{w x}| is largest so the remainder stays bounded.
template <class S>
S poly_exp_integral_finite(int n, double a, double b, const S& w) {
  const double d = b - a;
  if (!(d > 0)) return S(0.0);
  const Complex wv = value_of(w);
  S result = S(0.0);
  if (wv.real() * b < wv.real() * a) {
    // anchor at a: x = a + t
    for (int m = 0; m <= n; ++m)
      result = result + S(binom6(n, m) * std::pow(a, n - m)) * poly_exp_J(m, d, w);
    return exp(w * S(a)) * result;
  }
  // anchor at b: x = b - t (rate flips, polynomial signs alternate)
  const S wneg = S(0.0) - w;
  for (int m = 0; m <= n; ++m) {
    const double sgn = (m % 2 == 0) ? 1.0 : -1.0;
    result = result + S(sgn * binom6(n, m) * std::pow(b, n - m)) * poly_exp_J(m, d, wneg);
  }
  return exp(w * S(b)) * result;
}

/// int_a^inf x^n e^{w x} dx, requires Re w < 0.
template <class S>
S poly_exp_integral_right_tail(int n, double a, const S& w) {
  if (!(value_of(w).real() < 0))
    throw QuadratureError("nonintegrable exponential tail on [a, inf)");
  // e^{wa} sum_m binom(n,m) a^{n-m} m! / (-w)^{m+1}
  const S mw = S(0.0) - w;
  S pw = S(1.0) / mw;
  double fact = 1.0;
  S result = S(0.0);
  for (int m = 0; m <= n; ++m) {
    if (m > 0) {
      fact *= m;
      pw = pw / mw;
    }
    result = result + S(binom6(n, m) * std::pow(a, n - m) * fact) * pw;
  }
  return exp(w * S(a)) * result;
}

/// int_-inf^b x^n e^{w x} dx, requires Re w > 0.
template <class S>
S poly_exp_integral_left_tail(int n, double b, const S& w) {
  if (!(value_of(w).real() > 0))
    throw QuadratureError("nonintegrable exponential tail on (-inf, b]");
  // e^{wb} sum_m binom(n,m) b^{n-m} (-1)^m m! / w^{m+1}
  S pw = S(1.0) / w;
  double fact = 1.0;
  S result = S(0.0);
  for (int m = 0; m <= n; ++m) {
    if (m > 0) {
      fact *= m;
      pw = pw / w;
    }
    const double sgn = (m % 2 == 0) ? 1.0 : -1.0;
    result = result + S(sgn * binom6(n, m) * std::pow(b, n - m) * fact) * pw;
  }
  return exp(w * S(b)) * result;
}

template <class S>
S integrate_term(const ExpTerm<S>& t, double lo, double hi) {
  S sum = S(0.0);
  for (int n = 0; n <= t.deg; ++n) {
    if (exactly_zero(t.c[n])) continue;
    S part;
    if (lo == -kInf && hi == kInf)
      throw QuadratureError("doubly infinite exponential piece");
    else if (lo == -kInf)
      part = poly_exp_integral_left_tail(n, hi, t.rate);
    else if (hi == kInf)
      part = poly_exp_integral_right_tail(n, lo, t.rate);
    else
      part = poly_exp_integral_finite(n, lo, hi, t.rate);
    sum = sum + t.c[n] * part;
  }
  return sum;
}

template <class S>
S integrate(const PiecewiseExp<S>& f) {
  S sum = S(0.0);
  for (const auto& p : f.pieces)
    for (const auto& t : p.terms) sum = sum + integrate_term(t, p.lo, p.hi);
  return sum;
}

/// Integral of f(x) e^{rate x} over [lo, hi] (bounds may be infinite).
template <class S>
S integrate_clipped(const PiecewiseExp<S>& f, double lo, double hi, const S& rate) {
  S sum = S(0.0);
  for (const auto& p : f.pieces) {
    const double a = std::max(p.lo, lo);
    const double b = std::min(p.hi, hi);
    if (!(a < b)) continue;
    for (auto t : p.terms) {
      t.rate = t.rate + rate;
      sum = sum + integrate_term(t, a, b);
    }
  }
  return sum;
}

// ---------------------------------------------------------------------------
// Evaluation
// ---------------------------------------------------------------------------

template <class S>
S eval_piece(const Piece<S>& p, double x) {
  S sum = S(0.0);
  for (const auto& t : p.terms) {
    S poly = t.c[t.deg];
    for (int n = t.deg - 1; n >= 0; --n) poly = poly * S(x) + t.c[n];
    sum = sum + poly * exp(t.rate * S(x));
  }
  return sum;
}

/// Pointwise value; at a breakpoint the mean of the one-sided limits.
template <class S>
S eval(const PiecewiseExp<S>& f, double x) {
  S left{}, right{};
  bool on_left = false, on_right = false;
  for (const auto& p : f.pieces) {
    if (p.lo < x && x < p.hi) return eval_piece(p, x);
    if (x == p.hi && p.hi != kInf) {
      left = eval_piece(p, x);
      on_left = true;
    }
    if (x == p.lo && p.lo != -kInf) {
      right = eval_piece(p, x);
      on_right = true;
    }
  }
  if (on_left || on_right) return (left + right) * S(0.5);
  return S(0.0);
}

// ---------------------------------------------------------------------------
// Sum, scaling, product
// ---------------------------------------------------------------------------

inline std::vector<std::pair<double, double>> cut_cells(std::vector<double> cuts) {
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  std::vector<std::pair<double, double>> cells;
  if (cuts.empty()) {
    cells.emplace_back(-kInf, kInf);
    return cells;
  }
  cells.emplace_back(-kInf, cuts.front());
  for (size_t i = 0; i + 1 < cuts.size(); ++i) cells.emplace_back(cuts[i], cuts[i + 1]);
  cells.emplace_back(cuts.back(), kInf);
  return cells;
}

template <class S>
void collect_cuts(const PiecewiseExp<S>& f, std::vector<double>& cuts) {
  for (const auto& p : f.pieces) {
    if (p.lo != -kInf) cuts.push_back(p.lo);
    if (p.hi != kInf) cuts.push_back(p.hi);
  }
}

template <class S>
const Piece<S>* covering_piece(const PiecewiseExp<S>& f, double lo, double hi) {
  for (const auto& p : f.pieces)
    if (p.lo <= lo && hi <= p.hi) return &p;
  return nullptr;
}

template <class S>
PiecewiseExp<S> scale(PiecewiseExp<S> f, const S& s) {
  for (auto& p : f.pieces)
    for (auto& t : p.terms)
      for (int i = 0; i <= t.deg; ++i) t.c[i] = t.c[i] * s;
  return f;
}

template <class S>
PiecewiseExp<S> add(const PiecewiseExp<S>& A, const PiecewiseExp<S>& B) {
  std::vector<double> cuts;
  collect_cuts(A, cuts);
  collect_cuts(B, cuts);
  PiecewiseExp<S> out;
  for (const auto& [lo, hi] : cut_cells(std::move(cuts))) {
    if (!(lo < hi)) continue;
    Piece<S> sum;
    sum.lo = lo;
    sum.hi = hi;
    if (const Piece<S>* pa = covering_piece(A, lo, hi))
      sum.terms.insert(sum.terms.end(), pa->terms.begin(), pa->terms.end());
    if (const Piece<S>* pb = covering_piece(B, lo, hi))
      sum.terms.insert(sum.terms.end(), pb->terms.begin(), pb->terms.end());
    if (!sum.terms.empty()) out.pieces.push_back(std::move(sum));
  }
  return out;
}

template <class S>
PiecewiseExp<S> multiply(const PiecewiseExp<S>& A, const PiecewiseExp<S>& B) {
  std::vector<double> cuts;
  collect_cuts(A, cuts);
  collect_cuts(B, cuts);
  PiecewiseExp<S> out;
  for (const auto& [lo, hi] : cut_cells(std::move(cuts))) {
    if (!(lo < hi)) continue;
    const Piece<S>* pa = covering_piece(A, lo, hi);
    const Piece<S>* pb = covering_piece(B, lo, hi);
    if (!pa || !pb) continue;
    Piece<S> prod;
    prod.lo = lo;
    prod.hi = hi;
    for (const auto& ta : pa->terms)
      for (const auto& tb : pb->terms) {
        ExpTerm<S> t;
        t.rate = ta.rate + tb.rate;
        t.deg = ta.deg + tb.deg;
        if (t.deg > kMaxPolyDeg)
          throw std::logic_error("piecewise-exp degree overflow");
        for (int i = 0; i <= ta.deg; ++i)
          for (int j = 0; j <= tb.deg; ++j) t.c[i + j] = t.c[i + j] + ta.c[i] * tb.c[j];
        prod.terms.push_back(t);
      }
    if (!prod.terms.empty()) out.pieces.push_back(std::move(prod));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Convolution with the half-plane kernel
//   K(y) = CL e^{i k y} (y > 0),  CR e^{-i k y} (y < 0).
// G uses CL = CR = i/2k; G' uses CL = -1/2, CR = +1/2. Result breakpoints
// coincide with the potential's; the kernel kink s = x is resolved
// analytically inside the matching cell. Rates resonant with +-ik produce
// the polynomial factors instead of a vanishing denominator.
// ---------------------------------------------------------------------------

/// Fifth-order expansion of int_anchor^x e^{w s} ds as a polynomial-times-
/// e^{0*x}-side contribution: sum_{j=0..4} w^j (x^{j+1} - anchor^{j+1}) / (j+1)!.
/// Exact through the first k-derivative when w only vanishes to first order.
template <class S>
ExpTerm<S> resonant_split_term(const S& outer_coef, const S& outer_rate, const S& w,
                               double anchor, double sign) {
  ExpTerm<S> t;
  t.rate = outer_rate;
  t.deg = kMaxPolyDeg;
  S wj = S(sign);  // sign * w^j / (j+1)!
  double aj = anchor;
  S const_part = S(0.0);
  for (int j = 0; j + 1 <= kMaxPolyDeg; ++j) {
    t.c[j + 1] = outer_coef * wj;
    const_part = const_part - wj * S(aj);  // aj = anchor^{j+1}
    aj *= anchor;
    wj = wj * w / S(double(j + 2));
  }
  t.c[0] = outer_coef * const_part;
  return t;
}

template <class S>
PiecewiseExp<S> convolve_kernel(const PiecewiseExp<S>& q, const S& k, const S& CL,
                                const S& CR) {
  const S ik = S(Complex(0, 1)) * k;
  std::vector<double> cuts;
  collect_cuts(q, cuts);

  // Resonance window for the split rates r -+ ik. Inside it the in-cell
  // kernel split is expanded polynomially (exact value and first derivative
  // at an exact zero); outside it plain division is well conditioned. The
  // integration anchor is always a finite piece bound: the infinite-side
  // rates carry a strictly positive real decay and cannot vanish.
  const auto resonant = [](const S& w) { return magnitude(w) < 4e-5; };

  PiecewiseExp<S> out;
  for (const auto& [xlo, xhi] : cut_cells(std::move(cuts))) {
    if (!(xlo < xhi)) continue;
    Piece<S> res;
    res.lo = xlo;
    res.hi = xhi;
    for (const auto& qp : q.pieces) {
      for (const auto& qt : qp.terms) {
        if (qt.deg != 0) throw std::logic_error("convolution input must be degree 0");
        const S c = qt.c[0];
        const S r = qt.rate;
        if (qp.hi <= xlo) {
          // piece entirely to the left of the cell: kernel CL e^{ik(x-s)}
          ExpTerm<S> t;
          t.rate = ik;
          t.c[0] = CL * c * integrate_term(make_term(S(1.0), r - ik), qp.lo, qp.hi);
          res.terms.push_back(t);
        } else if (qp.lo >= xhi) {
          ExpTerm<S> t;
          t.rate = S(0.0) - ik;
          t.c[0] = CR * c * integrate_term(make_term(S(1.0), r + ik), qp.lo, qp.hi);
          res.terms.push_back(t);
        } else if (qp.lo <= xlo && xhi <= qp.hi) {
          // the cell sits inside this piece: split the kernel at s = x
          const S w1 = r - ik;  // left half int_{lo}^x, attaches e^{ikx}
          if (qp.lo == -kInf) {
            if (!(value_of(w1).real() > 0))
              throw QuadratureError("nonintegrable potential tail in convolution");
            ExpTerm<S> t;  // int_{-inf}^x e^{w1 s} ds = e^{w1 x}/w1
            t.rate = r;
            t.c[0] = CL * c / w1;
            res.terms.push_back(t);
          } else if (resonant(w1)) {
            res.terms.push_back(resonant_split_term(CL * c, ik, w1, qp.lo, 1.0));
          } else {
            ExpTerm<S> t1;
            t1.rate = r;
            t1.c[0] = CL * c / w1;
            res.terms.push_back(t1);
            ExpTerm<S> t2;
            t2.rate = ik;
            t2.c[0] = S(0.0) - CL * c * exp(w1 * S(qp.lo)) / w1;
            res.terms.push_back(t2);
          }
          const S w2 = r + ik;  // right half int_x^{hi}, attaches e^{-ikx}
          if (qp.hi == kInf) {
            if (!(value_of(w2).real() < 0))
              throw QuadratureError("nonintegrable potential tail in convolution");
            ExpTerm<S> t;  // int_x^inf e^{w2 s} ds = -e^{w2 x}/w2
            t.rate = r;
            t.c[0] = S(0.0) - CR * c / w2;
            res.terms.push_back(t);
          } else if (resonant(w2)) {
            res.terms.push_back(resonant_split_term(CR * c, S(0.0) - ik, w2, qp.hi, -1.0));
          } else {
            ExpTerm<S> t1;
            t1.rate = r;
            t1.c[0] = S(0.0) - CR * c / w2;
            res.terms.push_back(t1);
            ExpTerm<S> t2;
            t2.rate = S(0.0) - ik;
            t2.c[0] = CR * c * exp(w2 * S(qp.hi)) / w2;
            res.terms.push_back(t2);
          }
        }
      }
    }
    if (!res.terms.empty()) out.pieces.push_back(std::move(res));
  }
  return out;
}

}  // namespace pointspec::detail
