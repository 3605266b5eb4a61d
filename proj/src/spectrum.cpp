#include "pointspec/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <functional>

namespace pointspec {

namespace {

constexpr double kPi = 3.14159265358979323846;

double radical_inverse(int base, int i) {
  double f = 1.0, r = 0.0;
  while (i > 0) {
    f /= base;
    r += f * (i % base);
    i /= base;
  }
  return r;
}

double model_scale(const ModelSpec& model) {
  if (const auto* d = std::get_if<DeltaModel>(&model)) return 1.0 + std::abs(d->a);
  return 1.0 + std::get<GeneralModel>(model).T.frobenius_norm();
}

// ---------------------------------------------------------------------------
// Argument-principle machinery
// ---------------------------------------------------------------------------

using CFun = std::function<Complex(Complex)>;

struct Rect {
  double x0, x1, y0, y1;
  double width() const { return x1 - x0; }
  double height() const { return y1 - y0; }
  double diag() const { return std::hypot(width(), height()); }
  Complex center() const { return {0.5 * (x0 + x1), 0.5 * (y0 + y1)}; }
  bool contains(Complex z, double slack) const {
    return z.real() >= x0 - slack && z.real() <= x1 + slack && z.imag() >= y0 - slack &&
           z.imag() <= y1 + slack;
  }
};

class WindingCounter {
 public:
  explicit WindingCounter(const CFun& f) : f_(f) {}

  int operator()(const Rect& r) const {
    const Complex c00(r.x0, r.y0), c10(r.x1, r.y0), c11(r.x1, r.y1), c01(r.x0, r.y1);
    double total = 0;
    total += edge(c00, c10);
    total += edge(c10, c11);
    total += edge(c11, c01);
    total += edge(c01, c00);
    const double turns = total / (2 * kPi);
    const int m = int(std::lround(turns));
    if (std::abs(turns - m) > 0.25)
      throw ContourThroughZeroError("winding number did not settle on an integer");
    return m;
  }

 private:
  double edge(Complex za, Complex zb) const {
    return phase(za, eval(za), zb, eval(zb), 0);
  }

  Complex eval(Complex z) const {
    const Complex v = f_(z);
    if (std::abs(v) < 1e-280)
      throw ContourThroughZeroError("characteristic value vanished on the contour");
    return v;
  }

  double phase(Complex za, Complex fa, Complex zb, Complex fb, int depth) const {
    const Complex zm = 0.5 * (za + zb);
    if (zm == za || zm == zb)  // ran out of floating-point resolution
      throw ContourThroughZeroError("phase tracking exhausted resolution");
    const Complex fm = eval(zm);
    const double d1 = std::arg(fm / fa);
    const double d2 = std::arg(fb / fm);
    // Accept once the half-steps are small, the refined sum agrees with the
    // one-panel estimate (a mismatch is a whole turn missed at this level),
    // and the modulus stays tame across the panel: fast hidden rotations come
    // with modulus swings for the characteristic functions at hand.
    if (depth >= 3 && std::abs(d1) < kPi / 2 && std::abs(d2) < kPi / 2) {
      const double direct = std::arg(fb / fa);
      const double hi = std::max({std::abs(fa), std::abs(fm), std::abs(fb)});
      const double lo = std::min({std::abs(fa), std::abs(fm), std::abs(fb)});
      if (std::abs(d1 + d2 - direct) < 1.0 && hi <= 4.0 * lo) return d1 + d2;
    }
    if (depth > 48)
      throw ContourThroughZeroError("phase step could not be refined below pi/2");
    return phase(za, fa, zm, fm, depth + 1) + phase(zm, fm, zb, fb, depth + 1);
  }

  const CFun& f_;
};

struct RootCluster {
  Complex k{};
  int multiplicity = 1;
  double residual = 0;
};

struct NewtonResult {
  Complex k{};
  double residual = 0;
  bool converged = false;
};

NewtonResult newton_polish(const CFun& f, const CFun& df, Complex k0, double char_tol) {
  NewtonResult res;
  Complex k = k0;
  for (int it = 0; it < 50; ++it) {
    const Complex fk = f(k);
    if (!(std::abs(fk) < 1e280)) break;
    const Complex dfk = df(k);
    if (std::abs(dfk) == 0) break;
    const Complex step = fk / dfk;
    k -= step;
    if (k.imag() <= 0) k = Complex(k.real(), 1e-14);  // stay in the half-plane
    if (std::abs(step) < 1e-12 * (1.0 + std::abs(k))) {
      res.k = k;
      res.residual = std::abs(f(k));
      res.converged = res.residual < char_tol;
      return res;
    }
  }
  res.k = k;
  res.residual = std::abs(f(k));
  res.converged = false;
  return res;
}

/// Newton on the derivative, for a cluster holding one zero of multiplicity
/// >= 2 (there f' has a simple zero at the same point).
NewtonResult newton_polish_derivative(const CFun& df, Complex k0) {
  Complex k = k0;
  const double h0 = 1e-6;
  for (int it = 0; it < 60; ++it) {
    const Complex dfk = df(k);
    const double h = h0 * (1.0 + std::abs(k));
    const Complex d2fk = (df(k + h) - df(k - h)) / (2 * h);
    if (std::abs(d2fk) == 0) break;
    const Complex step = dfk / d2fk;
    k -= step;
    if (k.imag() <= 0) k = Complex(k.real(), 1e-14);
    if (std::abs(step) < 1e-12 * (1.0 + std::abs(k))) return {k, std::abs(dfk), true};
  }
  return {k, std::abs(df(k)), false};
}

std::vector<RootCluster> find_zeros(const CFun& f, const CFun& df, Rect region,
                                    double char_tol) {
  const WindingCounter winding(f);

  int outer = 0;
  for (int attempt = 0;; ++attempt) {
    try {
      outer = winding(region);
      break;
    } catch (const ContourThroughZeroError&) {
      if (attempt >= 5) throw;
      const double dx = 1e-3 * region.width() * (attempt + 1);
      const double dy = 1e-3 * region.height() * (attempt + 1);
      region = Rect{region.x0 - dx, region.x1 + dx, std::max(region.y0 - dy, 1e-9),
                    region.y1 + dy};
    }
  }

  std::vector<RootCluster> roots;
  std::deque<std::pair<Rect, int>> work;
  if (outer != 0) work.emplace_back(region, outer);

  const double cluster_eps = 1e-6;
  int budget = 20000;
  while (!work.empty()) {
    if (--budget < 0)
      throw ContourThroughZeroError("zero search exceeded its subdivision budget");
    auto [rect, m] = work.front();
    work.pop_front();
    if (m == 0) continue;

    if (m == 1) {
      // the winding certifies exactly one zero inside this rectangle, so a
      // polished point is accepted only if it stayed inside it
      const NewtonResult nr = newton_polish(f, df, rect.center(), char_tol);
      if (nr.converged && rect.contains(nr.k, 1e-9 * rect.diag())) {
        roots.push_back({nr.k, 1, nr.residual});
        continue;
      }
    }
    if (rect.diag() < cluster_eps) {
      NewtonResult nr = m >= 2 ? newton_polish_derivative(df, rect.center())
                               : newton_polish(f, df, rect.center(), char_tol);
      const Complex k = nr.converged && rect.contains(nr.k, 10 * cluster_eps)
                            ? nr.k
                            : rect.center();
      roots.push_back({k, m, std::abs(f(k))});
      continue;
    }

    // split the longer side; retry with shifted cuts if a zero sits on one
    const bool vertical = rect.width() >= rect.height();
    static const double fractions[] = {0.5, 0.501, 0.499, 0.5023, 0.4977, 0.53};
    bool split_done = false;
    for (double t : fractions) {
      Rect a = rect, b = rect;
      if (vertical) {
        const double cut = rect.x0 + t * rect.width();
        a.x1 = cut;
        b.x0 = cut;
      } else {
        const double cut = rect.y0 + t * rect.height();
        a.y1 = cut;
        b.y0 = cut;
      }
      try {
        const int ma = winding(a);
        const int mb = winding(b);
        if (ma + mb != m) continue;  // a zero slipped through the shared edge
        if (ma != 0) work.emplace_back(a, ma);
        if (mb != 0) work.emplace_back(b, mb);
        split_done = true;
        break;
      } catch (const ContourThroughZeroError&) {
        continue;
      }
    }
    if (!split_done)
      throw ContourThroughZeroError("could not subdivide around a boundary zero");
  }
  return roots;
}

// merge clusters that map to the same lambda within 1e-8
std::vector<RootCluster> merge_clusters(std::vector<RootCluster> roots) {
  std::vector<RootCluster> merged;
  for (const auto& r : roots) {
    bool absorbed = false;
    for (auto& m : merged) {
      if (std::abs(r.k * r.k - m.k * m.k) < 1e-8) {
        m.multiplicity += r.multiplicity;
        m.residual = std::max(m.residual, r.residual);
        absorbed = true;
        break;
      }
    }
    if (!absorbed) merged.push_back(r);
  }
  return merged;
}

int rank_2x2(Complex m11, Complex m12, Complex m21, Complex m22) {
  // singular values of a 2x2 block, threshold 1e-8 * sigma_max
  const double g1 = std::norm(m11) + std::norm(m12) + std::norm(m21) + std::norm(m22);
  const double det = std::abs(m11 * m22 - m12 * m21);
  // sigma_max^2 sigma_min^2 = det^2, sigma_max^2 + sigma_min^2 = g1
  const double disc = std::sqrt(std::max(0.0, g1 * g1 - 4 * det * det));
  const double smax2 = 0.5 * (g1 + disc);
  const double smin2 = 0.5 * (g1 - disc);
  const double smax = std::sqrt(std::max(smax2, 0.0));
  const double smin = std::sqrt(std::max(smin2, 0.0));
  int rank = 0;
  if (smax > 0) ++rank;
  if (smin > 1e-8 * smax) ++rank;
  return smax == 0 ? 0 : rank;
}

}  // namespace

namespace detail {

double distance_to_cut(Complex lambda) {
  if (lambda.real() <= 0) return std::abs(lambda);
  return std::abs(lambda.imag());
}

double embedded_beta(const PotentialDescriptor& q, double k, double tol) {
  const double R = support_radius(q);
  const SpectralParameter sp = param_from_k(Complex(k, 0));
  // sin(ks) = Im e^{iks} for real q
  const auto I = potential_exp_integral(sp, q, 0.0, R, Complex(0, k), tol);
  return 1.0 - I.value.imag() / k;
}

}  // namespace detail

Complex char_value(const ModelSpec& model, const SpectralParameter& sp, double tol) {
  if (const auto* d = std::get_if<DeltaModel>(&model))
    return d->a - weyl_scalar(sp, d->q, tol).value;
  const auto& g = std::get<GeneralModel>(model);
  const WeylMatrix W = weyl_matrix(sp, g.q1, g.q2, tol);
  return (g.T.a - W.e11) * (g.T.d - W.e22) - (g.T.b - W.e12) * (g.T.c - W.e21);
}

Complex char_derivative_k(const ModelSpec& model, const SpectralParameter& sp,
                          double tol) {
  using detail::Dual;
  if (const auto* d = std::get_if<DeltaModel>(&model)) {
    if (detail::is_catalog(d->q)) return -detail::weyl_scalar_k_dual(sp.k, d->q).d;
    const double h = 1e-5;
    const double tol_in = std::min(tol, 1e-12);
    const Complex fp = char_value(model, param_from_k(sp.k + h), tol_in);
    const Complex fm = char_value(model, param_from_k(sp.k - h), tol_in);
    return (fp - fm) / (2 * h);
  }
  const auto& g = std::get<GeneralModel>(model);
  if (detail::is_catalog(g.q1) && detail::is_catalog(g.q2)) {
    const auto W = detail::weyl_matrix_k_dual(sp.k, g.q1, g.q2);
    const Dual det = (Dual(g.T.a) - W.e11) * (Dual(g.T.d) - W.e22) -
                     (Dual(g.T.b) - W.e12) * (Dual(g.T.c) - W.e21);
    return det.d;
  }
  const double h = 1e-5;
  const double tol_in = std::min(tol, 1e-12);
  const Complex fp = char_value(model, param_from_k(sp.k + h), tol_in);
  const Complex fm = char_value(model, param_from_k(sp.k - h), tol_in);
  return (fp - fm) / (2 * h);
}

LocalCharRoots local_char_roots(const CouplingMatrix& T) {
  LocalCharRoots out;
  const double scale = 1.0 + T.frobenius_norm();
  const Complex c2 = 2.0 * T.d;
  const Complex c1 = Complex(0, 1) * (T.det() - 4.0);
  const Complex c0 = 2.0 * T.a;
  const double eps = 1e-14 * scale;
  if (std::abs(c2) < eps && std::abs(c1) < eps && std::abs(c0) < eps) {
    out.whole_domain = true;
    return out;
  }
  std::vector<Complex> ks;
  if (std::abs(c2) < eps) {
    if (std::abs(c1) >= eps) ks.push_back(-c0 / c1);
  } else {
    const Complex disc = std::sqrt(c1 * c1 - 4.0 * c2 * c0);
    ks.push_back((-c1 + disc) / (2.0 * c2));
    ks.push_back((-c1 - disc) / (2.0 * c2));
  }
  for (const Complex& k : ks) {
    if (k.imag() <= 1e-14 * (1.0 + std::abs(k))) continue;
    bool dup = false;
    for (const Complex& l : out.lambdas)
      if (std::abs(l - k * k) < 1e-12 * (1.0 + std::abs(l))) dup = true;
    if (!dup) out.lambdas.push_back(k * k);
  }
  std::sort(out.lambdas.begin(), out.lambdas.end(), [](Complex a, Complex b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  return out;
}

std::vector<Eigenvalue> find_eigenvalues(const ModelSpec& model,
                                         const SearchRegion& region, double tol) {
  if (!(region.margin > 0) || region.k_im_min < region.margin ||
      !(region.k_re_min < region.k_re_max) || !(region.k_im_min < region.k_im_max))
    throw ValidationError("invalid search region");

  const double scale = model_scale(model);
  const CFun f = [&](Complex k) { return char_value(model, param_from_k(k), tol); };
  const CFun df = [&](Complex k) {
    return char_derivative_k(model, param_from_k(k), tol);
  };

  // degenerate-family probe on a quasi-random lattice
  bool all_tiny = true;
  for (int i = 1; i <= 25 && all_tiny; ++i) {
    const double x =
        region.k_re_min + radical_inverse(2, i) * (region.k_re_max - region.k_re_min);
    const double y =
        region.k_im_min + radical_inverse(3, i) * (region.k_im_max - region.k_im_min);
    if (std::abs(f(Complex(x, y))) >= 1e-12 * scale) all_tiny = false;
  }
  if (all_tiny)
    throw DegenerateFamilyError(
        "characteristic function vanishes identically on the region");

  const Rect rect{region.k_re_min, region.k_re_max, region.k_im_min, region.k_im_max};
  const double char_tol = std::max(tol, 1e-12) * scale;
  auto clusters = merge_clusters(find_zeros(f, df, rect, char_tol));

  std::vector<Eigenvalue> out;
  for (const auto& c : clusters) {
    Eigenvalue ev;
    ev.k = c.k;
    ev.lambda = c.k * c.k;
    ev.residual = c.residual;
    if (std::holds_alternative<DeltaModel>(model)) {
      ev.geometric_mult = 1;
    } else {
      const auto& g = std::get<GeneralModel>(model);
      const WeylMatrix W = weyl_matrix(param_from_k(c.k), g.q1, g.q2, tol);
      ev.geometric_mult = 2 - rank_2x2(g.T.a - W.e11, g.T.b - W.e12, g.T.c - W.e21,
                                       g.T.d - W.e22);
      if (ev.geometric_mult < 1) ev.geometric_mult = 1;
    }
    double sep = std::numeric_limits<double>::infinity();
    for (const auto& other : clusters)
      if (&other != &c)
        sep = std::min(sep, std::abs(other.k * other.k - ev.lambda));
    const double dcut = detail::distance_to_cut(ev.lambda);
    double radius = std::min({0.45 * sep, 0.45 * dcut, 0.1 * (1.0 + std::abs(ev.lambda))});
    radius = std::max(radius, 1e-5 * (1.0 + std::abs(ev.lambda)));
    ev.algebraic_mult = algebraic_multiplicity(model, ev.lambda, radius, 0.01);
    if (ev.algebraic_mult < ev.geometric_mult) ev.algebraic_mult = ev.geometric_mult;
    out.push_back(ev);
  }
  std::sort(out.begin(), out.end(), [](const Eigenvalue& a, const Eigenvalue& b) {
    if (a.lambda.real() != b.lambda.real()) return a.lambda.real() < b.lambda.real();
    return a.lambda.imag() < b.lambda.imag();
  });
  return out;
}

int algebraic_multiplicity(const ModelSpec& model, Complex lambda0, double radius,
                           double tol) {
  const double dcut = detail::distance_to_cut(lambda0);
  if (dcut == 0)
    throw ValidationError("algebraic multiplicity needs lambda0 off the cut [0, inf)");
  radius = std::min(radius, 0.9 * dcut);
  if (!(radius > 0)) throw ValidationError("algebraic multiplicity needs radius > 0");

  const auto integrand = [&](Complex xi) -> Complex {
    const SpectralParameter sp = k_from_lambda(xi);
    if (const auto* d = std::get_if<DeltaModel>(&model)) {
      const Complex w = weyl_scalar(sp, d->q, 1e-12).value;
      const Complex dw = weyl_derivative(sp, d->q, 1e-12);
      return dw / (w - d->a);
    }
    const auto& g = std::get<GeneralModel>(model);
    const WeylMatrix W = weyl_matrix(sp, g.q1, g.q2, 1e-12);
    const WeylMatrix D = weyl_matrix_derivative(sp, g.q1, g.q2, 1e-12);
    const Complex m11 = W.e11 - g.T.a, m12 = W.e12 - g.T.b;
    const Complex m21 = W.e21 - g.T.c, m22 = W.e22 - g.T.d;
    const Complex det = m11 * m22 - m12 * m21;
    return (D.e11 * m22 - D.e12 * m21 - D.e21 * m12 + D.e22 * m11) / det;
  };

  const auto contour_sum = [&](int n) -> Complex {
    Complex sum = 0;
    for (int j = 0; j < n; ++j) {
      const double th = 2 * kPi * j / n;
      const Complex e = std::exp(Complex(0, th));
      sum += integrand(lambda0 + radius * e) * e;
    }
    return sum * (radius / n);
  };

  Complex prev = contour_sum(256);
  for (int n = 512; n <= 16384; n *= 2) {
    const Complex cur = contour_sum(n);
    if (std::abs(cur - prev) < tol) {
      const double re = cur.real();
      const int ind = int(std::lround(re));
      if (std::abs(cur - Complex(ind, 0)) > 0.05)
        throw NonIntegerIndexError("contour index " + std::to_string(re) +
                                   " is not close to an integer");
      if (ind < 1)
        throw ValidationError("contour index < 1: lambda0 is not an enclosed zero");
      return ind;
    }
    prev = cur;
  }
  throw NonIntegerIndexError("contour index did not converge under node doubling");
}

std::vector<ExceptionalPoint> find_exceptional_points(const PotentialDescriptor& q,
                                                      const SearchRegion& region,
                                                      double tol) {
  if (!(region.margin > 0) || region.k_im_min < region.margin ||
      !(region.k_re_min < region.k_re_max) || !(region.k_im_min < region.k_im_max))
    throw ValidationError("invalid search region");

  const CFun f = [&](Complex k) {
    return weyl_derivative(param_from_k(k), q, tol);
  };
  const CFun df = [&](Complex k) {
    const double h = 1e-6 * (1.0 + std::abs(k));
    return (f(k + h) - f(k - h)) / (2 * h);
  };

  // degenerate probe (not expected for catalog potentials)
  bool all_tiny = true;
  for (int i = 1; i <= 25 && all_tiny; ++i) {
    const double x =
        region.k_re_min + radical_inverse(2, i) * (region.k_re_max - region.k_re_min);
    const double y =
        region.k_im_min + radical_inverse(3, i) * (region.k_im_max - region.k_im_min);
    if (std::abs(f(Complex(x, y))) >= 1e-12) all_tiny = false;
  }
  if (all_tiny)
    throw DegenerateFamilyError("W~' vanishes identically on the region");

  const Rect rect{region.k_re_min, region.k_re_max, region.k_im_min, region.k_im_max};
  auto clusters = merge_clusters(find_zeros(f, df, rect, std::max(tol, 1e-12)));

  std::vector<ExceptionalPoint> out;
  for (const auto& c : clusters) {
    const Complex lambda0 = c.k * c.k;
    if (std::abs(lambda0.imag()) <= 1e-8 * (1.0 + std::abs(lambda0))) continue;
    ExceptionalPoint ep;
    ep.lambda0 = lambda0;
    ep.a = weyl_scalar(param_from_k(c.k), q, tol).value;
    out.push_back(ep);
  }
  std::sort(out.begin(), out.end(), [](const ExceptionalPoint& a, const ExceptionalPoint& b) {
    if (a.lambda0.real() != b.lambda0.real()) return a.lambda0.real() < b.lambda0.real();
    return a.lambda0.imag() < b.lambda0.imag();
  });
  return out;
}

std::vector<SingularityRecord> singularity_scan(const PotentialDescriptor& q,
                                                const std::vector<double>& k_grid,
                                                double tol) {
  std::vector<SingularityRecord> out;
  out.reserve(k_grid.size());
  for (double k : k_grid) {
    if (k == 0) throw ValidationError("singularity scan grid must exclude k = 0");
    SingularityRecord rec;
    rec.lambda = k * k;
    rec.a_plus = weyl_boundary_scalar(k, q, std::min(tol, 1e-10)).value;
    rec.is_singular = std::abs(rec.a_plus.imag()) > tol * (1.0 + std::abs(rec.a_plus));
    out.push_back(rec);
  }
  return out;
}

double singularity_match_distance(const PotentialDescriptor& q, Complex a,
                                  double k_min, double k_max, double tol) {
  if (!(k_min > 0) || !(k_max > k_min))
    throw ValidationError("singularity match needs 0 < k_min < k_max");
  const auto dist = [&](double k) {
    return std::abs(weyl_boundary_scalar(k, q, tol).value - a);
  };
  double best = std::numeric_limits<double>::infinity();
  double best_k = k_min;
  const int n = 400;
  for (int sgn = -1; sgn <= 1; sgn += 2)
    for (int i = 0; i <= n; ++i) {
      const double k = sgn * (k_min + (k_max - k_min) * i / n);
      const double d = dist(k);
      if (d < best) {
        best = d;
        best_k = k;
      }
    }
  const double step = (k_max - k_min) / n;
  double lo = best_k - step, hi = best_k + step;
  if (best_k > 0) lo = std::max(lo, k_min);
  if (best_k < 0) hi = std::min(hi, -k_min);
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
  double f1 = dist(x1), f2 = dist(x2);
  for (int it = 0; it < 80; ++it) {
    if (f1 < f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - gr * (hi - lo);
      f1 = dist(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + gr * (hi - lo);
      f2 = dist(x2);
    }
  }
  return std::min({best, f1, f2});
}

double blowup_ratio(const DeltaModel& model, Complex lambda, double tol) {
  if (lambda.imag() == 0)
    throw ValidationError("blowup ratio needs Im lambda != 0");
  const Complex w = weyl_scalar(k_from_lambda(lambda), model.q, tol).value;
  const double den = std::abs(model.a - w);
  if (den < 1e-300) return std::numeric_limits<double>::infinity();
  return std::abs(w.imag()) / den;
}

std::vector<EmbeddedEigenvalue> embedded_eigenvalues(const PotentialDescriptor& q,
                                                     double k_lo, double k_hi,
                                                     double tol) {
  if (!(k_lo > 0) || !(k_hi > k_lo))
    throw ValidationError("embedded eigenvalue interval must satisfy 0 < k_lo < k_hi");
  // the criterion needs an even, real-valued, compactly supported q
  if (std::holds_alternative<BoxOddSign>(q) || std::holds_alternative<ExpEven>(q) ||
      std::holds_alternative<ZeroPotential>(q))
    throw ValidationError(
        "embedded eigenvalues require an even compactly supported potential");
  if (const auto* s = std::get_if<Sampled>(&q)) {
    const size_t n = s->nodes.size();
    for (size_t i = 0; i < n; ++i) {
      const double xl = s->nodes[i], xr = s->nodes[n - 1 - i];
      if (std::abs(xl + xr) > 1e-12 * (1.0 + std::abs(xl)))
        throw ValidationError("sampled potential is not mirror-symmetric");
      const Complex vl = s->values[i], vr = s->values[n - 1 - i];
      if (std::abs(vl - vr) > 1e-12 * (1.0 + std::abs(vl)) ||
          std::abs(vl.imag()) > 1e-12 * (1.0 + std::abs(vl)))
        throw ValidationError("sampled potential must be even with real values");
    }
  }

  const auto beta = [&](double k) { return detail::embedded_beta(q, k, tol); };

  const int n_grid = 2048;
  std::vector<EmbeddedEigenvalue> out;
  double prev_k = k_lo, prev_b = beta(k_lo);
  for (int i = 1; i <= n_grid; ++i) {
    const double k = k_lo + (k_hi - k_lo) * i / n_grid;
    const double b = beta(k);
    if (prev_b == 0 || b * prev_b < 0) {
      double lo = prev_k, hi = k, blo = prev_b;
      if (prev_b == 0) {
        lo = hi = prev_k;
      } else {
        for (int it = 0; it < 200 && hi - lo > 1e-15 * (1.0 + hi); ++it) {
          const double mid = 0.5 * (lo + hi);
          const double bm = beta(mid);
          if (bm == 0) {
            lo = hi = mid;
            break;
          }
          if (bm * blo < 0) {
            hi = mid;
          } else {
            lo = mid;
            blo = bm;
          }
        }
      }
      double k0 = 0.5 * (lo + hi);
      // secant polish
      double ka = k0 - 1e-7, kb = k0 + 1e-7;
      double fa = beta(ka), fb = beta(kb);
      for (int it = 0; it < 12 && fa != fb; ++it) {
        const double kn = kb - fb * (kb - ka) / (fb - fa);
        if (!std::isfinite(kn) || kn <= 0) break;
        ka = kb;
        fa = fb;
        kb = kn;
        fb = beta(kn);
        if (std::abs(kb - ka) < 1e-15 * (1.0 + std::abs(kb))) break;
      }
      if (std::abs(fb) < std::abs(beta(k0))) k0 = kb;

      bool dup = false;
      for (const auto& e : out)
        if (std::abs(e.k0 - k0) < 1e-9 * (1.0 + k0)) dup = true;
      if (!dup) {
        const Complex a = weyl_boundary_scalar(k0, q, tol).value;
        if (std::abs(a.imag()) > std::max(tol, 1e-8) * (1.0 + std::abs(a)))
          throw NonRealCouplingError(
              "coupling at an embedded eigenvalue came out non-real");
        out.push_back({k0, k0 * k0, a.real()});
      }
    }
    prev_k = k;
    prev_b = b;
  }
  return out;
}

}  // namespace pointspec
