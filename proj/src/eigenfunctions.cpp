#include "pointspec/eigenfunctions.hpp"

#include <cmath>
#include <memory>

#include "pointspec/detail/closed_form.hpp"

namespace pointspec {

namespace {

using detail::PiecewiseExp;

struct Primitives {
  Complex g0[2]{}, g1[2]{}, g0c[2]{}, g1c[2]{};  // (G*q_j)(0), (G'*q_j)(0), conj variants
  Complex bil[2][2]{};                           // (q_i, G*q_j)
};

Primitives compute_primitives(const SpectralParameter& sp, const PotentialDescriptor& q1,
                              const PotentialDescriptor& q2, double tol) {
  Primitives p;
  const PotentialDescriptor* qs[2] = {&q1, &q2};
  const auto conj_desc = [](const PotentialDescriptor& q) -> PotentialDescriptor {
    if (const auto* b = std::get_if<BoxOddSign>(&q)) {
      BoxOddSign c = *b;
      c.Z = std::conj(c.Z);
      return c;
    }
    if (const auto* e = std::get_if<ExpEven>(&q)) {
      ExpEven c = *e;
      c.c = std::conj(c.c);
      return c;
    }
    if (const auto* s = std::get_if<Sampled>(&q)) {
      Sampled c = *s;
      for (auto& v : c.values) v = std::conj(v);
      return c;
    }
    return q;
  };
  for (int j = 0; j < 2; ++j) {
    p.g0[j] = conv_G_q(sp, *qs[j], 0.0, tol).value;
    p.g1[j] = conv_Gprime_q(sp, *qs[j], 0.0, tol).value;
    const PotentialDescriptor qc = conj_desc(*qs[j]);
    p.g0c[j] = conv_G_q(sp, qc, 0.0, tol).value;
    p.g1c[j] = conv_Gprime_q(sp, qc, 0.0, tol).value;
  }
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) p.bil[i][j] = bilinear(sp, *qs[i], *qs[j], tol).value;
  return p;
}

/// Evaluator for c_conv * (G*q) + c_g * G + c_gp * G'; closed pieces when the
/// potential is catalog, per-point quadrature otherwise.
std::function<Complex(double)> make_evaluator(const SpectralParameter& sp,
                                              const PotentialDescriptor& q,
                                              Complex c_conv, Complex c_g, Complex c_gp,
                                              double tol) {
  const Complex k = sp.k;
  if (detail::is_catalog(q)) {
    auto pieces = std::make_shared<PiecewiseExp<Complex>>();
    PiecewiseExp<Complex> total;
    if (!is_zero_potential(q) && c_conv != Complex(0))
      total = detail::scale(detail::conv_G_pieces<Complex>(k, q), c_conv);
    if (c_g != Complex(0))
      total = detail::add(total, detail::scale(detail::green_pieces<Complex>(k), c_g));
    if (c_gp != Complex(0))
      total = detail::add(total,
                          detail::scale(detail::green_prime_pieces<Complex>(k), c_gp));
    *pieces = std::move(total);
    return [pieces](double x) { return detail::eval(*pieces, x); };
  }
  const PotentialDescriptor qcopy = q;
  return [sp, qcopy, c_conv, c_g, c_gp, tol](double x) {
    Complex v = c_conv * conv_G_q(sp, qcopy, x, tol).value;
    if (c_g != Complex(0)) v += c_g * green_kernel(sp, x);
    if (c_gp != Complex(0)) v += c_gp * green_kernel_derivative(sp, x);
    return v;
  };
}

double tail_decay(const SpectralParameter& sp, const PotentialDescriptor& q) {
  const double imk = sp.k.imag();
  const double mu = potential_decay_rate(q);
  return std::isfinite(mu) ? std::min(imk, mu) : imk;
}

}  // namespace

std::pair<Eigenfunction, Eigenfunction> basis_general(const SpectralParameter& sp,
                                                      const PotentialDescriptor& q1,
                                                      const PotentialDescriptor& q2,
                                                      double tol) {
  const Complex k = sp.k;
  const Complex two_ik = Complex(0, 2) * k;
  const Complex two_i_over_k = Complex(0, 2) / k;
  const Primitives p = compute_primitives(sp, q1, q2, tol);

  Eigenfunction u;
  u.kind = EigenfunctionKind::general_u;
  u.at = sp;
  u.fr0 = 1;
  u.fs0 = -two_i_over_k * p.g1[0];
  u.dfr0 = 0;
  u.dfs0 = two_ik * (1.0 + p.g0[0]);
  u.gamma0 = {Complex(1), Complex(0)};
  // (q_i, u) with u = -(G*q1) - 2ik[1+g01] G + (2i/k) g11 G'
  //   (q_i, G) = (G*q_i^*)(0),  (q_i, G') = -(G'*q_i^*)(0)
  const Complex q1u =
      -p.bil[0][0] - two_ik * (1.0 + p.g0[0]) * p.g0c[0] - two_i_over_k * p.g1[0] * p.g1c[0];
  const Complex q2u =
      -p.bil[1][0] - two_ik * (1.0 + p.g0[0]) * p.g0c[1] - two_i_over_k * p.g1[0] * p.g1c[1];
  u.gamma1 = {u.dfs0 - q1u, u.fs0 - q2u};
  u.support_hint = std::max(support_radius(q1), support_radius(q2));
  u.decay_rate = tail_decay(sp, q1);
  u.evaluate =
      make_evaluator(sp, q1, Complex(-1), -two_ik * (1.0 + p.g0[0]), two_i_over_k * p.g1[0], tol);

  Eigenfunction v;
  v.kind = EigenfunctionKind::general_v;
  v.at = sp;
  v.fr0 = 0;
  v.fs0 = two_i_over_k * (1.0 - p.g1[1]);
  v.dfr0 = -1;
  v.dfs0 = two_ik * p.g0[1];
  v.gamma0 = {Complex(0), Complex(1)};
  const Complex q1v = -p.bil[0][1] - two_ik * p.g0[1] * p.g0c[0] +
                      two_i_over_k * (1.0 - p.g1[1]) * p.g1c[0];
  const Complex q2v = -p.bil[1][1] - two_ik * p.g0[1] * p.g0c[1] +
                      two_i_over_k * (1.0 - p.g1[1]) * p.g1c[1];
  v.gamma1 = {v.dfs0 - q1v, v.fs0 - q2v};
  v.support_hint = u.support_hint;
  v.decay_rate = tail_decay(sp, q2);
  v.evaluate = make_evaluator(sp, q2, Complex(-1), -two_ik * p.g0[1],
                              -two_i_over_k * (1.0 - p.g1[1]), tol);
  return {std::move(u), std::move(v)};
}

Eigenfunction u_delta(const SpectralParameter& sp, const PotentialDescriptor& q,
                      double tol) {
  const Complex k = sp.k;
  const Complex two_ik = Complex(0, 2) * k;
  const Complex g0 = conv_G_q(sp, q, 0.0, tol).value;
  const Complex g1 = conv_Gprime_q(sp, q, 0.0, tol).value;

  Eigenfunction u;
  u.kind = EigenfunctionKind::delta_u;
  u.at = sp;
  u.fr0 = 1;
  u.fs0 = 0;
  u.dfr0 = -g1;
  u.dfs0 = two_ik * (1.0 + g0);
  u.gamma0 = {Complex(1), g1};
  // Gamma1 in the reduced (q1=q, q2=0) sense: (f_s'(0) - (q,f), f_s(0))
  const Complex qGq = bilinear(sp, q, q, tol).value;
  PotentialDescriptor qc = q;
  if (auto* b = std::get_if<BoxOddSign>(&qc)) b->Z = std::conj(b->Z);
  if (auto* e = std::get_if<ExpEven>(&qc)) e->c = std::conj(e->c);
  if (auto* s = std::get_if<Sampled>(&qc))
    for (auto& vv : s->values) vv = std::conj(vv);
  const Complex g0c = conv_G_q(sp, qc, 0.0, tol).value;
  const Complex qu = -qGq - two_ik * (1.0 + g0) * g0c;
  u.gamma1 = {u.dfs0 - qu, Complex(0)};
  u.support_hint = support_radius(q);
  u.decay_rate = tail_decay(sp, q);
  u.evaluate = make_evaluator(sp, q, Complex(-1), -two_ik * (1.0 + g0), Complex(0), tol);
  return u;
}

WaveCoefficients wave_coefficients(const SpectralParameter& sp,
                                   const PotentialDescriptor& q, double x, double tol) {
  const Complex k = sp.k;
  const Complex pref = Complex(0, 0.5) / k;  // i/2k
  const Complex ik = Complex(0, 1) * k;
  const double inf = std::numeric_limits<double>::infinity();
  WaveCoefficients w;
  w.A = 1.0 + pref * potential_exp_integral(sp, q, 0, inf, ik, tol).value -
        pref * potential_exp_integral(sp, q, 0, x, -ik, tol).value;
  w.B = -pref * potential_exp_integral(sp, q, x, inf, ik, tol).value;
  w.C = -pref * potential_exp_integral(sp, q, -inf, x, -ik, tol).value;
  w.D = 1.0 + pref * potential_exp_integral(sp, q, -inf, 0, -ik, tol).value -
        pref * potential_exp_integral(sp, q, x, 0, ik, tol).value;
  return w;
}

Eigenfunction embedded_box_eigenfunction(double Z, double rho, double k0) {
  const double crit = Z * (1.0 - std::cos(k0 * rho)) - k0 * k0;
  if (std::abs(crit) > 1e-10 * std::max(1.0, k0 * k0))
    throw CriterionViolatedError(
        "Z (1 - cos k0 rho) = k0^2 fails: residual " + std::to_string(crit));
  Eigenfunction u;
  u.kind = EigenfunctionKind::embedded_box;
  u.at = param_from_k(Complex(std::abs(k0), 0));
  u.fr0 = Z * (1.0 - std::cos(k0 * rho)) / (k0 * k0);  // = 1 by the criterion
  u.fs0 = 0;
  u.dfr0 = 0;
  u.dfs0 = 2.0 * Z * std::sin(k0 * rho) / k0;
  u.gamma0 = {u.fr0, Complex(0)};
  u.support_hint = rho;
  u.decay_rate = std::numeric_limits<double>::infinity();
  u.evaluate = [Z, rho, k0](double x) -> Complex {
    const double ax = std::abs(x);
    if (ax > rho) return 0;
    const double v = Z * (1.0 - std::cos(k0 * (rho - ax))) / (k0 * k0);
    if (ax == rho) return 0.5 * v;
    return v;
  };
  return u;
}

Eigenfunction exp_even_eigenfunction(Complex c, double mu, const SpectralParameter& sp) {
  const Complex denom = mu * mu + sp.lambda;
  if (std::abs(denom) < 1e-12 * (1.0 + mu * mu + std::abs(sp.lambda)))
    throw PoleError("lambda = -mu^2 is a pole of the exponential-model eigenfunction");
  const Complex coef = 1.0 - c / denom;
  const Complex qcoef = c / denom;
  Eigenfunction u;
  u.kind = EigenfunctionKind::exp_even;
  u.at = sp;
  u.fr0 = coef + qcoef;  // = 1
  u.fs0 = 0;
  u.dfr0 = 0;
  u.dfs0 = coef * Complex(0, 2) * sp.k - 2.0 * mu * qcoef;
  u.gamma0 = {u.fr0, Complex(0)};
  u.support_hint = 0;
  u.decay_rate = std::min(sp.k.imag(), mu);
  const Complex k = sp.k;
  u.evaluate = [coef, qcoef, k, mu](double x) {
    const double ax = std::abs(x);
    return coef * std::exp(Complex(0, 1) * k * ax) + qcoef * std::exp(-mu * ax);
  };
  return u;
}

double norm_squared(const Eigenfunction& f, double L, double tol) {
  const double imk = f.at.k.imag();
  const bool compact = std::isinf(f.decay_rate);
  if (!compact && !(f.decay_rate > 0))
    throw ValidationError("norm_squared needs Im k > 0 (square-integrable case)");
  if (L <= 0) {
    L = compact ? f.support_hint
                : std::max(f.support_hint + 1.0, 30.0 / f.decay_rate);
  }
  const auto f2 = [&](double x) -> Complex { return std::norm(f(x)); };
  std::vector<double> kinks = {0.0};
  if (f.support_hint > 0 && f.support_hint < L) {
    kinks.push_back(f.support_hint);
    kinks.push_back(-f.support_hint);
  }
  const auto r = detail::adaptive_integrate(f2, -L, L, tol, kinks);
  double total = r.value.real();
  if (!compact && imk > 0) {
    // plane-wave tails: |f(+-L)|^2 e^{-2 Im k (x - L)}
    total += (std::norm(f(L)) + std::norm(f(-L))) / (2.0 * imk);
  }
  return total;
}

}  // namespace pointspec
