#include "pointspec/weyl.hpp"

#include "pointspec/detail/closed_form.hpp"

namespace pointspec {

namespace detail {

namespace {

template <class S>
S weyl_scalar_closed(const S& k, const PotentialDescriptor& q) {
  const S two_ik = S(Complex(0, 2)) * k;
  if (is_zero_potential(q)) return two_ik;
  const auto qp = potential_pieces<S>(q, false);
  const auto qc = potential_pieces<S>(q, true);
  const S coef = S(Complex(0, 0.5)) / k;
  const auto conv = convolve_kernel(qp, k, coef, coef);
  const auto conv_c = convolve_kernel(qc, k, coef, coef);
  const S g0 = eval(conv, 0.0);
  const S g0c = eval(conv_c, 0.0);
  const S qGq = integrate(multiply(qc, conv));
  return qGq + two_ik * (S(1.0) + g0) * (S(1.0) + g0c);
}

template <class S>
struct WMat {
  S e11, e12, e21, e22;
};

template <class S>
WMat<S> weyl_matrix_closed(const S& k, const PotentialDescriptor& q1,
                           const PotentialDescriptor& q2) {
  const S coefG = S(Complex(0, 0.5)) / k;
  const S two_ik = S(Complex(0, 2)) * k;
  const S two_i_over_k = S(Complex(0, 2)) / k;

  const auto pieces = [&](const PotentialDescriptor& q, bool conj) {
    return potential_pieces<S>(q, conj);
  };
  const auto conv1 = convolve_kernel(pieces(q1, false), k, coefG, coefG);
  const auto conv2 = convolve_kernel(pieces(q2, false), k, coefG, coefG);
  const auto conv1p = convolve_kernel(pieces(q1, false), k, S(-0.5), S(0.5));
  const auto conv2p = convolve_kernel(pieces(q2, false), k, S(-0.5), S(0.5));
  const auto conv1c = convolve_kernel(pieces(q1, true), k, coefG, coefG);
  const auto conv2c = convolve_kernel(pieces(q2, true), k, coefG, coefG);
  const auto conv1pc = convolve_kernel(pieces(q1, true), k, S(-0.5), S(0.5));
  const auto conv2pc = convolve_kernel(pieces(q2, true), k, S(-0.5), S(0.5));

  const S g01 = eval(conv1, 0.0), g02 = eval(conv2, 0.0);
  const S g11 = eval(conv1p, 0.0), g12 = eval(conv2p, 0.0);
  const S g01c = eval(conv1c, 0.0), g02c = eval(conv2c, 0.0);
  const S g11c = eval(conv1pc, 0.0), g12c = eval(conv2pc, 0.0);

  const auto bil = [&](const PotentialDescriptor& qi, const PiecewiseExp<S>& convj) -> S {
    if (is_zero_potential(qi) || convj.empty()) return S(0.0);
    return integrate(multiply(potential_pieces<S>(qi, true), convj));
  };

  WMat<S> W;
  W.e11 = bil(q1, conv1) + two_ik * (S(1.0) + g01c) * (S(1.0) + g01) +
          two_i_over_k * g11c * g11;
  W.e12 = bil(q1, conv2) + two_ik * (S(1.0) + g01c) * g02 -
          two_i_over_k * g11c * (S(1.0) - g12);
  W.e21 = bil(q2, conv1) + two_ik * g02c * (S(1.0) + g01) -
          two_i_over_k * g11 * (S(1.0) - g12c);
  W.e22 = bil(q2, conv2) + two_ik * g02c * g02 +
          two_i_over_k * (S(1.0) - g12c) * (S(1.0) - g12);
  return W;
}

}  // namespace

Dual weyl_scalar_k_dual(Complex k, const PotentialDescriptor& q) {
  return weyl_scalar_closed<Dual>(Dual::seed(k), q);
}

WeylMatrixDual weyl_matrix_k_dual(Complex k, const PotentialDescriptor& q1,
                                  const PotentialDescriptor& q2) {
  const auto W = weyl_matrix_closed<Dual>(Dual::seed(k), q1, q2);
  return {W.e11, W.e12, W.e21, W.e22};
}

}  // namespace detail

namespace {

PotentialDescriptor conj_potential(const PotentialDescriptor& q) {
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
  return q;  // zero and real box are self-conjugate
}

WeylScalar weyl_scalar_quadrature(const SpectralParameter& sp,
                                  const PotentialDescriptor& q, double tol) {
  const double tol_in = tol / 4;
  const auto g0 = conv_G_q(sp, q, 0.0, tol_in);
  const auto g0c = conv_G_q(sp, conj_potential(q), 0.0, tol_in);
  const auto qGq = bilinear(sp, q, q, tol_in);
  const Complex two_ik = Complex(0, 2) * sp.k;
  WeylScalar w;
  w.value = qGq.value + two_ik * (1.0 + g0.value) * (1.0 + g0c.value);
  w.at = sp;
  w.method = EvalMethod::quadrature;
  w.est_error = qGq.est_error +
                std::abs(two_ik) * (g0.est_error * (1.0 + std::abs(g0c.value)) +
                                    g0c.est_error * (1.0 + std::abs(g0.value)));
  return w;
}

WeylMatrix weyl_matrix_quadrature(const SpectralParameter& sp,
                                  const PotentialDescriptor& q1,
                                  const PotentialDescriptor& q2, double tol) {
  const double tol_in = tol / 16;
  const PotentialDescriptor q1c = conj_potential(q1), q2c = conj_potential(q2);
  const auto g01 = conv_G_q(sp, q1, 0.0, tol_in), g02 = conv_G_q(sp, q2, 0.0, tol_in);
  const auto g11 = conv_Gprime_q(sp, q1, 0.0, tol_in),
             g12 = conv_Gprime_q(sp, q2, 0.0, tol_in);
  const auto g01c = conv_G_q(sp, q1c, 0.0, tol_in), g02c = conv_G_q(sp, q2c, 0.0, tol_in);
  const auto g11c = conv_Gprime_q(sp, q1c, 0.0, tol_in),
             g12c = conv_Gprime_q(sp, q2c, 0.0, tol_in);
  const auto b11 = bilinear(sp, q1, q1, tol_in), b12 = bilinear(sp, q1, q2, tol_in);
  const auto b21 = bilinear(sp, q2, q1, tol_in), b22 = bilinear(sp, q2, q2, tol_in);

  const Complex two_ik = Complex(0, 2) * sp.k;
  const Complex two_i_over_k = Complex(0, 2) / sp.k;
  WeylMatrix W;
  W.at = sp;
  W.method = EvalMethod::quadrature;
  W.e11 = b11.value + two_ik * (1.0 + g01c.value) * (1.0 + g01.value) +
          two_i_over_k * g11c.value * g11.value;
  W.e12 = b12.value + two_ik * (1.0 + g01c.value) * g02.value -
          two_i_over_k * g11c.value * (1.0 - g12.value);
  W.e21 = b21.value + two_ik * g02c.value * (1.0 + g01.value) -
          two_i_over_k * g11.value * (1.0 - g12c.value);
  W.e22 = b22.value + two_ik * g02c.value * g02.value +
          two_i_over_k * (1.0 - g12c.value) * (1.0 - g12.value);
  double est = b11.est_error + b12.est_error + b21.est_error + b22.est_error;
  const double scale = std::abs(two_ik) + std::abs(two_i_over_k);
  for (const auto& g : {g01, g02, g11, g12, g01c, g02c, g11c, g12c})
    est += scale * g.est_error * 4.0;
  W.est_error = est;
  return W;
}

}  // namespace

WeylScalar weyl_scalar(const SpectralParameter& sp, const PotentialDescriptor& q,
                       double tol) {
  if (detail::is_catalog(q)) {
    WeylScalar w;
    w.value = detail::weyl_scalar_closed<Complex>(sp.k, q);
    w.at = sp;
    w.method = EvalMethod::closed_form;
    w.est_error = 0;
    return w;
  }
  return weyl_scalar_quadrature(sp, q, tol);
}

WeylMatrix weyl_matrix(const SpectralParameter& sp, const PotentialDescriptor& q1,
                       const PotentialDescriptor& q2, double tol) {
  if (detail::is_catalog(q1) && detail::is_catalog(q2)) {
    const auto W = detail::weyl_matrix_closed<Complex>(sp.k, q1, q2);
    WeylMatrix out;
    out.e11 = W.e11;
    out.e12 = W.e12;
    out.e21 = W.e21;
    out.e22 = W.e22;
    out.at = sp;
    out.method = EvalMethod::closed_form;
    return out;
  }
  return weyl_matrix_quadrature(sp, q1, q2, tol);
}

WeylScalar weyl_boundary_scalar(double k, const PotentialDescriptor& q, double tol) {
  if (k == 0) throw BranchPointError("boundary values need k != 0");
  return weyl_scalar(param_from_k(Complex(k, 0)), q, tol);
}

WeylMatrix weyl_boundary_matrix(double k, const PotentialDescriptor& q1,
                                const PotentialDescriptor& q2, double tol) {
  if (k == 0) throw BranchPointError("boundary values need k != 0");
  return weyl_matrix(param_from_k(Complex(k, 0)), q1, q2, tol);
}

Complex weyl_derivative(const SpectralParameter& sp, const PotentialDescriptor& q,
                        double tol) {
  if (detail::is_catalog(q)) {
    const detail::Dual w = detail::weyl_scalar_k_dual(sp.k, q);
    return w.d / (2.0 * sp.k);
  }
  const double h = 1e-8;
  const double tol_in = std::min(tol, 1e-13);
  const Complex wp = weyl_scalar(param_from_k(sp.k + h), q, tol_in).value;
  const Complex wm = weyl_scalar(param_from_k(sp.k - h), q, tol_in).value;
  return (wp - wm) / (2 * h) / (2.0 * sp.k);
}

WeylMatrix weyl_matrix_derivative(const SpectralParameter& sp,
                                  const PotentialDescriptor& q1,
                                  const PotentialDescriptor& q2, double tol) {
  WeylMatrix out;
  out.at = sp;
  if (detail::is_catalog(q1) && detail::is_catalog(q2)) {
    const auto W = detail::weyl_matrix_k_dual(sp.k, q1, q2);
    const Complex inv2k = 1.0 / (2.0 * sp.k);
    out.e11 = W.e11.d * inv2k;
    out.e12 = W.e12.d * inv2k;
    out.e21 = W.e21.d * inv2k;
    out.e22 = W.e22.d * inv2k;
    out.method = EvalMethod::closed_form;
    return out;
  }
  const double h = 1e-8;
  const double tol_in = std::min(tol, 1e-13);
  const WeylMatrix Wp = weyl_matrix(param_from_k(sp.k + h), q1, q2, tol_in);
  const WeylMatrix Wm = weyl_matrix(param_from_k(sp.k - h), q1, q2, tol_in);
  const Complex inv = 1.0 / (2 * h) / (2.0 * sp.k);
  out.e11 = (Wp.e11 - Wm.e11) * inv;
  out.e12 = (Wp.e12 - Wm.e12) * inv;
  out.e21 = (Wp.e21 - Wm.e21) * inv;
  out.e22 = (Wp.e22 - Wm.e22) * inv;
  out.method = EvalMethod::quadrature;
  out.est_error = (Wp.est_error + Wm.est_error) / (2 * h) / (2.0 * std::abs(sp.k));
  return out;
}

}  // namespace pointspec
