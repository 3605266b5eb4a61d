#include "pointspec/greens.hpp"

#include <algorithm>
#include <cmath>

#include "pointspec/detail/closed_form.hpp"

namespace pointspec {

namespace detail {

// 15-point Kronrod extension of the 7-point Gauss rule (positive half).
static const double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
static const double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
static const double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

namespace {

struct PanelResult {
  Complex integral;
  double error;
};

PanelResult gk15(const std::function<Complex(double)>& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  Complex gauss = 0, kronrod = 0;
  for (int j = 0; j < 8; ++j) {
    Complex fsum;
    if (j == 7) {
      fsum = f(c);
    } else {
      fsum = f(c - h * kXgk[j]) + f(c + h * kXgk[j]);
    }
    kronrod += kWgk[j] * fsum;
    if (j % 2 == 1) gauss += kWg[j / 2] * fsum;
  }
  return {kronrod * h, std::abs(kronrod - gauss) * h};
}

void integrate_panel(const std::function<Complex(double)>& f, double a, double b,
                     double tol, int depth, int depth_cap, long& budget, Complex& acc,
                     double& err) {
  const PanelResult r = gk15(f, a, b);
  --budget;
  if (r.error <= tol || depth >= depth_cap || budget <= 0) {
    acc += r.integral;
    err += r.error;
    return;
  }
  const double m = 0.5 * (a + b);
  integrate_panel(f, a, m, 0.5 * tol, depth + 1, depth_cap, budget, acc, err);
  integrate_panel(f, m, b, 0.5 * tol, depth + 1, depth_cap, budget, acc, err);
}

}  // namespace

QuadResult adaptive_integrate(const std::function<Complex(double)>& f, double a,
                              double b, double tol, std::vector<double> split_points,
                              int depth_cap) {
  if (!(b > a)) {
    if (a == b) return {Complex(0), 0.0};
    QuadResult r = adaptive_integrate(f, b, a, tol, std::move(split_points), depth_cap);
    return {-r.value, r.est_error};
  }
  split_points.push_back(a);
  split_points.push_back(b);
  std::sort(split_points.begin(), split_points.end());
  split_points.erase(std::unique(split_points.begin(), split_points.end()),
                     split_points.end());

  Complex acc = 0;
  double err = 0;
  long budget = 100000;  // panel cap; pathological tolerances fail via est_error
  const double total = b - a;
  for (size_t i = 0; i + 1 < split_points.size(); ++i) {
    const double lo = std::max(a, split_points[i]);
    const double hi = std::min(b, split_points[i + 1]);
    if (!(hi > lo)) continue;
    integrate_panel(f, lo, hi, tol * (hi - lo) / total, 0, depth_cap, budget, acc, err);
  }
  if (err > tol)
    throw QuadratureError("adaptive quadrature did not reach the requested tolerance");
  return {acc, err};
}

bool is_catalog(const PotentialDescriptor& q) {
  return !std::holds_alternative<Sampled>(q);
}

namespace {

// G(y) and G'(y) as plain lambdas of the kernel offset.
Complex kernel_G(Complex k, double y) {
  return Complex(0, 0.5) / k * std::exp(Complex(0, 1) * k * std::abs(y));
}

Complex kernel_Gprime(Complex k, double y) {
  const double s = (y > 0) - (y < 0);
  return -0.5 * s * std::exp(Complex(0, 1) * k * std::abs(y));
}

const Sampled& as_sampled(const PotentialDescriptor& q) { return std::get<Sampled>(q); }

double sampled_max_abs(const Sampled& s) {
  double m = 0;
  for (const auto& v : s.values) m = std::max(m, std::abs(v));
  return m;
}

std::vector<double> sampled_kinks(const Sampled& s, double extra, bool use_extra) {
  std::vector<double> kinks(s.nodes.begin(), s.nodes.end());
  if (use_extra) kinks.push_back(extra);
  return kinks;
}

ConvolutionValue conv_kernel_sampled(Complex k, const Sampled& s, double x, double tol,
                                     bool prime) {
  const double lo = s.nodes.front();
  const double hi = s.nodes.back();
  const PotentialDescriptor qd = s;
  const auto f = [&](double t) {
    const Complex qv = potential_value(qd, t);
    return prime ? kernel_Gprime(k, x - t) * qv : kernel_G(k, x - t) * qv;
  };
  const auto r = adaptive_integrate(f, lo, hi, tol,
                                    sampled_kinks(s, x, x > lo && x < hi));
  return {r.value, EvalMethod::quadrature, r.est_error};
}

}  // namespace

}  // namespace detail

Complex green_kernel(const SpectralParameter& sp, double x) {
  return detail::kernel_G(sp.k, x);
}

Complex green_kernel_derivative(const SpectralParameter& sp, double x) {
  return detail::kernel_Gprime(sp.k, x);
}

ConvolutionValue conv_G_q(const SpectralParameter& sp, const PotentialDescriptor& q,
                          double x, double tol) {
  if (is_zero_potential(q)) return {Complex(0), EvalMethod::closed_form, 0};
  if (detail::is_catalog(q)) {
    const auto pieces = detail::conv_G_pieces<Complex>(sp.k, q);
    return {detail::eval(pieces, x), EvalMethod::closed_form, 0};
  }
  return detail::conv_kernel_sampled(sp.k, detail::as_sampled(q), x, tol, false);
}

ConvolutionValue conv_Gprime_q(const SpectralParameter& sp, const PotentialDescriptor& q,
                               double x, double tol) {
  if (is_zero_potential(q)) return {Complex(0), EvalMethod::closed_form, 0};
  if (detail::is_catalog(q)) {
    const auto pieces = detail::conv_Gprime_pieces<Complex>(sp.k, q);
    return {detail::eval(pieces, x), EvalMethod::closed_form, 0};
  }
  return detail::conv_kernel_sampled(sp.k, detail::as_sampled(q), x, tol, true);
}

ConvolutionValue bilinear(const SpectralParameter& sp, const PotentialDescriptor& qa,
                          const PotentialDescriptor& qb, double tol) {
  using namespace detail;
  if (is_zero_potential(qa) || is_zero_potential(qb))
    return {Complex(0), EvalMethod::closed_form, 0};
  const Complex k = sp.k;

  if (is_catalog(qa) && is_catalog(qb)) {
    const auto prod =
        multiply(potential_pieces<Complex>(qa, /*conjugated=*/true),
                 conv_G_pieces<Complex>(k, qb));
    return {integrate(prod), EvalMethod::closed_form, 0};
  }

  if (!is_catalog(qa) && is_catalog(qb)) {
    // outer integral over the sampled support, closed-form inner convolution
    const Sampled& sa = as_sampled(qa);
    const auto conv = conv_G_pieces<Complex>(k, qb);
    const PotentialDescriptor qad = sa;
    const auto f = [&](double x) {
      return std::conj(potential_value(qad, x)) * eval(conv, x);
    };
    std::vector<double> kinks = sampled_kinks(sa, 0.0, false);
    for (const auto& p : conv.pieces)
      if (p.lo != -kInf) kinks.push_back(p.lo);
    const auto r = adaptive_integrate(f, sa.nodes.front(), sa.nodes.back(), tol, kinks);
    return {r.value, EvalMethod::quadrature, r.est_error};
  }

  if (is_catalog(qa) && !is_catalog(qb)) {
    // (q_a, G*q_b) = int (G*q_a^*)(s) q_b(s) ds since G is even
    const Sampled& sb = as_sampled(qb);
    const auto conv = conv_G_pieces<Complex>(k, qa, /*conjugated=*/true);
    const PotentialDescriptor qbd = sb;
    const auto f = [&](double s) { return eval(conv, s) * potential_value(qbd, s); };
    std::vector<double> kinks = sampled_kinks(sb, 0.0, false);
    for (const auto& p : conv.pieces)
      if (p.lo != -kInf) kinks.push_back(p.lo);
    const auto r = adaptive_integrate(f, sb.nodes.front(), sb.nodes.back(), tol, kinks);
    return {r.value, EvalMethod::quadrature, r.est_error};
  }

  // both sampled: nested adaptive panels; the inner convolution splits its
  // panels at s = x, which realizes the diagonal kink of the double integral
  const Sampled& sa = as_sampled(qa);
  const double len = sa.nodes.back() - sa.nodes.front();
  const double amax = sampled_max_abs(sa);
  const double inner_tol = tol / (4.0 * std::max(1.0, len * amax));
  const PotentialDescriptor qad = sa;
  double inner_budget = 0;
  const auto f = [&](double x) {
    const auto inner = conv_kernel_sampled(k, as_sampled(qb), x, inner_tol, false);
    return std::conj(potential_value(qad, x)) * inner.value;
  };
  inner_budget = inner_tol * len * std::max(amax, 1e-30);
  const auto r = adaptive_integrate(f, sa.nodes.front(), sa.nodes.back(),
                                    0.75 * tol, sampled_kinks(sa, 0.0, false));
  return {r.value, EvalMethod::quadrature, r.est_error + inner_budget};
}

ConvolutionValue potential_exp_integral(const SpectralParameter& sp,
                                        const PotentialDescriptor& q, double lo,
                                        double hi, Complex rate, double tol) {
  using namespace detail;
  (void)sp;
  if (is_zero_potential(q)) return {Complex(0), EvalMethod::closed_form, 0};
  double sign = 1;
  if (lo > hi) {
    std::swap(lo, hi);
    sign = -1;
  }
  if (is_catalog(q)) {
    const auto qp = potential_pieces<Complex>(q, false);
    return {sign * integrate_clipped(qp, lo, hi, rate), EvalMethod::closed_form, 0};
  }
  const Sampled& s = as_sampled(q);
  const double a = std::max(lo, s.nodes.front());
  const double b = std::min(hi, s.nodes.back());
  if (!(a < b)) return {Complex(0), EvalMethod::quadrature, 0};
  const PotentialDescriptor qd = s;
  const auto f = [&](double t) {
    return std::exp(rate * t) * potential_value(qd, t);
  };
  const auto r = adaptive_integrate(f, a, b, tol, sampled_kinks(s, 0.0, false));
  return {sign * r.value, EvalMethod::quadrature, r.est_error};
}

}  // namespace pointspec
