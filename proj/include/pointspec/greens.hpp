#pragma once

#include <functional>
#include <vector>

#include "pointspec/model.hpp"

namespace pointspec {

enum class EvalMethod { closed_form, quadrature };

struct ConvolutionValue {
  Complex value{};
  EvalMethod method = EvalMethod::closed_form;
  double est_error = 0;
};

/// G(x) = (i/2k) e^{ik|x|}, the kernel of (-d^2/dx^2 - k^2)^{-1}.
Complex green_kernel(const SpectralParameter& sp, double x);

/// G'(x) = -(1/2) sign(x) e^{ik|x|}, with sign(0) := 0 so G'_r(0) = 0.
Complex green_kernel_derivative(const SpectralParameter& sp, double x);

/// (G*q)(x). Closed form for catalog kinds, adaptive quadrature for Sampled.
ConvolutionValue conv_G_q(const SpectralParameter& sp, const PotentialDescriptor& q,
                          double x, double tol = kDefaultTol);

/// (G'*q)(x).
ConvolutionValue conv_Gprime_q(const SpectralParameter& sp, const PotentialDescriptor& q,
                               double x, double tol = kDefaultTol);

/// (q_a, G*q_b) = int q_a^*(x) (G*q_b)(x) dx  (conjugation on the first slot).
ConvolutionValue bilinear(const SpectralParameter& sp, const PotentialDescriptor& qa,
                          const PotentialDescriptor& qb, double tol = kDefaultTol);

/// int_lo^hi e^{rate s} q(s) ds (bounds may be +-infinity for decaying kinds).
ConvolutionValue potential_exp_integral(const SpectralParameter& sp,
                                        const PotentialDescriptor& q, double lo,
                                        double hi, Complex rate,
                                        double tol = kDefaultTol);

namespace detail {

struct QuadResult {
  Complex value{};
  double est_error = 0;
};

/// Adaptive bisection with an embedded Gauss(7)/Kronrod(15) pair; the listed
/// split points are inserted as panel boundaries before refinement starts.
QuadResult adaptive_integrate(const std::function<Complex(double)>& f, double a,
                              double b, double tol,
                              std::vector<double> split_points = {},
                              int depth_cap = 40);

bool is_catalog(const PotentialDescriptor& q);  // closed-form representable

}  // namespace detail

}  // namespace pointspec
