#pragma once

#include "pointspec/detail/dual.hpp"
#include "pointspec/greens.hpp"

namespace pointspec {

/// Scalar Weyl-Titchmarsh value W~ = (q, G*q) + 2ik [1+(G*q)(0)][1+(G*q*)(0)].
struct WeylScalar {
  Complex value{};
  SpectralParameter at;
  EvalMethod method = EvalMethod::closed_form;
  double est_error = 0;
};

/// 2x2 Weyl-Titchmarsh matrix: bilinear block plus B_{q1*,q2*}^t D B_{q1,q2}.
struct WeylMatrix {
  Complex e11{}, e12{}, e21{}, e22{};
  SpectralParameter at;
  EvalMethod method = EvalMethod::closed_form;
  double est_error = 0;
};

WeylScalar weyl_scalar(const SpectralParameter& sp, const PotentialDescriptor& q,
                       double tol = kDefaultTol);

WeylMatrix weyl_matrix(const SpectralParameter& sp, const PotentialDescriptor& q1,
                       const PotentialDescriptor& q2, double tol = kDefaultTol);

/// Boundary values W~^+/- on (0, inf): the same formulas at real k != 0,
/// with the side recorded from sign(k).
WeylScalar weyl_boundary_scalar(double k, const PotentialDescriptor& q,
                                double tol = kDefaultTol);
WeylMatrix weyl_boundary_matrix(double k, const PotentialDescriptor& q1,
                                const PotentialDescriptor& q2,
                                double tol = kDefaultTol);

/// dW~/dlambda. Exact (dual-number) derivative of the closed form for
/// catalog potentials; finite differences in k (step 1e-8) for Sampled.
Complex weyl_derivative(const SpectralParameter& sp, const PotentialDescriptor& q,
                        double tol = kDefaultTol);

/// Entrywise dW/dlambda of the 2x2 Weyl matrix.
WeylMatrix weyl_matrix_derivative(const SpectralParameter& sp,
                                  const PotentialDescriptor& q1,
                                  const PotentialDescriptor& q2,
                                  double tol = kDefaultTol);

namespace detail {

/// Value and d/dk of the scalar Weyl function (catalog potentials only).
Dual weyl_scalar_k_dual(Complex k, const PotentialDescriptor& q);

struct WeylMatrixDual {
  Dual e11, e12, e21, e22;
};

/// Value and d/dk of the matrix Weyl function (catalog potentials only).
WeylMatrixDual weyl_matrix_k_dual(Complex k, const PotentialDescriptor& q1,
                                  const PotentialDescriptor& q2);

}  // namespace detail

}  // namespace pointspec
