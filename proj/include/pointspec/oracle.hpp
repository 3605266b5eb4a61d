#pragma once

#include <Eigen/Dense>
#include <vector>

#include "pointspec/model.hpp"

namespace pointspec {

/// Symmetric finite-difference grid on [-L, L] with a node exactly at 0.
struct FdGrid {
  double L = 20;
  int N = 2001;  // odd, 201 <= N <= 5001, h < 0.1

  double h() const { return 2.0 * L / (N - 1); }
  double node(int i) const { return -L + i * h(); }
  int center() const { return (N - 1) / 2; }
};

FdGrid make_grid(double L, int N);

/// Dense discretization of H_a f = -f'' + f_r(0) q with the derivative jump
/// f_s'(0) = a f(0) + (q, f) folded into the central row; Dirichlet at the
/// (extended) interval ends; (q, f) by the trapezoid rule conjugating q.
Eigen::MatrixXcd assemble(const DeltaModel& model, const FdGrid& grid);

struct VerifyResult {
  double sigma_min_ratio = 0;  // sigma_min(A - lambda I) / median sigma
  double residual = 0;         // ||(A - lambda)v|| / ||v|| for the candidate
  double residual_scaled = 0;  // residual / (||A||_1 + |lambda|)
};

/// Near-zero sigma_min_ratio certifies lambda as a discrete eigenvalue.
VerifyResult verify_eigenvalue(const DeltaModel& model, Complex lambda,
                               const FdGrid& grid,
                               const std::vector<Complex>* candidate = nullptr);

struct NearestEigenvalue {
  Complex lambda{};
  double residual = 0;  // ||A v - lambda v|| / (||A||_1 ||v||)
  std::vector<Complex> vector;
};

/// Discrete eigenvalue closest to the shift, by shift-invert power iteration
/// with the structured (tridiagonal + rank-2) solver; O(N) per step.
NearestEigenvalue fd_nearest_eigenvalue(const DeltaModel& model, Complex shift,
                                        const FdGrid& grid, int max_iter = 200);

/// ||(A - lambda)v|| / ||v|| and its operator-scaled variant, without any
/// dense factorization.
VerifyResult fd_candidate_residual(const DeltaModel& model, Complex lambda,
                                   const FdGrid& grid,
                                   const std::vector<Complex>& candidate);

}  // namespace pointspec
