#pragma once

#include <vector>

#include "pointspec/weyl.hpp"

namespace pointspec {

struct Eigenvalue {
  Complex lambda{};
  Complex k{};
  int geometric_mult = 1;
  int algebraic_mult = 1;
  double residual = 0;
};

/// Rectangle in the k upper half-plane searched for characteristic zeros.
struct SearchRegion {
  double k_re_min = -10, k_re_max = 10;
  double k_im_min = 1e-6, k_im_max = 10;
  double margin = 1e-6;  // distance kept from the real axis
};

struct SingularityRecord {
  double lambda = 0;
  Complex a_plus{};
  bool is_singular = false;
};

struct ExceptionalPoint {
  Complex lambda0{};
  Complex a{};  // coupling whose operator has the exceptional point
};

struct EmbeddedEigenvalue {
  double k0 = 0;
  double lambda = 0;  // k0^2, inside the continuous spectrum
  double a = 0;       // necessarily real coupling
};

struct LocalCharRoots {
  std::vector<Complex> lambdas;
  bool whole_domain = false;  // characteristic polynomial vanished identically
};

/// det(T - W_lambda) for general models, a - W~_lambda for delta models.
Complex char_value(const ModelSpec& model, const SpectralParameter& sp,
                   double tol = kDefaultTol);

/// d/dk of char_value (exact for catalog potentials).
Complex char_derivative_k(const ModelSpec& model, const SpectralParameter& sp,
                          double tol = kDefaultTol);

/// Roots of 2 d k^2 + i k (det T - 4) + 2 a = 0 with Im k > 0 (the q1=q2=0
/// characteristic polynomial), as lambda = k^2.
LocalCharRoots local_char_roots(const CouplingMatrix& T);

/// All characteristic zeros in the region, found by argument-principle
/// counting on recursively subdivided k-rectangles and Newton-polished.
std::vector<Eigenvalue> find_eigenvalues(const ModelSpec& model,
                                         const SearchRegion& region,
                                         double tol = kDefaultTol);

/// Index of T - W at lambda0: (1/2pi i) tr contour-int W' (W - T)^{-1} dxi on
/// a circle of the given radius, trapezoid nodes doubled from 256 until two
/// successive values agree to `tol`; rounded to the nearest integer.
int algebraic_multiplicity(const ModelSpec& model, Complex lambda0, double radius,
                           double tol = 0.01);

/// Zeros of lambda -> W~'_lambda in the region (delta case); each paired
/// with a = W~(lambda0). Only non-real lambda0 are reported.
std::vector<ExceptionalPoint> find_exceptional_points(const PotentialDescriptor& q,
                                                      const SearchRegion& region,
                                                      double tol = kDefaultTol);

/// For each real k in the grid: a_plus = W~ at that boundary point and the
/// sufficient-condition verdict |Im a_plus| > tol (1 + |a_plus|).
std::vector<SingularityRecord> singularity_scan(const PotentialDescriptor& q,
                                                const std::vector<double>& k_grid,
                                                double tol = 1e-8);

/// |Im W~_lambda| / |a - W~_lambda|; +inf when the denominator underflows.
double blowup_ratio(const DeltaModel& model, Complex lambda,
                    double tol = kDefaultTol);

/// min over real k (k_min <= |k| <= k_max) of |W~(k^2) - a|, located by a
/// grid scan plus golden-section refinement. A near-zero distance means a
/// sits on the boundary-value curve, i.e. lambda = argmin k^2 is a spectral
/// singularity of H_a and H_{a*}.
double singularity_match_distance(const PotentialDescriptor& q, Complex a,
                                  double k_min = 1e-5, double k_max = 10,
                                  double tol = kDefaultTol);

/// Real roots k of beta_k = 1 - (1/k) int_0^rho sin(ks) q(s) ds in
/// [k_lo, k_hi], each with the (real) coupling a = W~^+ at lambda = k^2.
std::vector<EmbeddedEigenvalue> embedded_eigenvalues(const PotentialDescriptor& q,
                                                     double k_lo, double k_hi,
                                                     double tol = kDefaultTol);

namespace detail {

/// beta_k for even compactly supported q (the embedded-eigenvalue function).
double embedded_beta(const PotentialDescriptor& q, double k, double tol);

/// Distance from lambda to the cut [0, inf).
double distance_to_cut(Complex lambda);

}  // namespace detail

}  // namespace pointspec
