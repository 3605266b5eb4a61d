#pragma once

#include <array>
#include <functional>

#include "pointspec/weyl.hpp"

namespace pointspec {

enum class EigenfunctionKind { general_u, general_v, delta_u, embedded_box, exp_even };

/// A lambda-eigenfunction of the maximal operator, evaluable pointwise.
/// Boundary data (mean values and jumps at 0) is precomputed; evaluation at
/// x = 0 returns the mean of the one-sided limits.
struct Eigenfunction {
  EigenfunctionKind kind = EigenfunctionKind::delta_u;
  SpectralParameter at;
  Complex fr0{}, fs0{}, dfr0{}, dfs0{};     // f_r(0), f_s(0), f'_r(0), f'_s(0)
  std::array<Complex, 2> gamma0{};          // (f_r(0), -f'_r(0))
  std::array<Complex, 2> gamma1{};          // (f_s'(0)-(q1,f), f_s(0)-(q2,f))
  double support_hint = 0;                  // outside: pure tails
  double decay_rate = 0;                    // min decay of |f| in the tails
  std::function<Complex(double)> evaluate;

  Complex operator()(double x) const { return evaluate(x); }
};

/// Amplitudes of u_lambda = A e^{ikx} + B e^{-ikx} (x>0), C e^{ikx} + D e^{-ikx} (x<0).
struct WaveCoefficients {
  Complex A{}, B{}, C{}, D{};
};

/// The basis (u, v) of ker(S_max - k^2) normalized by Gamma0 u = (1,0),
/// Gamma0 v = (0,1).
std::pair<Eigenfunction, Eigenfunction> basis_general(const SpectralParameter& sp,
                                                      const PotentialDescriptor& q1,
                                                      const PotentialDescriptor& q2,
                                                      double tol = kDefaultTol);

/// u_lambda = -(G*q) - 2ik[1+(G*q)(0)] G, the generator of ker(S~max - lambda).
Eigenfunction u_delta(const SpectralParameter& sp, const PotentialDescriptor& q,
                      double tol = kDefaultTol);

WaveCoefficients wave_coefficients(const SpectralParameter& sp,
                                   const PotentialDescriptor& q, double x,
                                   double tol = kDefaultTol);

/// u = Z (1 - cos k0(rho - |x|)) / k0^2 on [-rho, rho]; requires the embedded
/// criterion Z (1 - cos k0 rho) = k0^2 to 1e-10.
Eigenfunction embedded_box_eigenfunction(double Z, double rho, double k0);

/// u = (1 - c/(mu^2+lambda)) e^{ik|x|} + q(x)/(mu^2+lambda) for q = c e^{-mu|x|}.
Eigenfunction exp_even_eigenfunction(Complex c, double mu, const SpectralParameter& sp);

/// L2 norm squared by quadrature over [-L, L] plus the analytic plane-wave
/// tail correction. L <= 0 picks the default max(support, 30/decay).
double norm_squared(const Eigenfunction& f, double L = 0, double tol = 1e-9);

}  // namespace pointspec
