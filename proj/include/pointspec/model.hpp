#pragma once

#include <complex>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "pointspec/errors.hpp"

namespace pointspec {

using Complex = std::complex<double>;

inline constexpr double kDefaultTol = 1e-10;

/// Entries of the 2x2 coupling matrix T = [[a, b], [c, d]].
struct CouplingMatrix {
  Complex a{}, b{}, c{}, d{};

  Complex det() const { return a * d - b * c; }
  double frobenius_norm() const;
};

// ---------------------------------------------------------------------------
// Potentials
// ---------------------------------------------------------------------------

struct ZeroPotential {};

/// q(x) = Z on [-rho, rho], zero outside. Z is real.
struct BoxEven {
  double Z = 0;
  double rho = 1;
};

/// q(x) = Z sign(x) on [-rho, rho], zero outside. Z may be complex.
struct BoxOddSign {
  Complex Z{};
  double rho = 1;
};

/// q(x) = c e^{-mu |x|}, mu > 0. c may be complex.
struct ExpEven {
  Complex c{};
  double mu = 1;
};

/// Piecewise-linear interpolant of (nodes[i], values[i]); identically zero
/// outside [nodes.front(), nodes.back()]. Nodes strictly increasing, >= 2.
struct Sampled {
  std::vector<double> nodes;
  std::vector<Complex> values;
};

using PotentialDescriptor =
    std::variant<ZeroPotential, BoxEven, BoxOddSign, ExpEven, Sampled>;

bool is_zero_potential(const PotentialDescriptor& q);
bool has_compact_support(const PotentialDescriptor& q);
/// Radius R with q = 0 outside [-R, R]; for ExpEven the decay scale is
/// reported via potential_decay_rate instead and this returns 0.
double support_radius(const PotentialDescriptor& q);
/// Exponential decay rate of |q| (infinity for compactly supported kinds).
double potential_decay_rate(const PotentialDescriptor& q);
/// Pointwise value; at a jump the mean of the one-sided limits.
Complex potential_value(const PotentialDescriptor& q, double x);
/// Validates the descriptor invariants, throwing ValidationError.
void validate_potential(const PotentialDescriptor& q, const std::string& path);

// ---------------------------------------------------------------------------
// Models
// ---------------------------------------------------------------------------

/// -d^2/dx^2 + a<delta,.>delta + <delta,.>q + (q,.)delta
struct DeltaModel {
  Complex a{};
  PotentialDescriptor q = ZeroPotential{};
};

/// -d^2/dx^2 + the rank-type perturbation described by T, q1, q2.
struct GeneralModel {
  CouplingMatrix T;
  PotentialDescriptor q1 = ZeroPotential{};
  PotentialDescriptor q2 = ZeroPotential{};
};

using ModelSpec = std::variant<DeltaModel, GeneralModel>;

/// Embeds the delta model as T = [[a,0],[0,0]], q1 = q, q2 = 0.
GeneralModel delta_to_general(const DeltaModel& m);

void validate_model(const ModelSpec& m);

/// Parses a JSON model document (schema documented in README).
ModelSpec parse_model(const std::string& text);
/// Parses either a bare potential object or a delta model (whose q is taken).
PotentialDescriptor parse_potential_document(const std::string& text);
/// Normalized JSON echo of a model, for reports.
std::string model_to_json(const ModelSpec& m);

// ---------------------------------------------------------------------------
// Spectral parameter
// ---------------------------------------------------------------------------

enum class BoundarySide { none, plus, minus };

/// The pair (lambda, k) with lambda = k^2 and k in the closed upper
/// half-plane minus the origin. boundary_side records the limit side when
/// k is real (plus: k > 0, minus: k < 0).
struct SpectralParameter {
  Complex k{};
  Complex lambda{};
  BoundarySide side = BoundarySide::none;
};

/// Branch map lambda -> k with the cut along [0, inf). For lambda on (0, inf)
/// an explicit side is required; lambda = 0 is the branch point.
SpectralParameter k_from_lambda(Complex lambda,
                                std::optional<BoundarySide> side = {});

/// Wraps a k with Im k >= 0, k != 0 (side inferred when k is real).
SpectralParameter param_from_k(Complex k);

}  // namespace pointspec
