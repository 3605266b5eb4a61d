#pragma once

#include "pointspec/model.hpp"

namespace pointspec {

enum class Parity { even, odd, neither };

struct PotentialSymmetry {
  Parity parity = Parity::neither;
  bool pt_fixed = false;  // q*(-x) = q(x)
  bool pt_ok = false;     // the slot condition: PT q1 = q1 resp. PT q2 = -q2
  bool p_ok = false;      // the slot condition:  P q1 = q1 resp.  P q2 = -q2
};

/// Classification of a model. The self-adjointness test (T Hermitian) is an
/// equivalence; the PT / P-self-adjointness flags record that the sufficient
/// conditions hold (a, d real with b, c imaginary resp. b = -c*, plus the
/// parity/conjugation requirements on q1, q2).
struct SymmetryReport {
  bool self_adjoint = false;
  bool pt_symmetric = false;
  bool p_self_adjoint = false;
  PotentialSymmetry q1, q2;
};

SymmetryReport classify(const ModelSpec& model, double tol = 1e-12);

}  // namespace pointspec
