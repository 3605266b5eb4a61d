#include "pointspec/symmetry.hpp"

#include <cmath>

namespace pointspec {

namespace {

bool nearly_real(Complex z, double tol) {
  return std::abs(z.imag()) <= tol * (1.0 + std::abs(z));
}

bool nearly_imag(Complex z, double tol) {
  return std::abs(z.real()) <= tol * (1.0 + std::abs(z));
}

bool nearly_equal(Complex x, Complex y, double tol) {
  return std::abs(x - y) <= tol * (1.0 + std::abs(x) + std::abs(y));
}

/// Parity and conjugation-parity of a single potential. slot2 selects the
/// second-slot requirements (PT q = -q, P q = -q).
PotentialSymmetry analyze(const PotentialDescriptor& q, bool slot2, double tol) {
  PotentialSymmetry s;
  if (std::holds_alternative<ZeroPotential>(q)) {
    s.parity = Parity::even;  // and odd; every condition holds trivially
    s.pt_fixed = true;
    s.pt_ok = true;
    s.p_ok = true;
    return s;
  }
  if (const auto* b = std::get_if<BoxEven>(&q)) {
    s.parity = Parity::even;
    s.pt_fixed = true;  // real and even
    const bool zero = std::abs(b->Z) <= tol;
    s.pt_ok = slot2 ? zero : true;
    s.p_ok = slot2 ? zero : true;
    return s;
  }
  if (const auto* b = std::get_if<BoxOddSign>(&q)) {
    s.parity = Parity::odd;
    // (PT q)(x) = -Z* sign(x) chi: fixed iff Z is imaginary
    s.pt_fixed = nearly_imag(b->Z, tol);
    // PT q = -q iff Z is real; P q = -q always, P q = q iff Z = 0
    s.pt_ok = slot2 ? nearly_real(b->Z, tol) : s.pt_fixed;
    s.p_ok = slot2 ? true : std::abs(b->Z) <= tol;
    return s;
  }
  if (const auto* e = std::get_if<ExpEven>(&q)) {
    s.parity = Parity::even;
    s.pt_fixed = nearly_real(e->c, tol);
    s.pt_ok = slot2 ? nearly_imag(e->c, tol) : s.pt_fixed;
    s.p_ok = slot2 ? std::abs(e->c) <= tol : true;
    return s;
  }
  const auto& smp = std::get<Sampled>(q);
  const size_t n = smp.nodes.size();
  for (size_t i = 0; i < n; ++i) {
    const double xl = smp.nodes[i], xr = smp.nodes[n - 1 - i];
    if (std::abs(xl + xr) > tol * (1.0 + std::abs(xl)))
      throw ParityUndecidableError(
          "sampled node grid is not mirror-symmetric; parity undecidable");
  }
  bool even = true, odd = true, pt_even = true, pt_odd = true;
  for (size_t i = 0; i < n; ++i) {
    const Complex v = smp.values[i];
    const Complex vm = smp.values[n - 1 - i];  // value at -x
    if (!nearly_equal(vm, v, tol)) even = false;
    if (!nearly_equal(vm, -v, tol)) odd = false;
    if (!nearly_equal(std::conj(vm), v, tol)) pt_even = false;
    if (!nearly_equal(std::conj(vm), -v, tol)) pt_odd = false;
  }
  s.parity = even ? Parity::even : (odd ? Parity::odd : Parity::neither);
  s.pt_fixed = pt_even;
  s.pt_ok = slot2 ? pt_odd : pt_even;
  s.p_ok = slot2 ? odd : even;
  return s;
}

}  // namespace

SymmetryReport classify(const ModelSpec& model, double tol) {
  const GeneralModel g = std::holds_alternative<DeltaModel>(model)
                             ? delta_to_general(std::get<DeltaModel>(model))
                             : std::get<GeneralModel>(model);
  SymmetryReport rep;
  rep.q1 = analyze(g.q1, /*slot2=*/false, tol);
  rep.q2 = analyze(g.q2, /*slot2=*/true, tol);

  const bool ad_real = nearly_real(g.T.a, tol) && nearly_real(g.T.d, tol);
  rep.self_adjoint = ad_real && nearly_equal(g.T.b, std::conj(g.T.c), tol);
  rep.pt_symmetric = ad_real && nearly_imag(g.T.b, tol) && nearly_imag(g.T.c, tol) &&
                     rep.q1.pt_ok && rep.q2.pt_ok;
  rep.p_self_adjoint = ad_real && nearly_equal(g.T.b, -std::conj(g.T.c), tol) &&
                       rep.q1.p_ok && rep.q2.p_ok;
  return rep;
}

}  // namespace pointspec
