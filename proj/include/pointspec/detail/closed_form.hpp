#pragma once

// Closed-form building blocks shared by the Weyl-function and eigenfunction
// modules. Everything is templated on the scalar (Complex or Dual) so the
// same assembly yields values and exact k-derivatives.

#include "pointspec/detail/pieces.hpp"
#include "pointspec/model.hpp"

namespace pointspec::detail {

template <class S>
PiecewiseExp<S> potential_pieces(const PotentialDescriptor& q, bool conjugated) {
  PiecewiseExp<S> out;
  if (std::holds_alternative<ZeroPotential>(q)) return out;
  if (const auto* b = std::get_if<BoxEven>(&q)) {
    Piece<S> p;
    p.lo = -b->rho;
    p.hi = b->rho;
    p.terms.push_back(make_term(S(Complex(b->Z, 0)), S(0.0)));
    out.pieces.push_back(std::move(p));
    return out;
  }
  if (const auto* b = std::get_if<BoxOddSign>(&q)) {
    const Complex Z = conjugated ? std::conj(b->Z) : b->Z;
    Piece<S> neg;
    neg.lo = -b->rho;
    neg.hi = 0;
    neg.terms.push_back(make_term(S(-Z), S(0.0)));
    Piece<S> pos;
    pos.lo = 0;
    pos.hi = b->rho;
    pos.terms.push_back(make_term(S(Z), S(0.0)));
    out.pieces.push_back(std::move(neg));
    out.pieces.push_back(std::move(pos));
    return out;
  }
  if (const auto* e = std::get_if<ExpEven>(&q)) {
    const Complex c = conjugated ? std::conj(e->c) : e->c;
    Piece<S> neg;
    neg.lo = -kInf;
    neg.hi = 0;
    neg.terms.push_back(make_term(S(c), S(e->mu)));
    Piece<S> pos;
    pos.lo = 0;
    pos.hi = kInf;
    pos.terms.push_back(make_term(S(c), S(-e->mu)));
    out.pieces.push_back(std::move(neg));
    out.pieces.push_back(std::move(pos));
    return out;
  }
  throw std::logic_error("potential_pieces: sampled potentials have no closed form");
}

template <class S>
PiecewiseExp<S> green_pieces(const S& k) {
  const S ik = S(Complex(0, 1)) * k;
  const S coef = S(Complex(0, 0.5)) / k;  // i/2k
  PiecewiseExp<S> out;
  Piece<S> neg;
  neg.lo = -kInf;
  neg.hi = 0;
  neg.terms.push_back(make_term(coef, S(0.0) - ik));
  Piece<S> pos;
  pos.lo = 0;
  pos.hi = kInf;
  pos.terms.push_back(make_term(coef, ik));
  out.pieces.push_back(std::move(neg));
  out.pieces.push_back(std::move(pos));
  return out;
}

template <class S>
PiecewiseExp<S> green_prime_pieces(const S& k) {
  const S ik = S(Complex(0, 1)) * k;
  PiecewiseExp<S> out;
  Piece<S> neg;
  neg.lo = -kInf;
  neg.hi = 0;
  neg.terms.push_back(make_term(S(0.5), S(0.0) - ik));
  Piece<S> pos;
  pos.lo = 0;
  pos.hi = kInf;
  pos.terms.push_back(make_term(S(-0.5), ik));
  out.pieces.push_back(std::move(neg));
  out.pieces.push_back(std::move(pos));
  return out;
}

/// (G*q) as a piecewise function of x (catalog potentials only).
template <class S>
PiecewiseExp<S> conv_G_pieces(const S& k, const PotentialDescriptor& q,
                              bool conjugated = false) {
  const S coef = S(Complex(0, 0.5)) / k;
  return convolve_kernel(potential_pieces<S>(q, conjugated), k, coef, coef);
}

/// (G'*q) as a piecewise function of x.
template <class S>
PiecewiseExp<S> conv_Gprime_pieces(const S& k, const PotentialDescriptor& q,
                                   bool conjugated = false) {
  return convolve_kernel(potential_pieces<S>(q, conjugated), k, S(-0.5), S(0.5));
}

}  // namespace pointspec::detail
