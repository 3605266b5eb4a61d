#include "doctest.h"
#include "oracles.hpp"
#include "pointspec/weyl.hpp"

using namespace pointspec;

TEST_CASE("scalar value for the free case is 2ik") {
  const auto sp = k_from_lambda(Complex(-1, 0));
  CHECK(std::abs(weyl_scalar(sp, ZeroPotential{}).value - Complex(-2, 0)) < 1e-14);
  const auto sp2 = param_from_k(Complex(0.3, 0.7));
  CHECK(std::abs(weyl_scalar(sp2, ZeroPotential{}).value - Complex(0, 2) * sp2.k) <
        1e-14);
}

TEST_CASE("even exponential value at k = i") {
  const auto sp = k_from_lambda(Complex(-1, 0));
  const PotentialDescriptor q = ExpEven{Complex(0, 0.5), 0.25};
  CHECK(std::abs(weyl_scalar(sp, q).value - Complex(-1.36, 0)) < 1e-12);
}

TEST_CASE("odd potential reduces to 2ik plus the bilinear") {
  const PotentialDescriptor q = BoxOddSign{Complex(1, 0), 1.0};
  for (const Complex k : {Complex(0, 1), Complex(1.2, 0.4)}) {
    const auto sp = param_from_k(k);
    const Complex expect = Complex(0, 2) * k + bilinear(sp, q, q).value;
    CHECK(std::abs(weyl_scalar(sp, q).value - expect) < 1e-12);
  }
}

TEST_CASE("matrix for two zero potentials is diag(2ik, 2i/k)") {
  const auto sp = param_from_k(Complex(0.8, 1.1));
  const WeylMatrix W = weyl_matrix(sp, ZeroPotential{}, ZeroPotential{});
  CHECK(std::abs(W.e11 - Complex(0, 2) * sp.k) < 1e-14);
  CHECK(std::abs(W.e22 - Complex(0, 2) / sp.k) < 1e-14);
  CHECK(std::abs(W.e12) < 1e-15);
  CHECK(std::abs(W.e21) < 1e-15);
}

TEST_CASE("matrix with q2 = 0 reduces to the scalar plus cross terms") {
  const PotentialDescriptor q = ExpEven{Complex(0, 0.5), 0.25};
  const PotentialDescriptor qc = ExpEven{Complex(0, -0.5), 0.25};
  const auto sp = param_from_k(Complex(0.5, 0.9));
  const WeylMatrix W = weyl_matrix(sp, q, ZeroPotential{});
  const Complex g1 = conv_Gprime_q(sp, q, 0).value;
  const Complex g1c = conv_Gprime_q(sp, qc, 0).value;
  const Complex two_i_over_k = Complex(0, 2) / sp.k;
  CHECK(std::abs(W.e22 - two_i_over_k) < 1e-13);
  CHECK(std::abs(W.e12 + two_i_over_k * g1c) < 1e-13);
  CHECK(std::abs(W.e21 + two_i_over_k * g1) < 1e-13);
  const Complex wtilde = weyl_scalar(sp, q).value;
  CHECK(std::abs(W.e11 - (wtilde + two_i_over_k * g1 * g1c)) < 1e-12);
}

TEST_CASE("matrix conjugation symmetry: transpose-conjugate at lambda*") {
  const auto ks = testsupport::random_k_points(6, 31);
  const auto cat = testsupport::catalog();
  for (size_t i = 0; i + 1 < cat.size(); i += 2) {
    for (const Complex k : ks) {
      const auto sp = param_from_k(k);
      const auto spc = k_from_lambda(std::conj(sp.lambda));
      const WeylMatrix W = weyl_matrix(sp, cat[i], cat[i + 1]);
      const WeylMatrix Wc = weyl_matrix(spc, cat[i], cat[i + 1]);
      CHECK(std::abs(Wc.e11 - std::conj(W.e11)) < 1e-9);
      CHECK(std::abs(Wc.e22 - std::conj(W.e22)) < 1e-9);
      CHECK(std::abs(Wc.e12 - std::conj(W.e21)) < 1e-9);
      CHECK(std::abs(Wc.e21 - std::conj(W.e12)) < 1e-9);
    }
  }
}

TEST_CASE("boundary values on the positive half-line") {
  SUBCASE("free case at k = 2") {
    const auto w = weyl_boundary_scalar(2.0, ZeroPotential{});
    CHECK(std::abs(w.value - Complex(0, 4)) < 1e-14);
    CHECK(w.at.side == BoundarySide::plus);
  }
  SUBCASE("even exponential at k = 1") {
    const PotentialDescriptor q = ExpEven{Complex(0, 0.5), 0.25};
    const auto w = weyl_boundary_scalar(1.0, q);
    CHECK(std::abs(w.value - Complex(-0.830450, 2.442906)) < 1e-6);
  }
  SUBCASE("plus and minus limits are conjugate") {
    for (const PotentialDescriptor& q : testsupport::catalog()) {
      for (const double k : {0.5, 1.0, 2.7}) {
        const Complex wp = weyl_boundary_scalar(k, q).value;
        const Complex wm = weyl_boundary_scalar(-k, q).value;
        CHECK(std::abs(std::conj(wp) - wm) < 1e-10);
      }
    }
  }
}

TEST_CASE("derivative in lambda") {
  SUBCASE("free case: i/sqrt(lambda)") {
    const auto sp = k_from_lambda(Complex(-1, 0));
    CHECK(std::abs(weyl_derivative(sp, ZeroPotential{}) - Complex(1, 0)) < 1e-13);
    const auto sp2 = param_from_k(Complex(0.6, 0.8));
    CHECK(std::abs(weyl_derivative(sp2, ZeroPotential{}) - Complex(0, 1) / sp2.k) <
          1e-13);
  }
  SUBCASE("vanishes at the even-exponential branch point of the coupling map") {
    const PotentialDescriptor q = ExpEven{Complex(0, 0.5), 0.25};
    const Complex k0(std::sqrt(3.0) / 2.0, 0.25);
    CHECK(std::abs(weyl_derivative(param_from_k(k0), q)) < 1e-10);
  }
  SUBCASE("finite differences confirm the dual-number derivative") {
    const auto ks = testsupport::random_k_points(20, 77);
    for (const PotentialDescriptor& q : testsupport::catalog()) {
      for (const Complex k : ks) {
        const auto sp = param_from_k(k);
        const Complex analytic = weyl_derivative(sp, q);
        const double h = 1e-6;
        const Complex num = (weyl_scalar(param_from_k(k + h), q).value -
                             weyl_scalar(param_from_k(k - h), q).value) /
                            (2 * h) / (2.0 * k);
        CHECK(std::abs(analytic - num) < 1e-7 * (1.0 + std::abs(analytic)));
      }
    }
  }
}

TEST_CASE("values and derivatives stay exact through the k = i*mu point") {
  // lambda = -mu^2 is a removable point of the assembled value: every
  // intermediate rate difference r -+ ik vanishes there and must go through
  // the polynomial split, for the value and for the dual derivative alike
  const Complex c(1, 0.3);
  const double mu = 0.5;
  const PotentialDescriptor q = ExpEven{c, mu};
  const Complex I(0, 1);
  for (const Complex k : {Complex(0, mu), Complex(1e-7, mu), Complex(0, mu + 1e-7),
                          Complex(0, mu - 1e-6), Complex(1e-5, mu)}) {
    const Complex ref = 2.0 * I * k - 4.0 * c.real() / (mu - I * k) +
                        (std::norm(c) / mu) / std::pow(mu - I * k, 2.0);
    const Complex dref = (2.0 * I - 4.0 * c.real() * I / std::pow(mu - I * k, 2.0) +
                          2.0 * I * (std::norm(c) / mu) / std::pow(mu - I * k, 3.0)) /
                         (2.0 * k);
    const auto sp = param_from_k(k);
    CHECK(std::abs(weyl_scalar(sp, q).value - ref) < 1e-12);
    CHECK(std::abs(weyl_derivative(sp, q) - dref) < 1e-10);
  }
}

TEST_CASE("Herglotz sign: Im lambda and Im W share their sign") {
  const auto ks = testsupport::random_k_points(50, 123);
  for (const PotentialDescriptor& q : testsupport::catalog()) {
    for (const Complex k : ks) {
      const auto sp = param_from_k(k);
      if (std::abs(sp.lambda.imag()) < 1e-6) continue;
      const Complex w = weyl_scalar(sp, q).value;
      CHECK(sp.lambda.imag() * w.imag() > 0);
    }
  }
}

TEST_CASE("conjugation symmetry of the scalar value") {
  const auto ks = testsupport::random_k_points(10, 55);
  for (const PotentialDescriptor& q : testsupport::catalog()) {
    for (const Complex k : ks) {
      const auto sp = param_from_k(k);
      const auto spc = k_from_lambda(std::conj(sp.lambda));
      CHECK(std::abs(weyl_scalar(spc, q).value - std::conj(weyl_scalar(sp, q).value)) <
            1e-9);
    }
  }
  // quadrature-backed potential at a looser tolerance
  const PotentialDescriptor qs = testsupport::sampled_bump();
  const auto sp = param_from_k(Complex(0.5, 0.8));
  const auto spc = k_from_lambda(std::conj(sp.lambda));
  CHECK(std::abs(weyl_scalar(spc, qs).value - std::conj(weyl_scalar(sp, qs).value)) <
        1e-6);
}

TEST_CASE("real on the negative half-axis") {
  for (const PotentialDescriptor& q : testsupport::catalog()) {
    for (const double lam : {-0.5, -1.0, -4.0}) {
      const Complex w = weyl_scalar(k_from_lambda(Complex(lam, 0)), q).value;
      CHECK(std::abs(w.imag()) < 1e-9);
    }
  }
}

TEST_CASE("delta characteristic equals the matrix characteristic up to -2i/k") {
  // det(T - W) = -(2i/k)(a - W~) for the embedded delta model
  const Complex a(-1.7, 0.6);
  for (const PotentialDescriptor& q : {PotentialDescriptor(BoxEven{0.5, M_PI}),
                                       PotentialDescriptor(ExpEven{Complex(0, 0.5), 0.25}),
                                       PotentialDescriptor(BoxOddSign{Complex(1, 0), 1.0})}) {
    for (const Complex k : testsupport::random_k_points(8, 4242)) {
      const auto sp = param_from_k(k);
      const WeylMatrix W = weyl_matrix(sp, q, ZeroPotential{});
      const Complex det = (a - W.e11) * (0.0 - W.e22) - (0.0 - W.e12) * (0.0 - W.e21);
      const Complex scalar = a - weyl_scalar(sp, q).value;
      CHECK(std::abs(det - (-Complex(0, 2) / k) * scalar) < 1e-8);
    }
  }
}

TEST_CASE("sampled potential Weyl value tracks a dense sampled refinement") {
  // sanity for the quadrature path: the sampled bump against its own oracle
  const Sampled s = testsupport::sampled_bump();
  const auto sp = param_from_k(Complex(0.5, 0.9));
  const auto got = weyl_scalar(sp, PotentialDescriptor(s), 1e-8);
  CHECK(got.method == EvalMethod::quadrature);
  // reference assembled from trapezoid oracles
  const auto qf = testsupport::potential_fn(PotentialDescriptor(s));
  const auto qcf = [&](double x) { return std::conj(qf(x)); };
  const Complex g0 = testsupport::conv_oracle(sp.k, qf, -2, 2, 0, false);
  const Complex g0c = testsupport::conv_oracle(sp.k, qcf, -2, 2, 0, false);
  const Complex bil = testsupport::bilinear_oracle(sp.k, qf, -2, 2, qf, -2, 2, 3000);
  const Complex ref = bil + Complex(0, 2) * sp.k * (1.0 + g0) * (1.0 + g0c);
  CHECK(std::abs(got.value - ref) < 5e-6);
}
