#include "doctest.h"
#include "oracles.hpp"
#include "pointspec/spectrum.hpp"

using namespace pointspec;

namespace {

const PotentialDescriptor kExpQ = ExpEven{Complex(0, 0.5), 0.25};
const Complex kEpLambda(0.6875, std::sqrt(3.0) / 4.0);
const Complex kEpCoupling(-1.0, 3.0 * std::sqrt(3.0) / 2.0);

SearchRegion default_region() { return SearchRegion{}; }

/// densely sampled boundary phase count, independent of the search machinery
int brute_winding(const std::function<Complex(Complex)>& f, double x0, double x1,
                  double y0, double y1, int n = 4000) {
  const Complex corners[5] = {{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}, {x0, y0}};
  double total = 0;
  for (int e = 0; e < 4; ++e) {
    Complex prev = f(corners[e]);
    for (int i = 1; i <= n; ++i) {
      const Complex z = corners[e] + (corners[e + 1] - corners[e]) * (double(i) / n);
      const Complex cur = f(z);
      total += std::arg(cur / prev);
      prev = cur;
    }
  }
  return int(std::lround(total / (2 * M_PI)));
}

}  // namespace

TEST_CASE("characteristic values") {
  SUBCASE("delta well at its eigenvalue") {
    const DeltaModel m{Complex(-2, 0), ZeroPotential{}};
    CHECK(std::abs(char_value(ModelSpec(m), k_from_lambda(Complex(-1, 0)))) < 1e-14);
  }
  SUBCASE("antisymmetric off-diagonal coupling is identically degenerate") {
    GeneralModel g;
    g.T.b = Complex(2, 0);
    g.T.c = Complex(-2, 0);
    for (const Complex k : testsupport::random_k_points(6, 9)) {
      CHECK(std::abs(char_value(ModelSpec(g), param_from_k(k))) < 1e-12);
    }
  }
  SUBCASE("positive real coupling keeps the characteristic away from zero") {
    const DeltaModel m{Complex(1, 0), ZeroPotential{}};
    double lowest = 1e300;
    for (double x = -3; x <= 3; x += 0.5)
      for (double y = 0.1; y <= 3; y += 0.4)
        lowest = std::min(lowest,
                          std::abs(char_value(ModelSpec(m), param_from_k({x, y}))));
    CHECK(lowest > 0.5);
  }
}

TEST_CASE("local polynomial roots for vanishing potentials") {
  SUBCASE("pure attractive delta") {
    CouplingMatrix T;
    T.a = Complex(-2, 0);
    const auto r = local_char_roots(T);
    REQUIRE(r.lambdas.size() == 1);
    CHECK(std::abs(r.lambdas[0] - Complex(-1, 0)) < 1e-14);
    CHECK_FALSE(r.whole_domain);
  }
  SUBCASE("zero coupling matrix has no discrete spectrum") {
    const auto r = local_char_roots(CouplingMatrix{});
    CHECK(r.lambdas.empty());
    CHECK_FALSE(r.whole_domain);
  }
  SUBCASE("b = 2, c = -2 with zero diagonal degenerates the whole family") {
    CouplingMatrix T;
    T.b = Complex(2, 0);
    T.c = Complex(-2, 0);
    CHECK(local_char_roots(T).whole_domain);
  }
}

TEST_CASE("eigenvalue search on the delta well") {
  const DeltaModel m{Complex(-2, 0), ZeroPotential{}};
  const auto eigs = find_eigenvalues(ModelSpec(m), default_region());
  REQUIRE(eigs.size() == 1);
  CHECK(std::abs(eigs[0].lambda - Complex(-1, 0)) < 1e-10);
  CHECK(eigs[0].geometric_mult == 1);
  CHECK(eigs[0].algebraic_mult == 1);
  CHECK(eigs[0].residual < 1e-10);
}

TEST_CASE("eigenvalue search finds the double point of the exponential model") {
  const DeltaModel m{kEpCoupling, kExpQ};
  const auto eigs = find_eigenvalues(ModelSpec(m), default_region());
  REQUIRE(eigs.size() == 1);
  CHECK(std::abs(eigs[0].lambda - kEpLambda) < 1e-8);
  CHECK(eigs[0].geometric_mult == 1);
  CHECK(eigs[0].algebraic_mult == 2);
}

TEST_CASE("repulsive real coupling has an empty discrete spectrum") {
  const DeltaModel m{Complex(1, 0), ZeroPotential{}};
  CHECK(find_eigenvalues(ModelSpec(m), default_region()).empty());
}

TEST_CASE("real couplings produce only real eigenvalues") {
  for (const double a : {-2.0, -0.7}) {
    const DeltaModel m{Complex(a, 0), ZeroPotential{}};
    for (const auto& ev : find_eigenvalues(ModelSpec(m), default_region()))
      CHECK(std::abs(ev.lambda.imag()) < 1e-10);
  }
}

TEST_CASE("degenerate family raises its dedicated error") {
  GeneralModel g;
  g.T.b = Complex(2, 0);
  g.T.c = Complex(-2, 0);
  CHECK_THROWS_AS(find_eigenvalues(ModelSpec(g), default_region()),
                  DegenerateFamilyError);
}

TEST_CASE("delta conversion preserves the spectrum") {
  const DeltaModel m{Complex(-1, 2.0), ExpEven{Complex(0, 0.5), 0.25}};
  const auto d_eigs = find_eigenvalues(ModelSpec(m), default_region());
  const auto g_eigs = find_eigenvalues(ModelSpec(delta_to_general(m)), default_region());
  REQUIRE(d_eigs.size() == g_eigs.size());
  for (size_t i = 0; i < d_eigs.size(); ++i) {
    CHECK(std::abs(d_eigs[i].lambda - g_eigs[i].lambda) < 1e-8);
    CHECK(d_eigs[i].algebraic_mult == g_eigs[i].algebraic_mult);
  }
}

TEST_CASE("polynomial roots agree with the matrix search for random couplings") {
  std::mt19937 rng(1312);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  int checked = 0;
  for (int trial = 0; trial < 12 && checked < 5; ++trial) {
    CouplingMatrix T;
    T.a = {u(rng), u(rng)};
    T.b = {u(rng), u(rng)};
    T.c = {u(rng), u(rng)};
    T.d = {u(rng), u(rng)};
    const auto roots = local_char_roots(T);
    if (roots.whole_domain) continue;
    // keep samples whose roots are well inside the searched rectangle
    bool usable = !roots.lambdas.empty();
    for (const Complex lam : roots.lambdas) {
      const Complex k = k_from_lambda(lam).k;
      if (k.imag() < 0.05 || std::abs(k.real()) > 9 || k.imag() > 9) usable = false;
    }
    if (!usable) continue;
    ++checked;
    GeneralModel g;
    g.T = T;
    const auto eigs = find_eigenvalues(ModelSpec(g), default_region());
    for (const Complex lam : roots.lambdas) {
      bool found = false;
      for (const auto& ev : eigs)
        if (std::abs(ev.lambda - lam) < 1e-8) found = true;
      CHECK(found);
    }
  }
  CHECK(checked >= 3);
}

TEST_CASE("contour index distinguishes simple and double zeros") {
  SUBCASE("simple eigenvalue of the delta well") {
    const DeltaModel m{Complex(-2, 0), ZeroPotential{}};
    CHECK(algebraic_multiplicity(ModelSpec(m), Complex(-1, 0), 0.3) == 1);
  }
  SUBCASE("double point of the exponential model, and its conjugate") {
    const DeltaModel m{kEpCoupling, kExpQ};
    CHECK(algebraic_multiplicity(ModelSpec(m), kEpLambda, 0.1) == 2);
    const DeltaModel mc{std::conj(kEpCoupling), kExpQ};
    CHECK(algebraic_multiplicity(ModelSpec(mc), std::conj(kEpLambda), 0.1) == 2);
  }
  SUBCASE("a non-zero raises a validation error") {
    const DeltaModel m{Complex(-2, 0), ZeroPotential{}};
    CHECK_THROWS_AS(algebraic_multiplicity(ModelSpec(m), Complex(-2.5, 0), 0.2),
                    ValidationError);
  }
}

TEST_CASE("winding count over the region equals the multiplicity sum") {
  const DeltaModel m{kEpCoupling, kExpQ};
  const auto f = [&](Complex k) { return char_value(ModelSpec(m), param_from_k(k)); };
  const int winding = brute_winding(f, -4, 4, 0.02, 4);
  const auto eigs = find_eigenvalues(ModelSpec(m), default_region());
  int total = 0;
  for (const auto& ev : eigs) total += ev.algebraic_mult;
  CHECK(winding == total);
}

TEST_CASE("exceptional point scan") {
  SUBCASE("free case is empty") {
    SearchRegion r;
    r.k_re_min = -3;
    r.k_re_max = 3;
    r.k_im_min = 1e-3;
    r.k_im_max = 3;
    CHECK(find_exceptional_points(ZeroPotential{}, r).empty());
  }
  SUBCASE("slowly decaying exponential has a conjugate pair") {
    SearchRegion r;
    r.k_im_min = 1e-3;
    const auto pts = find_exceptional_points(kExpQ, r);
    REQUIRE(pts.size() == 2);
    bool found = false, found_conj = false;
    for (const auto& ep : pts) {
      if (std::abs(ep.lambda0 - kEpLambda) < 1e-8 && std::abs(ep.a - kEpCoupling) < 1e-8)
        found = true;
      if (std::abs(ep.lambda0 - std::conj(kEpLambda)) < 1e-8 &&
          std::abs(ep.a - std::conj(kEpCoupling)) < 1e-8)
        found_conj = true;  // closed under conjugation
    }
    CHECK(found);
    CHECK(found_conj);
  }
  SUBCASE("fast decay removes the exceptional points") {
    SearchRegion r;
    r.k_im_min = 1e-3;
    CHECK(find_exceptional_points(ExpEven{Complex(0, 0.5), 0.75}, r).empty());
  }
}

TEST_CASE("singularity scan verdicts") {
  SUBCASE("free case: every positive energy is flagged") {
    const auto recs = singularity_scan(ZeroPotential{}, {2.0});
    REQUIRE(recs.size() == 1);
    CHECK(recs[0].lambda == 4.0);
    CHECK(std::abs(recs[0].a_plus - Complex(0, 4)) < 1e-12);
    CHECK(recs[0].is_singular);
  }
  SUBCASE("sign box: flagged on a whole grid") {
    std::vector<double> grid;
    for (int i = 1; i <= 20; ++i) grid.push_back(0.5 * i);
    for (const auto& rec : singularity_scan(BoxOddSign{Complex(1, 0), 1.0}, grid))
      CHECK(rec.is_singular);
  }
  SUBCASE("real exponential coupling at its embedded energy is not flagged") {
    const auto recs =
        singularity_scan(ExpEven{Complex(1, 0), 0.5}, {std::sqrt(0.75)});
    REQUIRE(recs.size() == 1);
    CHECK_FALSE(recs[0].is_singular);
    CHECK(std::abs(recs[0].a_plus - Complex(-3, 0)) < 1e-10);
  }
  SUBCASE("zero grid point is rejected") {
    CHECK_THROWS_AS(singularity_scan(ZeroPotential{}, {0.0}), ValidationError);
  }
}

TEST_CASE("resolvent blow-up ratio") {
  SUBCASE("grows toward a boundary match") {
    const DeltaModel m{Complex(0, 4), ZeroPotential{}};
    double prev = 0;
    for (const double eps : {1e-2, 1e-3, 1e-4}) {
      const double r = blowup_ratio(m, Complex(4, eps));
      if (prev > 0) CHECK(r >= 5.0 * prev);
      prev = r;
    }
  }
  SUBCASE("bounded for the self-adjoint well") {
    const DeltaModel m{Complex(-2, 0), ZeroPotential{}};
    for (double eps = 1e-4; eps <= 1e-1; eps *= 10)
      CHECK(blowup_ratio(m, Complex(1, eps)) < 3.0);
  }
  SUBCASE("finite far from the spectrum") {
    const DeltaModel m{Complex(0, 4), ZeroPotential{}};
    CHECK(std::isfinite(blowup_ratio(m, Complex(0, 100))));
  }
  SUBCASE("needs a nonreal lambda") {
    const DeltaModel m{Complex(-2, 0), ZeroPotential{}};
    CHECK_THROWS_AS(blowup_ratio(m, Complex(1, 0)), ValidationError);
  }
}

TEST_CASE("boundary-curve match distance") {
  // for q = 0 the curve is the imaginary axis: distance = |Re a|
  CHECK(singularity_match_distance(ZeroPotential{}, Complex(0, 1.2)) < 1e-9);
  CHECK(singularity_match_distance(ZeroPotential{}, Complex(0.4, 1.2)) ==
        doctest::Approx(0.4).epsilon(1e-6));
  CHECK(singularity_match_distance(ZeroPotential{}, Complex(0, 0)) > 1e-6);
}

TEST_CASE("embedded eigenvalues of even compactly supported potentials") {
  SUBCASE("half-cosine box") {
    const auto out = embedded_eigenvalues(BoxEven{0.5, M_PI}, 0.2, 3.0);
    REQUIRE(out.size() == 1);
    CHECK(std::abs(out[0].lambda - 1.0) < 1e-10);
    CHECK(std::abs(out[0].a + M_PI / 2) < 1e-8);
  }
  SUBCASE("weak box has none below k = 10") {
    CHECK(embedded_eigenvalues(BoxEven{0.1, 1.0}, 0.05, 10.0).empty());
  }
  SUBCASE("strong box: located root matches the explicit coupling formula") {
    const double Z = 5.0, rho = 1.0;
    const auto out = embedded_eigenvalues(BoxEven{Z, rho}, 0.5, 10.0);
    REQUIRE(!out.empty());
    for (const auto& e : out) {
      CHECK(std::abs(Z * (1.0 - std::cos(e.k0 * rho)) - e.k0 * e.k0) < 1e-8);
      const double aref =
          Z * Z / (e.k0 * e.k0) * (std::sin(2 * e.k0 * rho) / e.k0 - 2 * rho);
      CHECK(std::abs(e.a - aref) < 1e-8);
    }
  }
  SUBCASE("odd potentials are rejected") {
    CHECK_THROWS_AS(embedded_eigenvalues(BoxOddSign{Complex(1, 0), 1.0}, 0.1, 5.0),
                    ValidationError);
  }
  SUBCASE("even real sampled potentials are accepted") {
    Sampled s;
    const int n = 81;
    for (int i = 0; i < n; ++i) {
      const double x = -M_PI + 2 * M_PI * i / (n - 1);
      s.nodes.push_back(x);
      s.values.push_back(Complex(0.5, 0));
    }
    // a fine piecewise-linear rendering of the half-cosine box
    const auto out = embedded_eigenvalues(PotentialDescriptor(s), 0.5, 2.0, 1e-8);
    REQUIRE(out.size() == 1);
    CHECK(std::abs(out[0].lambda - 1.0) < 1e-3);
  }
}

TEST_CASE("sampled potential round-trip: coupling from the Weyl value is found") {
  Sampled tent;
  tent.nodes = {-1.0, 0.0, 1.0};
  tent.values = {Complex(0, 0), Complex(1, 0.3), Complex(0, 0)};
  const PotentialDescriptor q = tent;
  const Complex lambda0(-0.5, 0.3);
  const auto sp = k_from_lambda(lambda0);
  const Complex a = weyl_scalar(sp, q, 1e-10).value;
  SearchRegion r;
  r.k_re_min = sp.k.real() - 0.2;
  r.k_re_max = sp.k.real() + 0.2;
  r.k_im_min = sp.k.imag() - 0.2;
  r.k_im_max = sp.k.imag() + 0.2;
  r.margin = 1e-6;
  const auto eigs = find_eigenvalues(ModelSpec(DeltaModel{a, q}), r, 1e-8);
  REQUIRE(eigs.size() == 1);
  CHECK(std::abs(eigs[0].lambda - lambda0) < 1e-7);
}

TEST_CASE("interior search stays away from embedded energies") {
  // the embedded level lambda = 1 sits on the continuous spectrum; the
  // rectangle search (which keeps a margin above the real axis) must not
  // report it, even for its own coupling
  const DeltaModel m{Complex(-M_PI / 2, 0), BoxEven{0.5, M_PI}};
  for (const auto& ev : find_eigenvalues(ModelSpec(m), SearchRegion{}))
    CHECK(std::abs(ev.lambda - Complex(1, 0)) > 1e-3);
}

TEST_CASE("nonreal eigenvalues demand a matching coupling half-plane") {
  // an eigenvalue with Im lambda > 0 forces Im a > 0
  const DeltaModel m{Complex(-1, 1), ZeroPotential{}};
  const auto eigs = find_eigenvalues(ModelSpec(m), default_region());
  REQUIRE(eigs.size() == 1);
  CHECK(eigs[0].lambda.imag() > 0);
  CHECK(m.a.imag() > 0);
}
