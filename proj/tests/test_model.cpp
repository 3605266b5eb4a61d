#include "doctest.h"
#include "pointspec/model.hpp"
#include "oracles.hpp"

using namespace pointspec;

TEST_CASE("branch map principal values") {
  SUBCASE("lambda = -1 gives k = i") {
    const auto sp = k_from_lambda(Complex(-1, 0));
    CHECK(std::abs(sp.k - Complex(0, 1)) < 1e-15);
    CHECK(sp.side == BoundarySide::none);
  }
  SUBCASE("lambda = i gives k = (1+i)/sqrt(2)") {
    const auto sp = k_from_lambda(Complex(0, 1));
    const Complex expect = Complex(1, 1) / std::sqrt(2.0);
    CHECK(std::abs(sp.k - expect) < 1e-15);
  }
  SUBCASE("lambda = 4 on the minus side gives k = -2") {
    const auto sp = k_from_lambda(Complex(4, 0), BoundarySide::minus);
    CHECK(std::abs(sp.k - Complex(-2, 0)) < 1e-15);
    CHECK(sp.side == BoundarySide::minus);
  }
}

TEST_CASE("branch map errors") {
  CHECK_THROWS_AS(k_from_lambda(Complex(0, 0)), BranchPointError);
  CHECK_THROWS_AS(k_from_lambda(Complex(4, 0)), AmbiguousBoundaryError);
}

TEST_CASE("branch map inverts the square on the upper half-plane") {
  for (const Complex k : testsupport::random_k_points(200)) {
    const auto sp = k_from_lambda(k * k);
    CHECK(std::abs(sp.k - k) <= 1e-14 * std::abs(k));
    CHECK(std::abs(sp.lambda - k * k) <= 1e-14 * std::abs(k * k));
    CHECK(sp.k.imag() > 0);
  }
}

TEST_CASE("param_from_k records the boundary side") {
  CHECK(param_from_k(Complex(2, 0)).side == BoundarySide::plus);
  CHECK(param_from_k(Complex(-2, 0)).side == BoundarySide::minus);
  CHECK(param_from_k(Complex(1, 1)).side == BoundarySide::none);
  CHECK_THROWS_AS(param_from_k(Complex(0, 0)), BranchPointError);
  CHECK_THROWS_AS(param_from_k(Complex(1, -1)), ValidationError);
}

TEST_CASE("delta embedding into the general form") {
  DeltaModel d;
  d.a = Complex(-2, 0);
  const GeneralModel g = delta_to_general(d);
  CHECK(g.T.a == Complex(-2, 0));
  CHECK(g.T.b == Complex(0, 0));
  CHECK(g.T.c == Complex(0, 0));
  CHECK(g.T.d == Complex(0, 0));
  CHECK(is_zero_potential(g.q1));
  CHECK(is_zero_potential(g.q2));

  DeltaModel d2;
  d2.a = Complex(1, 2);
  d2.q = ExpEven{Complex(0, 0.5), 0.25};
  const GeneralModel g2 = delta_to_general(d2);
  CHECK(g2.T.a == Complex(1, 2));
  CHECK(std::get<ExpEven>(g2.q1).mu == 0.25);
  CHECK(is_zero_potential(g2.q2));
}

TEST_CASE("model document parsing") {
  SUBCASE("delta with zero potential") {
    const ModelSpec m = parse_model(R"({"case":"delta","a":[-2,0],"q":{"kind":"zero"}})");
    const auto& d = std::get<DeltaModel>(m);
    CHECK(d.a == Complex(-2, 0));
    CHECK(is_zero_potential(d.q));
  }
  SUBCASE("general with two potentials") {
    const ModelSpec m = parse_model(R"({
      "case":"general",
      "T":{"a":[1,0],"b":[0,2],"c":[0,3],"d":[-1,0]},
      "q1":{"kind":"box_even","Z":0.5,"rho":3.14159},
      "q2":{"kind":"box_odd_sign","Z":[1,0],"rho":1}})");
    const auto& g = std::get<GeneralModel>(m);
    CHECK(g.T.b == Complex(0, 2));
    CHECK(std::get<BoxEven>(g.q1).Z == 0.5);
    CHECK(std::get<BoxOddSign>(g.q2).rho == 1.0);
  }
  SUBCASE("box_even rejects complex amplitude") {
    CHECK_THROWS_AS(
        parse_model(R"({"case":"delta","a":[0,0],"q":{"kind":"box_even","Z":[1,1],"rho":1}})"),
        ValidationError);
  }
  SUBCASE("missing fields report their path") {
    try {
      parse_model(R"({"case":"delta","a":[0,0],"q":{"kind":"exp_even","c":[1,0]}})");
      CHECK(false);
    } catch (const ParseError& e) {
      CHECK(std::string(e.what()).find("q.mu") != std::string::npos);
    }
  }
  SUBCASE("sampled nodes must increase strictly") {
    CHECK_THROWS_AS(parse_model(R"({"case":"delta","a":[0,0],
      "q":{"kind":"sampled","nodes":[0,0],"values":[[1,0],[1,0]]}})"),
                    ValidationError);
  }
  SUBCASE("unknown kind") {
    CHECK_THROWS_AS(parse_model(R"({"case":"delta","a":[0,0],"q":{"kind":"gauss"}})"),
                    ParseError);
  }
  SUBCASE("echo round-trips through the parser") {
    const ModelSpec m = parse_model(R"({
      "case":"delta","a":[1.5,-0.25],
      "q":{"kind":"sampled","nodes":[-1,0,1],"values":[[0,0],[1,0.5],[0,0]]}})");
    const ModelSpec m2 = parse_model(model_to_json(m));
    CHECK(model_to_json(m2) == model_to_json(m));
  }
}

TEST_CASE("potential document parsing accepts bare potentials and delta models") {
  const auto q1 = parse_potential_document(R"({"kind":"exp_even","c":[0,0.5],"mu":0.25})");
  CHECK(std::get<ExpEven>(q1).mu == 0.25);
  const auto q2 =
      parse_potential_document(R"({"case":"delta","a":[1,0],"q":{"kind":"zero"}})");
  CHECK(is_zero_potential(q2));
}

TEST_CASE("sampled potentials interpolate linearly and vanish outside") {
  Sampled s;
  s.nodes = {-1.0, 0.0, 2.0};
  s.values = {Complex(0, 0), Complex(2, 1), Complex(0, 0)};
  const PotentialDescriptor q = s;
  CHECK(std::abs(potential_value(q, -0.5) - Complex(1, 0.5)) < 1e-15);
  CHECK(std::abs(potential_value(q, 1.0) - Complex(1, 0.5)) < 1e-15);
  CHECK(potential_value(q, 3.0) == Complex(0, 0));
  CHECK(potential_value(q, -2.0) == Complex(0, 0));
}
