#include "pointspec/model.hpp"

#include <cmath>
#include <limits>

#include "json.hpp"

namespace pointspec {

using nlohmann::json;

double CouplingMatrix::frobenius_norm() const {
  return std::sqrt(std::norm(a) + std::norm(b) + std::norm(c) + std::norm(d));
}

bool is_zero_potential(const PotentialDescriptor& q) {
  return std::holds_alternative<ZeroPotential>(q);
}

bool has_compact_support(const PotentialDescriptor& q) {
  return !std::holds_alternative<ExpEven>(q);
}

double support_radius(const PotentialDescriptor& q) {
  if (const auto* b = std::get_if<BoxEven>(&q)) return b->rho;
  if (const auto* b = std::get_if<BoxOddSign>(&q)) return b->rho;
  if (const auto* s = std::get_if<Sampled>(&q))
    return std::max(std::abs(s->nodes.front()), std::abs(s->nodes.back()));
  return 0;
}

double potential_decay_rate(const PotentialDescriptor& q) {
  if (const auto* e = std::get_if<ExpEven>(&q)) return e->mu;
  return std::numeric_limits<double>::infinity();
}

Complex potential_value(const PotentialDescriptor& q, double x) {
  if (std::holds_alternative<ZeroPotential>(q)) return 0;
  if (const auto* b = std::get_if<BoxEven>(&q)) {
    if (std::abs(x) > b->rho) return 0;
    if (std::abs(x) == b->rho) return 0.5 * b->Z;
    return b->Z;
  }
  if (const auto* b = std::get_if<BoxOddSign>(&q)) {
    if (std::abs(x) > b->rho || x == 0) return 0;
    if (std::abs(x) == b->rho) return 0.5 * (x > 0 ? b->Z : -b->Z);
    return x > 0 ? b->Z : -b->Z;
  }
  if (const auto* e = std::get_if<ExpEven>(&q)) return e->c * std::exp(-e->mu * std::abs(x));
  const auto& s = std::get<Sampled>(q);
  if (x < s.nodes.front() || x > s.nodes.back()) return 0;
  auto it = std::upper_bound(s.nodes.begin(), s.nodes.end(), x);
  if (it == s.nodes.begin()) return s.values.front();
  if (it == s.nodes.end()) return s.values.back();
  const size_t i = size_t(it - s.nodes.begin());
  const double t = (x - s.nodes[i - 1]) / (s.nodes[i] - s.nodes[i - 1]);
  return (1.0 - t) * s.values[i - 1] + t * s.values[i];
}

namespace {

bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

void require(bool ok, const std::string& path, const std::string& msg) {
  if (!ok) throw ValidationError(path + ": " + msg);
}

}  // namespace

void validate_potential(const PotentialDescriptor& q, const std::string& path) {
  if (std::holds_alternative<ZeroPotential>(q)) return;
  if (const auto* b = std::get_if<BoxEven>(&q)) {
    require(std::isfinite(b->Z), path + ".Z", "must be finite");
    require(std::isfinite(b->rho) && b->rho > 0, path + ".rho", "must be positive");
    return;
  }
  if (const auto* b = std::get_if<BoxOddSign>(&q)) {
    require(finite(b->Z), path + ".Z", "must be finite");
    require(std::isfinite(b->rho) && b->rho > 0, path + ".rho", "must be positive");
    return;
  }
  if (const auto* e = std::get_if<ExpEven>(&q)) {
    require(finite(e->c), path + ".c", "must be finite");
    require(std::isfinite(e->mu) && e->mu > 0, path + ".mu", "must be positive");
    return;
  }
  const auto& s = std::get<Sampled>(q);
  require(s.nodes.size() >= 2, path + ".nodes", "needs at least 2 nodes");
  require(s.nodes.size() == s.values.size(), path + ".values",
          "must match nodes in length");
  for (size_t i = 0; i < s.nodes.size(); ++i) {
    require(std::isfinite(s.nodes[i]), path + ".nodes", "must be finite");
    require(finite(s.values[i]), path + ".values", "must be finite");
    if (i > 0)
      require(s.nodes[i] > s.nodes[i - 1], path + ".nodes",
              "must be strictly increasing");
  }
}

void validate_model(const ModelSpec& m) {
  if (const auto* d = std::get_if<DeltaModel>(&m)) {
    require(finite(d->a), "a", "must be finite");
    validate_potential(d->q, "q");
    return;
  }
  const auto& g = std::get<GeneralModel>(m);
  require(finite(g.T.a), "T.a", "must be finite");
  require(finite(g.T.b), "T.b", "must be finite");
  require(finite(g.T.c), "T.c", "must be finite");
  require(finite(g.T.d), "T.d", "must be finite");
  validate_potential(g.q1, "q1");
  validate_potential(g.q2, "q2");
}

GeneralModel delta_to_general(const DeltaModel& m) {
  GeneralModel g;
  g.T.a = m.a;
  g.q1 = m.q;
  g.q2 = ZeroPotential{};
  return g;
}

// ---------------------------------------------------------------------------
// JSON documents
// ---------------------------------------------------------------------------

namespace {

Complex parse_complex(const json& j, const std::string& path) {
  if (j.is_number()) return Complex(j.get<double>(), 0);
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return Complex(j[0].get<double>(), j[1].get<double>());
  throw ParseError(path + ": expected a number or [re, im]");
}

double parse_real(const json& j, const std::string& path) {
  if (j.is_number()) return j.get<double>();
  throw ParseError(path + ": expected a number");
}

const json& field(const json& j, const char* name, const std::string& path) {
  auto it = j.find(name);
  if (it == j.end()) throw ParseError(path + "." + name + ": missing");
  return *it;
}

PotentialDescriptor parse_potential(const json& j, const std::string& path) {
  if (!j.is_object()) throw ParseError(path + ": expected an object");
  const std::string kind = field(j, "kind", path).get<std::string>();
  PotentialDescriptor q;
  if (kind == "zero") {
    q = ZeroPotential{};
  } else if (kind == "box_even") {
    BoxEven b;
    const Complex Z = parse_complex(field(j, "Z", path), path + ".Z");
    if (Z.imag() != 0) throw ValidationError(path + ".Z: must be real for box_even");
    b.Z = Z.real();
    b.rho = parse_real(field(j, "rho", path), path + ".rho");
    q = b;
  } else if (kind == "box_odd_sign") {
    BoxOddSign b;
    b.Z = parse_complex(field(j, "Z", path), path + ".Z");
    b.rho = parse_real(field(j, "rho", path), path + ".rho");
    q = b;
  } else if (kind == "exp_even") {
    ExpEven e;
    e.c = parse_complex(field(j, "c", path), path + ".c");
    e.mu = parse_real(field(j, "mu", path), path + ".mu");
    q = e;
  } else if (kind == "sampled") {
    Sampled s;
    const json& nodes = field(j, "nodes", path);
    const json& values = field(j, "values", path);
    if (!nodes.is_array()) throw ParseError(path + ".nodes: expected an array");
    if (!values.is_array()) throw ParseError(path + ".values: expected an array");
    for (size_t i = 0; i < nodes.size(); ++i)
      s.nodes.push_back(parse_real(nodes[i], path + ".nodes[" + std::to_string(i) + "]"));
    for (size_t i = 0; i < values.size(); ++i)
      s.values.push_back(
          parse_complex(values[i], path + ".values[" + std::to_string(i) + "]"));
    q = s;
  } else {
    throw ParseError(path + ".kind: unknown kind '" + kind + "'");
  }
  validate_potential(q, path);
  return q;
}

json complex_json(Complex z) { return json::array({z.real(), z.imag()}); }

json potential_json(const PotentialDescriptor& q) {
  json j;
  if (std::holds_alternative<ZeroPotential>(q)) {
    j["kind"] = "zero";
  } else if (const auto* b = std::get_if<BoxEven>(&q)) {
    j["kind"] = "box_even";
    j["Z"] = b->Z;
    j["rho"] = b->rho;
  } else if (const auto* b = std::get_if<BoxOddSign>(&q)) {
    j["kind"] = "box_odd_sign";
    j["Z"] = complex_json(b->Z);
    j["rho"] = b->rho;
  } else if (const auto* e = std::get_if<ExpEven>(&q)) {
    j["kind"] = "exp_even";
    j["c"] = complex_json(e->c);
    j["mu"] = e->mu;
  } else {
    const auto& s = std::get<Sampled>(q);
    j["kind"] = "sampled";
    j["nodes"] = s.nodes;
    json vals = json::array();
    for (const auto& v : s.values) vals.push_back(complex_json(v));
    j["values"] = vals;
  }
  return j;
}

json parse_document(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw ParseError("document: not valid JSON");
  if (!j.is_object()) throw ParseError("document: expected a JSON object");
  return j;
}

}  // namespace

ModelSpec parse_model(const std::string& text) {
  const json j = parse_document(text);
  const std::string kase = field(j, "case", "document").get<std::string>();
  ModelSpec m;
  if (kase == "delta") {
    DeltaModel d;
    d.a = parse_complex(field(j, "a", "document"), "a");
    d.q = parse_potential(field(j, "q", "document"), "q");
    m = d;
  } else if (kase == "general") {
    GeneralModel g;
    const json& T = field(j, "T", "document");
    g.T.a = parse_complex(field(T, "a", "T"), "T.a");
    g.T.b = parse_complex(field(T, "b", "T"), "T.b");
    g.T.c = parse_complex(field(T, "c", "T"), "T.c");
    g.T.d = parse_complex(field(T, "d", "T"), "T.d");
    g.q1 = parse_potential(field(j, "q1", "document"), "q1");
    g.q2 = parse_potential(field(j, "q2", "document"), "q2");
    m = g;
  } else {
    throw ParseError("case: expected 'delta' or 'general'");
  }
  validate_model(m);
  return m;
}

PotentialDescriptor parse_potential_document(const std::string& text) {
  const json j = parse_document(text);
  if (j.contains("kind")) return parse_potential(j, "q");
  if (j.contains("case")) {
    const ModelSpec m = parse_model(text);
    if (const auto* d = std::get_if<DeltaModel>(&m)) return d->q;
    throw ValidationError("document: a general model has no single potential q");
  }
  throw ParseError("document: expected a potential {kind: ...} or a delta model");
}

std::string model_to_json(const ModelSpec& m) {
  json j;
  if (const auto* d = std::get_if<DeltaModel>(&m)) {
    j["case"] = "delta";
    j["a"] = complex_json(d->a);
    j["q"] = potential_json(d->q);
  } else {
    const auto& g = std::get<GeneralModel>(m);
    j["case"] = "general";
    j["T"] = {{"a", complex_json(g.T.a)},
              {"b", complex_json(g.T.b)},
              {"c", complex_json(g.T.c)},
              {"d", complex_json(g.T.d)}};
    j["q1"] = potential_json(g.q1);
    j["q2"] = potential_json(g.q2);
  }
  return j.dump();
}

// ---------------------------------------------------------------------------
// Branch map
// ---------------------------------------------------------------------------

SpectralParameter k_from_lambda(Complex lambda, std::optional<BoundarySide> side) {
  if (lambda == Complex(0, 0))
    throw BranchPointError("lambda = 0 is the branch point of lambda = k^2");
  if (lambda.imag() == 0 && lambda.real() > 0) {
    if (!side || *side == BoundarySide::none)
      throw AmbiguousBoundaryError(
          "lambda on (0, inf) needs a boundary side (plus or minus)");
    const double r = std::sqrt(lambda.real());
    SpectralParameter sp;
    sp.k = (*side == BoundarySide::plus) ? Complex(r, 0) : Complex(-r, 0);
    sp.lambda = lambda;
    sp.side = *side;
    return sp;
  }
  // principal log with the cut rotated onto [0, inf)
  double arg = std::arg(lambda);
  if (arg <= 0) arg += 2 * M_PI;  // arg in (0, 2*pi]
  const double mod = std::abs(lambda);
  Complex k = std::sqrt(mod) * std::exp(Complex(0, 0.5 * arg));
  if (k.imag() < 0) k = -k;  // enforce the upper half-plane on the cut itself
  SpectralParameter sp;
  sp.k = k;
  sp.lambda = lambda;
  sp.side = BoundarySide::none;
  return sp;
}

SpectralParameter param_from_k(Complex k) {
  if (k == Complex(0, 0)) throw BranchPointError("k = 0 is the branch point");
  if (k.imag() < 0)
    throw ValidationError("k must lie in the closed upper half-plane");
  SpectralParameter sp;
  sp.k = k;
  sp.lambda = k * k;
  sp.side = (k.imag() == 0) ? (k.real() > 0 ? BoundarySide::plus : BoundarySide::minus)
                            : BoundarySide::none;
  return sp;
}

}  // namespace pointspec
