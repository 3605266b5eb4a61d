// Python bindings for the main operations: model parsing, Weyl values,
// eigenvalue search, exceptional points, singularities, embedded
// eigenvalues, classification, and the finite-difference oracle.

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "pointspec/eigenfunctions.hpp"
#include "pointspec/oracle.hpp"
#include "pointspec/spectrum.hpp"
#include "pointspec/symmetry.hpp"

namespace py = pybind11;
using namespace pointspec;

namespace {

/// Opaque holder so the model variant crosses the boundary as one type.
struct PyModel {
  ModelSpec spec;
};

SpectralParameter make_param(Complex lambda, const std::string& side) {
  std::optional<BoundarySide> s;
  if (side == "plus") s = BoundarySide::plus;
  if (side == "minus") s = BoundarySide::minus;
  return k_from_lambda(lambda, s);
}

const char* parity_name(Parity p) {
  switch (p) {
    case Parity::even:
      return "even";
    case Parity::odd:
      return "odd";
    default:
      return "neither";
  }
}

}  // namespace

PYBIND11_MODULE(_pointspec, m) {
  m.doc() = "1D Schrodinger operators with nonlocal one-point interactions";

  py::register_exception<Error>(m, "PointspecError");

  py::class_<PyModel>(m, "Model")
      .def_static("parse",
                  [](const std::string& text) { return PyModel{parse_model(text)}; })
      .def("to_json", [](const PyModel& mm) { return model_to_json(mm.spec); });

  m.def("delta_model", [](Complex a, const std::string& q_json) {
    DeltaModel d;
    d.a = a;
    d.q = parse_potential_document(q_json);
    validate_model(ModelSpec(d));
    return PyModel{ModelSpec(d)};
  });

  m.def("k_from_lambda", [](Complex lambda, const std::string& side) {
    const SpectralParameter sp = make_param(lambda, side);
    return py::make_tuple(sp.k, sp.lambda);
  }, py::arg("lambda_"), py::arg("side") = "");

  m.def("weyl", [](const PyModel& model, Complex lambda, const std::string& side,
                   double tol) -> py::object {
    const SpectralParameter sp = make_param(lambda, side);
    if (const auto* d = std::get_if<DeltaModel>(&model.spec))
      return py::cast(weyl_scalar(sp, d->q, tol).value);
    const auto& g = std::get<GeneralModel>(model.spec);
    const WeylMatrix W = weyl_matrix(sp, g.q1, g.q2, tol);
    return py::make_tuple(py::make_tuple(W.e11, W.e12), py::make_tuple(W.e21, W.e22));
  }, py::arg("model"), py::arg("lambda_"), py::arg("side") = "", py::arg("tol") = 1e-10);

  m.def("weyl_derivative", [](const PyModel& model, Complex lambda,
                              const std::string& side, double tol) {
    const auto* d = std::get_if<DeltaModel>(&model.spec);
    if (!d) throw ValidationError("weyl_derivative needs a delta model");
    return weyl_derivative(make_param(lambda, side), d->q, tol);
  }, py::arg("model"), py::arg("lambda_"), py::arg("side") = "", py::arg("tol") = 1e-10);

  m.def("find_eigenvalues", [](const PyModel& model, double kr0, double kr1,
                               double ki0, double ki1, double tol) {
    SearchRegion r;
    r.k_re_min = kr0;
    r.k_re_max = kr1;
    r.k_im_min = ki0;
    r.k_im_max = ki1;
    r.margin = std::min(1e-6, ki0);
    py::list out;
    for (const auto& ev : find_eigenvalues(model.spec, r, tol)) {
      py::dict row;
      row["lambda"] = ev.lambda;
      row["k"] = ev.k;
      row["geometric_mult"] = ev.geometric_mult;
      row["algebraic_mult"] = ev.algebraic_mult;
      row["residual"] = ev.residual;
      out.append(row);
    }
    return out;
  }, py::arg("model"), py::arg("k_re_min") = -10.0, py::arg("k_re_max") = 10.0,
     py::arg("k_im_min") = 1e-6, py::arg("k_im_max") = 10.0, py::arg("tol") = 1e-10);

  m.def("find_exceptional_points", [](const std::string& q_json, double kr0, double kr1,
                                      double ki0, double ki1, double tol) {
    const PotentialDescriptor q = parse_potential_document(q_json);
    SearchRegion r;
    r.k_re_min = kr0;
    r.k_re_max = kr1;
    r.k_im_min = ki0;
    r.k_im_max = ki1;
    r.margin = std::min(1e-6, ki0);
    py::list out;
    for (const auto& ep : find_exceptional_points(q, r, tol))
      out.append(py::make_tuple(ep.lambda0, ep.a));
    return out;
  }, py::arg("q_json"), py::arg("k_re_min") = -10.0, py::arg("k_re_max") = 10.0,
     py::arg("k_im_min") = 1e-3, py::arg("k_im_max") = 10.0, py::arg("tol") = 1e-10);

  m.def("singularity_scan", [](const std::string& q_json, std::vector<double> ks,
                               double tol) {
    const PotentialDescriptor q = parse_potential_document(q_json);
    py::list out;
    for (const auto& rec : singularity_scan(q, ks, tol))
      out.append(py::make_tuple(rec.lambda, rec.a_plus, rec.is_singular));
    return out;
  }, py::arg("q_json"), py::arg("k_grid"), py::arg("tol") = 1e-8);

  m.def("embedded_eigenvalues", [](const std::string& q_json, double k_lo, double k_hi,
                                   double tol) {
    const PotentialDescriptor q = parse_potential_document(q_json);
    py::list out;
    for (const auto& e : embedded_eigenvalues(q, k_lo, k_hi, tol))
      out.append(py::make_tuple(e.k0, e.lambda, e.a));
    return out;
  }, py::arg("q_json"), py::arg("k_lo"), py::arg("k_hi"), py::arg("tol") = 1e-10);

  m.def("blowup_ratio", [](const PyModel& model, Complex lambda, double tol) {
    const auto* d = std::get_if<DeltaModel>(&model.spec);
    if (!d) throw ValidationError("blowup_ratio needs a delta model");
    return blowup_ratio(*d, lambda, tol);
  }, py::arg("model"), py::arg("lambda_"), py::arg("tol") = 1e-10);

  m.def("classify", [](const PyModel& model) {
    const SymmetryReport r = classify(model.spec);
    py::dict out;
    out["self_adjoint"] = r.self_adjoint;
    out["pt_symmetric_condition"] = r.pt_symmetric;
    out["p_self_adjoint_condition"] = r.p_self_adjoint;
    out["q1_parity"] = parity_name(r.q1.parity);
    out["q2_parity"] = parity_name(r.q2.parity);
    return out;
  });

  m.def("eigenfunction_values", [](const PyModel& model, Complex lambda,
                                   const std::string& side, std::vector<double> xs,
                                   double tol) {
    const auto* d = std::get_if<DeltaModel>(&model.spec);
    if (!d) throw ValidationError("eigenfunction_values needs a delta model");
    const Eigenfunction u = u_delta(make_param(lambda, side), d->q, tol);
    std::vector<Complex> out;
    out.reserve(xs.size());
    for (double x : xs) out.push_back(u(x));
    return out;
  }, py::arg("model"), py::arg("lambda_"), py::arg("side") = "", py::arg("xs"),
     py::arg("tol") = 1e-10);

  m.def("fd_nearest_eigenvalue", [](const PyModel& model, Complex shift, double L,
                                    int N) {
    const auto* d = std::get_if<DeltaModel>(&model.spec);
    if (!d) throw ValidationError("the oracle discretizes delta models only");
    const auto r = fd_nearest_eigenvalue(*d, shift, make_grid(L, N));
    return py::make_tuple(r.lambda, r.residual);
  }, py::arg("model"), py::arg("shift"), py::arg("L") = 20.0, py::arg("N") = 2001);
}
