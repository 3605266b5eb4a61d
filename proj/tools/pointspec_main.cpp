// pointspec: spectral analysis of 1D Schrodinger operators with nonlocal
// one-point interactions. JSON reports on stdout; --csv for grid commands.

#include <atomic>
#include <chrono>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"
#include "pointspec/eigenfunctions.hpp"
#include "pointspec/oracle.hpp"
#include "pointspec/spectrum.hpp"
#include "pointspec/symmetry.hpp"

using nlohmann::json;
using namespace pointspec;

namespace {

json cj(Complex z) { return json::array({z.real(), z.imag()}); }

Complex parse_complex_arg(const std::string& s) {
  std::istringstream in(s);
  double re = 0, im = 0;
  char comma = 0;
  if (!(in >> re)) throw ValidationError("cannot parse complex value '" + s + "'");
  if (in >> comma) {
    if (comma != ',' || !(in >> im))
      throw ValidationError("cannot parse complex value '" + s + "'");
  }
  return {re, im};
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

template <class F>
void parallel_for(int n, int jobs, F&& body) {
  jobs = std::max(1, std::min(jobs, n));
  if (jobs <= 1) {
    for (int i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr err;
  std::mutex err_mu;
  std::vector<std::thread> threads;
  for (int t = 0; t < jobs; ++t)
    threads.emplace_back([&] {
      for (int i; (i = next.fetch_add(1)) < n;) {
        try {
          body(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(err_mu);
          if (!err) err = std::current_exception();
          return;
        }
      }
    });
  for (auto& t : threads) t.join();
  if (err) std::rethrow_exception(err);
}

struct Common {
  std::string model_file;
  double tol = 1e-10;
  bool no_timing = false;
  bool csv = false;
  int jobs = int(std::max(1u, std::thread::hardware_concurrency()));
};

void add_common(CLI::App* cmd, Common& c, bool needs_model = true) {
  auto* opt = cmd->add_option("--model", c.model_file, "model/potential JSON file");
  if (needs_model) opt->required();
  cmd->add_option("--tol", c.tol, "numerical tolerance (default 1e-10)");
  cmd->add_flag("--no-timing", c.no_timing, "omit wall time from the report");
  cmd->add_flag("--csv", c.csv, "CSV output for grid commands");
  cmd->add_option("--jobs", c.jobs, "max parallel workers");
}

struct Timer {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  double ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                     t0)
        .count();
  }
};

void emit(json report, const Common& c, const Timer& timer) {
  if (!c.no_timing) report["wall_time_ms"] = timer.ms();
  std::cout << report.dump(2) << "\n";
}

json report_shell(const std::string& command, const std::string& model_echo,
                  const Common& c) {
  json r;
  r["command"] = command;
  if (!model_echo.empty()) r["model"] = json::parse(model_echo);
  r["tolerances"] = {{"tol", c.tol}};
  return r;
}

SearchRegion parse_region(const std::string& s) {
  SearchRegion r;
  if (s.empty()) return r;
  std::istringstream in(s);
  char c1, c2, c3;
  if (!(in >> r.k_re_min >> c1 >> r.k_re_max >> c2 >> r.k_im_min >> c3 >> r.k_im_max) ||
      c1 != ',' || c2 != ',' || c3 != ',')
    throw ValidationError("region must be krmin,krmax,kimin,kimax");
  r.margin = std::min(1e-6, r.k_im_min);
  return r;
}

json eigenvalue_json(const Eigenvalue& ev) {
  return {{"lambda", cj(ev.lambda)},
          {"k", cj(ev.k)},
          {"geometric_mult", ev.geometric_mult},
          {"algebraic_mult", ev.algebraic_mult},
          {"residual", ev.residual}};
}

const char* side_name(BoundarySide s) {
  switch (s) {
    case BoundarySide::plus:
      return "plus";
    case BoundarySide::minus:
      return "minus";
    default:
      return "none";
  }
}

// ---------------------------------------------------------------------------

int cmd_weyl(const Common& c, const std::vector<std::string>& lambdas,
             const std::string& side_str, const std::string& k_grid, bool deriv) {
  Timer timer;
  const ModelSpec model = parse_model(read_file(c.model_file));
  json results = json::array();

  std::vector<SpectralParameter> points;
  if (!k_grid.empty()) {
    std::istringstream in(k_grid);
    double kmin, kmax;
    int n;
    char c1, c2;
    if (!(in >> kmin >> c1 >> kmax >> c2 >> n) || c1 != ',' || c2 != ',' || n < 1)
      throw ValidationError("--k-grid must be kmin,kmax,n");
    for (int i = 0; i < n; ++i) {
      const double k = n == 1 ? kmin : kmin + (kmax - kmin) * i / (n - 1);
      if (k == 0) continue;
      points.push_back(param_from_k(Complex(k, 0)));
    }
  }
  std::optional<BoundarySide> side;
  if (side_str == "plus") side = BoundarySide::plus;
  if (side_str == "minus") side = BoundarySide::minus;
  for (const auto& s : lambdas) points.push_back(k_from_lambda(parse_complex_arg(s), side));

  const bool is_delta = std::holds_alternative<DeltaModel>(model);
  std::vector<json> rows(points.size());
  parallel_for(int(points.size()), c.jobs, [&](int i) {
    const SpectralParameter& sp = points[i];
    json row;
    row["lambda"] = cj(sp.lambda);
    row["k"] = cj(sp.k);
    row["side"] = side_name(sp.side);
    if (is_delta) {
      const auto& d = std::get<DeltaModel>(model);
      row["W"] = cj(weyl_scalar(sp, d.q, c.tol).value);
      if (deriv) row["dW_dlambda"] = cj(weyl_derivative(sp, d.q, c.tol));
    } else {
      const auto& g = std::get<GeneralModel>(model);
      const WeylMatrix W = weyl_matrix(sp, g.q1, g.q2, c.tol);
      row["W"] = json::array(
          {json::array({cj(W.e11), cj(W.e12)}), json::array({cj(W.e21), cj(W.e22)})});
      if (deriv) {
        const WeylMatrix D = weyl_matrix_derivative(sp, g.q1, g.q2, c.tol);
        row["dW_dlambda"] = json::array(
            {json::array({cj(D.e11), cj(D.e12)}), json::array({cj(D.e21), cj(D.e22)})});
      }
    }
    rows[i] = std::move(row);
  });
  for (auto& r : rows) results.push_back(std::move(r));

  if (c.csv && is_delta) {
    std::cout << "re_lambda,im_lambda,re_k,im_k,re_W,im_W";
    if (deriv) std::cout << ",re_dW,im_dW";
    std::cout << "\n";
    for (const auto& row : results) {
      std::cout << row["lambda"][0].get<double>() << "," << row["lambda"][1].get<double>()
                << "," << row["k"][0].get<double>() << "," << row["k"][1].get<double>()
                << "," << row["W"][0].get<double>() << "," << row["W"][1].get<double>();
      if (deriv)
        std::cout << "," << row["dW_dlambda"][0].get<double>() << ","
                  << row["dW_dlambda"][1].get<double>();
      std::cout << "\n";
    }
    return 0;
  }
  json rep = report_shell("weyl", model_to_json(model), c);
  rep["results"] = results;
  emit(rep, c, timer);
  return 0;
}

int cmd_eigs(const Common& c, const std::string& region_str, bool verify,
             double oracle_L, int oracle_N) {
  Timer timer;
  const ModelSpec model = parse_model(read_file(c.model_file));
  const SearchRegion region = parse_region(region_str);
  const auto eigs = find_eigenvalues(model, region, c.tol);
  json list = json::array();
  for (const auto& ev : eigs) {
    json row = eigenvalue_json(ev);
    if (verify) {
      if (!std::holds_alternative<DeltaModel>(model))
        throw ValidationError("--verify supports delta models only");
      const auto& d = std::get<DeltaModel>(model);
      const FdGrid grid = make_grid(oracle_L, oracle_N);
      const auto near = fd_nearest_eigenvalue(d, ev.lambda, grid);
      row["fd"] = {{"lambda", cj(near.lambda)},
                   {"distance", std::abs(near.lambda - ev.lambda)},
                   {"residual", near.residual},
                   {"L", oracle_L},
                   {"N", oracle_N}};
    }
    list.push_back(std::move(row));
  }
  json rep = report_shell("eigs", model_to_json(model), c);
  rep["region"] = {region.k_re_min, region.k_re_max, region.k_im_min, region.k_im_max};
  rep["results"] = list;
  emit(rep, c, timer);
  return 0;
}

int cmd_exceptional(const Common& c, const std::string& region_str) {
  Timer timer;
  const PotentialDescriptor q = parse_potential_document(read_file(c.model_file));
  const SearchRegion region = parse_region(region_str);
  const auto points = find_exceptional_points(q, region, c.tol);
  json list = json::array();
  for (const auto& ep : points)
    list.push_back({{"lambda0", cj(ep.lambda0)}, {"a", cj(ep.a)}});
  json rep = report_shell("exceptional", "", c);
  rep["model"] = json::parse(model_to_json(DeltaModel{Complex(0), q}))["q"];
  rep["region"] = {region.k_re_min, region.k_re_max, region.k_im_min, region.k_im_max};
  rep["results"] = list;
  emit(rep, c, timer);
  return 0;
}

int cmd_singularities(const Common& c, double kmin, double kmax, int steps) {
  Timer timer;
  const PotentialDescriptor q = parse_potential_document(read_file(c.model_file));
  if (steps < 1) throw ValidationError("--steps must be >= 1");
  std::vector<double> grid;
  for (int i = 0; i < steps; ++i) {
    const double k = steps == 1 ? kmin : kmin + (kmax - kmin) * i / (steps - 1);
    if (k != 0) grid.push_back(k);
  }
  std::vector<SingularityRecord> recs(grid.size());
  parallel_for(int(grid.size()), c.jobs, [&](int i) {
    recs[i] = singularity_scan(q, {grid[i]}, std::max(c.tol, 1e-8)).front();
  });
  if (c.csv) {
    std::cout << "k,lambda,re_a_plus,im_a_plus,singular\n";
    for (size_t i = 0; i < grid.size(); ++i)
      std::cout << grid[i] << "," << recs[i].lambda << "," << recs[i].a_plus.real()
                << "," << recs[i].a_plus.imag() << "," << (recs[i].is_singular ? 1 : 0)
                << "\n";
    return 0;
  }
  json list = json::array();
  for (size_t i = 0; i < grid.size(); ++i)
    list.push_back({{"k", grid[i]},
                    {"lambda", recs[i].lambda},
                    {"a_plus", cj(recs[i].a_plus)},
                    {"singular", recs[i].is_singular}});
  json rep = report_shell("singularities", "", c);
  rep["model"] = json::parse(model_to_json(DeltaModel{Complex(0), q}))["q"];
  rep["results"] = list;
  emit(rep, c, timer);
  return 0;
}

int cmd_phase_diagram(const Common& c, double re_min, double re_max, double im_min,
                      double im_max, int n) {
  Timer timer;
  const PotentialDescriptor q = parse_potential_document(read_file(c.model_file));
  if (n < 2) throw ValidationError("--grid must be >= 2");
  const SearchRegion region;  // default k in [-10,10] x [1e-6, 10]
  struct Row {
    double re, im;
    int count;
    bool all_real, singular;
  };
  std::vector<Row> rows(size_t(n) * n);
  parallel_for(n * n, c.jobs, [&](int idx) {
    const int i = idx / n, j = idx % n;
    const double re = re_min + (re_max - re_min) * i / (n - 1);
    const double im = im_min + (im_max - im_min) * j / (n - 1);
    const DeltaModel m{Complex(re, im), q};
    const auto eigs = find_eigenvalues(ModelSpec(m), region, c.tol);
    bool all_real = true;
    for (const auto& ev : eigs)
      if (std::abs(ev.lambda.imag()) > 1e-8 * (1.0 + std::abs(ev.lambda)))
        all_real = false;
    const double d = singularity_match_distance(q, m.a, 1e-5, 10, c.tol);
    rows[idx] = {re, im, int(eigs.size()), all_real,
                 d < 1e-6 * (1.0 + std::abs(m.a))};
  });
  if (c.csv) {
    std::cout << "re_a,im_a,n_eigenvalues,all_real,singular\n";
    for (const auto& r : rows)
      std::cout << r.re << "," << r.im << "," << r.count << "," << (r.all_real ? 1 : 0)
                << "," << (r.singular ? 1 : 0) << "\n";
    return 0;
  }
  json list = json::array();
  for (const auto& r : rows)
    list.push_back({{"a", json::array({r.re, r.im})},
                    {"n_eigenvalues", r.count},
                    {"all_real", r.all_real},
                    {"singular", r.singular}});
  json rep = report_shell("phase-diagram", "", c);
  rep["model"] = json::parse(model_to_json(DeltaModel{Complex(0), q}))["q"];
  rep["results"] = list;
  emit(rep, c, timer);
  return 0;
}

int cmd_eigenfunction(const Common& c, const std::string& lambda_str,
                      const std::string& side_str, double xmin, double xmax, int n) {
  Timer timer;
  (void)timer;
  const ModelSpec model = parse_model(read_file(c.model_file));
  std::optional<BoundarySide> side;
  if (side_str == "plus") side = BoundarySide::plus;
  if (side_str == "minus") side = BoundarySide::minus;
  const SpectralParameter sp = k_from_lambda(parse_complex_arg(lambda_str), side);
  if (n < 2) throw ValidationError("--grid must be >= 2");

  if (std::holds_alternative<DeltaModel>(model)) {
    const auto& d = std::get<DeltaModel>(model);
    const Eigenfunction u = u_delta(sp, d.q, c.tol);
    std::cout << "x,re_u,im_u\n";
    for (int i = 0; i < n; ++i) {
      const double x = xmin + (xmax - xmin) * i / (n - 1);
      const Complex v = u(x);
      std::cout << x << "," << v.real() << "," << v.imag() << "\n";
    }
    return 0;
  }
  const auto& g = std::get<GeneralModel>(model);
  const auto [u, v] = basis_general(sp, g.q1, g.q2, c.tol);
  std::cout << "x,re_u,im_u,re_v,im_v\n";
  for (int i = 0; i < n; ++i) {
    const double x = xmin + (xmax - xmin) * i / (n - 1);
    const Complex uv = u(x), vv = v(x);
    std::cout << x << "," << uv.real() << "," << uv.imag() << "," << vv.real() << ","
              << vv.imag() << "\n";
  }
  return 0;
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

json potential_symmetry_json(const PotentialSymmetry& s) {
  return {{"parity", parity_name(s.parity)},
          {"pt_fixed", s.pt_fixed},
          {"pt_condition_ok", s.pt_ok},
          {"p_condition_ok", s.p_ok}};
}

int cmd_classify(const Common& c) {
  Timer timer;
  const ModelSpec model = parse_model(read_file(c.model_file));
  const SymmetryReport rep = classify(model);
  json out = report_shell("classify", model_to_json(model), c);
  out["results"] = {{"self_adjoint", rep.self_adjoint},
                    {"pt_symmetric_condition", rep.pt_symmetric},
                    {"p_self_adjoint_condition", rep.p_self_adjoint},
                    {"q1", potential_symmetry_json(rep.q1)},
                    {"q2", potential_symmetry_json(rep.q2)}};
  emit(out, c, timer);
  return 0;
}

int cmd_verify(const Common& c, const std::string& lambda_str, double L, int N) {
  Timer timer;
  const ModelSpec model = parse_model(read_file(c.model_file));
  if (!std::holds_alternative<DeltaModel>(model))
    throw ValidationError("verify supports delta models only");
  const auto& d = std::get<DeltaModel>(model);
  const Complex lambda = parse_complex_arg(lambda_str);
  const FdGrid grid = make_grid(L, N);
  const VerifyResult vr = verify_eigenvalue(d, lambda, grid);
  const auto near = fd_nearest_eigenvalue(d, lambda, grid);
  json rep = report_shell("verify", model_to_json(model), c);
  rep["results"] = {{"lambda", cj(lambda)},
                    {"sigma_min_ratio", vr.sigma_min_ratio},
                    {"nearest_fd_eigenvalue", cj(near.lambda)},
                    {"nearest_fd_distance", std::abs(near.lambda - lambda)},
                    {"nearest_fd_residual", near.residual},
                    {"grid", {{"L", L}, {"N", N}}}};
  emit(rep, c, timer);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"spectral analysis of 1D Schrodinger operators with nonlocal "
               "one-point interactions"};
  app.require_subcommand(1);

  Common c;

  auto* weyl = app.add_subcommand(
      "weyl",
      "Weyl-Titchmarsh values at spectral points; --csv columns (delta): "
      "re_lambda,im_lambda,re_k,im_k,re_W,im_W[,re_dW,im_dW]");
  std::vector<std::string> lambdas;
  std::string side, k_grid;
  bool deriv = false;
  add_common(weyl, c);
  weyl->add_option("--lambda", lambdas, "lambda as re[,im] (repeatable)");
  weyl->add_option("--side", side, "boundary side for lambda > 0 (plus|minus)");
  weyl->add_option("--k-grid", k_grid, "real-k boundary scan kmin,kmax,n");
  weyl->add_flag("--deriv", deriv, "also emit dW/dlambda");

  auto* eigs = app.add_subcommand("eigs", "eigenvalues with multiplicities");
  std::string region;
  bool verify = false;
  double oracle_L = 20;
  int oracle_N = 2001;
  add_common(eigs, c);
  eigs->add_option("--region", region, "k-rectangle krmin,krmax,kimin,kimax");
  eigs->add_flag("--verify", verify, "cross-check with the finite-difference oracle");
  eigs->add_option("--oracle-L", oracle_L, "oracle half-length (default 20)");
  eigs->add_option("--oracle-N", oracle_N, "oracle grid size (default 2001)");

  auto* exc = app.add_subcommand("exceptional", "exceptional points of the delta family");
  std::string exc_region;
  add_common(exc, c);
  exc->add_option("--region", exc_region, "k-rectangle krmin,krmax,kimin,kimax");

  auto* sing = app.add_subcommand(
      "singularities",
      "spectral-singularity scan; --csv columns: k,lambda,re_a_plus,im_a_plus,singular");
  double kmin = 0.1, kmax = 10;
  int steps = 100;
  add_common(sing, c);
  sing->add_option("--kmin", kmin, "lowest k (default 0.1)");
  sing->add_option("--kmax", kmax, "highest k (default 10)");
  sing->add_option("--steps", steps, "number of grid points (default 100)");

  auto* phase = app.add_subcommand(
      "phase-diagram",
      "a-plane classification grid; --csv columns: "
      "re_a,im_a,n_eigenvalues,all_real,singular");
  double re_min = -2, re_max = 2, im_min = -2, im_max = 2;
  int grid_n = 41;
  add_common(phase, c);
  phase->add_option("--re-min", re_min, "Re a lower bound (default -2)");
  phase->add_option("--re-max", re_max, "Re a upper bound (default 2)");
  phase->add_option("--im-min", im_min, "Im a lower bound (default -2)");
  phase->add_option("--im-max", im_max, "Im a upper bound (default 2)");
  phase->add_option("--grid", grid_n, "grid points per side (default 41)");

  auto* efun = app.add_subcommand(
      "eigenfunction",
      "eigenfunction values on an x-grid; CSV columns: x,re_u,im_u "
      "(delta) or x,re_u,im_u,re_v,im_v (general)");
  std::string lambda_str = "-1", efun_side;
  double xmin = -10, xmax = 10;
  int xsteps = 201;
  add_common(efun, c);
  efun->add_option("--lambda", lambda_str, "spectral point re[,im]")->required();
  efun->add_option("--side", efun_side, "boundary side for lambda > 0");
  efun->add_option("--xmin", xmin, "left end (default -10)");
  efun->add_option("--xmax", xmax, "right end (default 10)");
  efun->add_option("--grid", xsteps, "number of x points (default 201)");

  auto* cls = app.add_subcommand("classify", "symmetry classification");
  add_common(cls, c);

  auto* ver = app.add_subcommand("verify", "finite-difference oracle check");
  std::string ver_lambda = "-1";
  double ver_L = 20;
  int ver_N = 801;
  add_common(ver, c);
  ver->add_option("--lambda", ver_lambda, "spectral point re[,im]")->required();
  ver->add_option("--L", ver_L, "grid half-length (default 20)");
  ver->add_option("--N", ver_N, "grid size, odd (default 801)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (weyl->parsed()) return cmd_weyl(c, lambdas, side, k_grid, deriv);
    if (eigs->parsed()) return cmd_eigs(c, region, verify, oracle_L, oracle_N);
    if (exc->parsed()) return cmd_exceptional(c, exc_region);
    if (sing->parsed()) return cmd_singularities(c, kmin, kmax, steps);
    if (phase->parsed())
      return cmd_phase_diagram(c, re_min, re_max, im_min, im_max, grid_n);
    if (efun->parsed())
      return cmd_eigenfunction(c, lambda_str, efun_side, xmin, xmax, xsteps);
    if (cls->parsed()) return cmd_classify(c);
    if (ver->parsed()) return cmd_verify(c, ver_lambda, ver_L, ver_N);
  } catch (const Error& e) {
    json err = {{"error", {{"code", e.code()}, {"message", e.what()}}}};
    std::cout << err.dump(2) << "\n";
    return int(e.kind());
  } catch (const std::exception& e) {
    json err = {{"error", {{"code", "internal"}, {"message", e.what()}}}};
    std::cout << err.dump(2) << "\n";
    return 1;
  }
  return 0;
}
