#include "pointspec/oracle.hpp"

#include <Eigen/SVD>
#include <cmath>
#include <random>

namespace pointspec {

namespace {

constexpr double kPi = 3.14159265358979323846;

struct FdOperator {
  FdGrid grid;
  double h;
  int c;
  double inv_h2;
  std::vector<Complex> qvec;  // q(x_i): the nonlocal column at the center
  std::vector<Complex> rrow;  // center row: (w_j/h) q(x_j)^* plus a/h at j=c

  explicit FdOperator(const DeltaModel& model, const FdGrid& g) : grid(g) {
    h = g.h();
    c = g.center();
    inv_h2 = 1.0 / (h * h);
    const int N = g.N;
    qvec.resize(N);
    rrow.resize(N);
    for (int i = 0; i < N; ++i) {
      const Complex qi = potential_value(model.q, g.node(i));
      qvec[i] = qi;
      const double w = (i == 0 || i == N - 1) ? 0.5 * h : h;
      rrow[i] = std::conj(qi) * (w / h);
    }
    rrow[c] += model.a / h;
  }

  void matvec(const Complex* x, Complex* y) const {
    const int N = grid.N;
    for (int i = 0; i < N; ++i) {
      Complex v = 2.0 * x[i];
      if (i > 0) v -= x[i - 1];
      if (i + 1 < N) v -= x[i + 1];
      y[i] = v * inv_h2 + qvec[i] * x[c];
    }
    Complex dot = 0;
    for (int i = 0; i < N; ++i) dot += rrow[i] * x[i];
    y[c] += dot;
  }

  double norm1() const {
    // max column sum; column c carries the nonlocal part
    double base = 4.0 * inv_h2;
    double col_c = base + std::abs(rrow[c]);
    for (int i = 0; i < grid.N; ++i) col_c += std::abs(qvec[i]);
    double max_r = 0;
    for (int i = 0; i < grid.N; ++i)
      if (i != c) max_r = std::max(max_r, std::abs(rrow[i]));
    return std::max(base + max_r, col_c);
  }
};

/// LU with partial pivoting of the constant tridiagonal
/// [off, diag_base - sigma, off] (the gttrf/gtts2 scheme).
class TriDiagSolver {
 public:
  TriDiagSolver(int n, double diag_base, double off, Complex sigma)
      : n_(n), d_(n, Complex(diag_base) - sigma), dl_(std::max(n - 1, 0), off),
        du_(std::max(n - 1, 0), off), du2_(std::max(n - 2, 0), 0),
        swap_(std::max(n - 1, 0), false) {
    for (int i = 0; i + 1 < n; ++i) {
      if (std::abs(d_[i]) >= std::abs(dl_[i])) {
        const Complex fact = std::abs(d_[i]) > 0 ? dl_[i] / d_[i] : Complex(0);
        dl_[i] = fact;
        d_[i + 1] -= fact * du_[i];
      } else {
        swap_[i] = true;
        const Complex fact = d_[i] / dl_[i];
        d_[i] = dl_[i];
        dl_[i] = fact;
        const Complex tmp = du_[i];
        du_[i] = d_[i + 1];
        d_[i + 1] = tmp - fact * d_[i + 1];
        if (i + 2 < n) {
          du2_[i] = du_[i + 1];
          du_[i + 1] = -fact * du_[i + 1];
        }
      }
    }
    for (auto& v : d_)
      if (std::abs(v) < 1e-300) v = 1e-300;  // singular-shift guard
  }

  void solve(std::vector<Complex>& b) const {
    const int n = n_;
    for (int i = 0; i + 1 < n; ++i) {
      if (!swap_[i]) {
        b[i + 1] -= dl_[i] * b[i];
      } else {
        const Complex tmp = b[i];
        b[i] = b[i + 1];
        b[i + 1] = tmp - dl_[i] * b[i];
      }
    }
    b[n - 1] /= d_[n - 1];
    if (n >= 2) b[n - 2] = (b[n - 2] - du_[n - 2] * b[n - 1]) / d_[n - 2];
    for (int i = n - 3; i >= 0; --i)
      b[i] = (b[i] - du_[i] * b[i + 1] - du2_[i] * b[i + 2]) / d_[i];
  }

 private:
  int n_;
  std::vector<Complex> d_, dl_, du_, du2_;
  std::vector<bool> swap_;
};

/// (A - sigma)^{-1} via the Woodbury identity over the tridiagonal part:
/// A = T + qvec e_c^t + e_c r^t.
class ShiftInvert {
 public:
  ShiftInvert(const FdOperator& op, Complex sigma)
      : op_(op), lu_(op.grid.N, 2.0 * op.inv_h2, -op.inv_h2, sigma) {
    const int N = op.grid.N;
    z0_.assign(op.qvec.begin(), op.qvec.end());
    lu_.solve(z0_);
    z1_.assign(N, 0);
    z1_[op.c] = 1;
    lu_.solve(z1_);
    // S = I + V^t Z with V = [e_c, r]
    Complex s00 = 1.0 + z0_[op.c];
    Complex s01 = z1_[op.c];
    Complex s10 = 0, s11 = 0;
    for (int i = 0; i < N; ++i) {
      s10 += op.rrow[i] * z0_[i];
      s11 += op.rrow[i] * z1_[i];
    }
    s11 += 1.0;
    const Complex det = s00 * s11 - s01 * s10;
    inv00_ = s11 / det;
    inv01_ = -s01 / det;
    inv10_ = -s10 / det;
    inv11_ = s00 / det;
  }

  void solve(std::vector<Complex>& x) const {
    lu_.solve(x);
    Complex w0 = x[op_.c];
    Complex w1 = 0;
    for (int i = 0; i < op_.grid.N; ++i) w1 += op_.rrow[i] * x[i];
    const Complex t0 = inv00_ * w0 + inv01_ * w1;
    const Complex t1 = inv10_ * w0 + inv11_ * w1;
    for (int i = 0; i < op_.grid.N; ++i) x[i] -= z0_[i] * t0 + z1_[i] * t1;
  }

 private:
  const FdOperator& op_;
  TriDiagSolver lu_;
  std::vector<Complex> z0_, z1_;
  Complex inv00_, inv01_, inv10_, inv11_;
};

double vec_norm(const std::vector<Complex>& x) {
  double s = 0;
  for (const auto& v : x) s += std::norm(v);
  return std::sqrt(s);
}

}  // namespace

FdGrid make_grid(double L, int N) {
  if (!(L > 0)) throw ValidationError("grid half-length L must be positive");
  if (N % 2 == 0 || N < 201 || N > 5001)
    throw ValidationError("grid size N must be odd, 201 <= N <= 5001");
  FdGrid g{L, N};
  if (!(g.h() < 0.1)) throw ValidationError("grid spacing must satisfy h < 0.1");
  return g;
}

Eigen::MatrixXcd assemble(const DeltaModel& model, const FdGrid& grid) {
  validate_model(ModelSpec(model));
  const FdOperator op(model, grid);
  const int N = grid.N;
  Eigen::MatrixXcd A = Eigen::MatrixXcd::Zero(N, N);
  for (int i = 0; i < N; ++i) {
    A(i, i) = 2.0 * op.inv_h2;
    if (i > 0) A(i, i - 1) = -op.inv_h2;
    if (i + 1 < N) A(i, i + 1) = -op.inv_h2;
    A(i, op.c) += op.qvec[i];
  }
  for (int j = 0; j < N; ++j) A(op.c, j) += op.rrow[j];
  return A;
}

NearestEigenvalue fd_nearest_eigenvalue(const DeltaModel& model, Complex shift,
                                        const FdGrid& grid, int max_iter) {
  const FdOperator op(model, grid);
  const int N = grid.N;
  const ShiftInvert inv(op, shift);
  std::mt19937 rng(12345);
  std::uniform_real_distribution<double> dist(-1, 1);
  std::vector<Complex> x(N), y(N);
  for (auto& v : x) v = Complex(dist(rng), dist(rng));
  const double scale = op.norm1() + std::abs(shift);

  NearestEigenvalue best;
  best.residual = std::numeric_limits<double>::infinity();
  for (int it = 0; it < max_iter; ++it) {
    inv.solve(x);
    const double nx = vec_norm(x);
    if (!(nx > 0) || !std::isfinite(nx)) break;
    for (auto& v : x) v /= nx;
    op.matvec(x.data(), y.data());
    Complex rq = 0;
    for (int i = 0; i < N; ++i) rq += std::conj(x[i]) * y[i];
    double res = 0;
    for (int i = 0; i < N; ++i) res += std::norm(y[i] - rq * x[i]);
    res = std::sqrt(res) / scale;
    if (res < best.residual) {
      best.residual = res;
      best.lambda = rq;
      best.vector = x;
    }
    if (res < 1e-13) break;
  }
  return best;
}

VerifyResult fd_candidate_residual(const DeltaModel& model, Complex lambda,
                                   const FdGrid& grid,
                                   const std::vector<Complex>& candidate) {
  if (int(candidate.size()) != grid.N)
    throw ValidationError("candidate vector length must equal the grid size");
  const FdOperator op(model, grid);
  std::vector<Complex> y(grid.N);
  op.matvec(candidate.data(), y.data());
  double res = 0;
  for (int i = 0; i < grid.N; ++i) res += std::norm(y[i] - lambda * candidate[i]);
  res = std::sqrt(res) / vec_norm(candidate);
  VerifyResult out;
  out.residual = res;
  out.residual_scaled = res / (op.norm1() + std::abs(lambda));
  return out;
}

VerifyResult verify_eigenvalue(const DeltaModel& model, Complex lambda,
                               const FdGrid& grid,
                               const std::vector<Complex>* candidate) {
  const FdOperator op(model, grid);
  const double h = grid.h();
  if (std::abs(lambda) > 0.1 * (kPi / h) * (kPi / h))
    throw ResolutionError("lambda is too large for the grid resolution");

  VerifyResult out;

  // sigma_min by inverse iteration on (A - lambda)^dagger (A - lambda):
  // alternate solves with the shifted operator and its adjoint.
  const ShiftInvert fwd(op, lambda);
  DeltaModel adj = model;  // adjoint model: conjugate coupling and potential
  adj.a = std::conj(adj.a);
  if (auto* b = std::get_if<BoxOddSign>(&adj.q)) b->Z = std::conj(b->Z);
  if (auto* e = std::get_if<ExpEven>(&adj.q)) e->c = std::conj(e->c);
  if (auto* s = std::get_if<Sampled>(&adj.q))
    for (auto& v : s->values) v = std::conj(v);
  const FdOperator op_adj(adj, grid);
  const ShiftInvert bwd(op_adj, std::conj(lambda));

  std::mt19937 rng(777);
  std::uniform_real_distribution<double> dist(-1, 1);
  std::vector<Complex> x(grid.N), y(grid.N);
  for (auto& v : x) v = Complex(dist(rng), dist(rng));
  double sigma_min = 0, prev = -1;
  for (int it = 0; it < 300; ++it) {
    fwd.solve(x);   // x <- (A - lambda)^{-1} x
    bwd.solve(x);   // x <- (A - lambda)^{-dagger} x
    const double nx = vec_norm(x);
    if (!(nx > 0) || !std::isfinite(nx)) break;
    for (auto& v : x) v /= nx;
    // sigma = ||(A - lambda) x||
    op.matvec(x.data(), y.data());
    for (int i = 0; i < grid.N; ++i) y[i] -= lambda * x[i];
    sigma_min = vec_norm(y);
    if (prev >= 0 && std::abs(sigma_min - prev) <= 1e-12 * sigma_min) break;
    prev = sigma_min;
  }

  // median singular value from the full dense spectrum
  Eigen::MatrixXcd A = assemble(model, grid);
  for (int i = 0; i < grid.N; ++i) A(i, i) -= lambda;
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(A);
  const auto& sv = svd.singularValues();
  const double median = sv(grid.N / 2);
  out.sigma_min_ratio = sigma_min / median;

  if (candidate) {
    const VerifyResult r = fd_candidate_residual(model, lambda, grid, *candidate);
    out.residual = r.residual;
    out.residual_scaled = r.residual_scaled;
  }
  return out;
}

}  // namespace pointspec
