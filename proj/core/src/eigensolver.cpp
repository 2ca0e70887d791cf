#include "rmtlab/eigensolver.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

#include "rmtlab/errors.hpp"
#include "rmtlab/rng.hpp"

namespace rmt {

namespace {

constexpr double kSymmetryTol = 1e-10;

void require_symmetric(const Eigen::MatrixXd& G) {
  if (G.rows() != G.cols() || G.rows() < 1) {
    throw PreconditionError("lambda_max: matrix must be square and non-empty");
  }
  const double scale = G.cwiseAbs().maxCoeff();
  const double asym = (G - G.transpose()).cwiseAbs().maxCoeff();
  if (asym > kSymmetryTol * std::max(scale, 1e-300)) {
    std::ostringstream msg;
    msg << "lambda_max: input asymmetric beyond tolerance (max |G - G^T| = " << asym
        << ", scale = " << scale << ")";
    throw PreconditionError(msg.str());
  }
}

// Number of eigenvalues of the tridiagonal (diag, off) strictly below x,
// by the Sturm / LDL^T sign count.
int sturm_count(const std::vector<double>& diag, const std::vector<double>& off,
                double x) {
  const double tiny = 1e-300;
  int count = 0;
  double d = 1.0;
  for (std::size_t i = 0; i < diag.size(); ++i) {
    const double off2 = i == 0 ? 0.0 : off[i - 1] * off[i - 1];
    d = diag[i] - x - off2 / d;
    if (d == 0.0) d = -tiny;
    if (d < 0.0) ++count;
  }
  return count;
}

// Largest eigenvalue of a symmetric tridiagonal matrix by Sturm bisection,
// plus the magnitude of the last component of its eigenvector (via one pass
// of inverse iteration with a tridiagonal solve).
struct TridiagTop {
  double theta;
  double last_component;
};

TridiagTop tridiag_top_eigenpair(const std::vector<double>& diag,
                                 const std::vector<double>& off) {
  const int k = static_cast<int>(diag.size());
  if (k == 1) return {diag[0], 1.0};

  double lo = diag[0];
  double hi = diag[0];
  for (int i = 0; i < k; ++i) {
    const double r = (i > 0 ? std::fabs(off[i - 1]) : 0.0) +
                     (i + 1 < k ? std::fabs(off[i]) : 0.0);
    lo = std::min(lo, diag[i] - r);
    hi = std::max(hi, diag[i] + r);
  }
  const double scale = std::max({std::fabs(lo), std::fabs(hi), 1e-300});
  hi += 1e-12 * scale;
  for (int iter = 0; iter < 120 && hi - lo > 1e-16 * scale; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (sturm_count(diag, off, mid) >= k) {
      hi = mid;  // all eigenvalues below mid
    } else {
      lo = mid;
    }
  }
  const double theta = 0.5 * (lo + hi);

  // Inverse iteration with the shifted tridiagonal; a slight shift keeps the
  // factorization well defined when theta is fully converged.
  std::vector<double> x(k, 1.0);
  const double sigma = theta + 1e-10 * scale;
  for (int pass = 0; pass < 2; ++pass) {
    // Solve (T - sigma I) y = x by LU without pivoting (Thomas), guarded.
    std::vector<double> c(k), z(k);
    double den = diag[0] - sigma;
    if (std::fabs(den) < 1e-280) den = den < 0 ? -1e-280 : 1e-280;
    c[0] = (k > 1 ? off[0] : 0.0) / den;
    z[0] = x[0] / den;
    for (int i = 1; i < k; ++i) {
      den = diag[i] - sigma - off[i - 1] * c[i - 1];
      if (std::fabs(den) < 1e-280) den = den < 0 ? -1e-280 : 1e-280;
      c[i] = (i + 1 < k ? off[i] : 0.0) / den;
      z[i] = (x[i] - off[i - 1] * z[i - 1]) / den;
    }
    x[k - 1] = z[k - 1];
    for (int i = k - 2; i >= 0; --i) x[i] = z[i] - c[i] * x[i + 1];
    double norm = 0.0;
    for (double v : x) norm += v * v;
    norm = std::sqrt(norm);
    if (norm == 0.0 || !std::isfinite(norm)) return {theta, 1.0};
    for (double& v : x) v /= norm;
  }
  return {theta, std::fabs(x[k - 1])};
}

}  // namespace

double lambda_max_jacobi(const Eigen::MatrixXd& G, double tol) {
  require_symmetric(G);
  const int p = static_cast<int>(G.rows());
  if (p == 1) return G(0, 0);

  Eigen::MatrixXd A = 0.5 * (G + G.transpose());
  const double fro = A.norm();
  if (fro == 0.0) return 0.0;
  const double stop = std::max(tol, 1e-15) * fro;

  // Cyclic sweeps; only the upper triangle is kept current.
  auto rotate = [](double& x, double& y, double s, double tau) {
    const double g = x;
    const double h = y;
    x = g - s * (h + g * tau);
    y = h + s * (g - h * tau);
  };

  constexpr int kMaxSweeps = 50;
  double off = 0.0;
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    double off_sq = 0.0;
    for (int j = 1; j < p; ++j) {
      for (int i = 0; i < j; ++i) off_sq += A(i, j) * A(i, j);
    }
    off = std::sqrt(2.0 * off_sq);
    if (off <= stop) {
      return A.diagonal().maxCoeff();
    }
    for (int q = 1; q < p; ++q) {
      for (int pp = 0; pp < q; ++pp) {
        const double apq = A(pp, q);
        if (apq == 0.0) continue;
        const double theta = (A(q, q) - A(pp, pp)) / (2.0 * apq);
        const double t =
            (theta >= 0.0 ? 1.0 : -1.0) / (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        const double tau = s / (1.0 + c);
        const double h = t * apq;
        A(pp, pp) -= h;
        A(q, q) += h;
        A(pp, q) = 0.0;
        for (int k = 0; k < pp; ++k) rotate(A(k, pp), A(k, q), s, tau);
        for (int k = pp + 1; k < q; ++k) rotate(A(pp, k), A(k, q), s, tau);
        for (int k = q + 1; k < p; ++k) rotate(A(pp, k), A(q, k), s, tau);
      }
    }
  }
  std::ostringstream msg;
  msg << "lambda_max_jacobi: off-diagonal mass " << off << " did not reach " << stop
      << " within " << kMaxSweeps << " sweeps";
  throw EigensolverError(msg.str(), off / fro);
}

double lambda_max_lanczos(const Eigen::MatrixXd& G, double tol, int max_iterations) {
  require_symmetric(G);
  const int p = static_cast<int>(G.rows());
  if (p == 1) return G(0, 0);

  const Eigen::MatrixXd A = 0.5 * (G + G.transpose());
  const int m = std::min(max_iterations, p);

  // Deterministic pseudorandom start vector.
  StreamRng rng(0x6C616E637A6F73ULL, static_cast<std::uint64_t>(p));
  Eigen::VectorXd v(p);
  for (int i = 0; i < p; ++i) v(i) = 2.0 * rng.next_unit() - 1.0;
  v.normalize();

  Eigen::MatrixXd V(p, m);
  std::vector<double> alpha, beta;
  alpha.reserve(m);
  beta.reserve(m);

  Eigen::VectorXd v_prev = Eigen::VectorXd::Zero(p);
  double beta_prev = 0.0;
  double residual = std::numeric_limits<double>::infinity();
  const double norm_scale = std::max(A.norm(), 1e-300);

  for (int k = 0; k < m; ++k) {
    V.col(k) = v;
    Eigen::VectorXd w = A * v;
    const double a = v.dot(w);
    alpha.push_back(a);
    w -= a * v + beta_prev * v_prev;
    // Full reorthogonalization, two classical Gram-Schmidt passes.
    for (int pass = 0; pass < 2; ++pass) {
      w -= V.leftCols(k + 1) * (V.leftCols(k + 1).transpose() * w);
    }
    const double b = w.norm();

    const auto top = tridiag_top_eigenpair(alpha, beta);
    residual = b * top.last_component;
    if (residual <= tol * std::max(std::fabs(top.theta), 1e-300) ||
        b <= 1e-14 * norm_scale || k + 1 == p) {
      return top.theta;
    }
    beta.push_back(b);
    beta_prev = b;
    v_prev = v;
    v = w / b;
  }

  std::ostringstream msg;
  msg << "lambda_max_lanczos: no convergence after " << m
      << " iterations (residual = " << residual << ")";
  throw EigensolverError(msg.str(), residual);
}

double lambda_max(const Eigen::MatrixXd& G, double tol) {
  require_symmetric(G);
  if (G.rows() <= kDenseCrossover) {
    return lambda_max_jacobi(G, tol);
  }
  return lambda_max_lanczos(G, tol);
}

}  // namespace rmt
