#include "focklab/quadrature.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "focklab/errors.hpp"

namespace focklab {

namespace {

// Eigendecomposition of the symmetric tridiagonal Jacobi matrix; nodes are the
// eigenvalues, weights are mu0 * (first eigenvector component)^2.
QuadRule golub_welsch(const Eigen::VectorXd& diag, const Eigen::VectorXd& sub,
                      double mu0) {
  const int n = static_cast<int>(diag.size());
  Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) jacobi(i, i) = diag(i);
  for (int i = 0; i + 1 < n; ++i) {
    jacobi(i, i + 1) = sub(i);
    jacobi(i + 1, i) = sub(i);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(jacobi);
  QuadRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    rule.nodes[i] = es.eigenvalues()(i);
    const double v0 = es.eigenvectors()(0, i);
    rule.weights[i] = mu0 * v0 * v0;
  }
  return rule;
}

}  // namespace

QuadRule gauss_legendre(int n) {
  if (n < 1) throw DomainError("gauss_legendre: order must be >= 1");
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd sub(n > 1 ? n - 1 : 0);
  for (int k = 1; k < n; ++k)
    sub(k - 1) = k / std::sqrt(4.0 * k * k - 1.0);
  return golub_welsch(diag, sub, 2.0);
}

QuadRule gauss_laguerre(int n) {
  if (n < 1) throw DomainError("gauss_laguerre: order must be >= 1");
  Eigen::VectorXd diag(n);
  Eigen::VectorXd sub(n > 1 ? n - 1 : 0);
  for (int k = 0; k < n; ++k) diag(k) = 2.0 * k + 1.0;
  for (int k = 1; k < n; ++k) sub(k - 1) = static_cast<double>(k);
  return golub_welsch(diag, sub, 1.0);
}

namespace {

struct PanelRule {
  QuadRule fine;    // G15
  QuadRule coarse;  // G7
};

const PanelRule& panel_rule() {
  static const PanelRule r{gauss_legendre(15), gauss_legendre(7)};
  return r;
}

struct PanelEval {
  double fine = 0.0;
  double err = 0.0;
};

PanelEval eval_panel(const std::function<double(double)>& f, double a,
                     double b) {
  const PanelRule& r = panel_rule();
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double fine = 0.0;
  for (std::size_t i = 0; i < r.fine.nodes.size(); ++i)
    fine += r.fine.weights[i] * f(mid + half * r.fine.nodes[i]);
  double coarse = 0.0;
  for (std::size_t i = 0; i < r.coarse.nodes.size(); ++i)
    coarse += r.coarse.weights[i] * f(mid + half * r.coarse.nodes[i]);
  PanelEval out;
  out.fine = fine * half;
  out.err = std::abs(fine - coarse) * half;
  return out;
}

void integrate_rec(const std::function<double(double)>& f, double a, double b,
                   double tol, int depth, int max_depth, Quad& acc) {
  const PanelEval p = eval_panel(f, a, b);
  if (p.err <= tol || b - a <= 1e-300) {
    acc.value += p.fine;
    acc.error += p.err;
    return;
  }
  if (depth >= max_depth)
    throw NonConvergenceError(
        "adaptive quadrature: depth cap hit with error estimate " +
        std::to_string(p.err) + " > budget " + std::to_string(tol));
  const double mid = 0.5 * (a + b);
  integrate_rec(f, a, mid, 0.5 * tol, depth + 1, max_depth, acc);
  integrate_rec(f, mid, b, 0.5 * tol, depth + 1, max_depth, acc);
}

}  // namespace

Quad adaptive_integrate(const std::function<double(double)>& f, double a,
                        double b, double abs_tol, int max_depth) {
  if (!(b >= a)) throw DomainError("adaptive_integrate: b < a");
  Quad acc;
  if (a == b) return acc;
  integrate_rec(f, a, b, abs_tol, 0, max_depth, acc);
  return acc;
}

Quad adaptive_integrate_split(const std::function<double(double)>& f, double a,
                              double b, const std::vector<double>& splits,
                              double abs_tol, int max_depth) {
  std::vector<double> pts;
  pts.push_back(a);
  for (double s : splits)
    if (s > a && s < b) pts.push_back(s);
  pts.push_back(b);
  std::sort(pts.begin(), pts.end());
  Quad acc;
  const double total = b - a;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const double len = pts[i + 1] - pts[i];
    if (len <= 0) continue;
    Quad part = adaptive_integrate(f, pts[i], pts[i + 1],
                                   abs_tol * std::max(len / total, 1e-3),
                                   max_depth);
    acc.value += part.value;
    acc.error += part.error;
  }
  return acc;
}

}  // namespace focklab
