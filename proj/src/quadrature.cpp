#include "zonal/quadrature.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace zonal {

Rule1D gauss_gegenbauer(int count, double lambda) {
  if (count < 1) throw std::invalid_argument("gauss_gegenbauer: count must be >= 1");
  if (!(lambda > 0.0)) throw std::invalid_argument("gauss_gegenbauer: lambda must be > 0");

  // Jacobi matrix of the monic orthogonal polynomials; diagonal vanishes by symmetry.
  Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(count, count);
  for (int j = 1; j < count; ++j) {
    const double b = j * (j + 2.0 * lambda - 1.0) / (4.0 * (j + lambda) * (j + lambda - 1.0));
    jac(j, j - 1) = jac(j - 1, j) = std::sqrt(b);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(jac);
  const double mu0 = std::sqrt(std::numbers::pi) *
                     std::exp(std::lgamma(lambda + 0.5) - std::lgamma(lambda + 1.0));

  Rule1D rule;
  rule.nodes.resize(count);
  rule.weights.resize(count);
  for (int i = 0; i < count; ++i) {
    rule.nodes[i] = eig.eigenvalues()(i);
    const double v0 = eig.eigenvectors()(0, i);
    rule.weights[i] = mu0 * v0 * v0;
  }
  return rule;
}

Rule1D composite_gauss_legendre(double a, double b, int panels, int per_panel) {
  const Rule1D base = gauss_legendre(per_panel);
  const double h = (b - a) / panels;
  Rule1D rule;
  for (int p = 0; p < panels; ++p) {
    const double mid = a + (p + 0.5) * h;
    for (int i = 0; i < per_panel; ++i) {
      rule.nodes.push_back(mid + 0.5 * h * base.nodes[i]);
      rule.weights.push_back(0.5 * h * base.weights[i]);
    }
  }
  return rule;
}

SphereRule sphere_rule(int m, int degree) {
  if (m < 1) throw std::invalid_argument("sphere_rule: m must be >= 1");
  if (degree < 0) degree = 0;

  SphereRule rule;
  rule.dim = m;
  if (m == 1) {
    const int count = degree + 1;
    const double w = 2.0 * std::numbers::pi / count;
    for (int i = 0; i < count; ++i) {
      const double phi = 2.0 * std::numbers::pi * i / count;
      rule.points.push_back(std::cos(phi));
      rule.points.push_back(std::sin(phi));
      rule.weights.push_back(w);
    }
    return rule;
  }

  const SphereRule sub = sphere_rule(m - 1, degree);
  const Rule1D axis = gauss_gegenbauer(degree / 2 + 1, 0.5 * (m - 1));
  for (std::size_t a = 0; a < axis.nodes.size(); ++a) {
    const double x = axis.nodes[a];
    const double s = std::sqrt(std::max(0.0, 1.0 - x * x));
    for (std::size_t j = 0; j < sub.size(); ++j) {
      rule.points.push_back(x);
      const double* u = sub.point(j);
      for (int c = 0; c < m; ++c) rule.points.push_back(s * u[c]);
      rule.weights.push_back(axis.weights[a] * sub.weights[j]);
    }
  }
  return rule;
}

std::vector<std::vector<double>> orthonormal_complement(const std::vector<double>& q) {
  const int d = static_cast<int>(q.size());
  Eigen::VectorXd v = Eigen::Map<const Eigen::VectorXd>(q.data(), d);
  // QR of [q, e_i, ...] (e_pivot dropped): trailing columns of Q span q^perp.
  int pivot = 0;
  v.cwiseAbs().maxCoeff(&pivot);
  Eigen::MatrixXd basis(d, d);
  basis.col(0) = v.normalized();
  int col = 1;
  for (int i = 0; i < d && col < d; ++i) {
    if (i == pivot) continue;
    basis.col(col++) = Eigen::VectorXd::Unit(d, i);
  }
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(basis);
  const Eigen::MatrixXd full = qr.householderQ();

  std::vector<std::vector<double>> out(d - 1, std::vector<double>(d));
  for (int r = 1; r < d; ++r)
    for (int c = 0; c < d; ++c) out[r - 1][c] = full(c, r);
  return out;
}

}  // namespace zonal
