#pragma once

#include <vector>

namespace zonal {

/// Nodes and weights of a one-dimensional rule.
struct Rule1D {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Gauss rule for the weight (1 - x^2)^{lambda - 1/2} on [-1, 1], lambda > 0,
/// computed by Golub-Welsch. lambda = 1/2 is Gauss-Legendre.
Rule1D gauss_gegenbauer(int count, double lambda);

inline Rule1D gauss_legendre(int count) { return gauss_gegenbauer(count, 0.5); }

/// Composite Gauss-Legendre on [a, b]: `panels` equal panels with `per_panel` nodes each.
Rule1D composite_gauss_legendre(double a, double b, int panels, int per_panel);

/// Point set on S^m in R^{m+1}, stored row-major (points.size() == weights.size() * (m+1)).
struct SphereRule {
  int dim = 0;  // m
  std::vector<double> points;
  std::vector<double> weights;

  std::size_t size() const { return weights.size(); }
  const double* point(std::size_t i) const { return points.data() + i * (dim + 1); }
};

/// Product rule on S^m exact for polynomials of total degree <= degree.
/// S^1 uses degree+1 equispaced nodes; S^m (m >= 2) splits off one coordinate
/// x with a Gauss-Gegenbauer rule and recurses on S^{m-1}.
SphereRule sphere_rule(int m, int degree);

/// Orthonormal basis of the orthogonal complement of a unit vector q in R^{d},
/// returned as d-1 rows of length d.
std::vector<std::vector<double>> orthonormal_complement(const std::vector<double>& q);

}  // namespace zonal
