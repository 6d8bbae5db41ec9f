#include <doctest.h>

#include <cmath>
#include <numbers>

#include "zonal/quadrature.hpp"
#include "zonal/special_functions.hpp"

using namespace zonal;
using std::numbers::pi;

TEST_CASE("Gauss-Legendre integrates polynomials exactly") {
  const Rule1D r = gauss_legendre(8);
  for (int p = 0; p <= 15; ++p) {
    double s = 0.0;
    for (std::size_t i = 0; i < r.nodes.size(); ++i) s += r.weights[i] * std::pow(r.nodes[i], p);
    const double exact = p % 2 ? 0.0 : 2.0 / (p + 1);
    CHECK(s == doctest::Approx(exact).epsilon(1e-13));
  }
}

TEST_CASE("Gauss-Gegenbauer weight mass") {
  for (double lambda : {0.5, 1.0, 1.5, 2.5}) {
    const Rule1D r = gauss_gegenbauer(6, lambda);
    double s = 0.0;
    for (double w : r.weights) s += w;
    const double mass = std::sqrt(pi) * std::tgamma(lambda + 0.5) / std::tgamma(lambda + 1.0);
    CHECK(s == doctest::Approx(mass).epsilon(1e-13));
  }
}

TEST_CASE("composite Gauss-Legendre") {
  const Rule1D r = composite_gauss_legendre(-8.0, 8.0, 16, 16);
  double s = 0.0;
  for (std::size_t i = 0; i < r.nodes.size(); ++i) s += r.weights[i] * std::exp(-0.5 * r.nodes[i] * r.nodes[i]);
  CHECK(s == doctest::Approx(std::sqrt(2 * pi)).epsilon(1e-13));
}

TEST_CASE("sphere rules: total mass and monomial moments") {
  for (int m = 1; m <= 3; ++m) {
    const SphereRule rule = sphere_rule(m, 10);
    double mass = 0.0, x4 = 0.0, x2y2 = 0.0, odd = 0.0;
    for (std::size_t i = 0; i < rule.size(); ++i) {
      const double* p = rule.point(i);
      double norm2 = 0.0;
      for (int c = 0; c <= m; ++c) norm2 += p[c] * p[c];
      CHECK(norm2 == doctest::Approx(1.0).epsilon(1e-14));
      mass += rule.weights[i];
      x4 += rule.weights[i] * std::pow(p[0], 4);
      x2y2 += rule.weights[i] * p[0] * p[0] * p[m] * p[m];
      odd += rule.weights[i] * p[0] * p[m] * p[m];
    }
    const double d = m + 1;
    CHECK(mass == doctest::Approx(vol_sphere(m)).epsilon(1e-13));
    // E[x^4] = 3/(d(d+2)), E[x^2 y^2] = 1/(d(d+2)) on S^{d-1}
    CHECK(x4 / mass == doctest::Approx(3.0 / (d * (d + 2))).epsilon(1e-12));
    CHECK(x2y2 / mass == doctest::Approx(1.0 / (d * (d + 2))).epsilon(1e-12));
    CHECK(std::abs(odd) < 1e-13);
  }
}

TEST_CASE("orthonormal_complement") {
  const std::vector<double> q{0.48, -0.6, 0.64};
  const auto b = orthonormal_complement(q);
  REQUIRE(b.size() == 2);
  for (const auto& row : b) {
    double qq = 0.0, nn = 0.0;
    for (int c = 0; c < 3; ++c) {
      qq += row[c] * q[c];
      nn += row[c] * row[c];
    }
    CHECK(std::abs(qq) < 1e-14);
    CHECK(nn == doctest::Approx(1.0).epsilon(1e-14));
  }
  double cross = 0.0;
  for (int c = 0; c < 3; ++c) cross += b[0][c] * b[1][c];
  CHECK(std::abs(cross) < 1e-14);
}
