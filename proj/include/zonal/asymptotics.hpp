#pragma once

#include <complex>
#include <span>

#include "zonal/special_functions.hpp"

namespace zonal {

/// The expanding angular window C k^{-delta} < theta < pi - C k^{-delta}, 0 <= delta < 1/6.
struct AngleWindow {
  AngleWindow(double c, double delta);

  double c;
  double delta;

  /// Lower edge C k^{-delta}; the upper edge is pi minus this.
  double edge(int k) const;
  bool nonempty(int k) const;
};

/// Strict containment in the window at degree k (k >= 1).
bool window_contains(const AngleWindow& w, int k, double theta);

/// Leading-order approximant amplitude * cos(phase).
struct AsymptoticValue {
  double amplitude;
  double phase;
  double value;
};

/// alpha_{k,n}(theta) = k theta + (theta/2 - pi/4)(n-1).
double phase_alpha(const ZonalIndex& idx, double theta);

/// Leading term of P_{k,n+1}(cos theta).
AsymptoticValue legendre_leading(const ZonalIndex& idx, double theta);

/// Leading term of the projector kernel P_{k,n}(q,q') with q.q' = cos theta.
AsymptoticValue projector_leading(const ZonalIndex& idx, double theta);

/// Leading term of P_k^{(n/2-1,n/2-1)}(cos theta).
AsymptoticValue gegenbauer_leading(const ZonalIndex& idx, double theta);

/// Leading term of the push-forward conformal factor C_{k,n} (k >= 1).
double c_constant_leading(const ZonalIndex& idx);

/// psi_2(v, w) = -i omega_0(v, w) - |v - w|^2 / 2 for v, w in C^m = R^{2m}.
///
/// Real coordinates are laid out as (x_1, y_1, ..., x_m, y_m) with z_j = x_j + i y_j,
/// and omega_0(v, w) = sum_j (x_j(v) y_j(w) - y_j(v) x_j(w)) = Im <w, v>.
std::complex<double> psi2(std::span<const double> v, std::span<const double> w);

/// Same, with v and w given directly as complex vectors.
std::complex<double> psi2(std::span<const std::complex<double>> v,
                          std::span<const std::complex<double>> w);

/// Closed form (sqrt2 pi)^{n-1} sin(theta)^{(n-1)/2} e^{i(theta/2 - pi/4)(n-1)}.
std::complex<double> gaussian_leading_coefficient(int n, double theta);

/// Quadrature of the Gaussian integral over R^{n-1} x R^{n-1} whose closed form is above.
/// Supports 1 <= n <= 4.
std::complex<double> gaussian_coefficient_numeric(int n, double theta);

}  // namespace zonal
