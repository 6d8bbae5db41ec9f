#include "zonal/asymptotics.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "zonal/quadrature.hpp"

namespace zonal {

namespace {

constexpr double kPi = std::numbers::pi;

void require_open_angle(double theta, const char* who) {
  if (!(theta > 0.0 && theta < kPi))
    throw std::domain_error(std::string(who) + ": theta must lie in (0, pi), got " +
                            std::to_string(theta));
}

AsymptoticValue make_value(double amplitude, double phase) {
  return {amplitude, phase, amplitude * std::cos(phase)};
}

double factorial(int m) { return std::exp(std::lgamma(m + 1.0)); }

}  // namespace

AngleWindow::AngleWindow(double c_, double delta_) : c(c_), delta(delta_) {
  if (!(c > 0.0)) throw std::invalid_argument("AngleWindow: C must be > 0");
  if (!(delta >= 0.0 && delta < 1.0 / 6.0))
    throw std::invalid_argument("AngleWindow: delta must lie in [0, 1/6)");
}

double AngleWindow::edge(int k) const { return c * std::pow(double(k), -delta); }

bool AngleWindow::nonempty(int k) const { return 2.0 * edge(k) < kPi; }

bool window_contains(const AngleWindow& w, int k, double theta) {
  if (k < 1) throw std::invalid_argument("window_contains: k must be >= 1");
  const double e = w.edge(k);
  return e < theta && theta < kPi - e;
}

double phase_alpha(const ZonalIndex& idx, double theta) {
  require_open_angle(theta, "phase_alpha");
  return idx.k() * theta + (0.5 * theta - 0.25 * kPi) * (idx.n() - 1);
}

AsymptoticValue legendre_leading(const ZonalIndex& idx, double theta) {
  require_open_angle(theta, "legendre_leading");
  const int n = idx.n();
  const double k = idx.k();
  const double amp = std::pow(2.0, 0.5 * (n + 1)) / vol_sphere(n - 1) *
                     std::pow(kPi / (k * std::sin(theta)), 0.5 * (n - 1));
  return make_value(amp, phase_alpha(idx, theta));
}

AsymptoticValue projector_leading(const ZonalIndex& idx, double theta) {
  require_open_angle(theta, "projector_leading");
  const int n = idx.n();
  const double k = idx.k();
  const double amp = std::pow(2.0, 0.5 * (n + 3)) /
                     (factorial(n - 1) * vol_sphere(n) * vol_sphere(n - 1)) *
                     std::pow(kPi * k / std::sin(theta), 0.5 * (n - 1));
  return make_value(amp, phase_alpha(idx, theta));
}

AsymptoticValue gegenbauer_leading(const ZonalIndex& idx, double theta) {
  require_open_angle(theta, "gegenbauer_leading");
  const double half = 0.5 * theta;
  const double amp = 1.0 / std::sqrt(kPi * idx.k()) *
                     std::pow(std::cos(half) * std::sin(half), -0.5 * (idx.n() - 1));
  return make_value(amp, phase_alpha(idx, theta));
}

double c_constant_leading(const ZonalIndex& idx) {
  if (idx.k() < 1) throw std::invalid_argument("c_constant_leading: k must be >= 1");
  const int n = idx.n();
  const double prefactor =
      factorial(n - 1) / (2.0 * std::numbers::sqrt2) * vol_sphere(n) * vol_sphere(n - 1);
  return std::sqrt(prefactor) * std::pow(kPi * idx.k(), -0.25 * (n - 1));
}

std::complex<double> psi2(std::span<const double> v, std::span<const double> w) {
  if (v.size() != w.size() || v.size() % 2 != 0)
    throw std::invalid_argument("psi2: vectors must share one even real dimension");
  double omega = 0.0;
  double dist2 = 0.0;
  for (std::size_t j = 0; j < v.size(); j += 2) {
    omega += v[j] * w[j + 1] - v[j + 1] * w[j];
    const double dx = v[j] - w[j];
    const double dy = v[j + 1] - w[j + 1];
    dist2 += dx * dx + dy * dy;
  }
  return {-0.5 * dist2, -omega};
}

std::complex<double> psi2(std::span<const std::complex<double>> v,
                          std::span<const std::complex<double>> w) {
  if (v.size() != w.size()) throw std::invalid_argument("psi2: dimension mismatch");
  std::complex<double> inner = 0.0;  // <w, v> = sum w_j conj(v_j)
  double dist2 = 0.0;
  for (std::size_t j = 0; j < v.size(); ++j) {
    inner += w[j] * std::conj(v[j]);
    dist2 += std::norm(v[j] - w[j]);
  }
  // omega_0(v, w) = Im sum conj(v_j) w_j
  return {-0.5 * dist2, -inner.imag()};
}

std::complex<double> gaussian_leading_coefficient(int n, double theta) {
  if (n < 1) throw std::invalid_argument("gaussian_leading_coefficient: n must be >= 1");
  require_open_angle(theta, "gaussian_leading_coefficient");
  const double m = n - 1;
  const double mag = std::pow(std::numbers::sqrt2 * kPi, m) * std::pow(std::sin(theta), 0.5 * m);
  return std::polar(mag, (0.5 * theta - 0.25 * kPi) * m);
}

std::complex<double> gaussian_coefficient_numeric(int n, double theta) {
  if (n < 1 || n > 4)
    throw std::invalid_argument("gaussian_coefficient_numeric: supported for 1 <= n <= 4");
  require_open_angle(theta, "gaussian_coefficient_numeric");
  if (n == 1) return 1.0;

  // The integrand factorizes coordinate-wise; integrate one (b0, b1) plane on [-8, 8]^2.
  static const Rule1D rule = composite_gauss_legendre(-8.0, 8.0, 16, 16);
  const double cot = std::cos(theta) / std::sin(theta);
  const std::complex<double> c1(0.5, cot);  // (1 + 2i cot)/2
  std::complex<double> plane = 0.0;
  for (std::size_t a = 0; a < rule.nodes.size(); ++a) {
    const double b0 = rule.nodes[a];
    std::complex<double> row = 0.0;
    for (std::size_t b = 0; b < rule.nodes.size(); ++b) {
      const double b1 = rule.nodes[b];
      const std::complex<double> expo(-0.5 * b0 * b0, -b0 * b1);
      row += rule.weights[b] * std::exp(expo - c1 * (b1 * b1));
    }
    plane += rule.weights[a] * row;
  }
  std::complex<double> total = 1.0;
  for (int j = 1; j < n; ++j) total *= plane;
  return total;
}

}  // namespace zonal
