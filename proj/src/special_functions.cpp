#include "zonal/special_functions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace zonal {

ZonalIndex::ZonalIndex(int n, int k) : n_(n), k_(k) {
  if (n < 1) throw std::invalid_argument("ZonalIndex: n must be >= 1, got " + std::to_string(n));
  if (k < 0) throw std::invalid_argument("ZonalIndex: k must be >= 0, got " + std::to_string(k));
}

double clamp_cosine(double t) {
  if (!std::isfinite(t) || std::abs(t) > 1.0 + kCosineTolerance)
    throw std::domain_error("cosine argument outside [-1, 1]: " + std::to_string(t));
  return std::clamp(t, -1.0, 1.0);
}

double legendre_normalized(const ZonalIndex& idx, double t) {
  t = clamp_cosine(t);
  const int k = idx.k();
  if (k == 0) return 1.0;
  if (t == 1.0) return 1.0;
  if (t == -1.0) return (k % 2 == 0) ? 1.0 : -1.0;

  const double two_lambda = double(idx.n() - 1);
  const double lambda = 0.5 * two_lambda;
  double prev = 1.0;
  double cur = t;
  for (int j = 1; j < k; ++j) {
    const double next = (2.0 * (j + lambda) * t * cur - j * prev) / (j + two_lambda);
    prev = cur;
    cur = next;
  }
  if (!std::isfinite(cur)) throw std::overflow_error("legendre_normalized: non-finite iterate");
  return cur;
}

double gegenbauer_norm_constant(const ZonalIndex& idx) {
  const double half_n = 0.5 * idx.n();
  const double k = idx.k();
  const double log_r = std::lgamma(k + half_n) - std::lgamma(k + 1.0) - std::lgamma(half_n);
  return std::exp(log_r);
}

double gegenbauer_jacobi(const ZonalIndex& idx, double t) {
  return gegenbauer_norm_constant(idx) * legendre_normalized(idx, t);
}

std::uint64_t binomial(std::uint64_t m, std::uint64_t r) {
  if (r > m) return 0;
  r = std::min(r, m - r);
  unsigned __int128 acc = 1;
  for (std::uint64_t i = 1; i <= r; ++i) {
    // acc * (m - r + i) / i is exact at every step.
    acc = acc * (m - r + i) / i;
    if (acc > std::numeric_limits<std::uint64_t>::max())
      throw std::overflow_error("binomial coefficient exceeds 64 bits");
  }
  return static_cast<std::uint64_t>(acc);
}

std::uint64_t dim_eigenspace(const ZonalIndex& idx) {
  const std::uint64_t n = idx.n();
  const std::uint64_t k = idx.k();
  if (k == 0) return 1;
  if (k == 1) return n + 1;
  return binomial(k + n, n) - binomial(k + n - 2, n);
}

double vol_sphere(int m) {
  if (m < 0) throw std::invalid_argument("vol_sphere: m must be >= 0");
  const double h = 0.5 * (m + 1);
  return 2.0 * std::exp(h * std::log(std::numbers::pi) - std::lgamma(h));
}

double projector_kernel(const ZonalIndex& idx, double t) {
  return double(dim_eigenspace(idx)) / vol_sphere(idx.n()) * legendre_normalized(idx, t);
}

}  // namespace zonal
