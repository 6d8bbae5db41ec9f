#pragma once

#include <cstdint>
#include <stdexcept>

namespace zonal {

/// Sphere dimension n (S^n in R^{n+1}) and harmonic degree k.
class ZonalIndex {
public:
  ZonalIndex(int n, int k);

  int n() const { return n_; }
  int k() const { return k_; }

  /// Laplace-Beltrami eigenvalue k(k+n-1) of the degree-k harmonics.
  double eigenvalue() const { return double(k_) * double(k_ + n_ - 1); }

  friend bool operator==(const ZonalIndex&, const ZonalIndex&) = default;

private:
  int n_;
  int k_;
};

/// Absolute slack accepted on |t| <= 1 before rejecting; values inside it are clamped.
inline constexpr double kCosineTolerance = 1e-12;

/// Clamp t into [-1, 1] if within kCosineTolerance, throw std::domain_error otherwise.
double clamp_cosine(double t);

/// Zonal Legendre polynomial P_{k,n+1}(t), normalized so that P(1) = 1.
///
/// Uses the ultraspherical recurrence rewritten in the P(1)=1 normalization:
///   p_{j+1} = (2(j+lambda) t p_j - j p_{j-1}) / (j + 2 lambda),  lambda = (n-1)/2,
/// so every iterate stays in [-1, 1]. For n = 1 this is the Chebyshev recurrence.
double legendre_normalized(const ZonalIndex& idx, double t);

/// Gegenbauer/Jacobi polynomial P_k^{(n/2-1, n/2-1)}(t) = r_{k,n} P_{k,n+1}(t).
double gegenbauer_jacobi(const ZonalIndex& idx, double t);

/// r_{k,n} = Gamma(k+n/2) / (k! Gamma(n/2)), evaluated through lgamma.
double gegenbauer_norm_constant(const ZonalIndex& idx);

/// N_{k,n} = dim of degree-k spherical harmonics on S^n.
/// Throws std::overflow_error if the count does not fit in 64 bits.
std::uint64_t dim_eigenspace(const ZonalIndex& idx);

/// Exact binomial coefficient; std::overflow_error when it does not fit.
std::uint64_t binomial(std::uint64_t m, std::uint64_t r);

/// vol(S^m) = 2 pi^{(m+1)/2} / Gamma((m+1)/2).
double vol_sphere(int m);

/// Kernel of the orthogonal projector onto V_{k,n}: (N_{k,n}/vol(S^n)) P_{k,n+1}(t).
double projector_kernel(const ZonalIndex& idx, double t);

}  // namespace zonal
