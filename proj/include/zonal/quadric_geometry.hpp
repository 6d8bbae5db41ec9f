#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "zonal/random.hpp"
#include "zonal/special_functions.hpp"

namespace zonal {

using Complex = std::complex<double>;
using CVector = std::vector<Complex>;
using RVector = std::vector<double>;

// ---------------------------------------------------------------------------
// Points on the Fermat cone z^t z = 0 and on X_r = cone ∩ {|z| = r}.

double norm(const CVector& z);
/// Hermitian product <a, b> = sum a_j conj(b_j).
Complex hermitian(const CVector& a, const CVector& b);
/// Bilinear z^t w (no conjugation).
Complex bilinear(const CVector& z, const CVector& w);

bool on_cone(const CVector& z, double tol);
bool on_Xr(const CVector& z, double r, double tol);

/// Orthonormal 2-frame (q, p) in R^{n+1}; q + i p lies on X_{sqrt2}.
struct FramePoint {
  RVector q;
  RVector p;

  /// Validates |q| = |p| = 1 and q.p = 0 to 1e-12.
  static FramePoint make(RVector q, RVector p);

  CVector embed() const;
};

/// Haar-uniform frame: Gram-Schmidt of two Gaussian vectors drawn from sample
/// `index` of `stream`. Nearly parallel draws are redrawn from fresh slots.
FramePoint sample_frame(int n, const RandomStream& stream, std::uint64_t index);

// ---------------------------------------------------------------------------
// Degree-k holomorphic polynomials modulo (z^t z).

using Exponent = std::vector<int>;

/// Degree-k exponents in n+1 variables with first exponent <= 1.
std::vector<Exponent> monomial_basis(const ZonalIndex& idx);

/// Raw monomials z^e for every exponent, in basis order.
CVector eval_monomials(const std::vector<Exponent>& exps, int k, const CVector& z);

/// d'V-mass of X_r (Euclidean density induced from C^{n+1}):
/// sqrt2 (r / sqrt2)^{2n-1} vol(S^n) vol(S^{n-1}).
double euclidean_mass_Xr(int n, double r);

/// Orthonormal basis of H_k(X_1) for dV = d'V / 2pi, estimated by Monte Carlo.
/// Row j of coeff gives s_j = sum_l coeff(j, l) z^{e_l}.
class ConeBasis {
public:
  ConeBasis(ZonalIndex idx, std::vector<Exponent> exps, Eigen::MatrixXcd coeff,
            std::uint64_t samples, std::uint64_t seed, double gram_stderr);

  const ZonalIndex& index() const { return idx_; }
  const std::vector<Exponent>& exponents() const { return exps_; }
  const Eigen::MatrixXcd& coeff() const { return coeff_; }
  std::uint64_t samples() const { return samples_; }
  std::uint64_t seed() const { return seed_; }
  double gram_stderr() const { return gram_stderr_; }
  std::size_t size() const { return exps_.size(); }

  /// s_j(z) for all j.
  Eigen::VectorXcd evaluate(const CVector& z) const;

  nlohmann::json to_json() const;
  static ConeBasis from_json(const nlohmann::json& doc);

private:
  ZonalIndex idx_;
  std::vector<Exponent> exps_;
  Eigen::MatrixXcd coeff_;
  std::uint64_t samples_;
  std::uint64_t seed_;
  double gram_stderr_;
};

/// Monte Carlo Gram of the family coeff * monomials on X_1, with per-entry standard errors.
struct GramEstimate {
  Eigen::MatrixXcd gram;
  Eigen::MatrixXd stderr_entries;
  double max_stderr = 0.0;
};

GramEstimate estimate_gram(const ZonalIndex& idx, const std::vector<Exponent>& exps,
                           const Eigen::MatrixXcd& transform, std::uint64_t samples,
                           const RandomStream& stream);

/// Builds a ConeBasis from `samples` Haar frames drawn from the "cone-gram" substream of `seed`.
/// Throws std::runtime_error when the Gram matrix is numerically singular.
ConeBasis build_cone_basis(const ZonalIndex& idx, std::uint64_t samples, std::uint64_t seed);

/// Level-k Szego kernel of X_r.
class SzegoEvaluator {
public:
  SzegoEvaluator(ConeBasis basis, double radius);

  const ConeBasis& basis() const { return basis_; }
  double radius() const { return radius_; }

  /// r^{-(2k+2n-1)} sum_j s_j(x) conj(s_j(y)); x, y must lie on X_r within 1e-9.
  Complex operator()(const CVector& x, const CVector& y) const;

  /// r^{-(k+n-1/2)} s_j(z): orthonormal basis of H_k(X_r) for d'V/2pi.
  Eigen::VectorXcd scaled_sections(const CVector& z) const;

  /// Fiber integrals int_{S(q^perp)} sigma_j(q + i p) dp for the scaled sections.
  Eigen::VectorXcd pushforward_sections(const RVector& q, int fiber_degree = 0) const;

  void require_on_manifold(const CVector& z) const;

private:
  ConeBasis basis_;
  double radius_;
};

struct PushforwardValue {
  double real;
  double imag;
};

/// Minimal quadrature degree used on a fiber S(q^perp) for degree k.
int fiber_quadrature_degree(int n, int k);

/// Double fiber integral of Pi_{sqrt2,k}(q0 + i p, q1 + i p'). The evaluator must be at
/// radius sqrt2 and n in {2, 3}; `fiber_degree` overrides the fiber rule (circle: nodes-1)
/// and is rejected when below the degree-k minimum.
PushforwardValue pushforward_kernel(const SzegoEvaluator& ev, const RVector& q0,
                                    const RVector& q1, int fiber_degree = 0);

/// Estimate of C_{k,n} with its Monte Carlo standard error.
struct CConstantEstimate {
  double value;
  double stderr_value;
  double pushforward_norm2;  // |nu_* s_a|^2_{L^2(S^n)}
  double section_norm2;      // |s_a|^2 on X_sqrt2 w.r.t. d'V/2pi
};

/// Default null vector a = e_1 + i e_2.
CVector default_null_vector(int n);

/// C_{k,n} = |nu_* s_a| / |s_a| with s_a(z) = (a^t z)^k; n in {2, 3}.
CConstantEstimate c_constant_numeric(const ZonalIndex& idx, std::uint64_t samples,
                                     const RandomStream& stream,
                                     const std::optional<CVector>& null_vector = std::nullopt);

/// Exact C_{0,n}: nu_* 1 = vol(S^{n-1}) pointwise.
double c_constant_degree_zero(int n);

// ---------------------------------------------------------------------------
// Geodesic lifts and local constructions.

/// e^{-i theta}(q0 + i p0): real part gamma(theta), imaginary part its velocity.
CVector geodesic_lift(const FramePoint& frame, double theta);

/// (S_+, S_-) = (-1 + sqrt(1 - |v|^2), -1 - sqrt(1 - |v|^2)).
std::pair<double, double> s_plus_minus(const RVector& v);

/// Fubini-Study distance between the fibers of z0, z1 in X_sqrt2:
/// (1/sqrt2) min_gamma |e^{-i gamma} z0 - z1| = sqrt(2 - |<z0, z1>|).
double fubini_study_distance(const CVector& z0, const CVector& z1);

struct HlcOffset {
  double beta;
  CVector h;
};

/// Writes z + i e^{i theta} dp = beta (z + h) with beta = 1 - |dp|^2/2 and h ⟂_h z.
HlcOffset hlc_offset(const CVector& z, double theta, const RVector& dp);

// ---------------------------------------------------------------------------

struct DecayPoint {
  int k;
  double normalized;  // |Pi_{1,k}(x, x')| / Pi_{1,k}(x, x)
  double noise_floor;
  bool below_noise;
};

struct DecayReport {
  std::vector<DecayPoint> points;
  double distance;
  double decay_rate;  // -slope of log(normalized) vs k over points above the floor
  bool decreasing;    // strictly decreasing until the noise floor
};

/// Normalized off-diagonal Szego values across a series of evaluators at radius 1.
/// Throws std::invalid_argument if x, x' are closer than min_dist.
DecayReport offdiagonal_decay_probe(const std::vector<SzegoEvaluator>& series,
                                    const CVector& x, const CVector& x_prime, double min_dist);

}  // namespace zonal
