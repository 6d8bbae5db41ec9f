#include "zonal/quadric_geometry.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <numbers>
#include <stdexcept>
#include <string>

#include "zonal/parallel.hpp"
#include "zonal/quadrature.hpp"

namespace zonal {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kManifoldTol = 1e-9;
constexpr std::uint64_t kBlock = 4096;

double dot(const RVector& a, const RVector& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double rnorm(const RVector& a) { return std::sqrt(dot(a, a)); }

void require_dim(const CVector& z, int n, const char* who) {
  if (static_cast<int>(z.size()) != n + 1)
    throw std::invalid_argument(std::string(who) + ": expected a vector of length n+1");
}

void require_supported(const ZonalIndex& idx, const char* who) {
  if (idx.n() != 2 && idx.n() != 3)
    throw std::invalid_argument(std::string(who) + ": only n = 2 and n = 3 are supported");
  if (idx.k() > 12) throw std::invalid_argument(std::string(who) + ": k must be <= 12");
}

// Sum over [begin, end) of m(x) m(x)^* for x = (q + i p)/sqrt2 on X_1, raw monomials,
// symmetrized over complex conjugation.
Eigen::MatrixXcd raw_gram_range(const ZonalIndex& idx, const std::vector<Exponent>& exps,
                                const RandomStream& stream, std::uint64_t begin,
                                std::uint64_t end) {
  const Eigen::Index dim = static_cast<Eigen::Index>(exps.size());
  Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(dim, dim);
  Eigen::MatrixXcd block(kBlock, dim);
  const double scale = 1.0 / std::numbers::sqrt2;
  for (std::uint64_t start = begin; start < end; start += kBlock) {
    const std::uint64_t stop = std::min(end, start + kBlock);
    const Eigen::Index rows = static_cast<Eigen::Index>(stop - start);
    for (std::uint64_t i = start; i < stop; ++i) {
      CVector z = sample_frame(idx.n(), stream, i).embed();
      for (auto& c : z) c *= scale;
      const CVector m = eval_monomials(exps, idx.k(), z);
      for (Eigen::Index j = 0; j < dim; ++j) block(Eigen::Index(i - start), j) = m[j];
    }
    const auto used = block.topRows(rows);
    acc.noalias() += used.transpose() * used.conjugate();
  }
  // Pair every frame (q, p) with its conjugate (q, -p): the conjugate sample contributes
  // conj(acc), so the pair sum is real. The exact Gram matrix is real for the same reason.
  return acc.real().cast<Complex>();
}

struct RawGram {
  BatchPlan plan;
  std::vector<Eigen::MatrixXcd> partial;
};

RawGram raw_gram(const ZonalIndex& idx, const std::vector<Exponent>& exps,
                 std::uint64_t samples, const RandomStream& stream) {
  if (samples == 0) throw std::invalid_argument("estimate_gram: samples must be > 0");
  RawGram raw{plan_batches(samples), {}};
  raw.partial.resize(raw.plan.batches);
  parallel_for(raw.plan.batches, [&](std::size_t b) {
    raw.partial[b] = raw_gram_range(idx, exps, stream, raw.plan.begin(b), raw.plan.end(b));
  });
  return raw;
}

GramEstimate summarize(const ZonalIndex& idx, const RawGram& raw,
                       const Eigen::MatrixXcd& transform) {
  const BatchPlan& plan = raw.plan;
  const double mass = euclidean_mass_Xr(idx.n(), 1.0) / kTwoPi;
  const Eigen::Index dim = transform.rows();
  Eigen::MatrixXcd total = Eigen::MatrixXcd::Zero(dim, dim);
  std::vector<Eigen::MatrixXcd> batch_means(plan.batches);
  for (std::size_t b = 0; b < plan.batches; ++b) {
    const Eigen::MatrixXcd t = transform * raw.partial[b] * transform.adjoint();
    total += t;
    batch_means[b] = t * (mass / double(plan.end(b) - plan.begin(b)));
  }

  GramEstimate est;
  est.gram = total * (mass / double(plan.samples));
  est.stderr_entries =
      Eigen::MatrixXd::Constant(dim, dim, std::numeric_limits<double>::infinity());
  if (plan.batches >= 2) {
    Eigen::MatrixXd var = Eigen::MatrixXd::Zero(dim, dim);
    for (const auto& m : batch_means) var += (m - est.gram).cwiseAbs2();
    const double nb = double(plan.batches);
    est.stderr_entries = (var / ((nb - 1.0) * nb)).cwiseSqrt();
  }
  est.max_stderr = est.stderr_entries.maxCoeff();
  return est;
}

}  // namespace

// ---------------------------------------------------------------------------

double norm(const CVector& z) {
  double s = 0.0;
  for (const auto& c : z) s += std::norm(c);
  return std::sqrt(s);
}

Complex hermitian(const CVector& a, const CVector& b) {
  Complex s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * std::conj(b[i]);
  return s;
}

Complex bilinear(const CVector& z, const CVector& w) {
  Complex s = 0.0;
  for (std::size_t i = 0; i < z.size(); ++i) s += z[i] * w[i];
  return s;
}

bool on_cone(const CVector& z, double tol) {
  const double n = norm(z);
  return std::abs(bilinear(z, z)) <= tol * n * n;
}

bool on_Xr(const CVector& z, double r, double tol) {
  return on_cone(z, tol) && std::abs(norm(z) - r) <= tol;
}

FramePoint FramePoint::make(RVector q, RVector p) {
  if (q.size() != p.size() || q.size() < 2)
    throw std::invalid_argument("FramePoint: q and p must have equal length >= 2");
  if (std::abs(rnorm(q) - 1.0) > 1e-12 || std::abs(rnorm(p) - 1.0) > 1e-12 ||
      std::abs(dot(q, p)) > 1e-12)
    throw std::invalid_argument("FramePoint: (q, p) is not an orthonormal pair");
  return {std::move(q), std::move(p)};
}

CVector FramePoint::embed() const {
  CVector z(q.size());
  for (std::size_t i = 0; i < q.size(); ++i) z[i] = {q[i], p[i]};
  return z;
}

FramePoint sample_frame(int n, const RandomStream& stream, std::uint64_t index) {
  if (n < 1) throw std::invalid_argument("sample_frame: n must be >= 1");
  const std::size_t d = n + 1;
  for (std::uint32_t attempt = 0;; ++attempt) {
    RVector g(d), h(d);
    for (std::size_t j = 0; j < d; ++j) {
      const auto pair = stream.normal_pair(index, attempt * 64u + static_cast<std::uint32_t>(j));
      g[j] = pair[0];
      h[j] = pair[1];
    }
    const double gn = rnorm(g);
    if (gn < 1e-8) continue;
    for (auto& x : g) x /= gn;
    const double proj = dot(g, h);
    for (std::size_t j = 0; j < d; ++j) h[j] -= proj * g[j];
    const double hn = rnorm(h);
    if (hn < 1e-6) continue;  // numerically parallel draw
    for (auto& x : h) x /= hn;
    // One re-orthogonalization pass keeps q.p at roundoff level.
    const double again = dot(g, h);
    for (std::size_t j = 0; j < d; ++j) h[j] -= again * g[j];
    const double hn2 = rnorm(h);
    for (auto& x : h) x /= hn2;
    return {std::move(g), std::move(h)};
  }
}

// ---------------------------------------------------------------------------

std::vector<Exponent> monomial_basis(const ZonalIndex& idx) {
  const int vars = idx.n() + 1;
  const int k = idx.k();
  std::vector<Exponent> out;
  // Enumerate exponents of the trailing n variables in lexicographic order.
  auto emit_tail = [&](int first, int total) {
    Exponent e(vars, 0);
    e[0] = first;
    std::function<void(int, int)> rec = [&](int pos, int left) {
      if (pos == vars - 1) {
        e[pos] = left;
        out.push_back(e);
        return;
      }
      for (int a = left; a >= 0; --a) {
        e[pos] = a;
        rec(pos + 1, left - a);
      }
    };
    rec(1, total);
  };
  emit_tail(0, k);
  if (k >= 1) emit_tail(1, k - 1);
  return out;
}

CVector eval_monomials(const std::vector<Exponent>& exps, int k, const CVector& z) {
  const std::size_t vars = z.size();
  std::vector<CVector> powers(vars, CVector(k + 1));
  for (std::size_t v = 0; v < vars; ++v) {
    powers[v][0] = 1.0;
    for (int a = 1; a <= k; ++a) powers[v][a] = powers[v][a - 1] * z[v];
  }
  CVector out(exps.size());
  for (std::size_t j = 0; j < exps.size(); ++j) {
    Complex m = 1.0;
    for (std::size_t v = 0; v < vars; ++v) m *= powers[v][exps[j][v]];
    out[j] = m;
  }
  return out;
}

double euclidean_mass_Xr(int n, double r) {
  return std::numbers::sqrt2 * std::pow(r / std::numbers::sqrt2, 2 * n - 1) * vol_sphere(n) *
         vol_sphere(n - 1);
}

// ---------------------------------------------------------------------------

ConeBasis::ConeBasis(ZonalIndex idx, std::vector<Exponent> exps, Eigen::MatrixXcd coeff,
                     std::uint64_t samples, std::uint64_t seed, double gram_stderr)
    : idx_(idx),
      exps_(std::move(exps)),
      coeff_(std::move(coeff)),
      samples_(samples),
      seed_(seed),
      gram_stderr_(gram_stderr) {
  if (coeff_.rows() != static_cast<Eigen::Index>(exps_.size()) || coeff_.cols() != coeff_.rows())
    throw std::invalid_argument("ConeBasis: coefficient matrix does not match the exponents");
}

Eigen::VectorXcd ConeBasis::evaluate(const CVector& z) const {
  require_dim(z, idx_.n(), "ConeBasis::evaluate");
  const CVector m = eval_monomials(exps_, idx_.k(), z);
  return coeff_ * Eigen::Map<const Eigen::VectorXcd>(m.data(), Eigen::Index(m.size()));
}

nlohmann::json ConeBasis::to_json() const {
  nlohmann::json coeff = nlohmann::json::array();
  for (Eigen::Index r = 0; r < coeff_.rows(); ++r)
    for (Eigen::Index c = 0; c < coeff_.cols(); ++c)
      coeff.push_back({coeff_(r, c).real(), coeff_(r, c).imag()});
  return {{"schema_version", 1},
          {"n", idx_.n()},
          {"k", idx_.k()},
          {"exponents", exps_},
          {"coeff", coeff},
          {"samples", samples_},
          {"seed", seed_},
          {"gram_stderr", gram_stderr_}};
}

ConeBasis ConeBasis::from_json(const nlohmann::json& doc) {
  ZonalIndex idx(doc.at("n").get<int>(), doc.at("k").get<int>());
  auto exps = doc.at("exponents").get<std::vector<Exponent>>();
  const auto& flat = doc.at("coeff");
  const Eigen::Index dim = static_cast<Eigen::Index>(exps.size());
  if (flat.size() != static_cast<std::size_t>(dim * dim))
    throw std::invalid_argument("ConeBasis JSON: coefficient count mismatch");
  Eigen::MatrixXcd coeff(dim, dim);
  for (Eigen::Index r = 0; r < dim; ++r)
    for (Eigen::Index c = 0; c < dim; ++c) {
      const auto& pair = flat.at(static_cast<std::size_t>(r * dim + c));
      coeff(r, c) = {pair.at(0).get<double>(), pair.at(1).get<double>()};
    }
  return ConeBasis(idx, std::move(exps), std::move(coeff), doc.at("samples").get<std::uint64_t>(),
                   doc.at("seed").get<std::uint64_t>(), doc.at("gram_stderr").get<double>());
}

GramEstimate estimate_gram(const ZonalIndex& idx, const std::vector<Exponent>& exps,
                           const Eigen::MatrixXcd& transform, std::uint64_t samples,
                           const RandomStream& stream) {
  if (transform.cols() != static_cast<Eigen::Index>(exps.size()))
    throw std::invalid_argument("estimate_gram: transform does not match the exponents");
  return summarize(idx, raw_gram(idx, exps, samples, stream), transform);
}

ConeBasis build_cone_basis(const ZonalIndex& idx, std::uint64_t samples, std::uint64_t seed) {
  require_supported(idx, "build_cone_basis");
  if (samples < 100000) throw std::invalid_argument("build_cone_basis: samples must be >= 1e5");

  auto exps = monomial_basis(idx);
  const Eigen::Index dim = static_cast<Eigen::Index>(exps.size());
  const RandomStream stream = RandomStream(seed, "cone-gram").child(
      static_cast<std::uint64_t>(idx.n()) << 32 | static_cast<std::uint64_t>(idx.k()));
  const RawGram raw = raw_gram(idx, exps, samples, stream);
  const GramEstimate plain = summarize(idx, raw, Eigen::MatrixXcd::Identity(dim, dim));

  const Eigen::MatrixXcd herm = 0.5 * (plain.gram + plain.gram.adjoint());
  Eigen::LLT<Eigen::MatrixXcd> llt(herm);
  const Eigen::MatrixXcd lower = llt.matrixL();
  const Eigen::VectorXd pivots = lower.diagonal().cwiseAbs2().real();
  if (llt.info() != Eigen::Success || !(pivots.minCoeff() > 1e-8 * pivots.maxCoeff()))
    throw std::runtime_error("build_cone_basis: Gram matrix numerically singular at " +
                             std::to_string(samples) + " samples; increase --samples");

  Eigen::MatrixXcd coeff =
      lower.triangularView<Eigen::Lower>().solve(Eigen::MatrixXcd::Identity(dim, dim));
  const double stderr_max = summarize(idx, raw, coeff).max_stderr;
  return ConeBasis(idx, std::move(exps), std::move(coeff), samples, seed, stderr_max);
}

// ---------------------------------------------------------------------------

SzegoEvaluator::SzegoEvaluator(ConeBasis basis, double radius)
    : basis_(std::move(basis)), radius_(radius) {
  if (!(radius_ > 0.0) || !std::isfinite(radius_))
    throw std::invalid_argument("SzegoEvaluator: radius must be positive");
}

void SzegoEvaluator::require_on_manifold(const CVector& z) const {
  require_dim(z, basis_.index().n(), "SzegoEvaluator");
  if (!on_Xr(z, radius_, kManifoldTol))
    throw std::domain_error("SzegoEvaluator: point is not on X_r within 1e-9");
}

Complex SzegoEvaluator::operator()(const CVector& x, const CVector& y) const {
  require_on_manifold(x);
  require_on_manifold(y);
  const int n = basis_.index().n();
  const int k = basis_.index().k();
  const Eigen::VectorXcd sx = basis_.evaluate(x);
  const Eigen::VectorXcd sy = basis_.evaluate(y);
  return sy.dot(sx) * std::pow(radius_, -(2.0 * k + 2.0 * n - 1.0));
}

Eigen::VectorXcd SzegoEvaluator::scaled_sections(const CVector& z) const {
  const int n = basis_.index().n();
  const int k = basis_.index().k();
  return basis_.evaluate(z) * std::pow(radius_, -(k + n - 0.5));
}

Eigen::VectorXcd SzegoEvaluator::pushforward_sections(const RVector& q, int fiber_degree) const {
  const int n = basis_.index().n();
  const int k = basis_.index().k();
  if (static_cast<int>(q.size()) != n + 1)
    throw std::invalid_argument("pushforward_sections: q must have length n+1");
  if (std::abs(rnorm(q) - 1.0) > kManifoldTol)
    throw std::domain_error("pushforward_sections: q must be a unit vector");
  const int minimum = fiber_quadrature_degree(n, k);
  if (fiber_degree == 0) fiber_degree = minimum;
  if (fiber_degree < minimum)
    throw std::invalid_argument("pushforward_sections: fiber quadrature degree below " +
                                std::to_string(minimum));

  const auto frame = orthonormal_complement(q);
  const SphereRule rule = sphere_rule(n - 1, fiber_degree);
  Eigen::VectorXcd acc = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(basis_.size()));
  CVector z(n + 1);
  for (std::size_t i = 0; i < rule.size(); ++i) {
    const double* u = rule.point(i);
    for (int c = 0; c <= n; ++c) {
      double p = 0.0;
      for (int r = 0; r < n; ++r) p += u[r] * frame[r][c];
      z[c] = {q[c], p};
    }
    acc += rule.weights[i] * scaled_sections(z);
  }
  return acc;
}

int fiber_quadrature_degree(int n, int k) {
  if (n == 2) return 4 * k + 7;
  if (n == 3) return 4 * k + 10;
  throw std::invalid_argument("fiber_quadrature_degree: only n = 2 and n = 3 are supported");
}

PushforwardValue pushforward_kernel(const SzegoEvaluator& ev, const RVector& q0,
                                    const RVector& q1, int fiber_degree) {
  if (std::abs(ev.radius() - std::numbers::sqrt2) > 1e-12)
    throw std::invalid_argument("pushforward_kernel: evaluator must be at radius sqrt2");
  const Eigen::VectorXcd a = ev.pushforward_sections(q0, fiber_degree);
  const Eigen::VectorXcd b = ev.pushforward_sections(q1, fiber_degree);
  const Complex v = b.dot(a);
  return {v.real(), v.imag()};
}

// ---------------------------------------------------------------------------

CVector default_null_vector(int n) {
  if (n < 1) throw std::invalid_argument("default_null_vector: n must be >= 1");
  CVector a(n + 1, 0.0);
  a[0] = 1.0;
  a[1] = Complex(0.0, 1.0);
  return a;
}

CConstantEstimate c_constant_numeric(const ZonalIndex& idx, std::uint64_t samples,
                                     const RandomStream& stream,
                                     const std::optional<CVector>& null_vector) {
  const int n = idx.n();
  const int k = idx.k();
  if (n != 2 && n != 3)
    throw std::invalid_argument("c_constant_numeric: only n = 2 and n = 3 are supported");
  if (samples == 0) throw std::invalid_argument("c_constant_numeric: samples must be > 0");
  const CVector a = null_vector ? *null_vector : default_null_vector(n);
  require_dim(a, n, "c_constant_numeric");
  if (!on_cone(a, 1e-12) || norm(a) == 0.0)
    throw std::invalid_argument("c_constant_numeric: a must be a nonzero null vector");

  auto section = [&](const CVector& z) { return std::pow(bilinear(a, z), k); };

  // |nu_* s_a|^2 over S^n: the integrand is a polynomial of degree 2k in q.
  const SphereRule base = sphere_rule(n, 2 * k + 2);
  std::vector<double> terms(base.size());
  parallel_for(base.size(), [&](std::size_t i) {
    const RVector q(base.point(i), base.point(i) + n + 1);
    const auto frame = orthonormal_complement(q);
    const SphereRule fiber = sphere_rule(n - 1, fiber_quadrature_degree(n, k));
    Complex acc = 0.0;
    CVector z(n + 1);
    for (std::size_t f = 0; f < fiber.size(); ++f) {
      const double* u = fiber.point(f);
      for (int c = 0; c <= n; ++c) {
        double p = 0.0;
        for (int r = 0; r < n; ++r) p += u[r] * frame[r][c];
        z[c] = {q[c], p};
      }
      acc += fiber.weights[f] * section(z);
    }
    terms[i] = base.weights[i] * std::norm(acc);
  });
  double push2 = 0.0;
  for (double t : terms) push2 += t;

  // |s_a|^2 on X_sqrt2 by Monte Carlo over Haar frames.
  const BatchPlan plan = plan_batches(samples);
  std::vector<double> sums(plan.batches);
  parallel_for(plan.batches, [&](std::size_t b) {
    double s = 0.0;
    for (std::uint64_t i = plan.begin(b); i < plan.end(b); ++i)
      s += std::norm(section(sample_frame(n, stream, i).embed()));
    sums[b] = s;
  });
  const double mass = euclidean_mass_Xr(n, std::numbers::sqrt2) / kTwoPi;
  double total = 0.0;
  for (double s : sums) total += s;
  const double sec2 = mass * total / double(samples);
  double se_sec2 = std::numeric_limits<double>::infinity();
  if (plan.batches >= 2) {
    double var = 0.0;
    for (std::size_t b = 0; b < plan.batches; ++b) {
      const double m = mass * sums[b] / double(plan.end(b) - plan.begin(b));
      var += (m - sec2) * (m - sec2);
    }
    const double nb = double(plan.batches);
    se_sec2 = std::sqrt(var / ((nb - 1.0) * nb));
  }
  const double value = std::sqrt(push2 / sec2);
  return {value, 0.5 * value * se_sec2 / sec2, push2, sec2};
}

double c_constant_degree_zero(int n) {
  if (n < 1) throw std::invalid_argument("c_constant_degree_zero: n must be >= 1");
  // |nu_* 1|^2 = vol(S^{n-1})^2 vol(S^n); |1|^2 = sqrt2 vol(S^n) vol(S^{n-1}) / 2pi.
  return std::sqrt(kTwoPi * vol_sphere(n - 1) / std::numbers::sqrt2);
}

// ---------------------------------------------------------------------------

CVector geodesic_lift(const FramePoint& frame, double theta) {
  const Complex rot = std::polar(1.0, -theta);
  CVector z = frame.embed();
  for (auto& c : z) c *= rot;
  return z;
}

std::pair<double, double> s_plus_minus(const RVector& v) {
  const double v2 = dot(v, v);
  if (v2 > 1.0 + 1e-12) throw std::domain_error("s_plus_minus: |v| must be <= 1");
  const double root = std::sqrt(std::max(0.0, 1.0 - v2));
  return {-1.0 + root, -1.0 - root};
}

double fubini_study_distance(const CVector& z0, const CVector& z1) {
  if (z0.size() != z1.size()) throw std::invalid_argument("fubini_study_distance: size mismatch");
  if (!on_Xr(z0, std::numbers::sqrt2, kManifoldTol) ||
      !on_Xr(z1, std::numbers::sqrt2, kManifoldTol))
    throw std::domain_error("fubini_study_distance: points must lie on X_sqrt2");
  return std::sqrt(std::max(0.0, 2.0 - std::abs(hermitian(z0, z1))));
}

HlcOffset hlc_offset(const CVector& z, double theta, const RVector& dp) {
  if (dp.size() != z.size()) throw std::invalid_argument("hlc_offset: size mismatch");
  if (std::abs(norm(z) - 1.0) > kManifoldTol)
    throw std::domain_error("hlc_offset: z must be a unit vector");
  const Complex rot = Complex(0.0, 1.0) * std::polar(1.0, theta);
  CVector w(z.size());
  for (std::size_t j = 0; j < z.size(); ++j) w[j] = z[j] + rot * dp[j];
  if (!on_cone(w, kManifoldTol))
    throw std::domain_error("hlc_offset: z + i e^{i theta} dp is not on the cone");
  const double beta = 1.0 - 0.5 * dot(dp, dp);
  if (!(beta > 0.0)) throw std::domain_error("hlc_offset: beta must be positive");
  HlcOffset out{beta, CVector(z.size())};
  for (std::size_t j = 0; j < z.size(); ++j) out.h[j] = w[j] / beta - z[j];
  return out;
}

// ---------------------------------------------------------------------------

DecayReport offdiagonal_decay_probe(const std::vector<SzegoEvaluator>& series, const CVector& x,
                                    const CVector& x_prime, double min_dist) {
  if (series.empty()) throw std::invalid_argument("offdiagonal_decay_probe: empty series");
  CVector a = x, b = x_prime;
  for (auto& c : a) c *= std::numbers::sqrt2;
  for (auto& c : b) c *= std::numbers::sqrt2;
  const double dist = fubini_study_distance(a, b);
  if (dist < min_dist)
    throw std::invalid_argument("offdiagonal_decay_probe: points closer than " +
                                std::to_string(min_dist));

  DecayReport report{{}, dist, 0.0, true};
  for (const auto& ev : series) {
    if (std::abs(ev.radius() - 1.0) > 1e-12)
      throw std::invalid_argument("offdiagonal_decay_probe: evaluators must be at radius 1");
    const double diag = ev(x, x).real();
    const double off = std::abs(ev(x, x_prime));
    const double floor = 10.0 * ev.basis().gram_stderr();
    const double value = off / diag;
    report.points.push_back({ev.basis().index().k(), value, floor, value < floor});
  }
  std::sort(report.points.begin(), report.points.end(),
            [](const DecayPoint& l, const DecayPoint& r) { return l.k < r.k; });

  std::vector<double> ks, logs;
  for (std::size_t i = 0; i < report.points.size(); ++i) {
    const auto& p = report.points[i];
    if (p.below_noise) break;
    if (i > 0 && !(p.normalized < report.points[i - 1].normalized)) report.decreasing = false;
    if (p.normalized > 0.0) {
      ks.push_back(p.k);
      logs.push_back(std::log(p.normalized));
    }
  }
  if (ks.size() >= 2) {
    const double mk = std::accumulate(ks.begin(), ks.end(), 0.0) / double(ks.size());
    const double ml = std::accumulate(logs.begin(), logs.end(), 0.0) / double(ks.size());
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < ks.size(); ++i) {
      sxy += (ks[i] - mk) * (logs[i] - ml);
      sxx += (ks[i] - mk) * (ks[i] - mk);
    }
    report.decay_rate = -sxy / sxx;
  }
  return report;
}

}  // namespace zonal
