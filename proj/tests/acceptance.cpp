// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "zonal/asymptotics.hpp"
#include "zonal/harness.hpp"
#include "zonal/quadric_geometry.hpp"
#include "zonal/random.hpp"
#include "zonal/special_functions.hpp"

using namespace zonal;
using std::numbers::pi;
using std::numbers::sqrt2;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

CVector scaled(CVector z, Complex s) {
  for (auto& c : z) c *= s;
  return z;
}

CVector conj(CVector z) {
  for (auto& c : z) c = std::conj(c);
  return z;
}

Outcome chebyshev() {
  const RandomStream s(kDefaultSeed, "acceptance-chebyshev");
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const double theta = 0.01 + (pi - 0.02) * s.uniform(i, 0, 0);
    const double t = std::cos(theta);
    for (int k = 1; k <= 1000; ++k)
      worst = std::max(worst, std::abs(legendre_normalized(ZonalIndex(1, k), t) - std::cos(k * theta)));
  }
  return {worst < 1e-10, "max |P_{k,2}(cos t) - cos kt| = " + fmt("%.3g", worst)};
}

Outcome laplace() {
  const AngleWindow w(1.0, 0.0);
  const double e1024 = relative_bracket_error(ZonalIndex(2, 1024), w, 512);
  const double e4096 = relative_bracket_error(ZonalIndex(2, 4096), w, 512);
  return {e1024 < 0.01 && e4096 < e1024,
          "err(1024) = " + fmt("%.4g", e1024) + ", err(4096) = " + fmt("%.4g", e4096)};
}

Outcome slopes() {
  const auto ks = geometric_k_grid(64, 4096);
  std::string detail;
  bool ok = true;
  for (int n : {2, 3}) {
    const ScalingFit fit = fit_error_scaling(n, ks, AngleWindow(1.0, 0.0));
    ok = ok && !fit.exact && fit.slope >= -1.25 && fit.slope <= -0.75 && fit.r_squared > 0.95;
    detail += "n=" + std::to_string(n) + " slope " + fmt("%.4f", fit.slope) + " r2 " + fmt("%.5f", fit.r_squared) + "; ";
  }
  return {ok, detail};
}

Outcome gaussian() {
  double worst = 0.0;
  for (int n = 1; n <= 4; ++n)
    for (double theta : {0.3, 1.0, pi / 2, 2.5})
      worst = std::max(worst, std::abs(gaussian_coefficient_numeric(n, theta) - gaussian_leading_coefficient(n, theta)));
  return {worst < 1e-6, "max |numeric - closed form| = " + fmt("%.3g", worst)};
}

Outcome pushforward() {
  bool ok = true;
  std::string detail;
  for (int k : {2, 4, 6, 8}) {
    const ZonalIndex idx(2, k);
    const double r1 = pushforward_equivalence(idx, 1000000, kDefaultSeed, 20).normalized_residual;
    const double r4 = pushforward_equivalence(idx, 4000000, kDefaultSeed, 20).normalized_residual;
    ok = ok && r1 < 0.05 && r4 < r1;
    detail += "k=" + std::to_string(k) + " " + fmt("%.2e", r1) + "->" + fmt("%.2e", r4) + "; ";
  }
  return {ok, "residual 1e6->4e6 samples: " + detail};
}

Outcome c_ratio() {
  const auto rows = c_constant_convergence(2, {4, 8, 12}, 4000000, kDefaultSeed);
  bool ok = std::abs(rows.back().ratio - 1.0) < 0.05;
  std::string detail;
  for (const auto& r : rows) {
    const double scaled_dev = std::abs(r.ratio - 1.0) * r.k;
    ok = ok && scaled_dev <= 0.25;
    detail += "k=" + std::to_string(r.k) + " ratio " + fmt("%.4f", r.ratio) + " (+-" + fmt("%.4f", r.ratio_stderr) +
              ") |r-1|k " + fmt("%.3f", scaled_dev) + "; ";
  }
  return {ok, detail};
}

Outcome structural() {
  bool ok = true;
  double sym = 0.0, equi = 0.0, conjugation = 0.0, homog = 0.0, parity = 0.0, diag_exact = 0.0, diag_pf = 0.0;
  const RandomStream s(kDefaultSeed, "acceptance-structural");
  for (auto [n, k] : {std::pair{2, 4}, std::pair{3, 3}}) {
    const ConeBasis basis = build_cone_basis(ZonalIndex(n, k), 400000, kDefaultSeed);
    const SzegoEvaluator ev1(basis, 1.0);
    const SzegoEvaluator ev2(basis, 2.5);
    for (int i = 0; i < 100; ++i) {
      const CVector x = scaled(sample_frame(n, s, 2 * i).embed(), 1.0 / sqrt2);
      const CVector y = scaled(sample_frame(n, s, 2 * i + 1).embed(), 1.0 / sqrt2);
      const Complex v = ev1(x, y);
      const double scale = ev1(x, x).real();
      sym = std::max(sym, std::abs(ev1(y, x) - std::conj(v)) / scale);
      const double phi = 2 * pi * s.uniform(i, 7, 0);
      equi = std::max(equi, std::abs(ev1(scaled(x, std::polar(1.0, phi)), y) - std::polar(1.0, k * phi) * v) / scale);
      conjugation = std::max(conjugation, std::abs(ev1(conj(x), conj(y)) - std::conj(v)) / scale);
      homog = std::max(homog, std::abs(ev2(scaled(x, 2.5), scaled(y, 2.5)) - std::pow(2.5, 1 - 2 * n) * v) / scale);
    }
  }
  for (int i = 0; i < 100; ++i) {
    const int n = 1 + i % 5, k = i;
    const ZonalIndex idx(n, k);
    const double t = 2 * s.uniform(i, 9, 0) - 1;
    const double p = legendre_normalized(idx, t);
    parity = std::max(parity, std::abs(legendre_normalized(idx, -t) - (k % 2 ? -p : p)));
    const double expected = double(dim_eigenspace(idx)) / vol_sphere(n);
    diag_exact = std::max(diag_exact, std::abs(projector_kernel(idx, 1.0) - expected) / expected);
  }
  {
    const ZonalIndex idx(2, 4);
    const SzegoEvaluator ev(build_cone_basis(idx, 1000000, kDefaultSeed), sqrt2);
    const CConstantEstimate c = c_constant_numeric(idx, 1000000, RandomStream(kDefaultSeed, "c-constant").child(1));
    const double expected = double(dim_eigenspace(idx)) / vol_sphere(2);
    for (int i = 0; i < 100; ++i) {
      const RVector q = sample_frame(2, s, 1000 + i).q;
      const double d = ev.pushforward_sections(q).squaredNorm() / (c.value * c.value);
      diag_pf = std::max(diag_pf, std::abs(d - expected) / expected);
    }
  }
  ok = sym < 1e-14 && equi < 1e-12 && conjugation < 1e-12 && homog < 1e-12 && parity < 1e-10 && diag_exact < 1e-14 &&
       diag_pf < 0.05;
  return {ok, "hermitian " + fmt("%.1e", sym) + ", S1 " + fmt("%.1e", equi) + ", conj " + fmt("%.1e", conjugation) +
                  ", homog " + fmt("%.1e", homog) + ", parity " + fmt("%.1e", parity) + ", diag exact " +
                  fmt("%.1e", diag_exact) + ", diag push-forward " + fmt("%.2e", diag_pf)};
}

Outcome decay() {
  std::vector<SzegoEvaluator> series;
  for (int k = 2; k <= 12; ++k) series.emplace_back(build_cone_basis(ZonalIndex(2, k), 1000000, kDefaultSeed), 1.0);
  const double h = 1.0 / sqrt2;
  const CVector x{h, Complex(0, h), 0.0};
  const CVector y{0.0, h, Complex(0, h)};
  const DecayReport rep = offdiagonal_decay_probe(series, x, y, 0.5);
  int above = 0;
  for (const auto& p : rep.points) above += p.below_noise ? 0 : 1;
  return {rep.decreasing && rep.distance >= 0.5,
          "distance " + fmt("%.3f", rep.distance) + ", " + std::to_string(above) +
              " values above the noise floor, fitted rate " + fmt("%.3f", rep.decay_rate)};
}

std::string harness_artifacts() {
  std::ostringstream out;
  write_bracket_csv(out, bracket_rows(ZonalIndex(3, 200), AngleWindow(1.0, 0.05), 512));
  out << dump_json(to_json(fit_error_scaling(2, geometric_k_grid(64, 4096), AngleWindow(1.0, 0.0))));
  out << dump_json(to_json(c_constant_convergence(3, {2, 3}, 200000, 11)));
  out << dump_json(to_json(pushforward_equivalence(ZonalIndex(2, 3), 200000, 11, 5)));
  out << dump_json(build_cone_basis(ZonalIndex(3, 2), 150000, 11).to_json());
  return out.str();
}

Outcome determinism() {
  setenv("ZONAL_THREADS", "1", 1);
  const std::string a = harness_artifacts();
  const std::string b = harness_artifacts();
  setenv("ZONAL_THREADS", "4", 1);
  const std::string c = harness_artifacts();
  unsetenv("ZONAL_THREADS");
  const bool ok = a == b && a == c;
  return {ok, std::to_string(a.size()) + " bytes, repeat " + (a == b ? "identical" : "DIFFERS") + ", 1 vs 4 threads " +
                  (a == c ? "identical" : "DIFFERS")};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double limit_s;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {1, "Chebyshev exactness", 1.0, chebyshev},
      {2, "Laplace-formula accuracy", 5.0, laplace},
      {3, "error-scaling slope", 30.0, slopes},
      {4, "Gaussian coefficient identity", 1.0, gaussian},
      {5, "geometric oracle equivalence", 300.0, pushforward},
      {6, "C-constant convergence", 180.0, c_ratio},
      {7, "structural identities", 60.0, structural},
      {8, "off-diagonal decay probe", 120.0, decay},
      {9, "determinism", 0.0, determinism},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (o.detail.size() >= 2 && o.detail.ends_with("; ")) o.detail.resize(o.detail.size() - 2);
    const bool in_time = c.limit_s == 0.0 || secs < c.limit_s;
    const bool pass = o.pass && in_time;
    failures += pass ? 0 : 1;
    std::printf("criterion %d %s: %s (%s; %.2f s%s)\n", c.id, c.name, pass ? "PASS" : "FAIL", o.detail.c_str(), secs,
                in_time ? "" : " over budget");
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", int(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
