#include "zonal/harness.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "zonal/parallel.hpp"
#include "zonal/quadric_geometry.hpp"
#include "zonal/random.hpp"

namespace zonal {

namespace {

std::uint64_t cell_id(int n, int k) {
  return static_cast<std::uint64_t>(n) << 32 | static_cast<std::uint64_t>(k);
}

struct Line {
  double slope, intercept, r_squared;
};

Line ols(const std::vector<std::pair<double, double>>& pts) {
  const double m = double(pts.size());
  double mx = 0.0, my = 0.0;
  for (const auto& [x, y] : pts) {
    mx += x;
    my += y;
  }
  mx /= m;
  my /= m;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (const auto& [x, y] : pts) {
    sxx += (x - mx) * (x - mx);
    sxy += (x - mx) * (y - my);
    syy += (y - my) * (y - my);
  }
  const double slope = sxy / sxx;
  const double r2 = syy > 0.0 ? std::clamp(sxy * sxy / (sxx * syy), 0.0, 1.0) : 1.0;
  return {slope, my - slope * mx, r2};
}

template <class F>
double median_ns_per_eval(std::uint64_t evaluations, F&& body) {
  constexpr int kReps = 11;
  const std::uint64_t per_rep = (evaluations + kReps - 1) / kReps;
  std::vector<double> ns(kReps);
  for (int r = 0; r < kReps; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    body(per_rep);
    const auto t1 = std::chrono::steady_clock::now();
    ns[r] = std::chrono::duration<double, std::nano>(t1 - t0).count() / double(per_rep);
  }
  std::nth_element(ns.begin(), ns.begin() + kReps / 2, ns.end());
  return ns[kReps / 2];
}

}  // namespace

std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

std::vector<double> window_grid(const AngleWindow& window, int k, int size) {
  if (k < 1) throw std::invalid_argument("window_grid: k must be >= 1");
  if (size < 1) throw std::invalid_argument("window_grid: grid size must be >= 1");
  if (!window.nonempty(k)) throw std::domain_error("window_grid: window is empty at this k");
  const double a = window.edge(k);
  const double b = std::numbers::pi - a;
  std::vector<double> grid(size);
  for (int i = 0; i < size; ++i) grid[i] = a + (b - a) * double(i + 1) / double(size + 1);
  return grid;
}

std::vector<BracketRow> bracket_rows(const ZonalIndex& idx, const AngleWindow& window,
                                     int grid_size) {
  std::vector<BracketRow> rows;
  for (double theta : window_grid(window, idx.k(), grid_size)) {
    const double exact = legendre_normalized(idx, std::cos(theta));
    const AsymptoticValue lead = legendre_leading(idx, theta);
    const double abs_err = std::abs(exact - lead.value);
    rows.push_back({idx.n(), idx.k(), window.delta, window.c, theta, exact, lead.value, abs_err,
                    abs_err / lead.amplitude});
  }
  return rows;
}

double relative_bracket_error(const ZonalIndex& idx, const AngleWindow& window, int grid_size) {
  double worst = 0.0;
  for (const auto& row : bracket_rows(idx, window, grid_size)) worst = std::max(worst, row.rel_err);
  return worst;
}

void write_bracket_csv(std::ostream& out, const std::vector<BracketRow>& rows) {
  out << kBracketCsvHeader << '\n';
  for (const auto& r : rows) {
    out << r.n << ',' << r.k << ',' << format_double(r.delta) << ',' << format_double(r.c) << ','
        << format_double(r.theta) << ',' << format_double(r.exact) << ','
        << format_double(r.asymptotic) << ',' << format_double(r.abs_err) << ','
        << format_double(r.rel_err) << '\n';
  }
}

std::vector<int> geometric_k_grid(int k_min, int k_max) {
  if (k_min < 1 || k_max < k_min)
    throw std::invalid_argument("geometric_k_grid: need 1 <= k_min <= k_max");
  std::vector<int> ks;
  for (long k = k_min; k <= k_max; k *= 2) ks.push_back(int(k));
  return ks;
}

ScalingFit fit_error_scaling(int n, const std::vector<int>& ks, const AngleWindow& window,
                             int grid_size) {
  if (ks.size() < 5) throw std::invalid_argument("fit_error_scaling: need at least 5 degrees");
  std::vector<double> errors(ks.size());
  parallel_for(ks.size(), [&](std::size_t i) {
    errors[i] = relative_bracket_error(ZonalIndex(n, ks[i]), window, grid_size);
  });

  ScalingFit fit;
  bool all_tiny = true;
  for (std::size_t i = 0; i < ks.size(); ++i) {
    if (errors[i] > 1e-12) all_tiny = false;
    fit.points.emplace_back(std::log(double(ks[i])), std::log(errors[i]));
  }
  if (all_tiny) {
    fit.exact = true;
    return fit;
  }
  const Line line = ols(fit.points);
  fit.slope = line.slope;
  fit.intercept = line.intercept;
  fit.r_squared = line.r_squared;
  return fit;
}

nlohmann::json to_json(const ScalingFit& fit) {
  nlohmann::json pts = nlohmann::json::array();
  for (const auto& [x, y] : fit.points) pts.push_back({x, y});
  nlohmann::json doc{{"exact", fit.exact}, {"points", pts}};
  if (fit.exact) {
    doc["slope"] = nullptr;
    doc["intercept"] = nullptr;
    doc["r_squared"] = nullptr;
  } else {
    doc["slope"] = fit.slope;
    doc["intercept"] = fit.intercept;
    doc["r_squared"] = fit.r_squared;
  }
  return doc;
}

std::vector<CRatioRow> c_constant_convergence(int n, const std::vector<int>& ks,
                                              std::uint64_t samples, std::uint64_t seed) {
  if (n != 2 && n != 3) throw std::invalid_argument("c_constant_convergence: n must be 2 or 3");
  std::vector<CRatioRow> rows;
  for (int k : ks) {
    if (k < 1 || k > 12) throw std::invalid_argument("c_constant_convergence: k must be in 1..12");
    const ZonalIndex idx(n, k);
    const RandomStream stream = RandomStream(seed, "c-constant").child(cell_id(n, k));
    const CConstantEstimate est = c_constant_numeric(idx, samples, stream);
    const double lead = c_constant_leading(idx);
    rows.push_back({k, est.value, est.stderr_value, lead, est.value / lead,
                    est.stderr_value / lead});
  }
  return rows;
}

nlohmann::json to_json(const std::vector<CRatioRow>& rows) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& r : rows)
    out.push_back({{"k", r.k},
                   {"numeric", r.numeric},
                   {"numeric_stderr", r.numeric_stderr},
                   {"leading", r.leading},
                   {"ratio", r.ratio},
                   {"ratio_stderr", r.ratio_stderr}});
  return out;
}

CrossoverReport crossover_benchmark(int n, const std::vector<int>& ks, const AngleWindow& window,
                                    double error_budget, std::uint64_t evaluations) {
  if (!(error_budget > 0.0))
    throw std::invalid_argument("crossover_benchmark: error budget must be > 0");
  CrossoverReport report{n, error_budget, {}, std::nullopt};
  volatile double sink = 0.0;
  for (int k : ks) {
    const ZonalIndex idx(n, k);
    const std::vector<double> thetas = window_grid(window, k, 512);
    std::vector<double> cosines(thetas.size());
    std::transform(thetas.begin(), thetas.end(), cosines.begin(),
                   [](double t) { return std::cos(t); });

    const double exact_ns = median_ns_per_eval(evaluations, [&](std::uint64_t count) {
      double acc = 0.0;
      for (std::uint64_t i = 0; i < count; ++i)
        acc += legendre_normalized(idx, cosines[i % cosines.size()]);
      sink = sink + acc;
    });
    const double asym_ns = median_ns_per_eval(evaluations, [&](std::uint64_t count) {
      double acc = 0.0;
      for (std::uint64_t i = 0; i < count; ++i)
        acc += legendre_leading(idx, thetas[i % thetas.size()]).value;
      sink = sink + acc;
    });
    const double err = relative_bracket_error(idx, window);
    report.rows.push_back({k, exact_ns, asym_ns, err});
    if (!report.k_star && asym_ns < exact_ns && err <= error_budget) report.k_star = k;
  }
  return report;
}

nlohmann::json to_json(const CrossoverReport& report) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : report.rows)
    rows.push_back({{"k", r.k},
                    {"exact_ns", r.exact_ns},
                    {"asymptotic_ns", r.asymptotic_ns},
                    {"max_rel_err", r.max_rel_err}});
  nlohmann::json doc{{"n", report.n}, {"budget", report.budget}, {"rows", rows}};
  doc["k_star"] = report.k_star ? nlohmann::json(*report.k_star) : nlohmann::json(nullptr);
  return doc;
}

PushforwardExperiment pushforward_equivalence(const ZonalIndex& idx, std::uint64_t samples,
                                              std::uint64_t seed, int pair_count) {
  if (pair_count < 1) throw std::invalid_argument("pushforward_equivalence: pair_count >= 1");
  const int n = idx.n();
  const int k = idx.k();
  const SzegoEvaluator ev(build_cone_basis(idx, samples, seed), std::numbers::sqrt2);
  const CConstantEstimate c =
      c_constant_numeric(idx, samples, RandomStream(seed, "c-constant").child(cell_id(n, k)));
  const double c2 = c.value * c.value;

  const RandomStream pair_stream = RandomStream(seed, "pushforward-pairs").child(cell_id(n, k));
  std::vector<PushforwardPair> pairs(pair_count);
  std::vector<double> antipodal(pair_count);
  std::vector<double> diagonal(pair_count);
  parallel_for(pair_count, [&](std::size_t i) {
    const RVector q0 = sample_frame(n, pair_stream, 2 * i).q;
    const RVector q1 = sample_frame(n, pair_stream, 2 * i + 1).q;
    RVector minus_q1 = q1;
    for (auto& x : minus_q1) x = -x;
    const Eigen::VectorXcd a = ev.pushforward_sections(q0);
    const Eigen::VectorXcd b = ev.pushforward_sections(q1);
    const Eigen::VectorXcd b_neg = ev.pushforward_sections(minus_q1);
    double t = 0.0;
    for (int j = 0; j <= n; ++j) t += q0[j] * q1[j];
    const Complex pf = b.dot(a);
    const Complex pf_neg = b_neg.dot(a);
    pairs[i] = {t, pf.real(), pf.imag(), c2 * projector_kernel(idx, t)};
    antipodal[i] = std::abs(pf_neg.real() - (k % 2 == 0 ? 1.0 : -1.0) * pf.real());
    diagonal[i] = a.squaredNorm();
  });

  double scale = 0.0, worst = 0.0, imag_ratio = 0.0, anti = 0.0;
  for (const auto& p : pairs) scale = std::max({scale, std::abs(p.pushforward), std::abs(p.predicted)});
  for (int i = 0; i < pair_count; ++i) {
    const auto& p = pairs[i];
    worst = std::max(worst, std::abs(p.pushforward - p.predicted));
    imag_ratio = std::max(imag_ratio, std::abs(p.pushforward_imag) / scale);
    anti = std::max(anti, antipodal[i]);
  }
  const double diag_expected = c2 * double(dim_eigenspace(idx)) / vol_sphere(n);
  const double diag_mean =
      std::accumulate(diagonal.begin(), diagonal.end(), 0.0) / double(pair_count);

  PushforwardExperiment out;
  out.n = n;
  out.k = k;
  out.samples = samples;
  out.seed = seed;
  out.c_squared = c2;
  out.c_squared_stderr = 2.0 * c.value * c.stderr_value;
  out.gram_stderr = ev.basis().gram_stderr();
  out.normalized_residual = worst / scale;
  out.max_imag_ratio = imag_ratio;
  out.diagonal_ratio = diag_mean / diag_expected;
  out.antipodal_residual = anti / scale;
  out.pairs = std::move(pairs);
  return out;
}

nlohmann::json to_json(const PushforwardExperiment& e) {
  nlohmann::json pairs = nlohmann::json::array();
  for (const auto& p : e.pairs)
    pairs.push_back({{"cos_angle", p.cos_angle},
                     {"pushforward", p.pushforward},
                     {"pushforward_imag", p.pushforward_imag},
                     {"predicted", p.predicted}});
  return {{"n", e.n},
          {"k", e.k},
          {"samples", e.samples},
          {"seed", e.seed},
          {"c_squared", e.c_squared},
          {"c_squared_stderr", e.c_squared_stderr},
          {"gram_stderr", e.gram_stderr},
          {"residual", e.normalized_residual},
          {"max_imag_ratio", e.max_imag_ratio},
          {"diagonal_ratio", e.diagonal_ratio},
          {"antipodal_residual", e.antipodal_residual},
          {"pairs", pairs}};
}

std::string dump_json(const nlohmann::json& doc) { return doc.dump(2) + "\n"; }

}  // namespace zonal
