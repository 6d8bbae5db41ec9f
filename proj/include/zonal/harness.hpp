#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "zonal/asymptotics.hpp"
#include "zonal/special_functions.hpp"

namespace zonal {

/// Shortest decimal form that round-trips ("%.17g" fallback).
std::string format_double(double x);

/// Uniform grid of `size` points strictly inside the window at degree k.
std::vector<double> window_grid(const AngleWindow& window, int k, int size = 512);

struct BracketRow {
  int n;
  int k;
  double delta;
  double c;
  double theta;
  double exact;
  double asymptotic;
  double abs_err;
  double rel_err;  // abs_err / leading amplitude
};

std::vector<BracketRow> bracket_rows(const ZonalIndex& idx, const AngleWindow& window,
                                     int grid_size = 512);

/// Grid max of |P_{k,n+1}(cos theta) - leading| / amplitude over the window.
double relative_bracket_error(const ZonalIndex& idx, const AngleWindow& window,
                              int grid_size = 512);

inline constexpr const char* kBracketCsvHeader = "n,k,delta,C,theta,exact,asymptotic,abs_err,rel_err";
void write_bracket_csv(std::ostream& out, const std::vector<BracketRow>& rows);

struct ScalingFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  std::vector<std::pair<double, double>> points;  // (log k, log error)
  bool exact = false;  // every error vanished; slope undefined
};

/// k_min, 2 k_min, ... up to k_max.
std::vector<int> geometric_k_grid(int k_min, int k_max);

/// OLS line through (log k, log relative_bracket_error). Needs >= 5 degrees.
ScalingFit fit_error_scaling(int n, const std::vector<int>& ks, const AngleWindow& window,
                             int grid_size = 512);

nlohmann::json to_json(const ScalingFit& fit);

struct CRatioRow {
  int k;
  double numeric;
  double numeric_stderr;
  double leading;
  double ratio;
  double ratio_stderr;
};

/// c_constant_numeric / c_constant_leading for each k, n in {2, 3}, k <= 12.
std::vector<CRatioRow> c_constant_convergence(int n, const std::vector<int>& ks,
                                              std::uint64_t samples, std::uint64_t seed);

nlohmann::json to_json(const std::vector<CRatioRow>& rows);

struct CrossoverRow {
  int k;
  double exact_ns;
  double asymptotic_ns;
  double max_rel_err;
};

struct CrossoverReport {
  int n;
  double budget;
  std::vector<CrossoverRow> rows;
  std::optional<int> k_star;
};

/// Median ns/evaluation of the recurrence and of the leading term (>= `evaluations` calls
/// per path and degree, single thread), with the window error of the leading term.
CrossoverReport crossover_benchmark(int n, const std::vector<int>& ks, const AngleWindow& window,
                                    double error_budget, std::uint64_t evaluations = 100000);

nlohmann::json to_json(const CrossoverReport& report);

struct PushforwardPair {
  double cos_angle;
  double pushforward;
  double pushforward_imag;
  double predicted;  // C^2 * projector_kernel
};

struct PushforwardExperiment {
  int n;
  int k;
  std::uint64_t samples;
  std::uint64_t seed;
  double c_squared;
  double c_squared_stderr;
  double gram_stderr;
  double normalized_residual;  // max |pf - C^2 P| / max(|pf|, |C^2 P|)
  double max_imag_ratio;
  double diagonal_ratio;  // pf(q, q) / (C^2 N / vol(S^n))
  double antipodal_residual;  // max |pf(q0, -q1) - (-1)^k pf(q0, q1)| / scale
  std::vector<PushforwardPair> pairs;
};

/// Push-forward of the level-k Szego kernel of X_sqrt2 versus C^2 times the projector kernel
/// on `pair_count` random pairs. n in {2, 3}, k <= 12.
PushforwardExperiment pushforward_equivalence(const ZonalIndex& idx, std::uint64_t samples,
                                              std::uint64_t seed, int pair_count = 20);

nlohmann::json to_json(const PushforwardExperiment& exp);

/// JSON with every double written through format_double.
std::string dump_json(const nlohmann::json& doc);

}  // namespace zonal
