// zonal: command-line front end.
//
// Exit codes: 0 success, 2 invalid configuration, 3 numerical failure, 4 output error.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "zonal/asymptotics.hpp"
#include "zonal/harness.hpp"
#include "zonal/quadric_geometry.hpp"
#include "zonal/random.hpp"
#include "zonal/special_functions.hpp"

namespace {

using nlohmann::json;
using namespace zonal;

constexpr int kExitConfig = 2;
constexpr int kExitNumeric = 3;
constexpr int kExitOutput = 4;

struct ConfigError : std::runtime_error {
  ConfigError(const std::string& field, const std::string& what)
      : std::runtime_error("invalid " + field + ": " + what) {}
};

struct OutputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string subcommand;
  int n = -1;
  int k = -1;
  std::vector<double> theta;
  double c = 1.0;
  double delta = 0.0;
  int k_min = 64;
  int k_max = 4096;
  int grid = 512;
  std::uint64_t seed = kDefaultSeed;
  std::uint64_t samples = 1000000;
  std::string format;
  std::string out;
  double budget = 1e-2;
  std::uint64_t evaluations = 100000;
  int pairs = 20;
  std::vector<int> c_ks;
  bool decay = true;
};

void add_common(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--seed", cfg.seed, "Master seed")->capture_default_str();
  sub->add_option("--samples", cfg.samples, "Monte Carlo sample count")->capture_default_str();
  sub->add_option("--format", cfg.format, "Output format: csv or json");
  sub->add_option("--out", cfg.out, "Output path (default: stdout)");
  sub->add_option("--n", cfg.n, "Sphere dimension n");
}

void add_window(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--C", cfg.c, "Window constant C")->capture_default_str();
  sub->add_option("--delta", cfg.delta, "Window exponent delta in [0, 1/6)")->capture_default_str();
  sub->add_option("--grid", cfg.grid, "Theta grid points per window")->capture_default_str();
}

void add_k_range(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--k-min", cfg.k_min, "Smallest degree")->capture_default_str();
  sub->add_option("--k-max", cfg.k_max, "Largest degree (doubling grid)")->capture_default_str();
}

// ---------------------------------------------------------------------------

void require(bool ok, const std::string& field, const std::string& what) {
  if (!ok) throw ConfigError(field, what);
}

void validate_common(RunConfig& cfg, const std::string& default_format) {
  if (cfg.format.empty()) cfg.format = default_format;
  require(cfg.format == "csv" || cfg.format == "json", "--format", "must be csv or json");
  require(cfg.n >= 1, "--n", "is required and must be >= 1");
  require(cfg.samples > 0, "--samples", "must be > 0");
}

AngleWindow make_window(const RunConfig& cfg) {
  require(cfg.c > 0.0, "--C", "must be > 0");
  require(cfg.delta >= 0.0 && cfg.delta < 1.0 / 6.0, "--delta", "must lie in [0, 1/6)");
  require(cfg.grid >= 1, "--grid", "must be >= 1");
  return AngleWindow(cfg.c, cfg.delta);
}

std::vector<int> k_list(const RunConfig& cfg) {
  if (cfg.k >= 0) {
    require(cfg.k >= 1, "--k", "must be >= 1");
    return {cfg.k};
  }
  require(cfg.k_min >= 1, "--k-min", "must be >= 1");
  require(cfg.k_max >= cfg.k_min, "--k-max", "must be >= --k-min");
  return geometric_k_grid(cfg.k_min, cfg.k_max);
}

json common_echo(const RunConfig& cfg) {
  return {{"subcommand", cfg.subcommand}, {"n", cfg.n},       {"seed", cfg.seed},
          {"samples", cfg.samples},       {"format", cfg.format}};
}

json window_echo(const RunConfig& cfg) {
  return {{"C", cfg.c}, {"delta", cfg.delta}, {"grid", cfg.grid}};
}

void emit(const RunConfig& cfg, const std::string& body, const json& config_echo) {
  if (cfg.out.empty()) {
    std::cout << body;
    std::cout.flush();
    return;
  }
  std::ofstream file(cfg.out, std::ios::binary);
  if (!file) throw OutputError("cannot open " + cfg.out + " for writing");
  file << body;
  if (!file) throw OutputError("failed writing " + cfg.out);
  if (cfg.format == "csv") {
    // CSV files keep the bare schema; the resolved config goes to a sidecar.
    std::ofstream meta(cfg.out + ".meta.json", std::ios::binary);
    meta << dump_json({{"schema_version", 1}, {"config", config_echo}});
    if (!meta) throw OutputError("failed writing " + cfg.out + ".meta.json");
  }
}

json envelope(const json& config_echo) {
  return {{"schema_version", 1}, {"seed", config_echo.at("seed")}, {"config", config_echo}};
}

// ---------------------------------------------------------------------------

void cmd_eval(RunConfig& cfg) {
  validate_common(cfg, "csv");
  require(cfg.k >= 0, "--k", "is required and must be >= 0");
  require(!cfg.theta.empty(), "--theta", "is required");
  for (double t : cfg.theta) require(t >= 0.0 && t <= std::numbers::pi, "--theta", "must lie in [0, pi]");
  const ZonalIndex idx(cfg.n, cfg.k);

  json echo = common_echo(cfg);
  echo["k"] = cfg.k;
  echo["theta"] = cfg.theta;

  std::ostringstream out;
  json rows = json::array();
  if (cfg.format == "csv") out << "n,k,theta,legendre,projector\n";
  for (double t : cfg.theta) {
    const double x = std::cos(t);
    const double p = legendre_normalized(idx, x);
    const double proj = projector_kernel(idx, x);
    if (cfg.format == "csv")
      out << cfg.n << ',' << cfg.k << ',' << format_double(t) << ',' << format_double(p) << ','
          << format_double(proj) << '\n';
    else
      rows.push_back({{"n", cfg.n}, {"k", cfg.k}, {"theta", t}, {"legendre", p}, {"projector", proj}});
  }
  if (cfg.format == "json") {
    json doc = envelope(echo);
    doc["rows"] = rows;
    out << dump_json(doc);
  }
  emit(cfg, out.str(), echo);
}

void cmd_compare(RunConfig& cfg) {
  validate_common(cfg, "csv");
  const AngleWindow window = make_window(cfg);
  const std::vector<int> ks = k_list(cfg);
  for (int k : ks) require(window.nonempty(k), "--C", "window is empty at k=" + std::to_string(k));

  json echo = common_echo(cfg);
  echo.update(window_echo(cfg));
  echo["ks"] = ks;

  std::vector<BracketRow> rows;
  json summary = json::array();
  for (int k : ks) {
    auto cell = bracket_rows(ZonalIndex(cfg.n, k), window, cfg.grid);
    double worst = 0.0;
    for (const auto& r : cell) worst = std::max(worst, r.rel_err);
    summary.push_back({{"k", k}, {"max_rel_err", worst}});
    rows.insert(rows.end(), cell.begin(), cell.end());
  }

  std::ostringstream out;
  if (cfg.format == "csv") {
    write_bracket_csv(out, rows);
  } else {
    json doc = envelope(echo);
    doc["note"] = "max_rel_err is a maximum over a uniform theta grid (a lower bound on the sup)";
    doc["summary"] = summary;
    json points = json::array();
    for (const auto& r : rows)
      points.push_back({{"n", r.n}, {"k", r.k}, {"delta", r.delta}, {"C", r.c}, {"theta", r.theta},
                        {"exact", r.exact}, {"asymptotic", r.asymptotic}, {"abs_err", r.abs_err},
                        {"rel_err", r.rel_err}});
    doc["rows"] = points;
    out << dump_json(doc);
  }
  emit(cfg, out.str(), echo);
}

void cmd_oracle(RunConfig& cfg) {
  validate_common(cfg, "json");
  require(cfg.n == 2 || cfg.n == 3, "--n", "oracle supports only n = 2 or n = 3");
  require(cfg.k >= 1 && cfg.k <= 12, "--k", "oracle supports only 1 <= k <= 12");
  require(cfg.samples >= 100000, "--samples", "oracle needs at least 100000 samples");
  require(cfg.pairs >= 1, "--pairs", "must be >= 1");
  require(cfg.format == "json", "--format", "oracle output is json only");
  std::vector<int> c_ks = cfg.c_ks.empty() ? std::vector<int>{cfg.k} : cfg.c_ks;
  for (int k : c_ks) require(k >= 1 && k <= 12, "--c-k", "values must lie in 1..12");

  json echo = common_echo(cfg);
  echo["k"] = cfg.k;
  echo["pairs"] = cfg.pairs;
  echo["c_ks"] = c_ks;
  echo["decay"] = cfg.decay;

  const ZonalIndex idx(cfg.n, cfg.k);
  const PushforwardExperiment pf = pushforward_equivalence(idx, cfg.samples, cfg.seed, cfg.pairs);
  json doc = envelope(echo);
  doc["samples"] = cfg.samples;
  doc["gram_stderr"] = pf.gram_stderr;
  doc["residual"] = pf.normalized_residual;
  doc["pushforward"] = to_json(pf);
  doc["c_ratio"] = to_json(c_constant_convergence(cfg.n, c_ks, cfg.samples, cfg.seed));

  if (cfg.decay && cfg.k >= 2) {
    std::vector<SzegoEvaluator> series;
    for (int k = 2; k <= cfg.k; ++k)
      series.emplace_back(build_cone_basis(ZonalIndex(cfg.n, k), cfg.samples, cfg.seed), 1.0);
    const double h = 1.0 / std::numbers::sqrt2;
    CVector x(cfg.n + 1, 0.0), y(cfg.n + 1, 0.0);
    x[0] = h;
    x[1] = Complex(0.0, h);
    y[1] = h;
    y[2] = Complex(0.0, h);
    const DecayReport rep = offdiagonal_decay_probe(series, x, y, 0.5);
    json pts = json::array();
    for (const auto& p : rep.points)
      pts.push_back({{"k", p.k},
                     {"normalized", p.normalized},
                     {"noise_floor", p.noise_floor},
                     {"below_noise", p.below_noise}});
    doc["decay"] = {{"distance", rep.distance},
                    {"decay_rate", rep.decay_rate},
                    {"decreasing", rep.decreasing},
                    {"points", pts}};
  }
  emit(cfg, dump_json(doc), echo);
}

void cmd_scaling(RunConfig& cfg) {
  validate_common(cfg, "json");
  const AngleWindow window = make_window(cfg);
  const std::vector<int> ks = k_list(cfg);
  require(ks.size() >= 5, "--k-max", "need at least 5 doubling steps from --k-min");
  for (int k : ks) require(window.nonempty(k), "--C", "window is empty at k=" + std::to_string(k));

  json echo = common_echo(cfg);
  echo.update(window_echo(cfg));
  echo["ks"] = ks;

  const ScalingFit fit = fit_error_scaling(cfg.n, ks, window, cfg.grid);
  std::ostringstream out;
  if (cfg.format == "csv") {
    out << "n,k,log_k,log_err,max_rel_err\n";
    for (std::size_t i = 0; i < ks.size(); ++i) {
      const auto& [lk, le] = fit.points[i];
      out << cfg.n << ',' << ks[i] << ',' << format_double(lk) << ',' << format_double(le) << ','
          << format_double(std::exp(le)) << '\n';
    }
  } else {
    json doc = envelope(echo);
    doc["fit"] = to_json(fit);
    doc["slope"] = doc["fit"]["slope"];
    doc["r_squared"] = doc["fit"]["r_squared"];
    out << dump_json(doc);
  }
  emit(cfg, out.str(), echo);
}

void cmd_bench(RunConfig& cfg) {
  validate_common(cfg, "json");
  const AngleWindow window = make_window(cfg);
  const std::vector<int> ks = k_list(cfg);
  for (int k : ks) require(window.nonempty(k), "--C", "window is empty at k=" + std::to_string(k));
  require(cfg.budget > 0.0, "--budget", "must be > 0");
  require(cfg.evaluations > 0, "--evaluations", "must be > 0");

  json echo = common_echo(cfg);
  echo.update(window_echo(cfg));
  echo["ks"] = ks;
  echo["budget"] = cfg.budget;
  echo["evaluations"] = cfg.evaluations;

  const CrossoverReport rep = crossover_benchmark(cfg.n, ks, window, cfg.budget, cfg.evaluations);
  std::ostringstream out;
  if (cfg.format == "csv") {
    out << "n,k,exact_ns,asymptotic_ns,max_rel_err\n";
    for (const auto& r : rep.rows)
      out << cfg.n << ',' << r.k << ',' << format_double(r.exact_ns) << ','
          << format_double(r.asymptotic_ns) << ',' << format_double(r.max_rel_err) << '\n';
  } else {
    json doc = envelope(echo);
    doc["report"] = to_json(rep);
    doc["k_star"] = doc["report"]["k_star"];
    out << dump_json(doc);
  }
  emit(cfg, out.str(), echo);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Zonal harmonics: exact values, leading asymptotics and Fermat-quadric oracles"};
  app.set_config("--config", "", "TOML/INI config file; flags override it");
  app.require_subcommand(1);

  RunConfig cfg;
  auto* eval = app.add_subcommand("eval", "Evaluate P_{k,n+1}(cos theta) and the projector kernel");
  add_common(eval, cfg);
  eval->add_option("--k", cfg.k, "Degree k");
  eval->add_option("--theta", cfg.theta, "Angle(s) in [0, pi]");

  auto* compare = app.add_subcommand("compare", "Exact versus leading asymptotic over a window");
  add_common(compare, cfg);
  add_window(compare, cfg);
  add_k_range(compare, cfg);
  compare->add_option("--k", cfg.k, "Single degree (overrides the k range)");

  auto* oracle = app.add_subcommand("oracle", "Fermat-quadric push-forward and C-constant oracles");
  add_common(oracle, cfg);
  oracle->add_option("--k", cfg.k, "Degree k (1..12)");
  oracle->add_option("--pairs", cfg.pairs, "Random (q0, q1) pairs")->capture_default_str();
  oracle->add_option("--c-k", cfg.c_ks, "Degrees for the C-ratio table (default: --k)");
  oracle->add_flag("!--no-decay", cfg.decay, "Skip the off-diagonal decay probe");

  auto* scaling = app.add_subcommand("scaling", "Log-log fit of the window error against k");
  add_common(scaling, cfg);
  add_window(scaling, cfg);
  add_k_range(scaling, cfg);

  auto* bench = app.add_subcommand("bench", "Exact versus asymptotic timing and crossover degree");
  add_common(bench, cfg);
  add_window(bench, cfg);
  add_k_range(bench, cfg);
  bench->add_option("--budget", cfg.budget, "Relative error budget")->capture_default_str();
  bench->add_option("--evaluations", cfg.evaluations, "Evaluations per path and degree")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  }

  const std::map<CLI::App*, void (*)(RunConfig&)> handlers{
      {eval, cmd_eval}, {compare, cmd_compare}, {oracle, cmd_oracle},
      {scaling, cmd_scaling}, {bench, cmd_bench}};
  try {
    for (const auto& [sub, fn] : handlers) {
      if (sub->parsed()) {
        cfg.subcommand = sub->get_name();
        fn(cfg);
      }
    }
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: invalid argument: " << e.what() << '\n';
    return kExitConfig;
  } catch (const OutputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitOutput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNumeric;
  }
  return 0;
}
