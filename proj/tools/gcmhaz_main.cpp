#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "gcmhaz/json_io.hpp"
#include "gcmhaz/parallel.hpp"
#include "gcmhaz/version.hpp"

namespace {

using namespace gcmhaz;

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitDataQuality = 3;
constexpr int kExitBudget = 4;
constexpr int kExitVerifyFail = 5;

struct CliError {
  int code;
  std::string message;
};

[[noreturn]] void fail(int code, const std::string& message) {
  throw CliError{code, message};
}

std::vector<double> read_data_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(kExitInput, "cannot open data file: " + path);
  std::vector<double> obs;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    while (!line.empty() && (line.back() == '\r' || line.back() == ',' ||
                             std::isspace(static_cast<unsigned char>(line.back()))))
      line.pop_back();
    std::size_t start = 0;
    while (start < line.size() && std::isspace(static_cast<unsigned char>(line[start])))
      ++start;
    line.erase(0, start);
    if (line.empty()) continue;
    double v = 0.0;
    std::size_t pos = 0;
    try {
      v = std::stod(line, &pos);
    } catch (const std::exception&) {
      pos = std::string::npos;
    }
    if (pos != line.size() || !std::isfinite(v))
      fail(kExitInput, "line " + std::to_string(lineno) + ": not a number: '" + line + "'");
    if (v <= 0.0)
      fail(kExitInput, "line " + std::to_string(lineno) + ": observation must be positive");
    obs.push_back(v);
  }
  if (obs.empty()) fail(kExitInput, "data file is empty: " + path);
  return obs;
}

void write_output(const ordered_json& j, const std::string& out_path) {
  std::string text = j.dump(2) + "\n";
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) fail(kExitInput, "cannot write output file: " + out_path);
    out << text;
  }
}

// Weighted least-squares slope of log p_hat on z^{3/2} (weights = hit counts).
double tail_slope(const std::vector<TailPoint>& table) {
  double sw = 0, sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& t : table) {
    if (t.hits == 0) continue;
    double w = static_cast<double>(t.hits);
    double x = std::pow(t.z, 1.5), y = std::log(t.p_hat);
    sw += w;
    sx += w * x;
    sy += w * y;
    sxx += w * x * x;
    sxy += w * x * y;
  }
  double denom = sw * sxx - sx * sx;
  if (denom <= 0) fail(kExitVerifyFail, "tail table too degenerate for a slope fit");
  return (sw * sxy - sx * sy) / denom;
}

struct CommonOpts {
  std::uint64_t seed = 1;
  std::string out_path;
  std::string format = "json";
  unsigned threads = 0;
};

void add_common(CLI::App* cmd, CommonOpts* o) {
  cmd->add_option("--seed", o->seed, "RNG seed (echoed in every report)");
  cmd->add_option("--out", o->out_path, "output file (default: stdout)");
  cmd->add_option("--format", o->format, "output format: json|csv")
      ->check(CLI::IsMember({"json", "csv"}));
  cmd->add_option("--threads", o->threads, "worker thread cap (0 = hardware)");
}

void apply_threads(const CommonOpts& o) {
  if (o.threads > 0) set_max_threads(o.threads);
}

ordered_json config_echo(const CommonOpts& o) {
  return ordered_json{{"seed", o.seed}, {"threads", max_threads()}, {"format", o.format}};
}

int run_cli(int argc, char** argv) {
  CLI::App app{"Monotone-hazard test statistics via greatest convex minorants"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kVersion));

  // ---- test ----
  auto* test_cmd = app.add_subcommand("test", "compute T_n or U_n from a data file");
  CommonOpts test_common;
  std::string data_path, stat_kind = "T", model_spec, constants_path;
  double a = 0.0;
  bool jitter = false;
  test_cmd->add_option("--data", data_path, "observations, one per line, '#' comments")
      ->required();
  test_cmd->add_option("--a", a, "right end of the test interval [0,a]")->required();
  test_cmd->add_option("--stat", stat_kind, "statistic: T or U")
      ->check(CLI::IsMember({"T", "U"}));
  test_cmd->add_option("--model", model_spec,
                       "null model spec (e.g. linhaz:1,1) for standardization");
  test_cmd->add_option("--constants", constants_path, "canonical constants JSON file");
  test_cmd->add_flag("--jitter", jitter, "deterministically jitter tied observations");
  add_common(test_cmd, &test_common);

  // ---- constants ----
  auto* const_cmd = app.add_subcommand("constants", "estimate E|C(0)| and sigma^2 by Monte Carlo");
  CommonOpts const_common;
  ConstantsBudget budget;
  const_cmd->add_option("--c", budget.c, "window length for Q_c (default 200)");
  const_cmd->add_option("--reps", budget.replications, "replications (default 400)");
  const_cmd->add_option("--delta", budget.delta, "grid step (default 1e-3)");
  const_cmd->add_option("--lpad", budget.l_pad, "window padding (default 5)");
  add_common(const_cmd, &const_common);

  // ---- verify ----
  auto* verify_cmd = app.add_subcommand("verify", "run a verification suite");
  CommonOpts verify_common;
  std::string suite;
  std::string v_kind = "surrogate", v_model = "linhaz:1,1", v_constants;
  double v_a = 1.0, v_delta = 0.0, v_acoef = 1.0, v_bcoef = 1.0, v_c = 100.0, v_lpad = 5.0;
  double v_n = 0.0;
  std::uint64_t v_reps = 0;
  verify_cmd
      ->add_option("suite", suite, "clt | tail | scaling | localization | constant-hazard")
      ->required();
  verify_cmd->add_option("--kind", v_kind, "clt: surrogate | T | U");
  verify_cmd->add_option("--model", v_model, "null model spec");
  verify_cmd->add_option("--constants", v_constants, "canonical constants JSON file");
  verify_cmd->add_option("--a", v_a, "interval end (clt/localization/constant-hazard) "
                                     "or drift coefficient (scaling)");
  verify_cmd->add_option("--b", v_bcoef, "scaling: Brownian time coefficient");
  verify_cmd->add_option("--n", v_n, "sample size");
  verify_cmd->add_option("--reps", v_reps, "replications");
  verify_cmd->add_option("--delta", v_delta, "grid step");
  verify_cmd->add_option("--c", v_c, "scaling: integration length");
  verify_cmd->add_option("--lpad", v_lpad, "window padding");
  add_common(verify_cmd, &verify_common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }

  if (test_cmd->parsed()) {
    apply_threads(test_common);
    if (!(a > 0)) fail(kExitInput, "--a must be > 0");
    auto raw = read_data_file(data_path);
    std::optional<SortedSample> sample;
    try {
      sample.emplace(std::move(raw), jitter);
    } catch (const std::invalid_argument& e) {
      fail(kExitDataQuality, std::string(e.what()) + " (rerun with --jitter)");
    }
    StatKind kind = stat_kind == "T" ? StatKind::T : StatKind::U;
    double value = kind == StatKind::T ? statistic_T(*sample, a) : statistic_U(*sample, a);

    TestReport report;
    if (!model_spec.empty()) {
      if (constants_path.empty())
        fail(kExitInput, "--model requires --constants for standardization");
      HazardModel model = make_model(model_spec);
      CanonicalConstants constants = load_constants_file(constants_path);
      report = standardize(value, kind, sample->n(), model, a, constants);
    } else {
      report.kind = kind;
      report.value = value;
      report.n = sample->n();
      report.a = a;
      report.calibration_mode = "raw";
    }
    std::size_t in_window = 0;
    for (double x : sample->obs())
      if (x <= a) ++in_window;
    report.diagnostics["fraction_in_window"] =
        static_cast<double>(in_window) / static_cast<double>(sample->n());
    report.diagnostics["Fn_a"] = ecdf(*sample)(a);

    ordered_json j = report_to_json(report);
    j["seed"] = test_common.seed;
    j["version"] = kVersion;
    j["config"] = config_echo(test_common);
    j["config"]["data"] = data_path;
    j["config"]["stat"] = stat_kind;
    j["config"]["a"] = a;
    j["config"]["model"] = model_spec;
    j["config"]["jitter"] = jitter;
    write_output(j, test_common.out_path);
    return kExitOk;
  }

  if (const_cmd->parsed()) {
    apply_threads(const_common);
    if (!(budget.delta > 0)) fail(kExitInput, "--delta must be > 0");
    ConstantsEstimate est;
    try {
      est = estimate_constants_detail(budget, const_common.seed);
    } catch (const std::invalid_argument& e) {
      fail(kExitBudget, e.what());
    }
    ordered_json j = constants_to_json(est.constants);
    j["sigma2_qc_crosscheck"] = est.sigma2_qc;
    j["se_sigma2_qc_crosscheck"] = est.se_sigma2_qc;
    j["covariance_lags"] = est.covariance_lags;
    write_output(j, const_common.out_path);
    return kExitOk;
  }

  // ---- verify ----
  apply_threads(verify_common);
  std::uint64_t seed = verify_common.seed;
  bool pass = true;
  ordered_json j;
  j["suite"] = suite;
  j["seed"] = seed;
  j["version"] = kVersion;
  j["config"] = config_echo(verify_common);

  auto gate = [&](const std::string& name, bool ok, double observed, double threshold,
                  const std::string& relation) {
    j["gates"].push_back(ordered_json{{"name", name},
                                      {"observed", observed},
                                      {"threshold", threshold},
                                      {"relation", relation},
                                      {"pass", ok}});
    std::cerr << (ok ? "[PASS] " : "[FAIL] ") << suite << ": " << name << " = " << observed
              << " (" << relation << " " << threshold << ")\n";
    pass = pass && ok;
  };

  if (suite == "clt") {
    if (v_constants.empty()) fail(kExitInput, "verify clt requires --constants");
    ExperimentKind kind = parse_experiment_kind(v_kind);
    bool surrogate = kind == ExperimentKind::Surrogate;
    double n = v_n > 0 ? v_n : (surrogate ? 1e6 : 1e5);
    std::uint64_t reps = v_reps > 0 ? v_reps : (surrogate ? 2000 : 500);
    double dx = v_delta > 0 ? v_delta : 1e-4;
    HazardModel model = make_model(v_model);
    CanonicalConstants constants = load_constants_file(v_constants);
    CLTReport rep = clt_experiment(kind, model, v_a, n, reps, constants, seed, dx);
    j["report"] = clt_report_to_json(rep, verify_common.format == "csv");
    double lo = surrogate ? 0.85 : 0.75, hi = surrogate ? 1.15 : 1.30;
    gate("var_ratio_low", rep.var_ratio >= lo, rep.var_ratio, lo, ">=");
    gate("var_ratio_high", rep.var_ratio <= hi, rep.var_ratio, hi, "<=");
    double mean_err = std::abs(rep.mean_check_mc / rep.mean_check_target - 1.0);
    gate("mean_check_rel_err", mean_err <= (surrogate ? 0.05 : 0.10), mean_err,
         surrogate ? 0.05 : 0.10, "<=");
    if (surrogate) gate("ks_p", rep.ks_p > 0.01, rep.ks_p, 0.01, ">");
  } else if (suite == "tail") {
    std::vector<double> zs = {2.0, 2.5, 3.0, 3.5, 4.0};
    std::uint64_t reps = v_reps > 0 ? v_reps : 1000000;
    double dd = v_delta > 0 ? v_delta : 1e-2;
    auto table = tail_check(zs, reps, dd, v_lpad, seed);
    j["table"] = tail_table_to_json(table);
    double slope = tail_slope(table);
    double target = -8.0 / std::sqrt(27.0);
    j["slope"] = slope;
    j["slope_target"] = target;
    gate("slope_rel_err", std::abs(slope / target - 1.0) <= 0.15,
         std::abs(slope / target - 1.0), 0.15, "<=");
  } else if (suite == "scaling") {
    std::uint64_t reps = v_reps > 0 ? v_reps : 400;
    double dd = v_delta > 0 ? v_delta : 1e-3;
    ScalingReport rep = scaling_check(v_a, v_bcoef, v_c, reps, dd, v_lpad, seed);
    j["report"] = scaling_report_to_json(rep);
    gate("mean_ratio_3se",
         std::abs(rep.mean_ratio - rep.mean_predicted) <= 3.0 * rep.mean_ratio_se,
         std::abs(rep.mean_ratio - rep.mean_predicted), 3.0 * rep.mean_ratio_se, "<=");
    gate("var_ratio_3se",
         std::abs(rep.var_ratio - rep.var_predicted) <= 3.0 * rep.var_ratio_se,
         std::abs(rep.var_ratio - rep.var_predicted), 3.0 * rep.var_ratio_se, "<=");
  } else if (suite == "localization") {
    std::uint64_t reps = v_reps > 0 ? v_reps : 200;
    double dx = v_delta > 0 ? v_delta : 1e-4;
    HazardModel model = make_model(v_model);
    std::vector<std::uint64_t> ns = {1000000ULL, 100000000ULL, 10000000000ULL};
    std::vector<LocalizationReport> reports;
    for (std::uint64_t n : ns)
      reports.push_back(localization_check(model, n, v_a, dx, reps, seed));
    for (const auto& r : reports) j["reports"].push_back(localization_report_to_json(r));
    for (std::size_t i = 1; i < reports.size(); ++i) {
      gate("big_mismatch_decreasing_" + std::to_string(i),
           reports[i].big_mismatch_freq < reports[i - 1].big_mismatch_freq ||
               (reports[i].big_mismatch_freq == 0.0 && reports[i - 1].big_mismatch_freq == 0.0),
           reports[i].big_mismatch_freq, reports[i - 1].big_mismatch_freq, "<");
      gate("small_no_knot_decreasing_" + std::to_string(i),
           reports[i].small_no_knot_freq < reports[i - 1].small_no_knot_freq ||
               (reports[i].small_no_knot_freq == 0.0 && reports[i - 1].small_no_knot_freq == 0.0),
           reports[i].small_no_knot_freq, reports[i - 1].small_no_knot_freq, "<");
    }
  } else if (suite == "constant-hazard") {
    std::uint64_t n = v_n > 0 ? static_cast<std::uint64_t>(v_n) : 10000;
    std::uint64_t reps = v_reps > 0 ? v_reps : 2000;
    double dx = v_delta > 0 ? v_delta : 1e-3;
    ConstantHazardReport rep = constant_hazard_experiment(1.0, v_a, n, reps, dx, seed);
    j["report"] = constant_hazard_report_to_json(rep, false);
    double e50 = std::abs(rep.scaled_statistic.q50 / rep.limit.q50 - 1.0);
    double e90 = std::abs(rep.scaled_statistic.q90 / rep.limit.q90 - 1.0);
    gate("median_rel_err", e50 <= 0.10, e50, 0.10, "<=");
    gate("q90_rel_err", e90 <= 0.10, e90, 0.10, "<=");
  } else {
    fail(kExitInput, "unknown verification suite: " + suite);
  }

  j["pass"] = pass;
  write_output(j, verify_common.out_path);
  return pass ? kExitOk : kExitVerifyFail;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run_cli(argc, argv);
  } catch (const CliError& e) {
    std::cerr << "error: " << e.message << "\n";
    return e.code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
}
