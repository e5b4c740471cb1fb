#include "gcmhaz/json_io.hpp"

#include <fstream>
#include <stdexcept>

namespace gcmhaz {

ordered_json constants_to_json(const CanonicalConstants& c) {
  return ordered_json{{"e_abs_c0", c.e_abs_c0},
                      {"sigma2", c.sigma2},
                      {"se_e_abs_c0", c.se_e_abs_c0},
                      {"se_sigma2", c.se_sigma2},
                      {"delta", c.delta},
                      {"c", c.c},
                      {"replications", c.replications},
                      {"l_pad", c.l_pad},
                      {"seed", c.seed},
                      {"version", c.version}};
}

CanonicalConstants constants_from_json(const ordered_json& j) {
  CanonicalConstants c;
  c.e_abs_c0 = j.at("e_abs_c0").get<double>();
  c.sigma2 = j.at("sigma2").get<double>();
  c.se_e_abs_c0 = j.at("se_e_abs_c0").get<double>();
  c.se_sigma2 = j.at("se_sigma2").get<double>();
  c.delta = j.at("delta").get<double>();
  c.c = j.at("c").get<double>();
  c.replications = j.at("replications").get<std::uint64_t>();
  c.l_pad = j.at("l_pad").get<double>();
  c.seed = j.at("seed").get<std::uint64_t>();
  c.version = j.at("version").get<std::string>();
  return c;
}

CanonicalConstants load_constants_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open constants file: " + path);
  ordered_json j;
  in >> j;
  return constants_from_json(j);
}

void save_constants_file(const CanonicalConstants& c, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write constants file: " + path);
  out << constants_to_json(c).dump(2) << '\n';
}

ordered_json report_to_json(const TestReport& r) {
  ordered_json j{{"statistic_kind", to_string(r.kind)},
                 {"value", r.value},
                 {"n", r.n},
                 {"a", r.a}};
  auto opt = [&](const char* key, const std::optional<double>& v) {
    if (v)
      j[key] = *v;
    else
      j[key] = nullptr;
  };
  opt("mu_n", r.mu_n);
  opt("scale", r.scale);
  opt("z", r.z);
  opt("p_value", r.p_value);
  j["calibration_mode"] = r.calibration_mode;
  j["diagnostics"] = r.diagnostics;
  return j;
}

ordered_json clt_report_to_json(const CLTReport& r, bool include_draws) {
  ordered_json j{{"kind", r.kind},
                 {"model", r.model},
                 {"a", r.a},
                 {"n", r.n},
                 {"replications", r.replications},
                 {"sample_mean", r.sample_mean},
                 {"sample_var", r.sample_var},
                 {"target_var", r.target_var},
                 {"var_ratio", r.var_ratio},
                 {"ks_distance", r.ks_distance},
                 {"ks_p", r.ks_p},
                 {"mean_check_mc", r.mean_check_mc},
                 {"mean_check_target", r.mean_check_target},
                 {"seed", r.seed}};
  if (include_draws) j["standardized"] = r.standardized;
  return j;
}

ordered_json tail_table_to_json(const std::vector<TailPoint>& table) {
  ordered_json rows = ordered_json::array();
  for (const auto& t : table)
    rows.push_back(ordered_json{{"z", t.z},
                                {"p_hat", t.p_hat},
                                {"se", t.se},
                                {"airy_prediction", t.airy_prediction},
                                {"hits", t.hits}});
  return rows;
}

ordered_json scaling_report_to_json(const ScalingReport& r) {
  return ordered_json{{"a_coef", r.a_coef},
                      {"b_coef", r.b_coef},
                      {"c", r.c},
                      {"replications", r.replications},
                      {"mean_ratio", r.mean_ratio},
                      {"mean_ratio_se", r.mean_ratio_se},
                      {"mean_predicted", r.mean_predicted},
                      {"var_ratio", r.var_ratio},
                      {"var_ratio_se", r.var_ratio_se},
                      {"var_predicted", r.var_predicted}};
}

ordered_json localization_report_to_json(const LocalizationReport& r) {
  return ordered_json{{"n", r.n},
                      {"a", r.a},
                      {"replications", r.replications},
                      {"num_big_blocks", r.m},
                      {"big_mismatch_freq", r.big_mismatch_freq},
                      {"small_no_knot_freq", r.small_no_knot_freq}};
}

ordered_json constant_hazard_report_to_json(const ConstantHazardReport& r,
                                            bool include_draws) {
  auto q = [](const QuantileSummary& s) {
    return ordered_json{{"q50", s.q50}, {"q90", s.q90}, {"q95", s.q95},
                        {"se50", s.se50}, {"se90", s.se90}, {"se95", s.se95}};
  };
  ordered_json j{{"lambda", r.lambda},
                 {"a", r.a},
                 {"n", r.n},
                 {"replications", r.replications},
                 {"scaled_statistic", q(r.scaled_statistic)},
                 {"limit", q(r.limit)}};
  if (include_draws) {
    j["scaled_draws"] = r.scaled_draws;
    j["limit_draws"] = r.limit_draws;
  }
  return j;
}

}  // namespace gcmhaz
