#pragma once

#include <string>

#include "json.hpp"

#include "gcmhaz/canonical.hpp"
#include "gcmhaz/harness.hpp"
#include "gcmhaz/models.hpp"
#include "gcmhaz/statistics.hpp"

namespace gcmhaz {

using ordered_json = nlohmann::ordered_json;

// Constants file schema: field names are part of the external interface.
ordered_json constants_to_json(const CanonicalConstants& c);
CanonicalConstants constants_from_json(const ordered_json& j);
CanonicalConstants load_constants_file(const std::string& path);
void save_constants_file(const CanonicalConstants& c, const std::string& path);

ordered_json report_to_json(const TestReport& r);
ordered_json clt_report_to_json(const CLTReport& r, bool include_draws = true);
ordered_json tail_table_to_json(const std::vector<TailPoint>& table);
ordered_json scaling_report_to_json(const ScalingReport& r);
ordered_json localization_report_to_json(const LocalizationReport& r);
ordered_json constant_hazard_report_to_json(const ConstantHazardReport& r,
                                            bool include_draws = true);

}  // namespace gcmhaz
