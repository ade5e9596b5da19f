#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "plspower/mc_oracle.hpp"
#include "plspower/power_core.hpp"

namespace plspower {

// Optional 10-times-rule comparison attached to a priori reports.
struct HeuristicBaseline {
    std::int64_t max_arrowheads = 0;
    std::int64_t n = 0;
};

std::optional<HeuristicBaseline> make_baseline(std::optional<std::int64_t> max_arrowheads);

// Machine-readable renderings shared by the CLI (--format json) and the HTTP
// service, so both emit identical numbers. Key sets are fixed per result type;
// absent optional data is written as null.
nlohmann::json to_json(const APrioriResult& result, const std::optional<HeuristicBaseline>& baseline);
nlohmann::json to_json(const SensitivityResult& result);
nlohmann::json to_json(const CurveSeries& curve);
nlohmann::json to_json(const mc::ValidationReport& report);

std::string mode_name(CurveMode mode);
std::string x_label(CurveMode mode);
std::string y_label(CurveMode mode);

// "x,y" header plus one line per point, '\n' endings, shortest round-trip
// decimals.
std::string to_csv(const CurveSeries& curve);

// Parses to_csv output back into points. Throws std::runtime_error on
// malformed input.
std::vector<CurvePoint> parse_csv(const std::string& text);

// Okabe-Ito colours used in every chart.
struct Palette {
    static constexpr const char* curve = "#0072B2";      // blue
    static constexpr const char* reference = "#D55E00";  // vermillion
    static constexpr const char* text = "#000000";
};

// Self-contained SVG line chart with dashed reference lines through the
// curve's reference point.
std::string to_svg(const CurveSeries& curve);

// Human-readable validation table printed by `plspower validate`.
std::string validation_table(const mc::ValidationReport& report);

}  // namespace plspower
