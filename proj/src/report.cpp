#include "plspower/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "plspower/messages.hpp"

namespace plspower {

using nlohmann::json;

namespace {

json warning_or_null(bool flag, std::int64_t n) {
    return flag ? json(small_sample_warning(n)) : json(nullptr);
}

}  // namespace

std::optional<HeuristicBaseline> make_baseline(std::optional<std::int64_t> max_arrowheads) {
    if (!max_arrowheads) return std::nullopt;
    return HeuristicBaseline{*max_arrowheads, ten_times_rule(*max_arrowheads)};
}

json to_json(const APrioriResult& r, const std::optional<HeuristicBaseline>& baseline) {
    json j;
    j["method"] = "a priori";
    j["mdes"] = r.mdes;
    j["alpha"] = r.spec.alpha;
    j["power"] = r.spec.power;
    j["p_alpha"] = r.p_alpha;
    j["n_required"] = r.n_required;
    j["small_sample_flag"] = r.small_sample_flag;
    j["warning"] = warning_or_null(r.small_sample_flag, r.n_required);
    j["message"] = apriori_message(r);
    if (baseline) {
        j["heuristic_baseline"] = {{"rule", "10-times rule"},
                                   {"max_arrowheads", baseline->max_arrowheads},
                                   {"n", baseline->n}};
    } else {
        j["heuristic_baseline"] = nullptr;
    }
    return j;
}

json to_json(const SensitivityResult& r) {
    json j;
    j["method"] = "sensitivity";
    j["n"] = r.n;
    j["alpha"] = r.spec.alpha;
    j["power"] = r.spec.power;
    j["p_alpha"] = r.p_alpha;
    j["mdes"] = r.mdes;
    j["mdes_display"] = r.mdes_display;
    j["small_sample_flag"] = r.small_sample_flag;
    j["warning"] = warning_or_null(r.small_sample_flag, r.n);
    j["message"] = sensitivity_message(r);
    return j;
}

std::string mode_name(CurveMode mode) {
    return mode == CurveMode::a_priori ? "a_priori" : "sensitivity";
}

std::string x_label(CurveMode mode) {
    return mode == CurveMode::a_priori ? "MDES" : "Sample size N";
}

std::string y_label(CurveMode mode) {
    return mode == CurveMode::a_priori ? "Sample size N" : "MDES";
}

json to_json(const CurveSeries& curve) {
    json points = json::array();
    for (const auto& p : curve.points) {
        points.push_back({{"x", p.x}, {"y", p.y}});
    }
    json j;
    j["mode"] = mode_name(curve.mode);
    j["alpha"] = curve.spec.alpha;
    j["power"] = curve.spec.power;
    j["x_label"] = x_label(curve.mode);
    j["y_label"] = y_label(curve.mode);
    j["points"] = std::move(points);
    j["reference"] = {{"x", curve.reference.x}, {"y", curve.reference.y}};
    return j;
}

json to_json(const mc::ValidationReport& report) {
    const auto& a = report.apriori;
    const auto& e = report.estimate;
    json j;
    j["mdes"] = a.mdes;
    j["alpha"] = a.spec.alpha;
    j["power"] = a.spec.power;
    j["n_required"] = a.n_required;
    j["small_sample_flag"] = a.small_sample_flag;
    j["warning"] = warning_or_null(a.small_sample_flag, a.n_required);
    j["replications"] = e.replications;
    j["seed"] = report.seed;
    j["rejections"] = e.rejections;
    j["power_hat"] = e.power_hat;
    j["std_error"] = e.std_error;
    j["ci95"] = {e.ci95_lo, e.ci95_hi};
    j["two_tailed_power_hat"] = e.two_tailed_power_hat;
    j["degenerate_redraws"] = e.degenerate_redraws;
    j["mean_se_hat"] = e.mean_se_hat;
    j["pass_threshold"] = report.pass_threshold;
    j["pass"] = report.pass;
    return j;
}

std::string to_csv(const CurveSeries& curve) {
    std::string out = "x,y\n";
    for (const auto& p : curve.points) {
        out += format_number(p.x);
        out += ',';
        out += format_number(p.y);
        out += '\n';
    }
    return out;
}

std::vector<CurvePoint> parse_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line != "x,y") {
        throw std::runtime_error("csv: expected header 'x,y'");
    }
    auto parse = [](std::string_view s) {
        double v = 0.0;
        const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc{} || ptr != s.data() + s.size()) {
            throw std::runtime_error("csv: bad number '" + std::string(s) + "'");
        }
        return v;
    };
    std::vector<CurvePoint> points;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos) {
            throw std::runtime_error("csv: expected two columns");
        }
        const std::string_view view(line);
        points.push_back({parse(view.substr(0, comma)), parse(view.substr(comma + 1))});
    }
    return points;
}

// ---------------------------------------------------------------------------
// SVG
// ---------------------------------------------------------------------------

namespace {

constexpr double kWidth = 720.0;
constexpr double kHeight = 480.0;
constexpr double kLeft = 80.0;
constexpr double kRight = 30.0;
constexpr double kTop = 50.0;
constexpr double kBottom = 60.0;

// 1-2-5 tick spacing giving roughly `target` intervals over [lo, hi].
double nice_step(double lo, double hi, int target) {
    const double raw = (hi - lo) / target;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    const double f = raw / mag;
    const double nice = f < 1.5 ? 1.0 : f < 3.5 ? 2.0 : f < 7.5 ? 5.0 : 10.0;
    return nice * mag;
}

std::string coord(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string tick_label(double v, double step) {
    const int decimals = std::max(0, static_cast<int>(-std::floor(std::log10(step) + 1e-9)));
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
    return buf;
}

struct Axis {
    double lo;
    double hi;
    double step;
};

Axis make_axis(double lo, double hi) {
    if (hi <= lo) hi = lo + 1.0;
    const double step = nice_step(lo, hi, 8);
    return {std::floor(lo / step) * step, std::ceil(hi / step) * step, step};
}

}  // namespace

std::string to_svg(const CurveSeries& curve) {
    double x_min = curve.reference.x;
    double x_max = curve.reference.x;
    double y_max = curve.reference.y;
    for (const auto& p : curve.points) {
        x_min = std::min(x_min, p.x);
        x_max = std::max(x_max, p.x);
        y_max = std::max(y_max, p.y);
    }
    const Axis xa = make_axis(x_min, x_max);
    const Axis ya = make_axis(0.0, y_max);

    const double plot_w = kWidth - kLeft - kRight;
    const double plot_h = kHeight - kTop - kBottom;
    auto px = [&](double x) { return kLeft + (x - xa.lo) / (xa.hi - xa.lo) * plot_w; };
    auto py = [&](double y) { return kTop + plot_h - (y - ya.lo) / (ya.hi - ya.lo) * plot_h; };

    const std::string xl = x_label(curve.mode);
    const std::string yl = y_label(curve.mode);
    const std::string title = curve.mode == CurveMode::a_priori ? "A priori power analysis"
                                                                : "Sensitivity power analysis";

    std::ostringstream s;
    s << R"(<?xml version="1.0" encoding="UTF-8"?>)" << '\n';
    s << R"(<svg xmlns="http://www.w3.org/2000/svg" width=")" << kWidth << R"(" height=")"
      << kHeight << R"(" viewBox="0 0 )" << kWidth << ' ' << kHeight << R"(" font-family="sans-serif" font-size="12">)"
      << '\n';
    s << "<title>" << title << " (alpha = " << format_number(curve.spec.alpha) << ", power = "
      << format_percent(curve.spec.power) << "%)</title>\n";
    s << R"(<rect width="100%" height="100%" fill="#FFFFFF"/>)" << '\n';

    // Grid ticks and labels.
    const double x_bottom = py(ya.lo);
    const int x_ticks = static_cast<int>(std::lround((xa.hi - xa.lo) / xa.step));
    for (int i = 0; i <= x_ticks; ++i) {
        const double t = xa.lo + i * xa.step;
        s << R"(<line x1=")" << coord(px(t)) << R"(" y1=")" << coord(x_bottom) << R"(" x2=")"
          << coord(px(t)) << R"(" y2=")" << coord(x_bottom + 5) << R"(" stroke=")" << Palette::text
          << R"("/>)" << '\n';
        s << R"(<text x=")" << coord(px(t)) << R"(" y=")" << coord(x_bottom + 18)
          << R"(" text-anchor="middle" fill=")" << Palette::text << R"(">)"
          << tick_label(t, xa.step) << "</text>\n";
    }
    const int y_ticks = static_cast<int>(std::lround((ya.hi - ya.lo) / ya.step));
    for (int i = 0; i <= y_ticks; ++i) {
        const double t = ya.lo + i * ya.step;
        s << R"(<line x1=")" << coord(kLeft - 5) << R"(" y1=")" << coord(py(t)) << R"(" x2=")"
          << coord(kLeft) << R"(" y2=")" << coord(py(t)) << R"(" stroke=")" << Palette::text
          << R"("/>)" << '\n';
        s << R"(<text x=")" << coord(kLeft - 8) << R"(" y=")" << coord(py(t) + 4)
          << R"(" text-anchor="end" fill=")" << Palette::text << R"(">)" << tick_label(t, ya.step)
          << "</text>\n";
    }

    // Axes.
    s << R"(<line class="axis" x1=")" << coord(kLeft) << R"(" y1=")" << coord(x_bottom)
      << R"(" x2=")" << coord(kLeft + plot_w) << R"(" y2=")" << coord(x_bottom) << R"(" stroke=")"
      << Palette::text << R"("/>)" << '\n';
    s << R"(<line class="axis" x1=")" << coord(kLeft) << R"(" y1=")" << coord(kTop)
      << R"(" x2=")" << coord(kLeft) << R"(" y2=")" << coord(x_bottom) << R"(" stroke=")"
      << Palette::text << R"("/>)" << '\n';

    // Curve.
    s << R"(<polyline class="curve" fill="none" stroke=")" << Palette::curve
      << R"(" stroke-width="2" points=")";
    for (std::size_t i = 0; i < curve.points.size(); ++i) {
        if (i != 0) s << ' ';
        s << coord(px(curve.points[i].x)) << ',' << coord(py(curve.points[i].y));
    }
    s << R"("/>)" << '\n';

    // Reference lines from each axis to the user's point.
    const double rx = px(curve.reference.x);
    const double ry = py(curve.reference.y);
    const std::string ref_x = format_number(curve.reference.x);
    const std::string ref_y = format_number(curve.reference.y);
    s << R"(<line class="reference-vertical" data-x=")" << ref_x << R"(" data-y=")" << ref_y
      << R"(" x1=")" << coord(rx) << R"(" y1=")" << coord(x_bottom) << R"(" x2=")" << coord(rx)
      << R"(" y2=")" << coord(ry) << R"(" stroke=")" << Palette::reference
      << R"(" stroke-width="1.5" stroke-dasharray="6 4"/>)" << '\n';
    s << R"(<line class="reference-horizontal" data-x=")" << ref_x << R"(" data-y=")" << ref_y
      << R"(" x1=")" << coord(kLeft) << R"(" y1=")" << coord(ry) << R"(" x2=")" << coord(rx)
      << R"(" y2=")" << coord(ry) << R"(" stroke=")" << Palette::reference
      << R"(" stroke-width="1.5" stroke-dasharray="6 4"/>)" << '\n';
    s << R"(<circle class="reference-point" cx=")" << coord(rx) << R"(" cy=")" << coord(ry)
      << R"(" r="4" fill=")" << Palette::reference << R"("/>)" << '\n';

    const std::string ref_text =
        curve.mode == CurveMode::a_priori
            ? "MDES = " + ref_x + ", N = " + ref_y
            : "N = " + ref_x + ", MDES = " + round_half_up_2(curve.reference.y);
    s << R"(<text class="reference-label" x=")" << coord(rx + 8) << R"(" y=")" << coord(ry - 8)
      << R"(" fill=")" << Palette::reference << R"(">)" << ref_text << "</text>\n";

    // Labels.
    s << R"(<text x=")" << coord(kWidth / 2) << R"(" y=")" << coord(kTop / 2 + 4)
      << R"(" text-anchor="middle" font-size="15" fill=")" << Palette::text << R"(">)" << title
      << "</text>\n";
    s << R"(<text class="x-label" x=")" << coord(kLeft + plot_w / 2) << R"(" y=")"
      << coord(kHeight - 15) << R"(" text-anchor="middle" fill=")" << Palette::text << R"(">)"
      << xl << "</text>\n";
    s << R"(<text class="y-label" transform="translate(20 )" << coord(kTop + plot_h / 2)
      << R"svg() rotate(-90)" text-anchor="middle" fill=")svg" << Palette::text << R"(">)" << yl
      << "</text>\n";
    s << "</svg>\n";
    return s.str();
}

std::string validation_table(const mc::ValidationReport& report) {
    const auto& a = report.apriori;
    const auto& e = report.estimate;
    auto fixed = [](double v) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.4f", v);
        return std::string(buf);
    };
    std::ostringstream s;
    s << "Monte Carlo validation (standardized single-path model, one-tailed z-test)\n";
    s << "  MDES                 " << format_number(a.mdes) << '\n';
    s << "  alpha                " << format_number(a.spec.alpha) << '\n';
    s << "  target power         " << format_percent(a.spec.power) << "%\n";
    s << "  n_required           " << a.n_required << '\n';
    s << "  replications         " << e.replications << '\n';
    s << "  seed                 " << report.seed << '\n';
    s << "  empirical power      " << fixed(e.power_hat) << '\n';
    s << "  95% CI               [" << fixed(e.ci95_lo) << ", " << fixed(e.ci95_hi) << "]\n";
    s << "  two-tailed power     " << fixed(e.two_tailed_power_hat) << '\n';
    s << "  degenerate redraws   " << e.degenerate_redraws << '\n';
    s << "  pass threshold       " << fixed(report.pass_threshold) << '\n';
    s << "  result               " << (report.pass ? "PASS" : "FAIL") << '\n';
    if (a.small_sample_flag) {
        s << small_sample_warning(a.n_required) << '\n';
    }
    return s.str();
}

}  // namespace plspower
