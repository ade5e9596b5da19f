#include "plspower/power_core.hpp"

#include <cmath>
#include <limits>

#include "plspower/errors.hpp"
#include "plspower/normal.hpp"

namespace plspower {

namespace {

constexpr double kCeilSlack = 1e-9;

// Largest N we report; keeps the integer conversion exact.
constexpr double kMaxSampleSize = 9.007199254740992e15;  // 2^53

void require_effect_size(double mdes, const char* what) {
    if (!std::isfinite(mdes) || mdes <= 0.0 || mdes >= 1.0) {
        throw DomainError(std::string(what) +
                          " must be a path coefficient strictly between 0 and 1");
    }
}

}  // namespace

PowerSpec PowerSpec::make(double alpha, double power) {
    PowerSpec spec{alpha, power};
    validate(spec);
    return spec;
}

void validate(const PowerSpec& spec) {
    if (!(spec.alpha > 0.0 && spec.alpha < 0.5)) {
        throw DomainError("alpha must lie strictly between 0 and 0.5");
    }
    if (!(spec.power >= 0.5 && spec.power < 1.0)) {
        throw DomainError("power must lie in [0.5, 1)");
    }
}

CriticalConstant critical_constant(const PowerSpec& spec) {
    validate(spec);
    return {normal_quantile(1.0 - spec.alpha) + normal_quantile(spec.power)};
}

bool is_small_sample(std::int64_t n) {
    return n <= kSmallSampleLimit;
}

std::string small_sample_warning(std::int64_t n) {
    return "Warning: N = " + std::to_string(n) +
           " is 10 or fewer observations. The inverse square root method is intended for N > 10;"
           " use the gamma-exponential method for samples this small.";
}

APrioriResult a_priori(double mdes, const PowerSpec& spec, EffectDomain domain) {
    if (domain == EffectDomain::standardized) {
        require_effect_size(mdes, "MDES");
    } else if (!std::isfinite(mdes) || mdes <= 0.0) {
        throw DomainError("MDES must be a positive number");
    }
    const double p_alpha = critical_constant(spec).p_alpha;
    const double ratio = p_alpha / mdes;
    const double n_real = std::ceil(ratio * ratio - kCeilSlack);
    if (!(n_real <= kMaxSampleSize)) {
        throw DomainError("MDES is too small: required sample size exceeds 2^53");
    }

    APrioriResult result;
    result.mdes = mdes;
    result.spec = spec;
    result.p_alpha = p_alpha;
    result.n_required = std::max<std::int64_t>(1, static_cast<std::int64_t>(n_real));
    result.small_sample_flag = is_small_sample(result.n_required);
    return result;
}

SensitivityResult sensitivity(std::int64_t n, const PowerSpec& spec) {
    if (n < 1) {
        throw DomainError("sample size N must be an integer >= 1");
    }
    const double p_alpha = critical_constant(spec).p_alpha;

    SensitivityResult result;
    result.n = n;
    result.spec = spec;
    result.p_alpha = p_alpha;
    result.mdes = p_alpha / std::sqrt(static_cast<double>(n));
    result.mdes_display = round_half_up_2(result.mdes);
    result.small_sample_flag = is_small_sample(n);
    return result;
}

SensitivityResult sensitivity(double n, const PowerSpec& spec) {
    if (!std::isfinite(n) || n < 1.0 || n != std::floor(n) || n > kMaxSampleSize) {
        throw DomainError("sample size N must be an integer >= 1");
    }
    return sensitivity(static_cast<std::int64_t>(n), spec);
}

CurveSeries a_priori_curve(const PowerSpec& spec, double mdes_lo, double mdes_hi, double step,
                           double reference_mdes) {
    require_effect_size(mdes_lo, "curve lower bound");
    require_effect_size(mdes_hi, "curve upper bound");
    if (!(mdes_lo < mdes_hi)) {
        throw DomainError("curve lower bound must be below the upper bound");
    }
    if (!(std::isfinite(step) && step > 0.0)) {
        throw DomainError("curve step must be positive");
    }
    if (!(reference_mdes >= mdes_lo && reference_mdes <= mdes_hi)) {
        throw DomainError("reference MDES must lie within the curve range");
    }

    CurveSeries curve;
    curve.mode = CurveMode::a_priori;
    curve.spec = spec;

    // Grid points are lo + i * step; a point within step * 1e-6 of hi is
    // snapped to hi, and hi is appended otherwise.
    const double tolerance = step * 1e-6;
    for (std::int64_t i = 0;; ++i) {
        double m = mdes_lo + static_cast<double>(i) * step;
        if (m >= mdes_hi - tolerance) break;
        curve.points.push_back({m, static_cast<double>(a_priori(m, spec).n_required)});
    }
    curve.points.push_back({mdes_hi, static_cast<double>(a_priori(mdes_hi, spec).n_required)});

    curve.reference = {reference_mdes,
                       static_cast<double>(a_priori(reference_mdes, spec).n_required)};
    return curve;
}

CurveSeries sensitivity_curve(const PowerSpec& spec, std::int64_t n_lo, std::int64_t n_hi,
                              std::int64_t step, std::int64_t reference_n) {
    if (n_lo < 1) {
        throw DomainError("curve lower bound must be a sample size >= 1");
    }
    if (!(n_lo < n_hi)) {
        throw DomainError("curve lower bound must be below the upper bound");
    }
    if (step < 1) {
        throw DomainError("curve step must be a positive integer");
    }
    if (reference_n < n_lo || reference_n > n_hi) {
        throw DomainError("reference N must lie within the curve range");
    }

    CurveSeries curve;
    curve.mode = CurveMode::sensitivity;
    curve.spec = spec;
    for (std::int64_t n = n_lo; n < n_hi; n += step) {
        curve.points.push_back({static_cast<double>(n), sensitivity(n, spec).mdes});
    }
    curve.points.push_back({static_cast<double>(n_hi), sensitivity(n_hi, spec).mdes});
    curve.reference = {static_cast<double>(reference_n), sensitivity(reference_n, spec).mdes};
    return curve;
}

std::int64_t ten_times_rule(std::int64_t max_arrowheads) {
    if (max_arrowheads < 1) {
        throw DomainError("maximum number of arrowheads must be a positive integer");
    }
    if (max_arrowheads > std::numeric_limits<std::int64_t>::max() / 10) {
        throw DomainError("maximum number of arrowheads is too large");
    }
    return 10 * max_arrowheads;
}

std::string round_half_up_2(double value) {
    const bool negative = value < 0.0;
    const auto cents = static_cast<long long>(std::floor(std::abs(value) * 100.0 + 0.5));
    std::string frac = std::to_string(cents % 100);
    if (frac.size() < 2) frac.insert(0, "0");
    return (negative && cents != 0 ? "-" : "") + std::to_string(cents / 100) + "." + frac;
}

}  // namespace plspower
