#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace plspower {

inline constexpr double kDefaultPower = 0.80;

// Sample sizes at or below this bound get the small-sample warning.
inline constexpr std::int64_t kSmallSampleLimit = 10;

// (alpha, target power) pair governing every computation.
struct PowerSpec {
    double alpha = 0.05;
    double power = kDefaultPower;

    // Validating constructor: 0 < alpha < 0.5 and 0.5 <= power < 1.
    static PowerSpec make(double alpha, double power = kDefaultPower);

    friend bool operator==(const PowerSpec&, const PowerSpec&) = default;
};

// Throws DomainError unless spec satisfies the PowerSpec invariants.
void validate(const PowerSpec& spec);

// The numerator constant p_alpha of the inverse square root formula.
struct CriticalConstant {
    double p_alpha = 0.0;
};

struct APrioriResult {
    double mdes = 0.0;
    PowerSpec spec;
    double p_alpha = 0.0;
    std::int64_t n_required = 0;
    bool small_sample_flag = false;
};

struct SensitivityResult {
    std::int64_t n = 0;
    PowerSpec spec;
    double p_alpha = 0.0;
    double mdes = 0.0;
    std::string mdes_display;
    bool small_sample_flag = false;
};

// Accepted range for an effect size passed to a_priori. User-facing entry
// points use `standardized`; `positive` exists so that any sensitivity()
// output (which exceeds 1 when N < p_alpha^2) can be mapped back to N.
enum class EffectDomain { standardized, positive };

enum class CurveMode { a_priori, sensitivity };

struct CurvePoint {
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const CurvePoint&, const CurvePoint&) = default;
};

struct CurveSeries {
    CurveMode mode = CurveMode::a_priori;
    PowerSpec spec;
    std::vector<CurvePoint> points;
    CurvePoint reference;
};

// Default plotting ranges.
struct CurveDefaults {
    static constexpr double mdes_lo = 0.05;
    static constexpr double mdes_hi = 0.90;
    static constexpr double mdes_step = 0.005;
    static constexpr std::int64_t n_lo = 5;
    static constexpr std::int64_t n_hi = 500;
    static constexpr std::int64_t n_step = 1;
};

// p_alpha = z(1 - alpha) + z(power): the one-tailed critical value plus the
// power quantile. Reproduces 3.168 / 2.486 / 2.123 for alpha .01 / .05 / .10
// at 80% power.
CriticalConstant critical_constant(const PowerSpec& spec);

// Minimum sample size N = ceil((p_alpha / mdes)^2). A 1e-9 slack is
// subtracted before the ceiling so values that are integers up to rounding
// noise are not bumped to the next integer.
// Throws DomainError for mdes outside (0, 1) (or outside (0, inf) with
// EffectDomain::positive).
APrioriResult a_priori(double mdes, const PowerSpec& spec,
                       EffectDomain domain = EffectDomain::standardized);

// Minimum detectable effect size p_alpha / sqrt(n).
SensitivityResult sensitivity(std::int64_t n, const PowerSpec& spec);

// Same as above for a sample size that arrived as a real number; throws
// DomainError unless n is a finite integer >= 1.
SensitivityResult sensitivity(double n, const PowerSpec& spec);

// Sampled (MDES, N) trade-off for the a priori plot. The grid is
// lo, lo + step, ... up to hi; hi is always the last point.
CurveSeries a_priori_curve(const PowerSpec& spec, double mdes_lo, double mdes_hi,
                           double step, double reference_mdes);

// Sampled (N, MDES) trade-off for the sensitivity plot.
CurveSeries sensitivity_curve(const PowerSpec& spec, std::int64_t n_lo, std::int64_t n_hi,
                              std::int64_t step, std::int64_t reference_n);

// Heuristic baseline: 10 x the maximum number of arrowheads pointing at any
// latent variable. Kept only for side-by-side comparison; it ignores effect
// size, alpha and power.
std::int64_t ten_times_rule(std::int64_t max_arrowheads);

// Half-up rounding to two decimals, rendered as "0.30".
std::string round_half_up_2(double value);

bool is_small_sample(std::int64_t n);

// Warning text attached to every result with N <= 10.
std::string small_sample_warning(std::int64_t n);

}  // namespace plspower
