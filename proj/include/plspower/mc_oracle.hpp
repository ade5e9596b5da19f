#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "plspower/power_core.hpp"
#include "plspower/rng.hpp"

namespace plspower::mc {

inline constexpr std::int64_t kMinReplications = 100;
inline constexpr std::int64_t kMinSampleSize = 3;

// Slack below the target power that still counts as a validation pass.
inline constexpr double kPassSlack = 0.05;

// Thrown by estimate_path when x (or y) has zero sample variance.
class DegenerateSample : public std::runtime_error {
public:
    DegenerateSample() : std::runtime_error("degenerate sample: zero variance") {}
};

struct SimConfig {
    double true_path = 0.0;
    std::int64_t n = 0;
    PowerSpec spec;
    std::int64_t replications = 20000;
    std::uint64_t seed = 1;
    // Worker threads; 0 picks hardware concurrency. Never affects results.
    unsigned threads = 0;
};

// Throws DomainError on: true_path outside [0, 1), n < 3, replications < 100.
void validate(const SimConfig& config);

struct Dataset {
    std::vector<double> x;
    std::vector<double> y;
};

struct PathEstimate {
    double p_hat = 0.0;
    double se_hat = 0.0;
};

struct PowerEstimate {
    double power_hat = 0.0;
    double std_error = 0.0;
    double ci95_lo = 0.0;
    double ci95_hi = 0.0;
    std::int64_t rejections = 0;
    std::int64_t replications = 0;
    // |z| > z(1 - alpha/2), reported alongside the one-tailed rate.
    std::int64_t two_tailed_rejections = 0;
    double two_tailed_power_hat = 0.0;
    std::int64_t degenerate_redraws = 0;
    double mean_se_hat = 0.0;
};

struct ValidationReport {
    APrioriResult apriori;
    PowerEstimate estimate;
    std::uint64_t seed = 0;
    double pass_threshold = 0.0;
    bool pass = false;
};

// x ~ N(0,1); y = b x + sqrt(1 - b^2) e with e ~ N(0,1).
Dataset generate_dataset(double true_path, std::int64_t n, NormalStream& stream);

// Slope of standardized y on standardized x (the sample correlation) and
// se = sqrt((1 - p^2) / (n - 2)). Throws DegenerateSample on zero variance,
// DomainError on mismatched lengths or n < 3.
PathEstimate estimate_path(std::span<const double> x, std::span<const double> y);

// One-tailed z-test rejection rate over config.replications replications.
// Deterministic in config (the thread count does not change the result).
PowerEstimate empirical_power(const SimConfig& config);

// a_priori(mdes) followed by empirical_power at the returned N with
// true_path = mdes. Passes when power_hat >= spec.power - kPassSlack
// (0.75 at the default 80%). N below 3 is simulated at N = 3.
ValidationReport validate_apriori(double mdes, const PowerSpec& spec, std::int64_t replications,
                                  std::uint64_t seed, unsigned threads = 0);

}  // namespace plspower::mc
