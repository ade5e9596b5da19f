#include "plspower/mc_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "plspower/errors.hpp"
#include "plspower/normal.hpp"

namespace plspower::mc {

namespace {

struct ReplicationOutcome {
    bool reject = false;
    bool reject_two_tailed = false;
    double se_hat = 0.0;
    std::int64_t redraws = 0;
};

ReplicationOutcome run_replication(const SimConfig& config, std::int64_t replication,
                                   double z_one, double z_two) {
    ReplicationOutcome outcome;
    for (std::uint64_t attempt = 0;; ++attempt) {
        NormalStream stream(
            substream_seed(config.seed, static_cast<std::uint64_t>(replication), attempt));
        const Dataset data = generate_dataset(config.true_path, config.n, stream);
        PathEstimate est;
        try {
            est = estimate_path(data.x, data.y);
        } catch (const DegenerateSample&) {
            ++outcome.redraws;
            continue;
        }
        // se_hat is 0 only for a perfect fit, where the statistic is +-inf.
        const double z = est.se_hat > 0.0 ? est.p_hat / est.se_hat
                                          : std::copysign(INFINITY, est.p_hat);
        outcome.reject = z > z_one;
        outcome.reject_two_tailed = std::abs(z) > z_two;
        outcome.se_hat = est.se_hat;
        return outcome;
    }
}

}  // namespace

void validate(const SimConfig& config) {
    plspower::validate(config.spec);
    if (!(config.true_path >= 0.0 && config.true_path < 1.0)) {
        throw DomainError("true path coefficient must lie in [0, 1)");
    }
    if (config.n < kMinSampleSize) {
        throw DomainError("simulation sample size must be at least 3");
    }
    if (config.replications < kMinReplications) {
        throw DomainError("replications must be at least 100");
    }
}

Dataset generate_dataset(double true_path, std::int64_t n, NormalStream& stream) {
    Dataset data;
    data.x.resize(static_cast<std::size_t>(n));
    data.y.resize(static_cast<std::size_t>(n));
    const double noise_scale = std::sqrt(1.0 - true_path * true_path);
    for (std::size_t i = 0; i < data.x.size(); ++i) {
        const double x = stream.normal();
        const double e = stream.normal();
        data.x[i] = x;
        data.y[i] = true_path * x + noise_scale * e;
    }
    return data;
}

PathEstimate estimate_path(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) {
        throw DomainError("x and y must have the same length");
    }
    const std::size_t n = x.size();
    if (n < static_cast<std::size_t>(kMinSampleSize)) {
        throw DomainError("path estimation needs at least 3 observations");
    }

    double mean_x = 0.0;
    double mean_y = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mean_x += x[i];
        mean_y += y[i];
    }
    mean_x /= static_cast<double>(n);
    mean_y /= static_cast<double>(n);

    double sxx = 0.0;
    double syy = 0.0;
    double sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = x[i] - mean_x;
        const double dy = y[i] - mean_y;
        sxx += dx * dx;
        syy += dy * dy;
        sxy += dx * dy;
    }
    if (!(sxx > 0.0) || !(syy > 0.0)) {
        throw DegenerateSample();
    }

    // With both variables scaled to unit sample SD the OLS slope is the
    // sample correlation.
    const double r = std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
    return {r, std::sqrt((1.0 - r * r) / static_cast<double>(n - 2))};
}

PowerEstimate empirical_power(const SimConfig& config) {
    validate(config);
    const double z_one = normal_quantile(1.0 - config.spec.alpha);
    const double z_two = normal_quantile(1.0 - config.spec.alpha / 2.0);

    const auto reps = static_cast<std::size_t>(config.replications);
    std::vector<ReplicationOutcome> outcomes(reps);

    unsigned threads = config.threads != 0 ? config.threads : std::thread::hardware_concurrency();
    threads = std::clamp<unsigned>(threads, 1, 64);
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, reps));

    auto worker = [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            outcomes[i] = run_replication(config, static_cast<std::int64_t>(i), z_one, z_two);
        }
    };
    if (threads <= 1) {
        worker(0, reps);
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(threads);
        const std::size_t chunk = (reps + threads - 1) / threads;
        for (std::size_t begin = 0; begin < reps; begin += chunk) {
            pool.emplace_back(worker, begin, std::min(reps, begin + chunk));
        }
    }

    // Reduce in replication order so the result does not depend on threads.
    PowerEstimate est;
    est.replications = config.replications;
    double se_sum = 0.0;
    for (const auto& o : outcomes) {
        est.rejections += o.reject ? 1 : 0;
        est.two_tailed_rejections += o.reject_two_tailed ? 1 : 0;
        est.degenerate_redraws += o.redraws;
        se_sum += o.se_hat;
    }
    const auto r = static_cast<double>(est.replications);
    est.power_hat = static_cast<double>(est.rejections) / r;
    est.two_tailed_power_hat = static_cast<double>(est.two_tailed_rejections) / r;
    est.std_error = std::sqrt(est.power_hat * (1.0 - est.power_hat) / r);
    est.ci95_lo = std::clamp(est.power_hat - 1.96 * est.std_error, 0.0, 1.0);
    est.ci95_hi = std::clamp(est.power_hat + 1.96 * est.std_error, 0.0, 1.0);
    est.mean_se_hat = se_sum / r;
    return est;
}

ValidationReport validate_apriori(double mdes, const PowerSpec& spec, std::int64_t replications,
                                  std::uint64_t seed, unsigned threads) {
    ValidationReport report;
    report.apriori = a_priori(mdes, spec);
    report.seed = seed;

    SimConfig config;
    config.true_path = mdes;
    config.n = std::max(report.apriori.n_required, kMinSampleSize);
    config.spec = spec;
    config.replications = replications;
    config.seed = seed;
    config.threads = threads;
    report.estimate = empirical_power(config);

    report.pass_threshold = spec.power - kPassSlack;
    report.pass = report.estimate.power_hat >= report.pass_threshold;
    return report;
}

}  // namespace plspower::mc
