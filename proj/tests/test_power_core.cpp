#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "normal_oracle.hpp"
#include "plspower/errors.hpp"
#include "plspower/power_core.hpp"

using namespace plspower;

namespace {

const PowerSpec k01 = PowerSpec::make(0.01);
const PowerSpec k05 = PowerSpec::make(0.05);
const PowerSpec k10 = PowerSpec::make(0.10);

// Smallest N with p_alpha / sqrt(N) <= mdes, by linear scan.
std::int64_t scan_min_n(double p_alpha, double mdes) {
    std::int64_t n = 1;
    while (p_alpha / std::sqrt(static_cast<double>(n)) > mdes) ++n;
    return n;
}

}  // namespace

TEST_CASE("PowerSpec validation") {
    CHECK_NOTHROW(PowerSpec::make(0.05));
    CHECK(PowerSpec::make(0.05).power == 0.80);
    CHECK_NOTHROW(PowerSpec::make(0.49, 0.5));
    CHECK_THROWS_AS(PowerSpec::make(0.0), DomainError);
    CHECK_THROWS_AS(PowerSpec::make(0.5), DomainError);
    CHECK_THROWS_AS(PowerSpec::make(-0.05), DomainError);
    CHECK_THROWS_AS(PowerSpec::make(0.05, 0.49), DomainError);
    CHECK_THROWS_AS(PowerSpec::make(0.05, 1.0), DomainError);
    CHECK_THROWS_AS(PowerSpec::make(std::nan("")), DomainError);
    CHECK_THROWS_AS(critical_constant(PowerSpec{0.7, 0.8}), DomainError);
}

TEST_CASE("critical_constant reproduces the published constants") {
    CHECK(std::abs(critical_constant(k01).p_alpha - 3.168) < 0.0005);
    CHECK(std::abs(critical_constant(k05).p_alpha - 2.486) < 0.0005);
    CHECK(std::abs(critical_constant(k10).p_alpha - 2.123) < 0.0005);

    // And agrees with the oracle composition z(1 - alpha) + z(power).
    for (const auto& spec : {k01, k05, k10, PowerSpec::make(0.025, 0.9)}) {
        const long double expected =
            oracle::quantile(1.0L - spec.alpha) + oracle::quantile(spec.power);
        CHECK(std::abs(critical_constant(spec).p_alpha - static_cast<double>(expected)) < 2e-9);
    }
}

TEST_CASE("critical_constant grows with confidence and power") {
    CHECK(critical_constant(k01).p_alpha > critical_constant(k05).p_alpha);
    CHECK(critical_constant(k05).p_alpha > critical_constant(k10).p_alpha);
    CHECK(critical_constant(PowerSpec::make(0.05, 0.9)).p_alpha > critical_constant(k05).p_alpha);
    CHECK(critical_constant(PowerSpec::make(0.05, 0.5)).p_alpha ==
          doctest::Approx(1.6448536269514723).epsilon(1e-12));
}

TEST_CASE("a_priori: worked examples") {
    const auto r = a_priori(0.5, k05);
    CHECK(r.n_required == 25);
    CHECK_FALSE(r.small_sample_flag);
    CHECK(r.mdes == 0.5);
    CHECK(r.spec == k05);

    CHECK(a_priori(0.3, k05).n_required == 69);
    CHECK(a_priori(0.2, k05).n_required == 155);
    CHECK(a_priori(0.2, k01).n_required == 251);
    CHECK(a_priori(0.1, k05).n_required == 619);
    CHECK(a_priori(0.9, k05).n_required == 8);
    CHECK(a_priori(0.9, k05).small_sample_flag);
}

TEST_CASE("a_priori: effect equal to p_alpha needs a single observation") {
    // A spec whose constant is below 1, so the standardized domain applies.
    const PowerSpec loose = PowerSpec::make(0.4, 0.5);
    const double p = critical_constant(loose).p_alpha;
    REQUIRE(p < 1.0);
    CHECK(a_priori(p, loose).n_required == 1);

    for (const auto& spec : {k01, k05, k10}) {
        const double pa = critical_constant(spec).p_alpha;
        CHECK(a_priori(pa, spec, EffectDomain::positive).n_required == 1);
    }
}

TEST_CASE("a_priori: domain errors") {
    CHECK_THROWS_AS(a_priori(0.0, k05), DomainError);
    CHECK_THROWS_AS(a_priori(-0.2, k05), DomainError);
    CHECK_THROWS_AS(a_priori(1.0, k05), DomainError);
    CHECK_THROWS_AS(a_priori(1.5, k05), DomainError);
    CHECK_THROWS_AS(a_priori(std::nan(""), k05), DomainError);
    CHECK_THROWS_AS(a_priori(1e-300, k05), DomainError);
    CHECK_THROWS_AS(a_priori(0.0, k05, EffectDomain::positive), DomainError);
    CHECK_NOTHROW(a_priori(1.5, k05, EffectDomain::positive));
}

TEST_CASE("a_priori matches the brute-force scan on a fine grid") {
    for (const auto& spec : {k01, k05, k10}) {
        const double p = critical_constant(spec).p_alpha;
        for (int i = 11; i < 190; ++i) {
            const double m = i * 0.005;
            CAPTURE(m);
            CHECK(a_priori(m, spec).n_required == scan_min_n(p, m));
        }
    }
}

TEST_CASE("round trip: a_priori(sensitivity(n)) == n") {
    for (const auto& spec : {k01, k05, k10}) {
        for (std::int64_t n = 1; n <= 10000; ++n) {
            const double m = sensitivity(n, spec).mdes;
            const auto back = a_priori(m, spec, EffectDomain::positive).n_required;
            if (back != n) {
                FAIL("round trip broke at n = " << n << " alpha = " << spec.alpha);
            }
            if (m < 1.0 && a_priori(m, spec).n_required != n) {
                FAIL("standardized round trip broke at n = " << n);
            }
        }
    }
}

TEST_CASE("properties over random effect sizes") {
    std::mt19937_64 gen(2024);
    std::uniform_real_distribution<double> effect(0.01, 0.99);
    for (int i = 0; i < 5000; ++i) {
        const double m = effect(gen);
        const double m2 = effect(gen);
        CAPTURE(m);
        for (const auto& spec : {k01, k05, k10}) {
            const auto n = a_priori(m, spec).n_required;
            // Ceiling only adds observations.
            CHECK(sensitivity(n, spec).mdes <= m);
            // ...and never more than one too many.
            if (n > 1) CHECK(sensitivity(n - 1, spec).mdes > m);
            // Non-increasing in the effect size.
            if (m < m2) CHECK(n >= a_priori(m2, spec).n_required);
        }
        // Stricter alpha never needs fewer observations.
        CHECK(a_priori(m, k01).n_required >= a_priori(m, k05).n_required);
        CHECK(a_priori(m, k05).n_required >= a_priori(m, k10).n_required);
    }
}

TEST_CASE("sensitivity: worked examples") {
    const auto r = sensitivity(std::int64_t{68}, k05);
    CHECK(r.mdes == doctest::Approx(0.30152936721720552).epsilon(1e-12));
    CHECK(r.mdes_display == "0.30");
    CHECK_FALSE(r.small_sample_flag);

    CHECK(sensitivity(std::int64_t{25}, k05).mdes ==
          doctest::Approx(0.49729497210487738).epsilon(1e-12));
    CHECK(sensitivity(std::int64_t{400}, k05).mdes ==
          doctest::Approx(0.12432374302621935).epsilon(1e-12));

    const double p = critical_constant(k05).p_alpha;
    const auto n_bound = static_cast<std::int64_t>(std::ceil(p * p));
    CHECK(sensitivity(n_bound, k05).mdes <= 1.0);
}

TEST_CASE("sensitivity: strictly decreasing and inverse square root scaling") {
    for (std::int64_t n = 1; n < 5000; ++n) {
        const double m = sensitivity(n, k05).mdes;
        CHECK(m > sensitivity(n + 1, k05).mdes);
        CHECK(std::abs(sensitivity(2 * n, k05).mdes - m / std::sqrt(2.0)) < 1e-12);
    }
}

TEST_CASE("sensitivity: domain errors") {
    CHECK_THROWS_AS(sensitivity(std::int64_t{0}, k05), DomainError);
    CHECK_THROWS_AS(sensitivity(std::int64_t{-3}, k05), DomainError);
    CHECK_THROWS_AS(sensitivity(68.5, k05), DomainError);
    CHECK_THROWS_AS(sensitivity(0.0, k05), DomainError);
    CHECK_THROWS_AS(sensitivity(std::nan(""), k05), DomainError);
    CHECK(sensitivity(68.0, k05).n == 68);
}

TEST_CASE("small-sample flag switches at N = 10") {
    CHECK(sensitivity(std::int64_t{10}, k05).small_sample_flag);
    CHECK_FALSE(sensitivity(std::int64_t{11}, k05).small_sample_flag);
    CHECK(sensitivity(std::int64_t{1}, k05).small_sample_flag);
    CHECK(a_priori(0.79, k05).n_required == 10);
    CHECK(a_priori(0.79, k05).small_sample_flag);
    CHECK(a_priori(0.75, k05).n_required == 11);
    CHECK_FALSE(a_priori(0.75, k05).small_sample_flag);
    CHECK(small_sample_warning(8).find("gamma-exponential") != std::string::npos);
}

TEST_CASE("round_half_up_2") {
    CHECK(round_half_up_2(0.3015) == "0.30");
    CHECK(round_half_up_2(0.125) == "0.13");
    CHECK(round_half_up_2(0.005) == "0.01");
    CHECK(round_half_up_2(0.994) == "0.99");
    CHECK(round_half_up_2(0.995) == "1.00");
    CHECK(round_half_up_2(2.4864) == "2.49");
    CHECK(round_half_up_2(0.0) == "0.00");
}

TEST_CASE("a_priori_curve") {
    const auto c = a_priori_curve(k05, 0.1, 0.9, 0.4, 0.5);
    CHECK(c.mode == CurveMode::a_priori);
    REQUIRE(c.points.size() == 3);
    CHECK(c.points[0] == CurvePoint{0.1, 619});
    CHECK(c.points[1] == CurvePoint{0.5, 25});
    CHECK(c.points[2] == CurvePoint{0.9, 8});
    CHECK(c.reference == CurvePoint{0.5, 25});

    const auto first = a_priori_curve(k05, 0.1, 0.9, 0.4, 0.1);
    CHECK(first.reference == first.points.front());

    // Default grid: 0.05 .. 0.90 by 0.005.
    const auto d = a_priori_curve(k05, CurveDefaults::mdes_lo, CurveDefaults::mdes_hi,
                                  CurveDefaults::mdes_step, 0.5);
    CHECK(d.points.size() == 171);
    CHECK(d.points.back().x == 0.9);
    for (std::size_t i = 1; i < d.points.size(); ++i) {
        CHECK(d.points[i].x > d.points[i - 1].x);
        // N is a step function of the effect, so neighbours may tie.
        CHECK(d.points[i].y <= d.points[i - 1].y);
    }
    CHECK(d.points.front().y > d.points.back().y);

    // A range that is not a multiple of step still ends at hi.
    const auto odd = a_priori_curve(k05, 0.2, 0.5, 0.07, 0.3);
    CHECK(odd.points.back().x == 0.5);
    CHECK(odd.points.size() == 6);
}

TEST_CASE("a_priori_curve: invalid ranges") {
    CHECK_THROWS_AS(a_priori_curve(k05, 0.5, 0.5, 0.1, 0.5), DomainError);
    CHECK_THROWS_AS(a_priori_curve(k05, 0.6, 0.5, 0.1, 0.5), DomainError);
    CHECK_THROWS_AS(a_priori_curve(k05, 0.0, 0.5, 0.1, 0.3), DomainError);
    CHECK_THROWS_AS(a_priori_curve(k05, 0.1, 1.0, 0.1, 0.3), DomainError);
    CHECK_THROWS_AS(a_priori_curve(k05, 0.1, 0.5, 0.0, 0.3), DomainError);
    CHECK_THROWS_AS(a_priori_curve(k05, 0.1, 0.5, 0.1, 0.6), DomainError);
}

TEST_CASE("sensitivity_curve") {
    const auto c = sensitivity_curve(k05, 10, 200, 58, 68);
    CHECK(c.mode == CurveMode::sensitivity);
    CHECK(c.reference.x == 68);
    CHECK(c.reference.y == doctest::Approx(0.30152936721720552).epsilon(1e-12));
    REQUIRE(c.points.size() == 5);
    CHECK(c.points[1].x == 68);
    CHECK(c.points.back().x == 200);
    for (std::size_t i = 1; i < c.points.size(); ++i) {
        CHECK(c.points[i].x > c.points[i - 1].x);
        CHECK(c.points[i].y < c.points[i - 1].y);
    }
    for (const auto& p : c.points) CHECK(p.y > 0.0);

    const auto d = sensitivity_curve(k05, CurveDefaults::n_lo, CurveDefaults::n_hi,
                                     CurveDefaults::n_step, 68);
    CHECK(d.points.size() == 496);

    CHECK_THROWS_AS(sensitivity_curve(k05, 0, 10, 1, 5), DomainError);
    CHECK_THROWS_AS(sensitivity_curve(k05, 10, 10, 1, 10), DomainError);
    CHECK_THROWS_AS(sensitivity_curve(k05, 10, 20, 0, 15), DomainError);
    CHECK_THROWS_AS(sensitivity_curve(k05, 10, 20, 1, 21), DomainError);
}

TEST_CASE("ten_times_rule") {
    CHECK(ten_times_rule(3) == 30);
    CHECK(ten_times_rule(1) == 10);
    CHECK(ten_times_rule(7) == 70);
    CHECK_THROWS_AS(ten_times_rule(0), DomainError);
    CHECK_THROWS_AS(ten_times_rule(-2), DomainError);
}
