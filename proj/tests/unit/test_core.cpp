#include "doctest.h"

#include "petis/certificate_math.hpp"
#include "petis/error.hpp"
#include "petis/types.hpp"

#include "../support/oracles.hpp"

#include <cmath>
#include <limits>

using namespace petis;

namespace {

ErrorCode code_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected petis::Error");
    return ErrorCode::Numeric;
}

LyapunovCertificate abs_cert(double c, double rho) {
    return LyapunovCertificate(
        1, [](const Vector& x) { return std::abs(x[0]); }, ClassK::identity(), ClassK::identity(), c,
        rho);
}

} // namespace

TEST_CASE("trigger config rejects out-of-range parameters") {
    CHECK_NOTHROW(TriggerConfig(5, 0.07, 2));
    CHECK(code_of([] { TriggerConfig(0, 0.1, 1); }) == ErrorCode::InvalidArgument);
    CHECK(code_of([] { TriggerConfig(-1, 0.1, 1); }) == ErrorCode::InvalidArgument);
    CHECK(code_of([] { TriggerConfig(5, 0.0, 1); }) == ErrorCode::InvalidArgument);
    CHECK(code_of([] { TriggerConfig(5, 1.0, 1); }) == ErrorCode::InvalidArgument);
    CHECK(code_of([] { TriggerConfig(5, 1.2, 1); }) == ErrorCode::InvalidArgument);
    CHECK(code_of([] { TriggerConfig(5, 0.1, 0); }) == ErrorCode::InvalidArgument);
    CHECK(code_of([] { TriggerConfig(std::nan(""), 0.1, 1); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("delay spec with components") {
    CHECK(DelaySpec(3).gamma() == 3);
    CHECK_FALSE(DelaySpec(3).components().has_value());
    const DelaySpec d = DelaySpec::split(1, 2);
    CHECK(d.gamma() == 3);
    REQUIRE(d.components().has_value());
    CHECK(d.components()->first == 1);
    CHECK(d.components()->second == 2);
    CHECK(code_of([] { DelaySpec(-1); }) == ErrorCode::InvalidArgument);
    CHECK(code_of([] { (void)DelaySpec::split(-1, 2); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("discrete system checks equilibrium and free map") {
    auto f = [](const Vector& x, const Vector& u) -> Vector { return 0.5 * x + u; };
    CHECK_NOTHROW(DiscreteSystem(1, 1, f));
    CHECK_NOTHROW(DiscreteSystem(1, 1, f, [](const Vector& x) -> Vector { return 0.5 * x; }));
    CHECK(code_of([&] { DiscreteSystem(1, 1, f, [](const Vector& x) -> Vector { return 0.6 * x; }); }) ==
          ErrorCode::InvalidArgument);
    auto shifted = [](const Vector& x, const Vector& u) -> Vector {
        return (x + u).array() + 1.0;
    };
    CHECK(code_of([&] { DiscreteSystem(1, 1, shifted); }) == ErrorCode::InvalidArgument);

    const DiscreteSystem sys(1, 1, f);
    Vector x(1);
    x << 8.0;
    CHECK(sys.free_iterate(x, 3)[0] == doctest::Approx(1.0));
    CHECK(sys.free_iterate(x, 0)[0] == 8.0);
}

TEST_CASE("feedback law requires k(0) = 0") {
    CHECK(code_of([] {
              FeedbackLaw(1, 1, [](const Vector&) -> Vector { return Vector::Ones(1); });
          }) == ErrorCode::InvalidArgument);
    Matrix k(1, 2);
    k << 1, -2;
    const FeedbackLaw law = FeedbackLaw::linear(k);
    CHECK(law.state_dim() == 2);
    CHECK(law.input_dim() == 1);
    Vector x(2);
    x << 3, 1;
    CHECK(law(x)[0] == doctest::Approx(1.0));
}

TEST_CASE("class-K functions validate monotonicity and inverse") {
    const ClassK sq = ClassK::square();
    CHECK(sq(3.0) == 9.0);
    CHECK(sq.inverse(16.0) == doctest::Approx(4.0));
    const ClassK p = ClassK::power(2.0, 1.5);
    CHECK(p.inverse(p(0.7)) == doctest::Approx(0.7));
    CHECK(code_of([] {
              ClassK([](double s) { return -s; }, [](double v) { return -v; }, "decreasing");
          }) == ErrorCode::InvalidArgument);
    CHECK(code_of([] {
              ClassK([](double s) { return s + 1.0; }, [](double v) { return v - 1.0; }, "offset");
          }) == ErrorCode::InvalidArgument);
    CHECK(code_of([] {
              ClassK([](double s) { return s; }, [](double v) { return 2.0 * v; }, "bad inverse");
          }) == ErrorCode::InvalidArgument);
}

TEST_CASE("lyapunov certificate invariants") {
    CHECK_NOTHROW(abs_cert(1.03, 0.3859));
    CHECK_NOTHROW(abs_cert(1.0, 0.0));
    CHECK(code_of([] { (void)abs_cert(0.0, 0.1); }) == ErrorCode::InvalidArgument);
    CHECK(code_of([] { (void)abs_cert(1.1, -0.1); }) == ErrorCode::InvalidArgument);
    CHECK(code_of([] {
              LyapunovCertificate(
                  1, [](const Vector& x) { return std::abs(x[0]) + 1.0; }, ClassK::identity(),
                  ClassK::identity(), 1.1, 0.1);
          }) == ErrorCode::Certificate);

    const auto low = abs_cert(0.5, 0.2);
    CHECK_FALSE(low.growth_at_least_one());
    CHECK(low.growth_constant() == 1.0);
    CHECK(abs_cert(1.2, 0.2).growth_constant() == 1.2);
    CHECK(low.with_rho(0.7).rho() == 0.7);
}

TEST_CASE("threshold examples") {
    const TriggerConfig cfg(5, 0.07, 2);
    CHECK(threshold(cfg, 0) == 5.0);
    CHECK(threshold(cfg, 1) == doctest::Approx(4.65).epsilon(1e-15));
    const long double oracle = 5.0L * std::pow(0.93L, 40.0L);
    CHECK(threshold(cfg, 40) == doctest::Approx(static_cast<double>(oracle)).epsilon(1e-13));
    CHECK(threshold(cfg, 40) == doctest::Approx(0.2743392496735980).epsilon(1e-13));
}

TEST_CASE("threshold log and direct forms agree wherever the direct value is normal") {
    auto g = oracle::rng(11);
    for (int trial = 0; trial < 500; ++trial) {
        const TriggerConfig cfg(oracle::uniform(g, 0.01, 100.0), oracle::uniform(g, 0.001, 0.999), 1);
        for (long k : {0L, 1L, 7L, 50L, 300L, 3000L, 20000L}) {
            const double direct = threshold(cfg, k);
            if (!std::isnormal(direct)) continue;
            CHECK(std::exp(log_threshold(cfg, k)) == doctest::Approx(direct).epsilon(1e-9));
        }
    }
}

TEST_CASE("threshold is strictly decreasing and multiplicative in log form") {
    auto g = oracle::rng(12);
    for (int trial = 0; trial < 200; ++trial) {
        const TriggerConfig cfg(oracle::uniform(g, 0.1, 50.0), oracle::uniform(g, 0.01, 0.5), 1);
        const double step = std::log1p(-cfg.b());
        for (long k = 0; k < 100; ++k) {
            CHECK(log_threshold(cfg, k + 1) < log_threshold(cfg, k));
            CHECK(log_threshold(cfg, k + 1) - log_threshold(cfg, k) == doctest::Approx(step).epsilon(1e-9));
        }
    }
}

TEST_CASE("exceeds_threshold is strict and safe under underflow") {
    const TriggerConfig cfg(4, 0.5, 1);
    CHECK_FALSE(exceeds_threshold(cfg, 2, 1.0));  // tie
    CHECK(exceeds_threshold(cfg, 2, 1.0 + 1e-12));
    CHECK_FALSE(exceeds_threshold(cfg, 2, 0.0));
    // (0.5)^3000 underflows; 1e-300 still exceeds 4 * 2^-3000 ~ 1e-903.
    CHECK(threshold(cfg, 3000) == 0.0);
    CHECK(exceeds_threshold(cfg, 3000, 1e-300));
}

TEST_CASE("stability condition examples") {
    const ConditionReport zero = check_stability_condition(0.0, 1.7, TriggerConfig(3, 0.2, 4), DelaySpec(2));
    CHECK(zero.satisfied);
    CHECK(zero.lhs == 0.0);

    const ConditionReport one = check_stability_condition(1.0, 1.0, TriggerConfig(5, 0.07, 1), DelaySpec(0));
    CHECK_FALSE(one.satisfied);
    CHECK(one.lhs == doctest::Approx(1.0 / (0.93 * 0.93)).epsilon(1e-14));
    CHECK(one.lhs == doctest::Approx(1.1562).epsilon(1e-4));
    CHECK(one.margin < 0.0);

    const ConditionReport ex1 =
        check_stability_condition(0.3859, 1.03, TriggerConfig(5, 0.07, 2), DelaySpec(1));
    CHECK(ex1.satisfied);
    CHECK(ex1.lhs == doctest::Approx(0.3859 * 1.03 * 1.03 / std::pow(0.93, 4)).epsilon(1e-14));
    CHECK(ex1.lhs == doctest::Approx(0.5473).epsilon(1e-3));
    CHECK(ex1.margin == doctest::Approx(1.0 - ex1.lhs));
    CHECK(ex1.rho_bound == doctest::Approx(std::pow(0.93, 4) / (1.03 * 1.03)));
}

TEST_CASE("stability condition rejects c < 1") {
    CHECK(code_of([] { (void)check_stability_condition(0.1, 0.9, TriggerConfig(1, 0.1, 1), DelaySpec(0)); }) ==
          ErrorCode::Domain);
}

TEST_CASE("condition report: satisfied iff lhs <= 1 iff margin >= 0; lhs monotone in every argument") {
    auto g = oracle::rng(13);
    for (int trial = 0; trial < 1000; ++trial) {
        const double rho = oracle::uniform(g, 0.01, 2.0);
        const double c = oracle::uniform(g, 1.0, 2.0);
        const double b = oracle::uniform(g, 0.01, 0.9);
        const long delta = static_cast<long>(oracle::uniform(g, 1, 6));
        const long gamma = static_cast<long>(oracle::uniform(g, 0, 4));
        const TriggerConfig cfg(1.0, b, delta);
        const auto r = check_stability_condition(rho, c, cfg, DelaySpec(gamma));
        CHECK(r.satisfied == (r.lhs <= 1.0));
        CHECK(r.satisfied == (r.margin >= 0.0));
        CHECK(r.lhs == doctest::Approx(rho * std::pow(c, delta) / std::pow(1 - b, delta + gamma + 1)).epsilon(1e-12));

        CHECK(check_stability_condition(rho * 1.01, c, cfg, DelaySpec(gamma)).lhs > r.lhs);
        CHECK(check_stability_condition(rho, c * 1.01, cfg, DelaySpec(gamma)).lhs > r.lhs);
        CHECK(check_stability_condition(rho, c, cfg, DelaySpec(gamma + 1)).lhs > r.lhs);
        CHECK(check_stability_condition(rho, c, TriggerConfig(1.0, b + 0.5 * (1 - b) * 0.1, delta),
                                        DelaySpec(gamma))
                  .lhs > r.lhs);
    }
}

TEST_CASE("crossing time examples and edge cases") {
    const TriggerConfig cfg(5, 0.07, 2);
    CHECK(crossing_time(5.0, cfg, 1.03) == 0.0);
    CHECK(crossing_time(0.1, cfg, 1.03) == doctest::Approx(std::log(50.0) / std::log(1.03 / 0.93)).epsilon(1e-14));
    CHECK(crossing_time(0.1, cfg, 1.03) == doctest::Approx(38.30).epsilon(1e-3));
    CHECK(crossing_time(2.5, TriggerConfig(5, 1e-12, 1), 2.0) == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(std::isinf(crossing_time(0.0, cfg, 1.03)));
    CHECK(code_of([&] { (void)crossing_time(5.1, cfg, 1.03); }) == ErrorCode::Domain);
    CHECK(code_of([&] { (void)crossing_time(-1.0, cfg, 1.03); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("crossing time satisfies its defining equation and separates integer times") {
    auto g = oracle::rng(14);
    for (int trial = 0; trial < 1000; ++trial) {
        const double a = oracle::uniform(g, 0.5, 50.0);
        const double b = oracle::uniform(g, 0.01, 0.5);
        const double c = oracle::uniform(g, 1.0, 1.8);
        const double v0 = a * oracle::uniform(g, 1e-4, 0.999);
        const TriggerConfig cfg(a, b, 1);
        const double t = crossing_time(v0, cfg, c);
        CHECK(t > 0.0);
        const double lhs = v0 * std::pow(c, t);
        const double rhs = a * std::pow(1 - b, t);
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-9));

        const long lo = crossing_time_floor(t);
        const long hi = crossing_time_ceil(t) + 1;
        CHECK(v0 * std::pow(c, lo) <= a * std::pow(1 - b, lo) * (1 + 1e-12));
        CHECK(v0 * std::pow(c, hi) > a * std::pow(1 - b, hi));
    }
}

TEST_CASE("decay envelope examples") {
    const TriggerConfig cfg(5, 0.07, 2);
    CHECK(decay_envelope(cfg, DelaySpec(1), 1.03, 0) == doctest::Approx(5 * std::pow(1.03 / 0.93, 3)).epsilon(1e-14));
    CHECK(decay_envelope(cfg, DelaySpec(1), 1.03, 0) == doctest::Approx(6.793).epsilon(1e-3));

    // Gain base of one reduces to the threshold itself.
    const TriggerConfig one(3, 0.2, 1);
    for (long k : {0L, 1L, 10L}) CHECK(decay_envelope(one, DelaySpec(0), 0.8, k) == doctest::Approx(threshold(one, k)));

    for (long k = 0; k < 50; ++k)
        CHECK(decay_envelope(cfg, DelaySpec(1), 1.03, k + 1) ==
              doctest::Approx(0.93 * decay_envelope(cfg, DelaySpec(1), 1.03, k)).epsilon(1e-13));
    CHECK(std::exp(log_decay_envelope(cfg, DelaySpec(1), 1.03, 17)) ==
          doctest::Approx(decay_envelope(cfg, DelaySpec(1), 1.03, 17)).epsilon(1e-12));
    CHECK(envelope_gain(cfg, DelaySpec(1), 1.03) == doctest::Approx(std::pow(1.03 / 0.93, 3)));
}

TEST_CASE("decay envelope at k = 0 strictly exceeds a for admissible inputs") {
    auto g = oracle::rng(15);
    for (int trial = 0; trial < 500; ++trial) {
        const TriggerConfig cfg(oracle::uniform(g, 0.1, 10), oracle::uniform(g, 0.001, 0.9),
                                static_cast<long>(oracle::uniform(g, 1, 6)));
        const double c = oracle::uniform(g, 1.0, 2.0);
        CHECK(decay_envelope(cfg, DelaySpec(static_cast<long>(oracle::uniform(g, 0, 4))), c, 0) > cfg.a());
    }
}

TEST_CASE("stability radius examples") {
    const TriggerConfig cfg(5, 0.07, 2);
    const auto cert = abs_cert(1.03, 0.3859);
    const double gain = std::pow(1.03 / 0.93, 3);
    CHECK(stability_radius(5 * gain, cert, cfg, DelaySpec(1)) == doctest::Approx(5.0).epsilon(1e-12));

    const double expo = std::log(1.03 / 0.93) / std::log(0.93);
    const double expected = 5 * std::pow(5 * gain, expo);
    CHECK(stability_radius(1.0, cert, cfg, DelaySpec(1)) == doctest::Approx(expected).epsilon(1e-12));
    CHECK(stability_radius(1.0, cert, cfg, DelaySpec(1)) == doctest::Approx(0.3371).epsilon(1e-3));

    CHECK(guaranteed_initial_radius(1.0, cert, cfg, DelaySpec(1)) == doctest::Approx(expected));
    CHECK(guaranteed_initial_radius(1e3, cert, cfg, DelaySpec(1)) == doctest::Approx(5.0));

    const auto rep = envelope_report(0.1, 1.0, cert, cfg, DelaySpec(1));
    CHECK(rep.t_star == doctest::Approx(crossing_time(0.1, cfg, 1.03)));
    CHECK(rep.envelope_gain == doctest::Approx(gain));
    CHECK(rep.sigma == doctest::Approx(expected));
}

TEST_CASE("stability radius is monotone in epsilon and reports range errors") {
    const TriggerConfig cfg(5, 0.07, 2);
    const auto cert = abs_cert(1.03, 0.3859);
    const double s1 = stability_radius(0.5, cert, cfg, DelaySpec(1));
    const double s2 = stability_radius(1.0, cert, cfg, DelaySpec(1));
    const double s3 = stability_radius(2.0, cert, cfg, DelaySpec(1));
    CHECK(s1 < s2);
    CHECK(s2 < s3);
    CHECK(code_of([&] { (void)stability_radius(0.0, cert, cfg, DelaySpec(1)); }) == ErrorCode::InvalidArgument);
    CHECK(code_of([&] { (void)stability_radius(1e-320, cert, TriggerConfig(5, 1e-6, 2), DelaySpec(1)); }) ==
          ErrorCode::Range);
}
