// Unit tests for Bloch-vector primitives: physicality checks, pure-state
// conversions (including pole and clamping behavior), monitor scalars,
// target-domain membership, and validation of bounds/targets.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <stdexcept>

#include "qsdc/bloch.hpp"

using namespace qsdc;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("default state is |0> and norm2 is the squared length") {
    BlochState s;
    CHECK(s.x == 0.0);
    CHECK(s.y == 0.0);
    CHECK(s.z == 1.0);
    CHECK(norm2(s) == 1.0);
    CHECK(norm2({1.0, 2.0, 3.0}) == doctest::Approx(14.0));
}

TEST_CASE("is_physical accepts the ball up to the tolerance shell") {
    CHECK(is_physical({0.0, 0.0, 0.0}));
    CHECK(is_physical({0.6, 0.0, 0.8}));
    // norm2 = 1 + 8e-10 < 1 + kPhysicalTol: still accepted.
    CHECK(is_physical({1.0 + 4e-10, 0.0, 0.0}));
    // norm2 = 1 + 1.2e-9 > 1 + kPhysicalTol: rejected.
    CHECK_FALSE(is_physical({1.0 + 6e-10, 0.0, 0.0}));
    // Custom tolerance.
    CHECK(is_physical({1.0 + 6e-10, 0.0, 0.0}, 1e-8));
}

TEST_CASE("require_physical throws with the caller's context in the message") {
    CHECK_NOTHROW(require_physical({0.0, 0.0, 1.0}, "unit test"));
    try {
        require_physical({0.0, 0.0, 1.1}, "integrator step");
        FAIL("expected std::runtime_error");
    } catch (const std::runtime_error& e) {
        const std::string msg = e.what();
        CHECK(msg.find("integrator step") != std::string::npos);
    }
}

TEST_CASE("to_bloch maps angles to the unit sphere") {
    BlochState plus_z = to_bloch({0.0, 0.0});
    CHECK(plus_z.x == 0.0);
    CHECK(plus_z.z == 1.0);

    BlochState eq = to_bloch({kPi / 2.0, kPi / 2.0});
    CHECK(std::abs(eq.x) <= 1e-15);
    CHECK(eq.y == doctest::Approx(1.0));
    CHECK(std::abs(eq.z) <= 1e-15);
    CHECK(norm2(eq) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("to_pure inverts to_bloch away from the poles") {
    for (double theta : {0.3, 1.2, 2.2, 3.0}) {
        for (double phi : {0.0, 0.7, 3.9, 5.9}) {
            PureState back = to_pure(to_bloch({theta, phi}));
            CHECK(back.theta == doctest::Approx(theta).epsilon(1e-12));
            CHECK(back.phi == doctest::Approx(phi).epsilon(1e-12));
        }
    }
}

TEST_CASE("to_pure pole convention and clamping") {
    PureState north = to_pure({0.0, 0.0, 1.0});
    CHECK(north.theta == 0.0);
    CHECK(north.phi == 0.0);

    PureState south = to_pure({0.0, 0.0, -1.0});
    CHECK(south.theta == doctest::Approx(kPi));
    CHECK(south.phi == 0.0);

    // Slightly super-unit z (round-off from an integrator) must clamp,
    // not produce NaN.
    PureState clamped = to_pure({0.0, 0.0, 1.0 + 1e-12});
    CHECK(clamped.theta == 0.0);
    CHECK(std::isfinite(clamped.theta));
}

TEST_CASE("to_pure folds negative azimuth into [0, 2pi)") {
    // y < 0, x > 0: atan2 gives a small negative angle.
    BlochState s = to_bloch({kPi / 2.0, 2.0 * kPi - 1e-3});
    PureState p = to_pure(s);
    CHECK(p.phi >= 0.0);
    CHECK(p.phi < 2.0 * kPi);
    CHECK(p.phi == doctest::Approx(2.0 * kPi - 1e-3).epsilon(1e-9));
}

TEST_CASE("monitor scalars") {
    CHECK(failure_probability({0.0, 0.0, 1.0}) == 0.0);
    CHECK(failure_probability({0.0, 0.0, -1.0}) == 1.0);
    CHECK(failure_probability({1.0, 0.0, 0.0}) == 0.5);

    CHECK(coherence({0.6, 0.8, 0.0}) == doctest::Approx(1.0));
    CHECK(coherence({0.0, 0.0, 1.0}) == 0.0);

    CHECK(purity({0.0, 0.0, 0.0}) == 0.5);
    CHECK(purity({0.0, 0.0, 1.0}) == 1.0);
    CHECK(purity({0.3, 0.0, 0.0}) == doctest::Approx(0.545));
}

TEST_CASE("monitor_value dispatches on the target kind") {
    BlochState s{0.6, 0.0, 0.5};
    CHECK(monitor_value(s, SlidingModeTarget::Kind::FailureProb) ==
          doctest::Approx(failure_probability(s)));
    CHECK(monitor_value(s, SlidingModeTarget::Kind::Coherence) ==
          doctest::Approx(coherence(s)));
    CHECK(monitor_value(s, SlidingModeTarget::Kind::Purity) ==
          doctest::Approx(purity(s)));
}

TEST_CASE("in_domain boundaries are inclusive") {
    // Boundaries chosen exactly representable: z = 0.5 -> p = 0.25.
    SlidingModeTarget fp = SlidingModeTarget::failure_prob(0.25);
    CHECK(in_domain({0.0, 0.0, 0.5}, fp));
    CHECK(in_domain({0.0, 0.0, 1.0}, fp));
    CHECK_FALSE(in_domain({0.0, 0.0, 0.5 - 1e-9}, fp));

    SlidingModeTarget co = SlidingModeTarget::coherence(0.25);
    CHECK(in_domain({0.5, 0.0, 0.0}, co));           // C = 0.25 exactly
    CHECK_FALSE(in_domain({0.5 * (1.0 - 1e-9), 0.0, 0.0}, co));

    SlidingModeTarget pu = SlidingModeTarget::purity(0.625);
    CHECK(in_domain({0.5, 0.0, 0.0}, pu));           // P = (1 + 0.25)/2 exactly
    CHECK_FALSE(in_domain({0.5 * (1.0 - 1e-9), 0.0, 0.0}, pu));
}

TEST_CASE("uncertainty bounds validation") {
    UncertaintyBounds ok{0.1, 0.2, 0.9, 0.1};
    CHECK_NOTHROW(validate(ok));

    UncertaintyBounds no_eps{0.1, 0.0, 0.9, 0.1};
    CHECK_THROWS_AS(validate(no_eps), std::invalid_argument);

    UncertaintyBounds neg_omega{-0.1, 0.2, 0.0, 0.0};
    CHECK_THROWS_AS(validate(neg_omega), std::invalid_argument);

    UncertaintyBounds neg_gamma{0.0, 0.2, 0.9, -0.1};
    CHECK_THROWS_AS(validate(neg_gamma), std::invalid_argument);

    // dgamma amplitude larger than the nominal coupling would allow a
    // negative instantaneous rate.
    UncertaintyBounds swing{0.0, 0.2, 0.5, 0.6};
    CHECK_THROWS_AS(validate(swing), std::invalid_argument);

    // Closed-system bounds: zero couplings are fine.
    UncertaintyBounds closed{0.0, 0.2, 0.0, 0.0};
    CHECK_NOTHROW(validate(closed));
}

TEST_CASE("target factories validate their parameter") {
    CHECK(SlidingModeTarget::failure_prob(0.01).value == 0.01);
    CHECK(SlidingModeTarget::failure_prob(0.01).kind ==
          SlidingModeTarget::Kind::FailureProb);
    CHECK_THROWS_AS(SlidingModeTarget::failure_prob(0.0), std::invalid_argument);
    CHECK_THROWS_AS(SlidingModeTarget::failure_prob(1.0), std::invalid_argument);

    CHECK_NOTHROW(SlidingModeTarget::coherence(1.0));   // cbar = 1 allowed
    CHECK_THROWS_AS(SlidingModeTarget::coherence(0.0), std::invalid_argument);
    CHECK_THROWS_AS(SlidingModeTarget::coherence(1.0 + 1e-9), std::invalid_argument);

    CHECK_NOTHROW(SlidingModeTarget::purity(1.0));
    CHECK_NOTHROW(SlidingModeTarget::purity(0.95));
    CHECK_THROWS_AS(SlidingModeTarget::purity(0.5), std::invalid_argument);
    CHECK_THROWS_AS(SlidingModeTarget::purity(1.0 + 1e-9), std::invalid_argument);
}

TEST_CASE("enum names used by reports and configs") {
    CHECK(std::string(to_string(DecoherenceKind::Closed)) == "closed");
    CHECK(std::string(to_string(DecoherenceKind::AmplitudeDamping)) == "amplitude_damping");
    CHECK(std::string(to_string(DecoherenceKind::PhaseDamping)) == "phase_damping");
    CHECK(std::string(to_string(DecoherenceKind::Depolarizing)) == "depolarizing");
    CHECK(std::string(to_string(Axis::X)) == "X");
    CHECK(std::string(to_string(Axis::Z)) == "Z");
    CHECK(std::string(to_string(SlidingModeTarget::Kind::FailureProb)) == "failure_prob");
}
