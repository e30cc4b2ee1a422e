// Unit tests for the sampling-period design formulas: pinned reference
// values at the two benchmark disturbance levels, branch/precondition
// handling, orderings between the family variants, dimensional homogeneity,
// and plan validation.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <stdexcept>

#include "qsdc/period_design.hpp"

using namespace qsdc;

namespace {
const double kSqrt2 = std::sqrt(2.0);
constexpr double kP0 = 0.01, kCbar = 0.95, kPbar = 0.95, kG0 = 0.9, kG = 0.1;
}  // namespace

TEST_CASE("pinned design values at eps = 0.2") {
    CHECK(design_Tc(kP0, 0.2) == doctest::Approx(1.0016742116155983).epsilon(1e-14));
    CHECK(design_Ta(kP0, 0.2, kG0, kG) == doctest::Approx(0.0096291201783626).epsilon(1e-14));
    CHECK(design_Ta_prime(kP0, 0.2, kG0, kG) ==
          doctest::Approx(0.009710628160558798).epsilon(1e-14));
    CHECK(design_Tp(kCbar, 0.2, kG0, kG) ==
          doctest::Approx(0.008838834764831851).epsilon(1e-14));
}

TEST_CASE("pinned design values at eps = sqrt(2)") {
    CHECK(design_Tc(kP0, kSqrt2) == doctest::Approx(0.14165812551461568).epsilon(1e-14));
    CHECK(design_Ta(kP0, kSqrt2, kG0, kG) == doctest::Approx(0.005).epsilon(1e-12));
    CHECK(design_Ta_prime(kP0, kSqrt2, kG0, kG) ==
          doctest::Approx(0.007865190969148565).epsilon(1e-14));
    // On the slice eps^2 = 2*(gamma0+gamma)^2 the refined coherence formula
    // applies.
    CHECK(design_Tp_prime(kCbar, kG0, kG) ==
          doctest::Approx(0.008952171791018237).epsilon(1e-14));
}

TEST_CASE("pinned eps-independent design values") {
    CHECK(design_Ta_doubleprime(kP0, kG0, kG) ==
          doctest::Approx(0.010050335853501442).epsilon(1e-14));
    CHECK(design_Tp_doubleprime(kCbar, kG0, kG) ==
          doctest::Approx(0.012823323596887645).epsilon(1e-14));
    CHECK(design_Td(kPbar, kG0, kG) == doctest::Approx(0.0131700644572283).epsilon(1e-14));
}

TEST_CASE("coherence formula switches branch at eps = 2*(gamma0+gamma)") {
    CHECK(tp_low_rate_branch(0.2, kG0, kG));
    CHECK(tp_low_rate_branch(kSqrt2, kG0, kG));
    CHECK(tp_low_rate_branch(2.0, kG0, kG));     // boundary counts as low-rate
    CHECK_FALSE(tp_low_rate_branch(3.0, kG0, kG));
    // High-rate branch value: (1-cbar)*sqrt(eps^2-2g^2)/(2 eps^2).
    CHECK(design_Tp(kCbar, 3.0, kG0, kG) ==
          doctest::Approx(0.007349309197401647).epsilon(1e-14));
}

TEST_CASE("refined amplitude formula has a validity ceiling on p0") {
    CHECK(ta_prime_limit(0.2, kG0, kG) ==
          doctest::Approx(0.035761654557370404).epsilon(1e-14));
    CHECK(ta_prime_limit(kSqrt2, kG0, kG) ==
          doctest::Approx(1.0 / 3.0).epsilon(1e-14));
    CHECK_NOTHROW(design_Ta_prime(0.0357, 0.2, kG0, kG));
    CHECK_THROWS_AS(design_Ta_prime(0.036, 0.2, kG0, kG), std::invalid_argument);
    CHECK_THROWS_AS(design_Ta_prime(0.4, 0.2, kG0, kG), std::invalid_argument);
}

TEST_CASE("argument validation across the family") {
    CHECK_THROWS_AS(design_Tc(0.0, 0.2), std::invalid_argument);
    CHECK_THROWS_AS(design_Tc(1.0, 0.2), std::invalid_argument);
    CHECK_THROWS_AS(design_Tc(kP0, 0.0), std::invalid_argument);
    // Zero coupling degenerates gracefully: Ta -> p0 / eps.
    CHECK(design_Ta(kP0, 0.2, 0.0, 0.0) == doctest::Approx(0.05));
    CHECK_THROWS_AS(design_Ta(kP0, 0.2, 0.1, 0.2), std::invalid_argument);  // gamma0 < gamma
    CHECK_THROWS_AS(design_Tp(0.0, 0.2, kG0, kG), std::invalid_argument);
    CHECK_THROWS_AS(design_Tp(1.0 + 1e-9, 0.2, kG0, kG), std::invalid_argument);
    CHECK(design_Tp(1.0, 0.2, kG0, kG) == 0.0);  // cbar = 1: nothing to lose yet
    CHECK_THROWS_AS(design_Td(0.5, kG0, kG), std::invalid_argument);
    CHECK_NOTHROW(design_Td(0.5 + 1e-11, kG0, kG));
}

TEST_CASE("conservative variants never undercut the baseline periods") {
    // Spot checks complementing the dense acceptance-grid sweep.
    for (double p0 : {0.001, 0.01, 0.1, 0.3}) {
        for (double eps : {0.1, 0.5, 1.0, 2.5}) {
            for (double g : {0.05, 0.5, 2.0}) {
                const double g0 = 0.9 * g, dg = 0.1 * g;
                CHECK(design_Ta_doubleprime(p0, g0, dg) >=
                      design_Ta(p0, eps, g0, dg) * (1.0 - 1e-12));
                if (p0 <= ta_prime_limit(eps, g0, dg)) {
                    CHECK(design_Ta_prime(p0, eps, g0, dg) >=
                          design_Ta(p0, eps, g0, dg) * (1.0 - 1e-12));
                }
            }
        }
    }
    for (double cbar : {0.6, 0.9, 0.99}) {
        for (double g : {0.05, 0.5, 2.0}) {
            const double g0 = 0.9 * g, dg = 0.1 * g;
            CHECK(design_Tp_doubleprime(cbar, g0, dg) >=
                  design_Tp(cbar, 0.3, g0, dg) * (1.0 - 1e-12));
            // On the slice eps = sqrt(2) * g the refined formula applies and
            // dominates.
            const double eps_slice = kSqrt2 * g;
            CHECK(design_Tp_prime(cbar, g0, dg) >=
                  design_Tp(cbar, eps_slice, g0, dg) * (1.0 - 1e-12));
        }
    }
}

TEST_CASE("best_Ta picks the largest applicable amplitude period") {
    // eps = sqrt(2): p0 = 0.01 <= f = 1/3, so the refined variant wins.
    CHECK(best_Ta(kP0, kSqrt2, kG0, kG, false) ==
          doctest::Approx(design_Ta_prime(kP0, kSqrt2, kG0, kG)));
    // Disturbance-free hardware admits the largest period.
    CHECK(best_Ta(kP0, kSqrt2, kG0, kG, true) ==
          doctest::Approx(design_Ta_doubleprime(kP0, kG0, kG)));
    // Above the ceiling the refined variant drops out.
    CHECK(best_Ta(0.2, 0.2, kG0, kG, false) ==
          doctest::Approx(design_Ta(0.2, 0.2, kG0, kG)));
}

TEST_CASE("alpha bounds for the recovery subset") {
    CHECK(alpha_bound_closed(0.01, 0.05) ==
          doctest::Approx(0.00250835709240671).epsilon(1e-14));
    CHECK(alpha_bound_closed(0.01, 0.0) == 0.0);
    CHECK(alpha_bound_amplitude(0.05) == 0.05);
    CHECK_THROWS_AS(alpha_bound_closed(0.01, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(alpha_bound_amplitude(-0.1), std::invalid_argument);
    CHECK_THROWS_AS(alpha_bound_amplitude(1.0 + 1e-9), std::invalid_argument);
}

TEST_CASE("design_period dispatches on the formula id") {
    DesignParams p{kP0, kCbar, kPbar, 0.2, kG0, kG};
    CHECK(design_period(FormulaId::Tc, p) == design_Tc(kP0, 0.2));
    CHECK(design_period(FormulaId::Td, p) == design_Td(kPbar, kG0, kG));
    CHECK(design_period(FormulaId::TpPrime, p) == design_Tp_prime(kCbar, kG0, kG));
}

TEST_CASE("formula names round-trip") {
    for (FormulaId id : {FormulaId::Tc, FormulaId::Ta, FormulaId::TaPrime,
                         FormulaId::TaDoublePrime, FormulaId::Tp, FormulaId::TpPrime,
                         FormulaId::TpDoublePrime, FormulaId::Td}) {
        CHECK(formula_from_string(to_string(id)) == id);
    }
    CHECK_THROWS_AS(formula_from_string("Tq"), std::invalid_argument);
}

TEST_CASE("physical-rate evaluation is dimensional homogeneity of degree -1") {
    const double lam = 1e6;
    DesignParams dimless{kP0, kCbar, kPbar, 0.2, kG0, kG};
    DesignParams scaled{kP0, kCbar, kPbar, 0.2 * lam, kG0 * lam, kG * lam};
    for (FormulaId id : {FormulaId::Tc, FormulaId::Ta, FormulaId::TaDoublePrime,
                         FormulaId::Tp, FormulaId::TpDoublePrime, FormulaId::Td}) {
        CHECK(to_physical(id, scaled) ==
              doctest::Approx(design_period(id, dimless) / lam).epsilon(1e-12));
    }

    // Benchmark hardware rates (rad/s): eps = 2*pi MHz, gamma0 = 2*pi*0.8 MHz,
    // gamma = gamma0 / 9. Values in nanoseconds.
    const double pi = 3.14159265358979323846;
    DesignParams hw{kP0, kCbar, kPbar, 2.0 * pi * 1e6, 2.0 * pi * 0.8e6,
                    2.0 * pi * 0.8e6 / 9.0};
    CHECK(to_physical(FormulaId::Ta, hw) * 1e9 ==
          doctest::Approx(1.0343051451082745).epsilon(1e-12));
    CHECK(to_physical(FormulaId::TaDoublePrime, hw) * 1e9 ==
          doctest::Approx(1.7995057096707647).epsilon(1e-12));
    CHECK(to_physical(FormulaId::Tp, hw) * 1e9 ==
          doctest::Approx(1.5825872744949143).epsilon(1e-12));
    CHECK(to_physical(FormulaId::TpDoublePrime, hw) * 1e9 ==
          doctest::Approx(2.2960072544755636).epsilon(1e-12));
}

TEST_CASE("make_plan validates ranges, pairing, and the alpha condition") {
    SlidingModeTarget fp = SlidingModeTarget::failure_prob(kP0);
    SlidingModeTarget co = SlidingModeTarget::coherence(kCbar);
    SlidingModeTarget pu = SlidingModeTarget::purity(kPbar);
    const double tc = design_Tc(kP0, 0.2);

    SamplingPlan plan = make_plan(tc, 0.05, 2.5e-3, 0.8, fp, FormulaId::Tc);
    CHECK(plan.period == tc);
    CHECK(plan.target.kind == SlidingModeTarget::Kind::FailureProb);

    // alpha above the closed-family bound (0.0025083...) is rejected.
    CHECK_THROWS_AS(make_plan(tc, 0.05, 2.51e-3, 0.8, fp, FormulaId::Tc),
                    std::invalid_argument);
    // amplitude family: alpha <= beta.
    CHECK_NOTHROW(make_plan(0.0096, 0.05, 0.05, 0.8, fp, FormulaId::Ta));
    CHECK_THROWS_AS(make_plan(0.0096, 0.05, 0.051, 0.8, fp, FormulaId::Ta),
                    std::invalid_argument);

    // Target/formula mismatches.
    CHECK_THROWS_AS(make_plan(tc, 0.05, 1e-3, 0.8, co, FormulaId::Tc), std::invalid_argument);
    CHECK_THROWS_AS(make_plan(0.0128, 0.0, 0.0, 0.8, fp, FormulaId::TpDoublePrime),
                    std::invalid_argument);
    CHECK_THROWS_AS(make_plan(0.0131, 0.0, 0.0, 0.8, co, FormulaId::Td),
                    std::invalid_argument);
    CHECK_NOTHROW(make_plan(0.0128, 0.0, 0.0, 0.8, co, FormulaId::TpDoublePrime));
    CHECK_NOTHROW(make_plan(0.0131, 0.0, 0.0, 0.8, pu, FormulaId::Td));

    // Range checks.
    CHECK_THROWS_AS(make_plan(0.0, 0.05, 1e-3, 0.8, fp, FormulaId::Tc), std::invalid_argument);
    CHECK_THROWS_AS(make_plan(tc, 1.0, 1e-3, 0.8, fp, FormulaId::Tc), std::invalid_argument);
    CHECK_THROWS_AS(make_plan(tc, -0.1, 1e-3, 0.8, fp, FormulaId::Tc), std::invalid_argument);
    CHECK_THROWS_AS(make_plan(tc, 0.05, 1e-3, 0.0, fp, FormulaId::Tc), std::invalid_argument);
    CHECK_THROWS_AS(make_plan(tc, 0.05, 1e-3, 1.0, fp, FormulaId::Tc), std::invalid_argument);
}
