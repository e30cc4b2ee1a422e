// Closed-form sampling-period design formulas for the four dynamics cases,
// the sufficient alpha/beta conditions for the recovery subset, unit
// conversion to physical (rad/s) rates, and the validated SamplingPlan.
#pragma once

#include <string_view>

#include "qsdc/bloch.hpp"

namespace qsdc {

/// Which design formula produced a sampling period.
enum class FormulaId { Tc, Ta, TaPrime, TaDoublePrime, Tp, TpPrime, TpDoublePrime, Td };

const char* to_string(FormulaId id);
FormulaId formula_from_string(std::string_view name);

/// Closed system: T_c = arccos(1 - 2 p0) / eps.
double design_Tc(double p0, double eps);

/// Amplitude damping: T_a = 2 p0 / (sqrt(4 eps^2 + (g0+g)^2) + (g0+g)).
double design_Ta(double p0, double eps, double gamma0, double gamma);

/// Validity limit for design_Ta_prime:
///   f = 1/2 - (g0+g) / (2 sqrt(4 eps^2 + (g0+g)^2));  requires p0 <= f.
double ta_prime_limit(double eps, double gamma0, double gamma);

/// Refined amplitude bound, valid for p0 <= ta_prime_limit:
///   T_a' = 2 p0 / (4 eps sqrt(p0 - p0^2) + 2 (g0+g)(1 - p0)).
double design_Ta_prime(double p0, double eps, double gamma0, double gamma);

/// Disturbance-free amplitude bound: T_a'' = -ln(1 - p0) / (g0+g).
double design_Ta_doubleprime(double p0, double gamma0, double gamma);

/// True when the low-rate branch 4 (g0+g)^2 >= eps^2 applies to design_Tp.
bool tp_low_rate_branch(double eps, double gamma0, double gamma);

/// Phase damping:
///   branch 4(g0+g)^2 >= eps^2:  T_p = (1 - cbar) / (4 sqrt(2) (g0+g))
///   otherwise:                  T_p = (1 - cbar) sqrt(eps^2 - 2 (g0+g)^2) / (2 eps^2)
double design_Tp(double cbar, double eps, double gamma0, double gamma);

/// Refined phase bound on the slice eps^2 = 2 (g0+g)^2 (caller asserts):
///   T_p' = (1 - sqrt(cbar)) / (2 sqrt(2) (g0+g)).
double design_Tp_prime(double cbar, double gamma0, double gamma);

/// Disturbance-free phase bound: T_p'' = -ln(cbar) / (4 (g0+g)).
double design_Tp_doubleprime(double cbar, double gamma0, double gamma);

/// Depolarizing: T_d = -ln(2 pbar - 1) / (8 (g0+g)).
double design_Td(double pbar, double gamma0, double gamma);

/// Largest admissible subset factor for the closed case:
///   alpha <= (1 - cos(beta * arccos(1 - 2 p0))) / (2 p0).
double alpha_bound_closed(double p0, double beta);

/// Largest admissible subset factor for amplitude damping: alpha <= beta.
double alpha_bound_amplitude(double beta);

/// Largest guaranteed amplitude-damping period: max of T_a, T_a' (when its
/// precondition holds) and, for disturbance-free scenarios, T_a''.
double best_Ta(double p0, double eps, double gamma0, double gamma, bool h_delta_zero);

/// Inputs to a design formula; fields irrelevant to a formula are ignored.
/// With dimensionless rates the result is dimensionless time; with physical
/// angular rates (rad/s) the result is seconds (homogeneity of degree -1).
struct DesignParams {
    double p0 = 0.0;
    double cbar = 0.0;
    double pbar = 0.0;
    double eps = 0.0;
    double gamma0 = 0.0;
    double gamma = 0.0;
};

double design_period(FormulaId id, const DesignParams& p);

/// Evaluates the formula at physical angular rates; returns seconds.
double to_physical(FormulaId id, const DesignParams& physical);

/// The designed sampling schedule: measure every `period`; after a bad
/// outcome spend at most beta*period on unitary recovery into the tightened
/// subset (monitor <= alpha * target slack), with terminal safety factor eta.
struct SamplingPlan {
    double period = 0.0;
    double beta = 0.0;   ///< in [0, 1)
    double alpha = 0.0;  ///< in [0, 1]; checked against the family bound
    double eta = 0.5;    ///< in (0, 1)
    SlidingModeTarget target{};
    FormulaId formula_id = FormulaId::Tc;
};

/// Validates ranges, the target/formula pairing (Tc/Ta* need a failure
/// probability target, Tp* coherence, Td purity), and the sufficient alpha
/// condition of the formula family (closed: alpha_bound_closed; amplitude:
/// alpha <= beta).
SamplingPlan make_plan(double period, double beta, double alpha, double eta,
                       SlidingModeTarget target, FormulaId formula_id);

}  // namespace qsdc
