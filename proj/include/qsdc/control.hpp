// Unitary recovery controls that drive the state back into the tightened
// subset after a bad measurement outcome: the Lyapunov feedback law (closed
// system) and the constant single-axis control (amplitude damping), plus
// the terminal-condition check and the bounded-budget recovery driver.
#pragma once

#include "qsdc/bloch.hpp"
#include "qsdc/dynamics.hpp"
#include "qsdc/period_design.hpp"
#include "qsdc/uncertainty.hpp"

namespace qsdc {

/// Feedback gains for the Lyapunov law. `shaping` (identity when null) must
/// be odd and monotone with x*f(x) >= 0, f(0) = 0.
struct LyapunovGains {
    double k_x = 0.0;
    double k_y = 0.0;
    double k_z = 0.0;
    double (*shaping)(double) = nullptr;
};

void validate(const LyapunovGains& g);

/// Lyapunov feedback evaluated on a pure state:
///   u_x = K_x f( (1/2) sin(theta/2) sin(phi) )
///   u_y = K_y f( -(1/2) sin(theta/2) cos(phi) )
///   u_z = 0
/// Zero exactly on the target state theta = 0. The phase convention at the
/// poles takes phi = 0 (the collapsed representation).
ControlVector lyapunov_control(const PureState& psi, const LyapunovGains& g);

/// Terminal condition of the recovery: sin^2(theta/2) <= eta * alpha * p0.
/// The plan must carry a failure-probability target.
bool terminal_reached(const PureState& psi, const SamplingPlan& plan);

/// Constant drive of rate u on one axis for all t >= 0.
ControlSignal constant_control(double u, Axis axis);

/// Recovery law attached to a scenario.
struct RecoveryLaw {
    enum class Kind { None, Lyapunov, Constant };
    Kind kind = Kind::None;
    LyapunovGains gains{};   ///< Lyapunov
    double u = 0.0;          ///< Constant
    Axis axis = Axis::Y;     ///< Constant
};

const char* to_string(RecoveryLaw::Kind k);

struct RecoveryResult {
    Trajectory traj;          ///< samples at absolute times, first = s0 at t0
    bool reached = false;     ///< subset membership achieved within budget
    double time_used = 0.0;   ///< <= beta * period
};

/// Integrates the dynamics from s0 at absolute time t0 with the recovery
/// law active (the Lyapunov law is re-evaluated every step from the current
/// state; controls are held over one step), for at most beta*period.
/// Already inside the subset (p <= alpha*p0) returns immediately; the run
/// stops early once the terminal condition p <= eta*alpha*p0 holds, giving
/// margin for the remaining free flight. On budget exhaustion, reached
/// reports subset membership of the final state; failure to reach is an
/// outcome, not an error.
RecoveryResult drive_to_subset(const BlochState& s0, const RecoveryLaw& law,
                               const SamplingPlan& plan, DecoherenceKind kind,
                               const Realization& real, double dt, double t0 = 0.0);

}  // namespace qsdc
