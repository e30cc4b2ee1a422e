#include "qsdc/control.hpp"

#include <cmath>
#include <stdexcept>

namespace qsdc {

void validate(const LyapunovGains& g) {
    if (!(g.k_x >= 0.0 && g.k_y >= 0.0 && g.k_z >= 0.0))
        throw std::invalid_argument("LyapunovGains: gains must be >= 0");
    if (g.shaping != nullptr && g.shaping(0.0) != 0.0)
        throw std::invalid_argument("LyapunovGains: shaping must satisfy f(0) = 0");
}

ControlVector lyapunov_control(const PureState& psi, const LyapunovGains& g) {
    const double half = 0.5 * std::sin(0.5 * psi.theta);
    const double arg_x = half * std::sin(psi.phi);
    const double arg_y = -half * std::cos(psi.phi);
    const auto shape = [&g](double v) { return g.shaping ? g.shaping(v) : v; };
    // The z channel's argument is identically zero under this target.
    return {g.k_x * shape(arg_x), g.k_y * shape(arg_y), 0.0};
}

bool terminal_reached(const PureState& psi, const SamplingPlan& plan) {
    if (plan.target.kind != SlidingModeTarget::Kind::FailureProb)
        throw std::invalid_argument("terminal_reached: plan must carry a failure-prob target");
    const double s = std::sin(0.5 * psi.theta);
    return s * s <= plan.eta * plan.alpha * plan.target.value;
}

ControlSignal constant_control(double u, Axis axis) {
    ControlSignal ctrl;
    switch (axis) {
        case Axis::X: ctrl.u_x = PiecewiseConstant{u}; break;
        case Axis::Y: ctrl.u_y = PiecewiseConstant{u}; break;
        case Axis::Z: ctrl.u_z = PiecewiseConstant{u}; break;
    }
    return ctrl;
}

const char* to_string(RecoveryLaw::Kind k) {
    switch (k) {
        case RecoveryLaw::Kind::None: return "none";
        case RecoveryLaw::Kind::Lyapunov: return "lyapunov";
        case RecoveryLaw::Kind::Constant: return "constant";
    }
    return "?";
}

RecoveryResult drive_to_subset(const BlochState& s0, const RecoveryLaw& law,
                               const SamplingPlan& plan, DecoherenceKind kind,
                               const Realization& real, double dt, double t0) {
    if (law.kind == RecoveryLaw::Kind::None)
        throw std::invalid_argument("drive_to_subset: scenario has no recovery law");
    if (plan.target.kind != SlidingModeTarget::Kind::FailureProb)
        throw std::invalid_argument("drive_to_subset: plan must carry a failure-prob target");
    if (!(dt > 0.0)) throw std::invalid_argument("drive_to_subset: dt must be > 0");
    if (law.kind == RecoveryLaw::Kind::Lyapunov) validate(law.gains);
    require_physical(s0, "drive_to_subset start");

    const double subset_p = plan.alpha * plan.target.value;      // membership boundary
    const double terminal_p = plan.eta * subset_p;               // early-stop threshold

    RecoveryResult res;
    res.traj.append(t0, s0);
    if (failure_probability(s0) <= subset_p) {
        res.reached = true;
        return res;
    }

    const double budget_end = t0 + plan.beta * plan.period;
    const ControlSignal constant_part =
        law.kind == RecoveryLaw::Kind::Constant ? constant_control(law.u, law.axis) : ControlSignal{};

    BlochState s = s0;
    double a = t0;
    std::vector<double> cuts = merge_breakpoints(realization_breakpoints(real), t0, budget_end);
    cuts.push_back(budget_end);

    for (double b : cuts) {
        const long n = static_cast<long>(std::ceil((b - a) / dt));
        for (long i = 1; i <= n; ++i) {
            const double t = (i == n) ? b : a + (b - a) * static_cast<double>(i) / static_cast<double>(n);
            const double t_prev = a + (b - a) * static_cast<double>(i - 1) / static_cast<double>(n);

            // Base drive from the realization, constant over the smooth piece;
            // the control is re-evaluated from the current state and held for
            // one step.
            DriveCoeffs drive = drive_at(t_prev, constant_part, real, kind);
            if (law.kind == RecoveryLaw::Kind::Lyapunov) {
                const ControlVector u = lyapunov_control(to_pure(s), law.gains);
                drive.a += u.u_z;
                drive.b += u.u_x;
                drive.c += u.u_y;
            }
            s = rk4_step(s, drive, t - t_prev);
            if (norm2(s) > 1.0 + kPhysicalTol) require_physical(s, "drive_to_subset step");
            res.traj.append(t, s);
            res.time_used = t - t0;

            if (failure_probability(s) <= terminal_p) {
                res.reached = true;
                return res;
            }
        }
        a = b;
    }
    res.reached = failure_probability(s) <= subset_p;
    return res;
}

}  // namespace qsdc
