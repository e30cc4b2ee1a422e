#include "qsdc/dynamics.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace qsdc {

namespace {

// Admissibility of the realization's instantaneous values; constructed
// realizations are validated up front, but drive evaluation re-checks so
// hand-built signals cannot smuggle out-of-bound values into integration.
void check_instantaneous(const Realization& real, double t, double omega, double mag,
                         double phase, double dgamma) {
    const UncertaintyBounds& b = real.bounds;
    const bool ok = std::abs(omega) <= b.omega && mag >= 0.0 && mag <= b.epsilon &&
                    phase >= 0.0 && phase < 2.0 * M_PI && std::abs(dgamma) <= b.gamma;
    if (ok) return;
    std::ostringstream msg;
    msg << "realization value out of bounds at t=" << t << ": omega=" << omega << " mag=" << mag
        << " phase=" << phase << " dgamma=" << dgamma << " (bounds omega<=" << b.omega
        << ", mag<=" << b.epsilon << ", |dgamma|<=" << b.gamma << ")";
    throw std::invalid_argument(msg.str());
}

}  // namespace

DriveCoeffs decoherence_part(DecoherenceKind kind, double gamma_t) {
    DriveCoeffs d{};
    switch (kind) {
        case DecoherenceKind::Closed: break;
        case DecoherenceKind::AmplitudeDamping:
            d.dx = -0.5 * gamma_t;
            d.dy = -0.5 * gamma_t;
            d.dz = -gamma_t;
            d.az = -gamma_t;
            break;
        case DecoherenceKind::PhaseDamping:
            d.dx = -2.0 * gamma_t;
            d.dy = -2.0 * gamma_t;
            break;
        case DecoherenceKind::Depolarizing:
            d.dx = -4.0 * gamma_t;
            d.dy = -4.0 * gamma_t;
            d.dz = -4.0 * gamma_t;
            break;
    }
    return d;
}

DriveCoeffs drive_at(double t, const ControlSignal& ctrl, const Realization& real,
                     DecoherenceKind kind) {
    const double omega = real.omega_t.at(t);
    const double mag = real.eps_mag_t.at(t);
    const double phase = real.eps_phase_t.at(t);
    const double dgamma = real.dgamma_t.at(t);
    check_instantaneous(real, t, omega, mag, phase, dgamma);

    DriveCoeffs d = decoherence_part(kind, real.bounds.gamma0 + dgamma);
    const ControlVector u = ctrl.at(t);
    d.a = 1.0 + omega + u.u_z;
    d.b = mag * std::sin(phase) + u.u_x;
    d.c = mag * std::cos(phase) + u.u_y;
    return d;
}

BlochState bloch_rhs(const BlochState& s, double t, const ControlSignal& ctrl,
                     const Realization& real, DecoherenceKind kind) {
    return apply_rhs(s, drive_at(t, ctrl, real, kind));
}

void Trajectory::append(double t, const BlochState& s) {
    if (!times.empty() && !(t > times.back()))
        throw std::logic_error("Trajectory: sample times must strictly increase");
    times.push_back(t);
    states.push_back(s);
    p_fail.push_back(failure_probability(s));
    coherence_v.push_back(coherence(s));
    purity_v.push_back(purity(s));
}

namespace {

// Shared stepping core: cuts [t0, t1] at every signal discontinuity, holds
// the drive constant over each smooth interval, and advances with uniform
// 4th-order steps of size <= dt. `on_sample` sees every step endpoint
// (not the initial state).
template <typename OnSample>
void step_window(const BlochState& s0, const ControlSignal& ctrl, const Realization& real,
                 DecoherenceKind kind, double t0, double t1, double dt, OnSample&& on_sample) {
    if (!(dt > 0.0)) throw std::invalid_argument("integration requires dt > 0");
    if (!(t1 >= t0)) throw std::invalid_argument("integration requires t1 >= t0");
    require_physical(s0, "integration start");
    if (t1 == t0) return;

    std::vector<std::vector<double>> lists = realization_breakpoints(real);
    lists.push_back(ctrl.u_x.discontinuities());
    lists.push_back(ctrl.u_y.discontinuities());
    lists.push_back(ctrl.u_z.discontinuities());
    std::vector<double> cuts = merge_breakpoints(lists, t0, t1);
    cuts.push_back(t1);

    BlochState s = s0;
    double a = t0;
    for (double b : cuts) {
        const DriveCoeffs drive = drive_at(a, ctrl, real, kind);
        const long n = static_cast<long>(std::ceil((b - a) / dt));
        const double h = (b - a) / static_cast<double>(n);
        for (long i = 1; i <= n; ++i) {
            s = rk4_step(s, drive, h);
            const double t = (i == n) ? b : a + static_cast<double>(i) * h;
            if (norm2(s) > 1.0 + kPhysicalTol) require_physical(s, "integration step");
            on_sample(t, s);
        }
        a = b;
    }
}

}  // namespace

Trajectory integrate_window(const BlochState& s0, const ControlSignal& ctrl,
                            const Realization& real, DecoherenceKind kind, double t0, double t1,
                            double dt) {
    Trajectory traj;
    traj.append(t0, s0);
    step_window(s0, ctrl, real, kind, t0, t1, dt,
                [&traj](double t, const BlochState& s) { traj.append(t, s); });
    return traj;
}

Trajectory integrate(const BlochState& s0, const ControlSignal& ctrl, const Realization& real,
                     DecoherenceKind kind, double horizon, double dt) {
    if (!(horizon >= 0.0)) throw std::invalid_argument("integrate: horizon must be >= 0");
    if (horizon > 0.0 && dt > horizon)
        throw std::invalid_argument("integrate: dt must not exceed the horizon");
    return integrate_window(s0, ctrl, real, kind, 0.0, horizon, dt);
}

BlochState propagate(const BlochState& s0, const ControlSignal& ctrl, const Realization& real,
                     DecoherenceKind kind, double t0, double t1, double dt) {
    BlochState last = s0;
    step_window(s0, ctrl, real, kind, t0, t1, dt,
                [&last](double, const BlochState& s) { last = s; });
    return last;
}

BlochState propagate_constant_closed(double omega_bar, double eps, double phi0, double t) {
    const double a = 1.0 + omega_bar;
    const double u2 = a * a + eps * eps;
    if (!(u2 > 0.0))
        throw std::invalid_argument("propagate_constant_closed: degenerate zero drive");
    const double u = std::sqrt(u2);
    const double sp = std::sin(phi0), cp = std::cos(phi0);
    const double sut = std::sin(u * t), cut = std::cos(u * t);
    return {(eps * cp / u) * sut - (a * eps * sp / u2) * cut + a * eps * sp / u2,
            -(eps * sp / u) * sut - (a * eps * cp / u2) * cut + a * eps * cp / u2,
            (eps * eps * cut + a * a) / u2};
}

double decay_oracle(DecoherenceKind kind, double gamma_const, double t) {
    if (!(gamma_const >= 0.0)) throw std::invalid_argument("decay_oracle: gamma must be >= 0");
    if (!(t >= 0.0)) throw std::invalid_argument("decay_oracle: t must be >= 0");
    switch (kind) {
        case DecoherenceKind::AmplitudeDamping: return 2.0 * std::exp(-gamma_const * t) - 1.0;
        case DecoherenceKind::PhaseDamping: return std::exp(-4.0 * gamma_const * t);
        case DecoherenceKind::Depolarizing: return std::exp(-8.0 * gamma_const * t);
        case DecoherenceKind::Closed: break;
    }
    throw std::invalid_argument("decay_oracle: no decay law for the closed system");
}

}  // namespace qsdc
