// Bloch-vector equations of motion for the four dynamics cases (closed,
// amplitude damping, phase damping, depolarizing), a fixed-step 4th-order
// integrator with breakpoint snapping, and closed-form propagators used as
// test oracles.
#pragma once

#include <vector>

#include "qsdc/bloch.hpp"
#include "qsdc/piecewise.hpp"
#include "qsdc/uncertainty.hpp"

namespace qsdc {

/// Instantaneous control values (dimensionless rates on the three axes).
struct ControlVector {
    double u_x = 0.0;
    double u_y = 0.0;
    double u_z = 0.0;
};

/// Piecewise-constant control on each axis; default is the zero control.
struct ControlSignal {
    PiecewiseConstant u_x{};
    PiecewiseConstant u_y{};
    PiecewiseConstant u_z{};

    ControlVector at(double t) const { return {u_x.at(t), u_y.at(t), u_z.at(t)}; }
};

inline ControlSignal zero_control() { return {}; }

/// Total generator coefficients over one smooth interval. The rotation part
/// is (a, b, c) = (1 + omega + u_z, eps_x + u_x, eps_y + u_y); the affine
/// decoherence part is diag(dx, dy, dz) plus (0, 0, az).
struct DriveCoeffs {
    double a = 0.0, b = 0.0, c = 0.0;
    double dx = 0.0, dy = 0.0, dz = 0.0;
    double az = 0.0;
};

/// Evaluates total drive at time t (signals are right-continuous), checking
/// the realization's instantaneous values against its declared bounds.
DriveCoeffs drive_at(double t, const ControlSignal& ctrl, const Realization& real,
                     DecoherenceKind kind);

/// Builds the decoherence part only, for a given instantaneous coupling.
DriveCoeffs decoherence_part(DecoherenceKind kind, double gamma_t);

inline BlochState apply_rhs(const BlochState& s, const DriveCoeffs& d) {
    return {-d.a * s.y + d.c * s.z + d.dx * s.x, d.a * s.x - d.b * s.z + d.dy * s.y,
            -d.c * s.x + d.b * s.y + d.dz * s.z + d.az};
}

/// One classical 4th-order step of size h under frozen coefficients.
inline BlochState rk4_step(const BlochState& s, const DriveCoeffs& d, double h) {
    const BlochState k1 = apply_rhs(s, d);
    const BlochState k2 = apply_rhs({s.x + 0.5 * h * k1.x, s.y + 0.5 * h * k1.y, s.z + 0.5 * h * k1.z}, d);
    const BlochState k3 = apply_rhs({s.x + 0.5 * h * k2.x, s.y + 0.5 * h * k2.y, s.z + 0.5 * h * k2.z}, d);
    const BlochState k4 = apply_rhs({s.x + h * k3.x, s.y + h * k3.y, s.z + h * k3.z}, d);
    const double w = h / 6.0;
    return {s.x + w * (k1.x + 2.0 * (k2.x + k3.x) + k4.x),
            s.y + w * (k1.y + 2.0 * (k2.y + k3.y) + k4.y),
            s.z + w * (k1.z + 2.0 * (k2.z + k3.z) + k4.z)};
}

/// d/dt of the Bloch vector under control + realization at time t.
BlochState bloch_rhs(const BlochState& s, double t, const ControlSignal& ctrl,
                     const Realization& real, DecoherenceKind kind);

/// Time-indexed record of states plus the derived monitors per sample.
struct Trajectory {
    std::vector<double> times;
    std::vector<BlochState> states;
    std::vector<double> p_fail;
    std::vector<double> coherence_v;
    std::vector<double> purity_v;

    std::size_t size() const { return times.size(); }
    bool empty() const { return times.empty(); }
    const BlochState& back_state() const { return states.back(); }

    /// Appends a sample; times must strictly increase.
    void append(double t, const BlochState& s);
};

/// Fixed-step 4th-order integration from t = 0 to t = horizon. Step
/// boundaries snap to every control/realization discontinuity; within each
/// smooth interval steps are uniform with size <= dt. Every sample is
/// physicality-checked (hard error beyond tolerance, no renormalization).
Trajectory integrate(const BlochState& s0, const ControlSignal& ctrl, const Realization& real,
                     DecoherenceKind kind, double horizon, double dt);

/// Same, over the absolute window [t0, t1] (signals evaluated at absolute
/// time); used by the sampled-data protocol to stitch segments.
Trajectory integrate_window(const BlochState& s0, const ControlSignal& ctrl,
                            const Realization& real, DecoherenceKind kind, double t0, double t1,
                            double dt);

/// Final state only — identical stepping to integrate_window without the
/// per-sample recording; the fast path for the adversarial search.
BlochState propagate(const BlochState& s0, const ControlSignal& ctrl, const Realization& real,
                     DecoherenceKind kind, double t0, double t1, double dt);

/// Exact closed-system solution from (0,0,1) under constant drive
/// (1+omega_bar) about z plus eps at fixed phase phi0 (eps_x = eps*sin phi0,
/// eps_y = eps*cos phi0), with upsilon = sqrt((1+omega_bar)^2 + eps^2):
///   x =  (eps cos(phi0)/u) sin ut - ((1+w)eps sin(phi0)/u^2)(cos ut - 1)
///   y = -(eps sin(phi0)/u) sin ut - ((1+w)eps cos(phi0)/u^2)(cos ut - 1)
///   z =  (eps^2 cos ut + (1+w)^2)/u^2
/// Serves as the integration oracle.
BlochState propagate_constant_closed(double omega_bar, double eps, double phi0, double t);

/// Exact decay laws at constant coupling gamma with no Hamiltonian
/// disturbance: AmplitudeDamping -> z(t) = 2 e^{-gamma t} - 1 from (0,0,1);
/// PhaseDamping -> C(t) = e^{-4 gamma t} from an equatorial pure state;
/// Depolarizing -> |r(t)|^2 = e^{-8 gamma t} from any pure state.
/// Rejects kind == Closed.
double decay_oracle(DecoherenceKind kind, double gamma_const, double t);

}  // namespace qsdc
