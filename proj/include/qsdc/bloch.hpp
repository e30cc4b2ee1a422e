// Core state representation for a single qubit: Bloch 3-vectors, pure-state
// angles, admissible uncertainty bounds, and the scalar monitors (failure
// probability, coherence, purity) that define the target domains.
#pragma once

#include <cmath>
#include <string>

namespace qsdc {

/// Qubit state as a real Bloch 3-vector. Physical states satisfy
/// x^2 + y^2 + z^2 <= 1 (+ integration tolerance); pure states lie on the
/// unit sphere. The density matrix form rho = (I + r.sigma)/2 is a documented
/// bijection only — states are never stored as matrices.
struct BlochState {
    double x = 0.0;
    double y = 0.0;
    double z = 1.0;
};

/// Absolute tolerance on the squared norm for the physicality check.
/// Violations beyond it are hard errors, never silently renormalized.
inline constexpr double kPhysicalTol = 1e-9;

inline double norm2(const BlochState& s) { return s.x * s.x + s.y * s.y + s.z * s.z; }

bool is_physical(const BlochState& s, double tol = kPhysicalTol);

/// Throws std::runtime_error with a diagnostic (context, state, norm) if the
/// squared norm exceeds 1 + tol.
void require_physical(const BlochState& s, const char* context, double tol = kPhysicalTol);

/// Pure state |psi> = cos(theta/2)|0> + e^{i phi} sin(theta/2)|1>.
/// Convention: |0> is the +1 eigenstate of sigma_z, i.e. Bloch z = +1.
struct PureState {
    double theta = 0.0;  ///< polar angle in [0, pi]
    double phi = 0.0;    ///< azimuthal angle in [0, 2*pi)
};

/// (sin th cos ph, sin th sin ph, cos th) — exact unit vector.
BlochState to_bloch(const PureState& psi);

/// Inverse map for states on (or numerically near) the unit sphere.
/// phi is taken as atan2(y, x) folded into [0, 2*pi); at the poles phi = 0.
PureState to_pure(const BlochState& s);

enum class DecoherenceKind { Closed, AmplitudeDamping, PhaseDamping, Depolarizing };

const char* to_string(DecoherenceKind kind);

/// Body axis, shared by measurement models (Z or X) and constant controls.
enum class Axis { X, Y, Z };

const char* to_string(Axis axis);

/// Bounds of the admissible uncertainty set: |omega(t)| <= omega,
/// sqrt(eps_x^2 + eps_y^2) <= epsilon, |dgamma_t| <= gamma, with nominal
/// coupling gamma0. gamma0 >= gamma keeps the instantaneous coupling >= 0.
struct UncertaintyBounds {
    double omega = 0.0;
    double epsilon = 0.0;
    double gamma0 = 0.0;
    double gamma = 0.0;
};

/// Validates field ranges (omega, gamma >= 0; epsilon > 0; gamma0 >= gamma).
/// Throws std::invalid_argument naming the offending field.
void validate(const UncertaintyBounds& b);

/// Target region the controller must keep the state in, one of:
///   FailureProb — (1+z)/2 >= 1 - p0   (high fidelity with |0>)
///   Coherence   — x^2 + y^2 >= cbar
///   Purity      — (1 + |r|^2)/2 >= pbar
struct SlidingModeTarget {
    enum class Kind { FailureProb, Coherence, Purity };
    Kind kind = Kind::FailureProb;
    double value = 0.0;  ///< p0, cbar, or pbar depending on kind

    static SlidingModeTarget failure_prob(double p0);
    static SlidingModeTarget coherence(double cbar);
    static SlidingModeTarget purity(double pbar);
};

const char* to_string(SlidingModeTarget::Kind kind);

/// p = <1|rho|1> = (1 - z)/2, the probability a sigma_z measurement
/// collapses the state out of the high-fidelity domain.
inline double failure_probability(const BlochState& s) { return 0.5 * (1.0 - s.z); }

/// C = x^2 + y^2.
inline double coherence(const BlochState& s) { return s.x * s.x + s.y * s.y; }

/// P = tr(rho^2) = (1 + x^2 + y^2 + z^2)/2.
inline double purity(const BlochState& s) { return 0.5 * (1.0 + norm2(s)); }

/// Monitor value relevant to the target kind (failure prob / coherence / purity).
double monitor_value(const BlochState& s, SlidingModeTarget::Kind kind);

/// Membership test against the target's boundary (inclusive).
bool in_domain(const BlochState& s, const SlidingModeTarget& target);

}  // namespace qsdc
