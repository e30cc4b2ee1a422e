#include "qsdc/bloch.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace qsdc {

bool is_physical(const BlochState& s, double tol) { return norm2(s) <= 1.0 + tol; }

void require_physical(const BlochState& s, const char* context, double tol) {
    const double n2 = norm2(s);
    if (n2 <= 1.0 + tol) return;
    std::ostringstream msg;
    msg << "unphysical Bloch state in " << context << ": |r|^2 = " << n2 << " (x=" << s.x
        << ", y=" << s.y << ", z=" << s.z << "), tolerance 1 + " << tol;
    throw std::runtime_error(msg.str());
}

BlochState to_bloch(const PureState& psi) {
    return {std::sin(psi.theta) * std::cos(psi.phi), std::sin(psi.theta) * std::sin(psi.phi),
            std::cos(psi.theta)};
}

PureState to_pure(const BlochState& s) {
    // Clamp against roundoff so acos stays defined for near-unit vectors.
    const double z = std::fmin(1.0, std::fmax(-1.0, s.z));
    PureState psi;
    psi.theta = std::acos(z);
    if (s.x == 0.0 && s.y == 0.0) {
        psi.phi = 0.0;
    } else {
        psi.phi = std::atan2(s.y, s.x);
        if (psi.phi < 0.0) psi.phi += 2.0 * M_PI;
    }
    return psi;
}

const char* to_string(DecoherenceKind kind) {
    switch (kind) {
        case DecoherenceKind::Closed: return "closed";
        case DecoherenceKind::AmplitudeDamping: return "amplitude_damping";
        case DecoherenceKind::PhaseDamping: return "phase_damping";
        case DecoherenceKind::Depolarizing: return "depolarizing";
    }
    return "?";
}

const char* to_string(Axis axis) {
    switch (axis) {
        case Axis::X: return "X";
        case Axis::Y: return "Y";
        case Axis::Z: return "Z";
    }
    return "?";
}

void validate(const UncertaintyBounds& b) {
    if (!(b.omega >= 0.0)) throw std::invalid_argument("UncertaintyBounds: omega must be >= 0");
    if (!(b.epsilon > 0.0)) throw std::invalid_argument("UncertaintyBounds: epsilon must be > 0");
    if (!(b.gamma >= 0.0)) throw std::invalid_argument("UncertaintyBounds: gamma must be >= 0");
    if (!(b.gamma0 >= b.gamma))
        throw std::invalid_argument(
            "UncertaintyBounds: gamma0 must be >= gamma (instantaneous coupling stays "
            "nonnegative)");
}

SlidingModeTarget SlidingModeTarget::failure_prob(double p0) {
    if (!(p0 > 0.0 && p0 < 1.0))
        throw std::invalid_argument("SlidingModeTarget: p0 must lie in (0, 1)");
    return {Kind::FailureProb, p0};
}

SlidingModeTarget SlidingModeTarget::coherence(double cbar) {
    if (!(cbar > 0.0 && cbar <= 1.0))
        throw std::invalid_argument("SlidingModeTarget: cbar must lie in (0, 1]");
    return {Kind::Coherence, cbar};
}

SlidingModeTarget SlidingModeTarget::purity(double pbar) {
    if (!(pbar > 0.5 && pbar <= 1.0))
        throw std::invalid_argument("SlidingModeTarget: pbar must lie in (0.5, 1]");
    return {Kind::Purity, pbar};
}

const char* to_string(SlidingModeTarget::Kind kind) {
    switch (kind) {
        case SlidingModeTarget::Kind::FailureProb: return "failure_prob";
        case SlidingModeTarget::Kind::Coherence: return "coherence";
        case SlidingModeTarget::Kind::Purity: return "purity";
    }
    return "?";
}

double monitor_value(const BlochState& s, SlidingModeTarget::Kind kind) {
    switch (kind) {
        case SlidingModeTarget::Kind::FailureProb: return failure_probability(s);
        case SlidingModeTarget::Kind::Coherence: return coherence(s);
        case SlidingModeTarget::Kind::Purity: return purity(s);
    }
    return 0.0;
}

bool in_domain(const BlochState& s, const SlidingModeTarget& target) {
    switch (target.kind) {
        case SlidingModeTarget::Kind::FailureProb:
            return failure_probability(s) <= target.value;
        case SlidingModeTarget::Kind::Coherence: return coherence(s) >= target.value;
        case SlidingModeTarget::Kind::Purity: return purity(s) >= target.value;
    }
    return false;
}

}  // namespace qsdc
