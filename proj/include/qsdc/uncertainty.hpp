// Admissible uncertainty realizations — concrete time signals for the
// Hamiltonian disturbance (omega, eps magnitude/phase) and the coupling
// fluctuation (dgamma) — plus their generators: nominal, structured
// worst-case (bang-bang), seeded random, and a brute-force adversarial
// search used as the independent oracle for bound tightness.
#pragma once

#include <cstdint>
#include <vector>

#include "qsdc/bloch.hpp"
#include "qsdc/piecewise.hpp"

namespace qsdc {

struct ControlSignal;  // dynamics.hpp

/// One admissible draw from the uncertainty set described by `bounds`:
///   |omega_t| <= omega, eps_mag_t in [0, epsilon], eps_phase_t in [0, 2*pi),
///   |dgamma_t| <= gamma.
/// The transverse disturbance components are eps_x = mag*sin(phase) and
/// eps_y = mag*cos(phase), so the magnitude bound holds by construction.
/// Instantaneous coupling: gamma_t = bounds.gamma0 + dgamma_t.
struct Realization {
    UncertaintyBounds bounds{};
    PiecewiseConstant omega_t{};
    PiecewiseConstant eps_mag_t{};
    PiecewiseConstant eps_phase_t{};
    PiecewiseConstant dgamma_t{};
};

/// Validating constructor: every segment value is checked against `bounds`.
Realization make_realization(const UncertaintyBounds& bounds, PiecewiseConstant omega_t,
                             PiecewiseConstant eps_mag_t, PiecewiseConstant eps_phase_t,
                             PiecewiseConstant dgamma_t);

/// Throws std::invalid_argument naming the offending signal/segment.
void validate_realization(const Realization& r);

inline double gamma_at(const Realization& r, double t) {
    return r.bounds.gamma0 + r.dgamma_t.at(t);
}

/// Union of the four signals' interior breakpoints (unsorted lists merged
/// by the integrator's step planner).
std::vector<std::vector<double>> realization_breakpoints(const Realization& r);

/// All signals identically zero (gamma_t == gamma0).
Realization nominal(const UncertaintyBounds& bounds);

/// Bang-bang extremes: omega_t == -omega, eps_mag_t == epsilon with the
/// phase fixed at pi/2 (drive along x; the failure objective from the pole
/// is phase-independent), and for decoherence kinds dgamma_t == +gamma.
Realization worst_case_structured(const UncertaintyBounds& bounds, DecoherenceKind kind);

/// n_segments equal pieces of length segment_len starting at t = 0; each
/// segment draws omega ~ U[-w, w], eps_mag ~ U[0, e], eps_phase ~ U[0, 2pi),
/// dgamma ~ U[-g, g] independently. Deterministic under `seed`.
Realization random_uniform(const UncertaintyBounds& bounds, double segment_len, int n_segments,
                           std::uint64_t seed);

/// What the adversarial search maximizes at the horizon.
enum class SearchObjective { FailureProb, CoherenceLoss, PurityLoss };

const char* to_string(SearchObjective obj);

/// FailureProb -> (1-z)/2; CoherenceLoss -> 1-(x^2+y^2); PurityLoss -> 1-P.
double objective_value(const BlochState& s, SearchObjective obj);

struct SearchResult {
    Realization worst;
    double value = 0.0;             ///< maximal objective found
    std::uint64_t candidate_id = 0; ///< encoding index of the maximizer
    std::uint64_t n_candidates = 0; ///< candidates enumerated
};

/// Hard cap on exhaustive-search evaluations.
inline constexpr std::uint64_t kSearchBudget = 1000000;

/// Exhaustive search over piecewise-constant bang-bang realizations:
/// each active signal (omega when the bound is positive; eps_mag always,
/// over {0, epsilon}; dgamma when the bound is positive and the kind is not
/// Closed) takes an extreme value on each of `grid` equal segments, and the
/// phase is held constant at one of `levels` points 2*pi*k/levels. The
/// candidate count 2^(grid * active_signals) * levels must stay within
/// kSearchBudget or the call fails, naming the required budget.
///
/// Enumeration order is the encoding order of the candidate id; ties on the
/// objective keep the smallest id, so the result is identical for any
/// worker count (workers <= 0 selects the hardware default).
SearchResult adversarial_search(const UncertaintyBounds& bounds, DecoherenceKind kind,
                                const ControlSignal& ctrl, const BlochState& s0, double horizon,
                                SearchObjective objective, int grid, int levels, double dt,
                                int workers = 0);

}  // namespace qsdc
