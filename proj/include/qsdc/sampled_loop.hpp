// The full sampled-data protocol: periodic projective measurement,
// conditional unitary recovery, free evolution under an uncertainty
// realization — plus the deterministic Monte Carlo harness and the
// adversarial bound certifier built on the exhaustive search.
#pragma once

#include <cstdint>
#include <vector>

#include "qsdc/bloch.hpp"
#include "qsdc/control.hpp"
#include "qsdc/dynamics.hpp"
#include "qsdc/measurement.hpp"
#include "qsdc/period_design.hpp"
#include "qsdc/uncertainty.hpp"

namespace qsdc {

/// How the protocol run draws its uncertainty realization.
struct RealizationSource {
    enum class Kind { Nominal, StructuredWorst, Random };
    Kind kind = Kind::Nominal;
    double segment_len = 0.0;  ///< Random only: piece length of the signals
};

const char* to_string(RealizationSource::Kind k);

/// Complete description of one protocol experiment.
struct Scenario {
    DecoherenceKind kind = DecoherenceKind::Closed;
    UncertaintyBounds bounds{};
    SamplingPlan plan{};
    MeasurementModel measurement{};
    RecoveryLaw recovery{};
    RealizationSource source{};
    int n_periods = 1;
    double dt = 1e-4;
    BlochState initial{0.0, 0.0, 1.0};
};

/// Cross-field rules: Closed forbids nonzero gamma0/gamma; a recovery law is
/// required exactly when kind is Closed or AmplitudeDamping AND the target is
/// a failure probability (phase damping and depolarizing rely on measurement
/// alone); the Lyapunov law is closed-system only; Random sources need a
/// positive segment_len; dt must be positive and no larger than the period.
void validate(const Scenario& sc);

/// One integrator sample of a protocol run. Sample rows are the
/// pre-measurement snapshots at the sampling instants n*T (and the terminal
/// instant); recovery rows lie inside the recovery subinterval; times are
/// strictly increasing.
struct SampleRow {
    enum class Phase { Free, Recovery, Sample };
    double t = 0.0;
    BlochState s{};
    Phase phase = Phase::Free;
};

const char* to_string(SampleRow::Phase p);

/// Per-period protocol record. Counted samples exclude the recovery window
/// [nT, (n+beta)T] that follows a bad outcome — excursions there are
/// permitted by design and exempt from the violation count.
struct PeriodRecord {
    MeasurementRecord meas{};
    bool recovery_attempted = false;
    bool recovery_reached = true;
    double recovery_time_used = 0.0;
    int counted_samples = 0;
    int violations = 0;          ///< counted samples outside the target domain
    double max_failure = 0.0;    ///< extrema over counted samples
    double min_coherence = 1.0;
    double min_purity = 1.0;
};

struct RunReport {
    std::vector<PeriodRecord> periods;
    // Extrema over the pre-measurement sampling instants 0, T, ..., n*T
    // (terminal instant included).
    double max_failure_at_samples = 0.0;
    double min_coherence_at_samples = 1.0;
    double min_purity_at_samples = 1.0;
    int violations_at_sampling_instants = 0;
    int violation_samples = 0;  ///< over all counted integrator samples
    int recovery_activations = 0;
    int recovery_failures = 0;
    std::vector<SampleRow> trace;  ///< filled only when requested
};

/// Executes n_periods of: record the sampling instant, measure, then either
/// free evolution (good outcome) or recovery for at most beta*T followed by
/// free evolution to the period end (bad outcome). The measurement stream
/// seeds from derive(seed, 1) and the random realization from
/// derive(seed, 2); runs are deterministic under `seed`.
RunReport run_protocol(const Scenario& sc, std::uint64_t seed, bool record_trace = false);

struct Stat {
    double min = 0.0;
    double mean = 0.0;
    double max = 0.0;
};

struct McReport {
    int trials = 0;
    std::uint64_t seed = 0;
    int n_periods = 0;
    Stat max_failure_at_samples{};
    Stat min_coherence_at_samples{};
    Stat min_purity_at_samples{};
    long recovery_activations = 0;
    long recovery_failures = 0;
    double recovery_activation_rate = 0.0;  ///< activations per measurement
    long bad_reports = 0;                   ///< reported-One measurements
    double bad_report_fraction = 0.0;
    long violation_samples = 0;
    long violations_at_sampling_instants = 0;
};

/// Runs `trials` independent protocol runs with per-trial seeds
/// derive(seed, i). Trials execute concurrently over `workers` (<= 0 picks
/// the hardware default); per-trial results land in indexed slots and are
/// folded sequentially, so the report is identical for any worker count.
McReport monte_carlo(const Scenario& sc, int trials, std::uint64_t seed, int workers = 0);

struct CertifyResult {
    bool pass = false;
    double worst_value = 0.0;    ///< maximal objective over the grid
    double worst_monitor = 0.0;  ///< the monitor itself (p, C, or P)
    double threshold = 0.0;      ///< target boundary value
    double slack = 0.0;
    SearchObjective objective = SearchObjective::FailureProb;
    BlochState initial{};
    Realization worst{};
    std::uint64_t n_candidates = 0;
};

/// Slack applied when judging certification results.
inline constexpr double kCertifySlack = 1e-4;

/// Adversarially maximizes the target's violation objective over one period
/// of free evolution (zero control) starting from the boundary-worst
/// admissible initial state: (0,0,1) for failure-probability targets,
/// the equatorial pure state (1,0,0) for coherence and purity targets.
/// Passes iff the target is respected within kCertifySlack.
CertifyResult certify_bound(const Scenario& sc, int grid = 8, int levels = 8, int workers = 0);

}  // namespace qsdc
