#include "qsdc/sampled_loop.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "qsdc/rng.hpp"

namespace qsdc {

const char* to_string(RealizationSource::Kind k) {
    switch (k) {
        case RealizationSource::Kind::Nominal: return "nominal";
        case RealizationSource::Kind::StructuredWorst: return "structured_worst";
        case RealizationSource::Kind::Random: return "random";
    }
    return "?";
}

const char* to_string(SampleRow::Phase p) {
    switch (p) {
        case SampleRow::Phase::Free: return "free";
        case SampleRow::Phase::Recovery: return "recovery";
        case SampleRow::Phase::Sample: return "sample";
    }
    return "?";
}

void validate(const Scenario& sc) {
    validate(sc.bounds);
    validate(sc.measurement);
    if (sc.kind == DecoherenceKind::Closed && (sc.bounds.gamma0 != 0.0 || sc.bounds.gamma != 0.0))
        throw std::invalid_argument(
            "Scenario: the closed system forbids nonzero gamma0/gamma bounds");

    const bool needs_recovery =
        (sc.kind == DecoherenceKind::Closed || sc.kind == DecoherenceKind::AmplitudeDamping) &&
        sc.plan.target.kind == SlidingModeTarget::Kind::FailureProb;
    if (needs_recovery && sc.recovery.kind == RecoveryLaw::Kind::None)
        throw std::invalid_argument(
            "Scenario: failure-probability targets for closed/amplitude-damped dynamics require "
            "a recovery law");
    if (!needs_recovery && sc.recovery.kind != RecoveryLaw::Kind::None)
        throw std::invalid_argument(
            "Scenario: only closed/amplitude-damped failure-probability scenarios take a "
            "recovery law (coherence and purity targets rely on measurement alone)");
    if (sc.recovery.kind == RecoveryLaw::Kind::Lyapunov) {
        if (sc.kind != DecoherenceKind::Closed)
            throw std::invalid_argument(
                "Scenario: the Lyapunov law acts on pure states and is closed-system only");
        validate(sc.recovery.gains);
    }
    if (sc.source.kind == RealizationSource::Kind::Random && !(sc.source.segment_len > 0.0))
        throw std::invalid_argument("Scenario: random sources need a positive segment_len");
    if (sc.n_periods < 0) throw std::invalid_argument("Scenario: n_periods must be >= 0");
    if (!(sc.dt > 0.0)) throw std::invalid_argument("Scenario: dt must be > 0");
    if (!(sc.plan.period > 0.0)) throw std::invalid_argument("Scenario: period must be > 0");
    if (sc.dt > sc.plan.period)
        throw std::invalid_argument("Scenario: dt must not exceed the sampling period");
    require_physical(sc.initial, "Scenario initial state");
}

namespace {

Realization build_realization(const Scenario& sc, std::uint64_t run_seed) {
    switch (sc.source.kind) {
        case RealizationSource::Kind::Nominal: return nominal(sc.bounds);
        case RealizationSource::Kind::StructuredWorst:
            return worst_case_structured(sc.bounds, sc.kind);
        case RealizationSource::Kind::Random: {
            const double total = static_cast<double>(sc.n_periods) * sc.plan.period;
            const int n_segments =
                std::max(1, static_cast<int>(std::ceil(total / sc.source.segment_len)));
            return random_uniform(sc.bounds, sc.source.segment_len, n_segments,
                                  derive(run_seed, 2));
        }
    }
    throw std::logic_error("unknown realization source");
}

}  // namespace

RunReport run_protocol(const Scenario& sc, std::uint64_t seed, bool record_trace) {
    validate(sc);
    RunReport report;
    if (sc.n_periods == 0) return report;

    std::mt19937_64 meas_stream(splitmix64(derive(seed, 1)));
    const Realization real = build_realization(sc, seed);
    const ControlSignal free_ctrl = zero_control();
    const double T = sc.plan.period;
    const SlidingModeTarget target = sc.plan.target;

    BlochState s = sc.initial;
    report.periods.reserve(static_cast<std::size_t>(sc.n_periods));

    // Pre-measurement snapshot at a sampling instant n*T (terminal included).
    auto record_instant = [&](double t) {
        report.max_failure_at_samples = std::max(report.max_failure_at_samples, failure_probability(s));
        report.min_coherence_at_samples = std::min(report.min_coherence_at_samples, coherence(s));
        report.min_purity_at_samples = std::min(report.min_purity_at_samples, purity(s));
        if (!in_domain(s, target)) {
            ++report.violations_at_sampling_instants;
            ++report.violation_samples;
        }
        if (record_trace) report.trace.push_back({t, s, SampleRow::Phase::Sample});
    };

    for (int n = 0; n < sc.n_periods; ++n) {
        const double t_n = static_cast<double>(n) * T;
        const double t_next = static_cast<double>(n + 1) * T;
        record_instant(t_n);

        PeriodRecord rec;
        rec.meas = measure(s, sc.measurement, meas_stream, t_n);
        s = rec.meas.post_state;

        // Integrator samples strictly inside the period; the last segment
        // sample at (n+1)T is deferred to the next sampling instant.
        double exempt_until = -std::numeric_limits<double>::infinity();
        auto absorb = [&](const Trajectory& seg, SampleRow::Phase phase, bool skip_last) {
            const std::size_t end = seg.size() - (skip_last ? 1 : 0);
            for (std::size_t i = 1; i < end; ++i) {
                const double t = seg.times[i];
                const BlochState& st = seg.states[i];
                if (record_trace) report.trace.push_back({t, st, phase});
                if (t <= exempt_until + 1e-12) continue;  // recovery excursion window
                ++rec.counted_samples;
                rec.max_failure = std::max(rec.max_failure, seg.p_fail[i]);
                rec.min_coherence = std::min(rec.min_coherence, seg.coherence_v[i]);
                rec.min_purity = std::min(rec.min_purity, seg.purity_v[i]);
                if (!in_domain(st, target)) {
                    ++rec.violations;
                    ++report.violation_samples;
                }
            }
        };

        const bool bad =
            rec.meas.reported_outcome == Outcome::One && sc.recovery.kind != RecoveryLaw::Kind::None;
        double t_resume = t_n;
        if (bad) {
            ++report.recovery_activations;
            rec.recovery_attempted = true;
            exempt_until = t_n + sc.plan.beta * T;
            RecoveryResult rr =
                drive_to_subset(s, sc.recovery, sc.plan, sc.kind, real, sc.dt, t_n);
            rec.recovery_reached = rr.reached;
            rec.recovery_time_used = rr.time_used;
            if (!rr.reached) ++report.recovery_failures;
            absorb(rr.traj, SampleRow::Phase::Recovery, /*skip_last=*/false);
            s = rr.traj.back_state();
            t_resume = t_n + rr.time_used;
        }

        Trajectory seg = integrate_window(s, free_ctrl, real, sc.kind, t_resume, t_next, sc.dt);
        absorb(seg, SampleRow::Phase::Free, /*skip_last=*/true);
        s = seg.back_state();

        report.periods.push_back(std::move(rec));
    }
    record_instant(static_cast<double>(sc.n_periods) * T);
    return report;
}

namespace {

struct TrialStats {
    double max_failure = 0.0;
    double min_coherence = 1.0;
    double min_purity = 1.0;
    int activations = 0;
    int failures = 0;
    int bad_reports = 0;
    int violations = 0;
    int violations_at_instants = 0;
};

TrialStats summarize(const RunReport& r) {
    TrialStats t;
    t.max_failure = r.max_failure_at_samples;
    t.min_coherence = r.min_coherence_at_samples;
    t.min_purity = r.min_purity_at_samples;
    t.activations = r.recovery_activations;
    t.failures = r.recovery_failures;
    t.violations = r.violation_samples;
    t.violations_at_instants = r.violations_at_sampling_instants;
    for (const PeriodRecord& p : r.periods)
        if (p.meas.reported_outcome == Outcome::One) ++t.bad_reports;
    return t;
}

}  // namespace

McReport monte_carlo(const Scenario& sc, int trials, std::uint64_t seed, int workers) {
    validate(sc);
    if (trials < 1) throw std::invalid_argument("monte_carlo: need trials >= 1");

    std::vector<TrialStats> slots(static_cast<std::size_t>(trials));
    int n_workers = workers > 0 ? workers : static_cast<int>(std::thread::hardware_concurrency());
    n_workers = std::clamp(n_workers, 1, trials);

    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(n_workers));
    auto run_block = [&](int w) {
        const int lo = static_cast<int>(static_cast<long>(trials) * w / n_workers);
        const int hi = static_cast<int>(static_cast<long>(trials) * (w + 1) / n_workers);
        try {
            for (int i = lo; i < hi; ++i)
                slots[static_cast<std::size_t>(i)] =
                    summarize(run_protocol(sc, derive(seed, static_cast<std::uint64_t>(i))));
        } catch (...) {
            errors[static_cast<std::size_t>(w)] = std::current_exception();
        }
    };
    if (n_workers == 1) {
        run_block(0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(n_workers));
        for (int w = 0; w < n_workers; ++w) pool.emplace_back(run_block, w);
        for (auto& th : pool) th.join();
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);

    // Sequential fold in trial order keeps the report independent of the
    // worker count.
    McReport rep;
    rep.trials = trials;
    rep.seed = seed;
    rep.n_periods = sc.n_periods;
    auto fold = [trials](Stat& st, auto pick, const std::vector<TrialStats>& all) {
        double lo = std::numeric_limits<double>::infinity(), hi = -lo, sum = 0.0;
        for (const TrialStats& t : all) {
            const double v = pick(t);
            lo = std::min(lo, v);
            hi = std::max(hi, v);
            sum += v;
        }
        st = {lo, sum / trials, hi};
    };
    fold(rep.max_failure_at_samples, [](const TrialStats& t) { return t.max_failure; }, slots);
    fold(rep.min_coherence_at_samples, [](const TrialStats& t) { return t.min_coherence; }, slots);
    fold(rep.min_purity_at_samples, [](const TrialStats& t) { return t.min_purity; }, slots);
    for (const TrialStats& t : slots) {
        rep.recovery_activations += t.activations;
        rep.recovery_failures += t.failures;
        rep.bad_reports += t.bad_reports;
        rep.violation_samples += t.violations;
        rep.violations_at_sampling_instants += t.violations_at_instants;
    }
    const double measurements = static_cast<double>(trials) * sc.n_periods;
    if (measurements > 0.0) {
        rep.recovery_activation_rate = static_cast<double>(rep.recovery_activations) / measurements;
        rep.bad_report_fraction = static_cast<double>(rep.bad_reports) / measurements;
    }
    return rep;
}

CertifyResult certify_bound(const Scenario& sc, int grid, int levels, int workers) {
    validate(sc);
    CertifyResult res;
    res.threshold = sc.plan.target.value;
    res.slack = kCertifySlack;
    switch (sc.plan.target.kind) {
        case SlidingModeTarget::Kind::FailureProb:
            res.objective = SearchObjective::FailureProb;
            res.initial = {0.0, 0.0, 1.0};
            break;
        case SlidingModeTarget::Kind::Coherence:
            res.objective = SearchObjective::CoherenceLoss;
            res.initial = {1.0, 0.0, 0.0};
            break;
        case SlidingModeTarget::Kind::Purity:
            res.objective = SearchObjective::PurityLoss;
            res.initial = {1.0, 0.0, 0.0};
            break;
    }

    SearchResult sr = adversarial_search(sc.bounds, sc.kind, zero_control(), res.initial,
                                         sc.plan.period, res.objective, grid, levels, sc.dt,
                                         workers);
    res.worst_value = sr.value;
    res.worst = std::move(sr.worst);
    res.n_candidates = sr.n_candidates;
    switch (sc.plan.target.kind) {
        case SlidingModeTarget::Kind::FailureProb:
            res.worst_monitor = sr.value;
            res.pass = sr.value <= res.threshold + res.slack;
            break;
        case SlidingModeTarget::Kind::Coherence:
        case SlidingModeTarget::Kind::Purity:
            res.worst_monitor = 1.0 - sr.value;
            res.pass = res.worst_monitor >= res.threshold - res.slack;
            break;
    }
    return res;
}

}  // namespace qsdc
