#include "qsdc/uncertainty.hpp"

#include <cmath>
#include <exception>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <vector>

#include "qsdc/dynamics.hpp"
#include "qsdc/rng.hpp"

namespace qsdc {

namespace {

void check_signal_range(const PiecewiseConstant& sig, double lo, double hi, const char* name,
                        bool hi_exclusive = false) {
    for (std::size_t i = 0; i < sig.values().size(); ++i) {
        const double v = sig.values()[i];
        const bool ok = v >= lo && (hi_exclusive ? v < hi : v <= hi);
        if (!ok) {
            std::ostringstream msg;
            msg << "Realization: " << name << " segment " << i << " value " << v
                << " outside [" << lo << ", " << hi << (hi_exclusive ? ")" : "]");
            throw std::invalid_argument(msg.str());
        }
    }
}

}  // namespace

void validate_realization(const Realization& r) {
    validate(r.bounds);
    check_signal_range(r.omega_t, -r.bounds.omega, r.bounds.omega, "omega");
    check_signal_range(r.eps_mag_t, 0.0, r.bounds.epsilon, "eps_mag");
    check_signal_range(r.eps_phase_t, 0.0, 2.0 * M_PI, "eps_phase", /*hi_exclusive=*/true);
    check_signal_range(r.dgamma_t, -r.bounds.gamma, r.bounds.gamma, "dgamma");
}

Realization make_realization(const UncertaintyBounds& bounds, PiecewiseConstant omega_t,
                             PiecewiseConstant eps_mag_t, PiecewiseConstant eps_phase_t,
                             PiecewiseConstant dgamma_t) {
    Realization r{bounds, std::move(omega_t), std::move(eps_mag_t), std::move(eps_phase_t),
                  std::move(dgamma_t)};
    validate_realization(r);
    return r;
}

std::vector<std::vector<double>> realization_breakpoints(const Realization& r) {
    return {r.omega_t.discontinuities(), r.eps_mag_t.discontinuities(),
            r.eps_phase_t.discontinuities(), r.dgamma_t.discontinuities()};
}

Realization nominal(const UncertaintyBounds& bounds) {
    return make_realization(bounds, PiecewiseConstant{}, PiecewiseConstant{}, PiecewiseConstant{},
                            PiecewiseConstant{});
}

Realization worst_case_structured(const UncertaintyBounds& bounds, DecoherenceKind kind) {
    const double worst_omega = bounds.omega > 0.0 ? -bounds.omega : 0.0;
    const double worst_dgamma = kind != DecoherenceKind::Closed ? bounds.gamma : 0.0;
    return make_realization(bounds, PiecewiseConstant{worst_omega},
                            PiecewiseConstant{bounds.epsilon}, PiecewiseConstant{0.5 * M_PI},
                            PiecewiseConstant{worst_dgamma});
}

Realization random_uniform(const UncertaintyBounds& bounds, double segment_len, int n_segments,
                           std::uint64_t seed) {
    validate(bounds);
    if (!(segment_len > 0.0))
        throw std::invalid_argument("random_uniform: segment_len must be > 0");
    if (n_segments < 1) throw std::invalid_argument("random_uniform: need n_segments >= 1");

    std::mt19937_64 eng(splitmix64(seed));
    const std::size_t n = static_cast<std::size_t>(n_segments);
    std::vector<double> knots(n), omega(n), mag(n), phase(n), dgamma(n);
    for (std::size_t j = 0; j < n; ++j) {
        knots[j] = static_cast<double>(j) * segment_len;
        omega[j] = uniform_in(eng, -bounds.omega, bounds.omega);
        mag[j] = uniform_in(eng, 0.0, bounds.epsilon);
        phase[j] = uniform_in(eng, 0.0, 2.0 * M_PI);
        dgamma[j] = uniform_in(eng, -bounds.gamma, bounds.gamma);
    }
    // Built as named locals: argument evaluation order is unspecified, so a
    // move of `knots` inside the call could precede the copies.
    PiecewiseConstant omega_t(knots, std::move(omega));
    PiecewiseConstant mag_t(knots, std::move(mag));
    PiecewiseConstant phase_t(knots, std::move(phase));
    PiecewiseConstant dgamma_t(std::move(knots), std::move(dgamma));
    return make_realization(bounds, std::move(omega_t), std::move(mag_t), std::move(phase_t),
                            std::move(dgamma_t));
}

const char* to_string(SearchObjective obj) {
    switch (obj) {
        case SearchObjective::FailureProb: return "failure_prob";
        case SearchObjective::CoherenceLoss: return "coherence_loss";
        case SearchObjective::PurityLoss: return "purity_loss";
    }
    return "?";
}

double objective_value(const BlochState& s, SearchObjective obj) {
    switch (obj) {
        case SearchObjective::FailureProb: return failure_probability(s);
        case SearchObjective::CoherenceLoss: return 1.0 - coherence(s);
        case SearchObjective::PurityLoss: return 1.0 - purity(s);
    }
    return 0.0;
}

namespace {

// One extreme-valued signal in the search encoding.
struct ActiveSignal {
    enum class Which { Omega, EpsMag, Dgamma } which;
    double lo, hi;
};

// Deterministic candidate decoding: the phase index is the fastest-varying
// dimension, then segment bits in (signal-major, segment-minor) order.
Realization decode_candidate(std::uint64_t id, const UncertaintyBounds& bounds,
                             const std::vector<ActiveSignal>& active, int grid, int levels,
                             double horizon) {
    const int phase_idx = static_cast<int>(id % static_cast<std::uint64_t>(levels));
    std::uint64_t combo = id / static_cast<std::uint64_t>(levels);

    std::vector<double> knots(static_cast<std::size_t>(grid));
    for (int g = 0; g < grid; ++g)
        knots[static_cast<std::size_t>(g)] = horizon * static_cast<double>(g) / grid;

    PiecewiseConstant omega_t{}, mag_t{}, dgamma_t{};
    for (std::size_t si = 0; si < active.size(); ++si) {
        std::vector<double> values(static_cast<std::size_t>(grid));
        for (int g = 0; g < grid; ++g) {
            const int bit = static_cast<int>((combo >> (si * static_cast<std::size_t>(grid) +
                                                        static_cast<std::size_t>(g))) &
                                             1u);
            values[static_cast<std::size_t>(g)] = bit ? active[si].hi : active[si].lo;
        }
        PiecewiseConstant sig(knots, std::move(values));
        switch (active[si].which) {
            case ActiveSignal::Which::Omega: omega_t = std::move(sig); break;
            case ActiveSignal::Which::EpsMag: mag_t = std::move(sig); break;
            case ActiveSignal::Which::Dgamma: dgamma_t = std::move(sig); break;
        }
    }
    const double phase = 2.0 * M_PI * static_cast<double>(phase_idx) / levels;
    return make_realization(bounds, std::move(omega_t), std::move(mag_t),
                            PiecewiseConstant{phase}, std::move(dgamma_t));
}

}  // namespace

SearchResult adversarial_search(const UncertaintyBounds& bounds, DecoherenceKind kind,
                                const ControlSignal& ctrl, const BlochState& s0, double horizon,
                                SearchObjective objective, int grid, int levels, double dt,
                                int workers) {
    validate(bounds);
    require_physical(s0, "adversarial_search");
    if (grid < 1) throw std::invalid_argument("adversarial_search: grid must be >= 1");
    if (levels < 2) throw std::invalid_argument("adversarial_search: levels must be >= 2");
    if (!(horizon > 0.0)) throw std::invalid_argument("adversarial_search: horizon must be > 0");
    if (!(dt > 0.0)) throw std::invalid_argument("adversarial_search: dt must be > 0");

    std::vector<ActiveSignal> active;
    if (bounds.omega > 0.0)
        active.push_back({ActiveSignal::Which::Omega, -bounds.omega, bounds.omega});
    active.push_back({ActiveSignal::Which::EpsMag, 0.0, bounds.epsilon});
    if (bounds.gamma > 0.0 && kind != DecoherenceKind::Closed)
        active.push_back({ActiveSignal::Which::Dgamma, -bounds.gamma, bounds.gamma});

    const std::size_t nbits = active.size() * static_cast<std::size_t>(grid);
    const bool overflow = nbits >= 40;  // 2^40 candidates is far beyond any budget
    const std::uint64_t total =
        overflow ? 0 : (std::uint64_t{1} << nbits) * static_cast<std::uint64_t>(levels);
    if (overflow || total > kSearchBudget) {
        std::ostringstream msg;
        msg << "adversarial_search: " << active.size() << " active signals on a " << grid
            << "-segment grid with " << levels << " phase levels require ";
        if (overflow)
            msg << "2^" << nbits << " * " << levels;
        else
            msg << total;
        msg << " evaluations; the budget is " << kSearchBudget;
        throw std::runtime_error(msg.str());
    }

    int n_workers = workers > 0 ? workers : static_cast<int>(std::thread::hardware_concurrency());
    if (n_workers < 1) n_workers = 1;
    if (static_cast<std::uint64_t>(n_workers) > total) n_workers = static_cast<int>(total);

    struct Best {
        double value = -1.0;
        std::uint64_t id = 0;
    };
    std::vector<Best> best(static_cast<std::size_t>(n_workers));
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(n_workers));

    auto scan = [&](int w) {
        const std::uint64_t lo = total * static_cast<std::uint64_t>(w) /
                                 static_cast<std::uint64_t>(n_workers);
        const std::uint64_t hi = total * (static_cast<std::uint64_t>(w) + 1) /
                                 static_cast<std::uint64_t>(n_workers);
        Best local;
        try {
            for (std::uint64_t id = lo; id < hi; ++id) {
                const Realization cand = decode_candidate(id, bounds, active, grid, levels, horizon);
                const BlochState end = propagate(s0, ctrl, cand, kind, 0.0, horizon, dt);
                const double value = objective_value(end, objective);
                if (value > local.value) local = {value, id};
            }
        } catch (...) {
            errors[static_cast<std::size_t>(w)] = std::current_exception();
        }
        best[static_cast<std::size_t>(w)] = local;
    };

    if (n_workers == 1) {
        scan(0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(n_workers));
        for (int w = 0; w < n_workers; ++w) pool.emplace_back(scan, w);
        for (auto& th : pool) th.join();
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);

    // Blocks are id-ordered, so taking strictly-greater values while scanning
    // workers in order keeps the smallest candidate id on exact ties.
    Best overall;
    for (const Best& b : best)
        if (b.value > overall.value) overall = b;

    SearchResult result;
    result.worst = decode_candidate(overall.id, bounds, active, grid, levels, horizon);
    result.value = overall.value;
    result.candidate_id = overall.id;
    result.n_candidates = total;
    return result;
}

}  // namespace qsdc
