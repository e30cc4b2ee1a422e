#include "qsdc/measurement.hpp"

#include <stdexcept>

#include "qsdc/rng.hpp"

namespace qsdc {

const char* to_string(Outcome o) { return o == Outcome::Zero ? "zero" : "one"; }

void validate(const MeasurementModel& m) {
    if (m.axis == Axis::Y)
        throw std::invalid_argument("MeasurementModel: only Z and X axes are supported");
    if (!(m.p01 >= 0.0 && m.p01 < 1.0))
        throw std::invalid_argument("MeasurementModel: p01 must lie in [0, 1)");
    if (!(m.p10 >= 0.0 && m.p10 < 1.0))
        throw std::invalid_argument("MeasurementModel: p10 must lie in [0, 1)");
}

MeasurementRecord measure(const BlochState& s, const MeasurementModel& m, std::mt19937_64& stream,
                          double time) {
    validate(m);
    require_physical(s, "measure");

    // P(One) is the weight of the -axis eigenstate.
    const double p_one = m.axis == Axis::Z ? 0.5 * (1.0 - s.z) : 0.5 * (1.0 - s.x);
    const bool one = uniform01(stream) < p_one;
    // The flip draw is consumed unconditionally so the stream advances at a
    // fixed rate regardless of outcomes or error rates.
    const double flip_draw = uniform01(stream);
    const bool flip = flip_draw < (one ? m.p10 : m.p01);

    MeasurementRecord rec;
    rec.true_outcome = one ? Outcome::One : Outcome::Zero;
    rec.reported_outcome = (one != flip) ? Outcome::One : Outcome::Zero;
    const double sign = one ? -1.0 : 1.0;
    rec.post_state = m.axis == Axis::Z ? BlochState{0.0, 0.0, sign} : BlochState{sign, 0.0, 0.0};
    rec.time = time;
    return rec;
}

}  // namespace qsdc
