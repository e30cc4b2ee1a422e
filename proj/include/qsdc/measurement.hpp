// Projective measurement along Z or X with state collapse, plus the
// imperfect-readout model: the reported label may flip while the physical
// collapse always follows the true projection.
#pragma once

#include <random>

#include "qsdc/bloch.hpp"

namespace qsdc {

enum class Outcome { Zero, One };

const char* to_string(Outcome o);

/// axis Z: Zero is the +z eigenstate (|0>), One the -z eigenstate.
/// axis X: Zero is the +x eigenstate, One the -x eigenstate.
/// p01 = P(report One | true Zero), p10 = P(report Zero | true One).
struct MeasurementModel {
    Axis axis = Axis::Z;
    double p01 = 0.0;
    double p10 = 0.0;
};

/// Rejects axis Y and flip probabilities outside [0, 1).
void validate(const MeasurementModel& m);

struct MeasurementRecord {
    Outcome true_outcome = Outcome::Zero;
    Outcome reported_outcome = Outcome::Zero;
    BlochState post_state{};  ///< axis eigenstate of the true outcome
    double time = 0.0;
};

/// Samples one projective measurement: true One with probability (1-z)/2 on
/// Z (respectively (1-x)/2 on X), collapse to the corresponding eigenstate,
/// then an independent draw decides the reported-label flip. Consumes
/// exactly two uniforms from the stream; deterministic under a fixed stream
/// state.
MeasurementRecord measure(const BlochState& s, const MeasurementModel& m,
                          std::mt19937_64& stream, double time = 0.0);

}  // namespace qsdc
