// Piecewise-constant scalar signals on [0, inf): the shared representation
// for control channels and uncertainty realizations. Right-continuous, with
// explicit breakpoint lists so the integrator can snap steps to jumps.
#pragma once

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace qsdc {

/// value(t) = values[i] for t in [knots[i], knots[i+1]), with knots[0] == 0
/// and the last piece extending to +infinity. Queries left of 0 clamp to the
/// first piece.
class PiecewiseConstant {
  public:
    PiecewiseConstant() : knots_{0.0}, values_{0.0} {}

    explicit PiecewiseConstant(double constant_value) : knots_{0.0}, values_{constant_value} {}

    PiecewiseConstant(std::vector<double> knots, std::vector<double> values)
        : knots_(std::move(knots)), values_(std::move(values)) {
        if (knots_.empty() || knots_.size() != values_.size())
            throw std::invalid_argument("PiecewiseConstant: need equal, nonzero knot/value counts");
        if (knots_.front() != 0.0)
            throw std::invalid_argument("PiecewiseConstant: first knot must be 0");
        for (std::size_t i = 1; i < knots_.size(); ++i)
            if (!(knots_[i] > knots_[i - 1]))
                throw std::invalid_argument("PiecewiseConstant: knots must strictly increase");
    }

    static PiecewiseConstant constant(double v) { return PiecewiseConstant(v); }

    double at(double t) const {
        // Last knot <= t; upper_bound returns the first knot > t.
        auto it = std::upper_bound(knots_.begin(), knots_.end(), t);
        if (it == knots_.begin()) return values_.front();
        return values_[static_cast<std::size_t>(it - knots_.begin()) - 1];
    }

    /// Interior breakpoints (excludes the leading 0), for step snapping.
    std::vector<double> discontinuities() const {
        return {knots_.begin() + 1, knots_.end()};
    }

    const std::vector<double>& knots() const { return knots_; }
    const std::vector<double>& values() const { return values_; }

    bool is_constant() const { return knots_.size() == 1; }

  private:
    std::vector<double> knots_;
    std::vector<double> values_;
};

/// Sorted union of several discontinuity lists restricted to the open
/// interval (t0, t1), duplicates (within absolute tol) removed. Used to cut
/// an integration horizon into smooth pieces.
inline std::vector<double> merge_breakpoints(const std::vector<std::vector<double>>& lists,
                                             double t0, double t1, double tol = 1e-12) {
    std::vector<double> merged;
    for (const auto& list : lists)
        for (double t : list)
            if (t > t0 + tol && t < t1 - tol) merged.push_back(t);
    std::sort(merged.begin(), merged.end());
    merged.erase(std::unique(merged.begin(), merged.end(),
                             [tol](double a, double b) { return b - a <= tol; }),
                 merged.end());
    return merged;
}

}  // namespace qsdc
