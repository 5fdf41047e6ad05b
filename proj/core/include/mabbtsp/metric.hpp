/// @file metric.hpp
/// Edge-quality scoring: the backbone-discounted distance bd = (1-b)*d
/// and its normalized weighted blend with alpha. The blend weight w slides
/// between pure alpha order (w = 1) and pure bd order (w = 0).

#pragma once

#include <cstdint>

#include "mabbtsp/backbone.hpp"
#include "mabbtsp/candidate.hpp"

namespace mabb {

/// Distance discounted by backbone frequency.
inline double bd_value(std::int64_t d, double b) { return (1.0 - b) * static_cast<double>(d); }

/// Normalization ranges over the current candidate-edge population, plus
/// the blend weight for this trial.
struct MetricSnapshot {
    double alpha_min = 0.0;
    double alpha_max = 0.0;
    double bd_min = 0.0;
    double bd_max = 0.0;
    double w = 1.0;
};

/// w * alpha' + (1-w) * bd' with min-max normalized terms; a degenerate
/// range (max == min) contributes 0 so ordering falls through to the
/// candidate tie-break.
inline double combined_score(double alpha, double bd, const MetricSnapshot& snap) {
    double alpha_n = snap.alpha_max > snap.alpha_min
                         ? (alpha - snap.alpha_min) / (snap.alpha_max - snap.alpha_min)
                         : 0.0;
    double bd_n =
        snap.bd_max > snap.bd_min ? (bd - snap.bd_min) / (snap.bd_max - snap.bd_min) : 0.0;
    return snap.w * alpha_n + (1.0 - snap.w) * bd_n;
}

/// Min/max of alpha and bd over exactly the candidate edges, with bd
/// recomputed from the current backbone frequencies.
MetricSnapshot snapshot_ranges(const CandidateSets& sets, const BackboneStore& backbone, double w);

} // namespace mabb
