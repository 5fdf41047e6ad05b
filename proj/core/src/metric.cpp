#include "mabbtsp/metric.hpp"

#include <algorithm>
#include <limits>

namespace mabb {

MetricSnapshot snapshot_ranges(const CandidateSets& sets, const BackboneStore& backbone,
                               double w) {
    if (backbone.trials() < 1)
        throw UsageError("snapshot_ranges: backbone has no recorded tours");
    MetricSnapshot snap;
    snap.w = w;
    snap.alpha_min = std::numeric_limits<double>::infinity();
    snap.alpha_max = -std::numeric_limits<double>::infinity();
    snap.bd_min = std::numeric_limits<double>::infinity();
    snap.bd_max = -std::numeric_limits<double>::infinity();
    for (int city = 0; city < sets.n(); ++city) {
        for (const auto& e : sets.of(city)) {
            double bd = bd_value(e.dist, backbone.frequency(city, e.to));
            snap.alpha_min = std::min(snap.alpha_min, e.alpha);
            snap.alpha_max = std::max(snap.alpha_max, e.alpha);
            snap.bd_min = std::min(snap.bd_min, bd);
            snap.bd_max = std::max(snap.bd_max, bd);
        }
    }
    return snap;
}

} // namespace mabb
