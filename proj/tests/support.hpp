#pragma once

#include <cmath>
#include <random>

#include "hypk/hyptrig.hpp"
#include "hypk/surface.hpp"

namespace hypk::testing {

inline FNCoordinates random_coords(int edges, std::mt19937_64& rng, double lo = 0.3, double hi = 3.0) {
    std::uniform_real_distribution<double> len(lo, hi), tw(-0.5, 0.5);
    FNCoordinates x;
    for (int e = 0; e < edges; ++e) {
        x.lengths.push_back(len(rng));
        x.twists.push_back(tw(rng));
    }
    return x;
}

// Length of w after n Dehn twists along e, computed on the unshifted surface: every
// crossing of e, in either direction, is followed by -n turns around the boundary slot
// it arrives at. The sign is frozen against the twist-shift route.
inline double remarked_length(const Holonomy& h, const Word& w, int e, int n) {
    GroupoidPath q;
    for (const PathStep& s : h.cyclic_path(w)) {
        q.push_back(s);
        if (s.kind != PathStep::Cross || s.id != e) continue;
        const SlotRef a = arrival(h.graph, s);
        const int sign = n > 0 ? -1 : 1;
        for (int k = 0; k < std::abs(n); ++k) q.push_back({PathStep::Loop, a.pants * 3 + a.slot, sign});
    }
    return trace_to_length(std::fabs(h.path_image(q).trace()));
}

}  // namespace hypk::testing
