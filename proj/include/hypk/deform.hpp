#pragma once

#include <string>
#include <vector>

#include "hypk/curves.hpp"
#include "hypk/surface.hpp"

namespace hypk {

// Raises every length below a1 to a1; twists and the other lengths are kept.
FNCoordinates auxiliary_surface(const PantsGraph& g, const FNCoordinates& x);

struct DeformationRow {
    int id = 0;  // index of the class in the table of X
    Word word;
    double before = 0;  // length on X
    double after = 0;   // length on Y
    bool crossing_short = false;
    double ratio = 0;  // before / after
};

struct DeformationReport {
    std::vector<DeformationRow> rows;  // one row per unoriented simple class
    std::vector<int> short_edges;
    double sys_x = 0;
    double sys_y = 0;
    bool sys_y_ok = false;  // |sys(Y) - a1| <= 1e-8
    double max_disjoint_ratio = 0;
    double max_crossing_ratio = 0;
    double R = 0;  // max crossing ratio over |log sys(X)|
    bool certified = false;
};

// Compares the simple classes of X below cutoff with their lengths on y. Throws
// DomainError unless sys(X) < a1 and y is the auxiliary surface of x, and
// RegimeViolation when a class disjoint from the short curves gets longer on X.
DeformationReport check_auxiliary_bounds(const PantsGraph& g, const FNCoordinates& x, const FNCoordinates& y,
                                         double cutoff, const EnumerationConfig& config = {});
std::string deformation_csv(const DeformationReport& r, const std::vector<std::string>& names);

// Sets the targeted lengths to delta; throws DomainError when delta shortens one.
FNCoordinates lengthen_curves(const PantsGraph& g, const FNCoordinates& x, const std::vector<int>& targets,
                              double delta);

struct TwistOrbit {
    std::vector<int> n;
    std::vector<double> length;
    int argmin = 0;  // offset of the shortest member; ties go to smaller |n|, then smaller n
    double min_length = 0;
    bool disjoint = false;  // w misses the edge, so the sweep is constant
};

// Lengths of the n-fold Dehn twists of w along edge e, n in [-window, window], read off
// by shifting the normalized twist of e by n. A disjoint w is returned flagged, or
// rejected with CurveDisjoint when strict.
TwistOrbit twist_orbit(const PantsGraph& g, const FNCoordinates& x, const Word& w, int e, int window,
                       bool strict = false, int workers = 0);

struct TwistDescent {
    std::vector<int> edges;
    std::vector<int> offsets;  // per edge
    double initial_length = 0;
    double min_length = 0;  // descent-optimal, never above initial_length
    bool window_exhausted = false;  // some offset reached the window boundary
    int moves = 0;
};

// Coordinate descent over integer twist offsets within [-window, window]; throws
// DomainError on repeated edges.
TwistDescent minimize_over_twists(const PantsGraph& g, const FNCoordinates& x, const Word& w,
                                  const std::vector<int>& edges, int window);

}  // namespace hypk
