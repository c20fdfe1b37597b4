#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hypk/surface.hpp"

namespace hypk {

enum class SearchMethod { NelderMead, CoordinateDescent };

struct SearchConfig {
    SearchMethod method = SearchMethod::NelderMead;
    int restarts = 1;             // restart 0 starts at init, later ones at seeded perturbations
    int max_evaluations = 120;    // per restart
    double cutoff = 8.0;          // fixed cutoff; <= 0 selects 4 x the longest pants curve
    double confirm_margin = 2.0;  // the best point is re-evaluated at cutoff + margin
    double step = 0.25;           // initial step in log-length and twist units
    double tolerance = 1e-6;
    double min_length = 0.02, max_length = 12.0;
    std::uint64_t seed = 1;
    int max_word_length = 0;
    int workers = 0;
};

struct SearchIterate {
    int restart = 0;
    FNCoordinates coords;  // twists folded to [-1/2, 1/2)
    double khat = 0, sys = 0, sys_h = 0, cutoff = 0;
    bool certified = false;
};

struct SearchTrace {
    std::vector<SearchIterate> iterates;
    int best = -1;  // minimal khat among certified iterates, else among all
    bool best_certified = false;
    bool budget_exhausted = false;  // some restart stopped on its evaluation budget
    SearchIterate confirmed;        // best point at the confirmation cutoff
    SearchConfig config;
};

// Twist folded into [-1/2, 1/2).
double fold_twist(double t);

// Derivative-free minimization of the K lower bound over lengths (in log scale) and
// folded twists. Evaluations are memoized by surface hash.
SearchTrace minimize_k(const PantsGraph& g, const FNCoordinates& init, const SearchConfig& config = {});

std::string trace_csv(const SearchTrace& t);

}  // namespace hypk
