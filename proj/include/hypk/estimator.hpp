#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "hypk/curves.hpp"
#include "hypk/surface.hpp"

namespace hypk {

struct SystoleResult {
    double length = 0;
    Word witness;
    bool certified = false;  // the table certifiably covers twice the length
};

// Shortest simple entry; throws EmptyTable.
SystoleResult systole(const Holonomy& h, const CurveTable& table);
// Shortest simple entry with nonzero homology; throws EmptyTable.
SystoleResult homological_systole(const Holonomy& h, const CurveTable& table);

struct KEstimate {
    double value = 0;  // |Int(alpha, beta)| / (l(alpha) l(beta))
    Word alpha, beta;  // lexicographically least among maximizing pairs
    long long intersection = 0;
    double length_alpha = 0, length_beta = 0;
    double cutoff = 0;
    bool certified = false;
    double sys_h = 0;     // homological systole of the table, 0 when none
    double envelope = 0;  // 9 / sys_h^2
    std::size_t simple_classes = 0;
};

// Lower bound for K over the simple entries of the table; throws EmptyTable.
KEstimate k_lower_bound(const Holonomy& h, const CurveTable& table, int workers = 0);

// Crossings of a simple curve with entry c: read off the pants edge when gamma is a
// pants curve, otherwise computed geometrically.
int crossing_number(const Holonomy& h, const Word& gamma, const CurveEntry& c);

struct DualPair {
    Word gamma;
    double gamma_length = 0;
    Word alpha;  // shortest nonseparating simple entry crossing gamma once
    double alpha_length = 0;
    double value = 0;  // 1 / (l(gamma) l(alpha))
};

struct AsympPrediction {
    double threshold = 1;
    std::vector<DualPair> gammas;  // one per unoriented class, table order
    double predictor = 0;
    int argmax = -1;
};

// Throws NoDualFound when no short nonseparating class exists or some has no dual
// below the cutoff.
AsympPrediction asymp_predictor(const Holonomy& h, const CurveTable& table, double threshold = 1.0,
                                int workers = 0);

struct DualBound {
    Word beta;
    double beta_length = 0;
    double gamma_length = 0;
    double sys_h = 0;
    double ratio = 0;  // l(beta) / (g (g + |log sys_h|))
    double k_pair = 0;  // 1 / (l(gamma) l(beta))
    bool collar_ok = false;  // l(beta) >= 2 collar_half_width(l(gamma))
};

// Shortest simple beta crossing gamma once; throws NoDualFound.
DualBound dual_curve_bound_check(const Holonomy& h, const CurveTable& table, const Word& gamma);

struct BasisCurve {
    Word word;
    double length = 0;
    HomologyClass homology;
    double bound = 0;  // reference length bound for the k-th curve of a short basis
};

struct HomologyBasis {
    std::vector<BasisCurve> curves;  // 2g curves, shortest first
    long long determinant = 0;       // of the class matrix, +-1
    double sys_h = 0;
    // Best pair among the first g+1 curves with |Int| = 1, and its value.
    int pair_i = -1, pair_j = -1;
    double pair_value = 0;
    double floor = 0;  // 2^-34 (min(sys_h, 1) / log g)^2
};

// Greedy shortest-first basis of simple classes; throws RankDeficient.
HomologyBasis homology_basis_search(const Holonomy& h, const CurveTable& table);

enum class SurgeryRegime {
    Direction,     // sum of lengths <= l(alpha), |Int(gamma, a)| = i(gamma, a)
    CrossingOnce,  // sum of lengths <= l(alpha)(1 + max l/|log l|), i(a, gamma) <= 1
};

struct SurgeryWitness {
    Word alpha;
    double alpha_length = 0;
    std::vector<Word> gammas;
    SurgeryRegime regime = SurgeryRegime::Direction;
    std::vector<Word> witness;
    std::vector<double> lengths;
    double total_length = 0;
    double length_bound = 0;
    bool homology_ok = false, length_ok = false, intersection_ok = false;
    std::size_t subsets_tried = 0;
};

// First witness set of at most max_size distinct table entries, by size and then by
// table order; throws NotFound with the search budget.
SurgeryWitness surgery_witness_search(const Holonomy& h, const CurveTable& table, const Word& alpha,
                                      const std::vector<Word>& gammas, SurgeryRegime regime, int max_size = 4);

struct SideEstimate {
    std::vector<int> pants;
    bool empty = true;
    KEstimate estimate;
};

struct SideRestrictedK {
    std::vector<SideEstimate> sides;
    double max_over_sides = 0;
    KEstimate unrestricted;
    std::size_t excluded = 0;  // entries crossing or lying on the multicurve
};

// Splits the entries disjoint from a multicurve of short separating pants edges by
// the complementary component they live in. Throws DomainError when an edge is not
// separating or not shorter than a1.
SideRestrictedK side_restricted_k(const Holonomy& h, const CurveTable& table, const std::vector<int>& multicurve,
                                  int workers = 0);

enum class AsymptoticFamily { Example1, Example63 };

struct SweepRow {
    int n = 0;
    double delta = 0;
    double sys = 0, sys_h = 0;
    double khat = 0, predictor = 0;
    double normalized_product = 0;  // predictor times the family normalization
    double normalized_khat = 0;     // khat times the family normalization
    double cutoff = 0;
    bool certified = false;
};

// Cutoff that covers duals crossing four curves of length 1/n.
double sweep_cutoff(int n);
// Normalization is 2(1+delta) sys_h |log sys_h| for Example1 and 2 log n / n for Example63.
std::vector<SweepRow> asymptotic_sweep(AsymptoticFamily family, double delta, const std::vector<int>& ns,
                                       int workers = 0);

}  // namespace hypk
