#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "hypk/surface.hpp"

namespace hypk {

// Coordinates over the basis of homology_basis_loops.
using HomologyClass = std::vector<int>;

struct PairingMatrix {
    std::vector<std::vector<int>> m;  // m[i][j] = Int(basis_i, basis_j)
    int size() const { return static_cast<int>(m.size()); }
};

// Free and cyclic reduction.
Word cyclically_reduced(const Word& w);
// Lexicographically least rotation of the cyclic reduction of w.
Word canonical_rotation(const Word& w);
// Whether the cyclic reduction of w is u^k for some k > 1.
bool is_proper_power(const Word& w);

HomologyClass abelianize(const Holonomy& h, const Word& w);
// x_f then t_f over the non-tree edges f; their classes are the unit vectors.
std::vector<Word> homology_basis_loops(const Holonomy& h);
// Throws DegenerateBasis unless the matrix is unimodular.
PairingMatrix pairing_matrix(const Holonomy& h);
long long algebraic_int(const HomologyClass& a, const HomologyClass& b, const PairingMatrix& p);
// Exact integer determinant (fraction-free elimination).
long long integer_determinant(std::vector<std::vector<long long>> m);

struct SignedCrossing {
    double t = 0;  // position along u (for a pants curve u, the index along v)
    int sign = 0;  // +1 when v crosses u from its left to its right
};

// One entry per intersection point of the closed geodesics of u and v, computed on
// the fat reference metric. Throws SharedGeodesic when u and v share their geodesic,
// NotHyperbolic for trivial classes, BallTooSmall when the arcs outgrow the lift ball.
std::vector<SignedCrossing> geometric_int_signed(const Holonomy& h, const Word& u, const Word& v);
int geometric_int(const Holonomy& h, const Word& u, const Word& v);
int signed_int(const Holonomy& h, const Word& u, const Word& v);
// Whether the class of w is not a proper power in the surface group.
bool is_primitive(const Holonomy& h, const Word& w);
// Transverse double points of the closed geodesic; memoized per pants graph. Throws
// SharedGeodesic for proper powers.
int self_int_count(const Holonomy& h, const Word& w);
// Homological criterion, valid for simple curves only.
bool is_nonseparating(const Holonomy& h, const Word& w);

struct CurveEntry {
    Word word;  // canonical rotation
    double length = 0;
    HomologyClass homology;
    bool simple = false;
    std::vector<int> crossings;  // per pants edge
};

struct CurveTable {
    double cutoff = 0;
    int max_word_length = 0;
    int word_budget = 0;     // word length needed to cover the cutoff
    bool certified = false;  // word_budget fits max_word_length
    double min_translation = 0;  // shortest generator class, the word-budget constant
    std::uint64_t surface_hash = 0;
    std::vector<CurveEntry> entries;  // sorted by length, then word
};

struct EnumerationConfig {
    int max_word_length = 0;  // 0: 5 at genus 2, 4 above
    std::size_t node_limit = 4'000'000;
    int workers = 0;
};

int default_word_length(const PantsGraph& g);
// Oriented classes of length <= cutoff among cyclically reduced primitive words of
// at most max_word_length letters; both orientations appear. Throws BudgetExceeded.
CurveTable enumerate_classes(const Holonomy& h, double cutoff, const EnumerationConfig& config = {});
// The entries of a larger table that lie below cutoff.
CurveTable restrict_table(const CurveTable& t, double cutoff);

// Versioned text format; load throws ParseError.
void save_table(const CurveTable& t, const std::string& path);
CurveTable load_table(const std::string& path);

}  // namespace hypk
