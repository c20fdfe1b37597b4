#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hypk/moebius.hpp"

namespace hypk {

// Letter k > 0 is generator k-1, letter -k its inverse.
using Word = std::vector<int>;

struct SlotRef {
    int pants = 0;
    int slot = 0;
    bool operator==(const SlotRef&) const = default;
};

struct PantsEdge {
    SlotRef a, b;  // side a is the pants to the left of the oriented curve
};

struct PantsGraph {
    int genus = 2;
    std::vector<PantsEdge> edges;

    int num_pants() const { return 2 * genus - 2; }
    int num_edges() const { return 3 * genus - 3; }
    // Throws ValidationFailed on any structural defect.
    void validate() const;
    // Edge glued into (pants, slot).
    int edge_at(int pants, int slot) const;
};

struct FNCoordinates {
    std::vector<double> lengths;
    std::vector<double> twists;  // normalized: twist distance is twists[e] * lengths[e]
    void validate(const PantsGraph& g) const;
};

// Step of a path in the pants groupoid: crossing an edge (a -> b when sign > 0)
// or running once around a boundary slot of the current pants.
struct PathStep {
    enum Kind : int { Cross = 0, Loop = 1 } kind = Cross;
    int id = 0;    // edge id, or pants * 3 + slot
    int sign = 1;
    PathStep inverse() const { return {kind, id, -sign}; }
    bool operator==(const PathStep&) const = default;
};
using GroupoidPath = std::vector<PathStep>;

struct Holonomy {
    PantsGraph graph;
    FNCoordinates coords;

    // Generators 0..E-1 are the pants-curve loops x_e; E.. are the stable letters
    // t_f of the non-tree edges, in increasing edge order.
    std::vector<Isometry> gens;
    std::vector<int> nontree;          // non-tree edge ids
    std::vector<int> stable_of_edge;   // generator index of t_e, or -1 for tree edges
    std::vector<Isometry> pants_frame; // pants-local to global coordinates
    std::vector<std::array<Word, 3>> slot_words;
    std::vector<Word> pants_loops;     // x_e
    std::vector<Word> dual_loops;      // y_e, crossing e (once when e is nonseparating)
    std::vector<bool> separating_edge;

    // Local data in per-pants frames centred in each pants, so products along a
    // path only grow as fast as the geometry forces them to.
    std::vector<std::array<Isometry, 3>> local_boundary;
    std::vector<Isometry> local_glue;  // side-b frame to side-a frame
    std::vector<GroupoidPath> tree_path;  // pants 0 to pants p
    // Fat metric on the same marked graph; topological quantities are computed there.
    std::shared_ptr<const Holonomy> reference;

    int num_generators() const { return static_cast<int>(gens.size()); }
    const Holonomy& topology() const { return reference ? *reference : *this; }
    // Global image through the root frame; ill-conditioned for pinched surfaces.
    Isometry image(const Word& w) const;
    // Cyclically reduced closed path of the free-homotopy class of w.
    GroupoidPath cyclic_path(const Word& w) const;
    // Matrix of a path in the frame of its starting pants.
    Isometry path_image(const GroupoidPath& p) const;
    std::vector<std::string> generator_names() const;
};

struct HolonomyReport {
    std::vector<std::string> defects;
    bool ok() const { return defects.empty(); }
};

inline constexpr double kReferenceLength = 2.0;

// Reduced cyclic form of a free-homotopy class in the graph of pants groups: local words
// (letters +-1, +-2 for C0, C1 of the pants; C2 = C0^-1 C1^-1) separated by edge
// crossings. No crossing backtracks over a boundary power, so the crossing sequence is
// the sequence of pants curves met by the closed geodesic.
struct CyclicForm {
    std::vector<int> pants;               // pants of segment i
    std::vector<std::vector<int>> local;  // local word of segment i
    std::vector<PathStep> cross;          // crossing that ends segment i
};

// A class that is a power of the boundary loop of (pants, slot).
struct SlotPower {
    int pants = 0, slot = 0, power = 0;
};

Holonomy build_holonomy(const PantsGraph& g, const FNCoordinates& x, bool with_reference = true);
double word_length(const Holonomy& h, const Word& w);
CyclicForm cyclic_form(const Holonomy& h, const Word& w);
std::optional<SlotPower> as_slot_power(const CyclicForm& f);
SlotRef departure(const PantsGraph& g, const PathStep& x);
SlotRef arrival(const PantsGraph& g, const PathStep& x);
// Matrix of a local word in the centred frame of its pants.
Isometry local_image(const Holonomy& h, int pants, const std::vector<int>& local);
// Side-b to side-a frame change for a crossing a -> b, inverted for b -> a.
Isometry crossing_image(const Holonomy& h, const PathStep& x);
// Crossings of the reduced cyclic form of w: total, and per pants edge.
int crossing_count(const Holonomy& h, const Word& w);
std::vector<int> edge_crossings(const Holonomy& h, const Word& w);
HolonomyReport validate(const Holonomy& h, int max_word_length = 4);

// Boundary frames of a single pants with the given boundary lengths: frame i maps
// the upward imaginary axis onto boundary i, pants on the left, i onto the foot of
// the seam towards boundary (i+1) mod 3.
std::array<Isometry, 3> pants_boundary_frames(double l0, double l1, double l2);

std::string word_to_string(const Word& w, const std::vector<std::string>& names);
Word inverse_word(const Word& w);
Word concat(const Word& a, const Word& b);
Word reduce_word(const Word& w);

namespace presets {
PantsGraph genus2_theta();
PantsGraph genus2_dumbbell();
// Genus 3, pants curves gamma_1..gamma_6 all nonseparating (edge i-1 is gamma_i).
PantsGraph fig5();
// Same surface decomposed along gamma_1, gamma_2', gamma_3..gamma_6 (edge 1 is gamma_2').
PantsGraph fig5_prime();
FNCoordinates example1(int n, double delta);
FNCoordinates example63(int n);
}  // namespace presets

std::uint64_t surface_hash(const PantsGraph& g, const FNCoordinates& x);

}  // namespace hypk
