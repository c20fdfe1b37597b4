#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hypk/surface_io.hpp"

namespace hypk {

struct SuiteResult {
    std::string suite;
    std::vector<std::string> failures;
    std::vector<std::string> notes;  // reported quantities such as the auxiliary-surface ratio R
    bool passed() const { return failures.empty(); }
};

// trig, moebius, holonomy, intersection, lemma33, and the fault-injection suite
// fault-determinant, which must fail.
std::vector<std::string> suite_names();
// Throws DomainError for an unknown suite.
SuiteResult run_suite(const std::string& name, std::uint64_t seed = 1, int workers = 0);
// Holonomy, pairing and table invariants of one surface.
SuiteResult verify_surface(const SurfaceData& s, double cutoff = 8.0, int workers = 0);

}  // namespace hypk
