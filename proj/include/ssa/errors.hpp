#pragma once

#include <stdexcept>
#include <string>

namespace ssa {

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// The cover lemma requires positive genus; genus-0 bases are rejected, not extended.
struct invalid_genus_error : error {
    using error::error;
};

// A CoverSpec that does not fit its base surface (partition count or sums).
struct spec_mismatch_error : error {
    using error::error;
};

// Parity criterion fails: no cover with the prescribed boundary data exists.
struct infeasible_error : error {
    using error::error;
};

// Parity feasible but the search budget was spent. Distinct from infeasible:
// raising the budget or changing the seed may succeed.
struct search_exhausted_error : error {
    using error::error;
};

// Exhaustive enumeration would exceed the configured cap.
struct budget_exceeded_error : error {
    using error::error;
};

// Generator images do not satisfy the surface relator.
struct relator_violation_error : error {
    using error::error;
};

struct unknown_generator_error : error {
    using error::error;
};

struct not_simple_error : error {
    using error::error;
};

struct invalid_chi_error : error {
    using error::error;
};

struct witness_invariant_error : error {
    using error::error;
};

struct parse_error : error {
    using error::error;
};

}  // namespace ssa
