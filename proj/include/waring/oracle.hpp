#pragma once

#include <optional>
#include <string>

#include "waring/linalg.hpp"

namespace waring {

struct SearchBudget {
    int g_max = 0;        // max rows; 0 derives the trace bound
    long node_cap = 2000000;
    // Exceeding the cap yields NotFound with exhausted=false, never a
    // nonexistence claim.
};

struct SearchStats {
    long nodes = 0;
    bool exhausted = false;  // true: the whole canonical tree was traversed
};

struct SearchResult {
    std::optional<MatE> rep;  // g x n over O with R*R = M, zero rows pruned
    SearchStats stats;
};

// Backtracking over columns of R: column i is a vector in O^g with
// sum_j norm(R_ji) = M_ii and prescribed hermitian products against the
// previous columns. Ambient row permutations and per-row unit scalings are
// quotiented away by canonical ordering, so the traversal is exhaustive on
// orbits. Deterministic: repeated runs yield the identical matrix.
SearchResult search_representation(const HermitianForm& form, const SearchBudget& budget);

// Decision tree replaying an exhausted search.
struct RefuteNode {
    int column = 0;
    std::string candidate;               // sparse "axis:entry" rendering
    std::vector<RefuteNode> children;
    std::string refuted;                 // leaf reason when children is empty
};

struct Certificate {
    int rank = 0;
    Int trace;
    int rows_searched = 0;
    long nodes = 0;
    RefuteNode root;
};

struct RefuteOutcome {
    enum class Kind { certificate, representable, unknown };
    Kind kind = Kind::unknown;
    std::optional<Certificate> certificate;
    std::optional<MatE> rep;  // when a representation turned up instead
    std::string reason;       // for unknown
};

// Exhaustive finite case analysis in the regime where all diagonal entries
// are at most 3: candidate columns then have support <= 3 with entries of
// norm <= 3, so the constraint system is finite independent of g. Outside
// the regime returns unknown. Never contradicts search_representation.
RefuteOutcome prove_not_representable(const HermitianForm& form);

}  // namespace waring
