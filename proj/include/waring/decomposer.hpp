#pragma once

#include <variant>

#include "waring/bounds.hpp"
#include "waring/reduction.hpp"
#include "waring/sos_core.hpp"

namespace waring {

// g x n matrix over O certifying M = R*R (a sum of g norms of linear forms).
struct Representation {
    MatE rows;
    int g() const { return rows.rows(); }
    int n() const { return rows.cols(); }
};

// Exact equality test R*R == M.
bool verify(const HermitianForm& form, const Representation& rep);

struct DecomposeCaps {
    unsigned long chol_bits = 128;    // starting Cholesky precision
    int max_precision_retries = 3;    // doublings on premise failure
    SearchBudget fallback;            // oracle budget for the fallback search
    BlockStrategy block_strategy = BlockStrategy::automatic;
};

struct BlockTraceEntry {
    int i, j;
    std::string family;
    std::string strategy;
    int rows;
};

struct DecomposeTrace {
    std::string path;  // "short_circuit" | "pipeline" | "fallback_search"
    Rational mu = 0;
    Rational threshold = 0;  // G(n) upper evaluation (0 when not computed)
    int retries = 0;
    unsigned long bits_used = 0;
    std::vector<BlockTraceEntry> blocks;
    Int achieved_g;
    Int target_paper;          // 2^(sigma+2) n^2 + n
    Int target_constructive;   // 6 n^2
    std::string notes;
};

struct DecomposeSuccess {
    Representation rep;  // always verified against the original form
    DecomposeTrace trace;
};

struct BelowThreshold {
    Rational mu;
    Rational threshold;
    std::optional<Certificate> certificate;  // non-representability, when provable
    SearchStats search_stats;
    std::string detail;
};

struct BlockFailure {
    std::string detail;
    std::vector<BlockFailureInfo> failures;
    DecomposeTrace trace;
};

using DecomposeOutcome = std::variant<DecomposeSuccess, BelowThreshold, BlockFailure>;

// The end-to-end pipeline: balanced reduction, diagonal extraction, Cholesky
// rounding, block assembly, block representation, basis restore. Premise
// failures double the Cholesky precision and retry; below the threshold the
// fallback search (and, in the small-diagonal regime, the refuter) decides.
// A Success outcome is always exactly verified.
DecomposeOutcome decompose(const HermitianForm& form, const BoundsProfile& profile,
                           const DecomposeCaps& caps = {});

// Peeling recursion: rows with nonzero first coefficient are split off at a
// minimal vector (at most floor(mu) of them), the tail recurses on n-1
// variables. Never increases g.
Representation compress_representation(const HermitianForm& form, const Representation& rep,
                                       const BoundsProfile& profile,
                                       const DecomposeCaps& caps = {});

// Gram matrix of sqrt(s) L: the form scaled by a positive integer.
HermitianForm scale_form(const HermitianForm& form, const Int& s);

}  // namespace waring
