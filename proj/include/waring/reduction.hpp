#pragma once

#include "waring/bounds.hpp"
#include "waring/linalg.hpp"

namespace waring {

struct ShortestVector {
    Rational mu;
    std::vector<RingElement> v;  // primitive coefficient vector attaining mu
};

// Minimal nonzero value of the positive definite form x* M x on O^n, with a
// canonical attaining vector: enumeration runs on the restriction-of-scalars
// Z-lattice (rank 2n when E is imaginary quadratic), exact throughout.
ShortestVector shortest_vector(const HermitianForm& form);
ShortestVector shortest_vector_gram(const Field& f, const MatE& gram);

// Canonical representative of the unit orbit of v: the first nonzero
// coordinate is replaced by its canonical associate. Ties between distinct
// orbits are broken backward-lexicographically by (norm, a, b) keys.
std::vector<RingElement> canonical_unit_vector(const Field& f, const std::vector<RingElement>& v);
bool vector_key_less(const Field& f, const std::vector<RingElement>& a,
                     const std::vector<RingElement>& b);

struct WeakReduction {
    std::vector<Rational> H;  // h_1..h_n, each the minimum of its projected form
    MatE X;                   // unipotent upper triangular over E
    MatE U;                   // GL_n(O); U* M U = X* H X exactly
};

WeakReduction weak_reduce(const HermitianForm& form);
WeakReduction weak_reduce_gram(const Field& f, const MatE& gram);

// Re-derives every h_i by independent enumeration on the projected Gram
// (trailing block of X* H X); the reduction is self-certifying.
bool verify_weakly_reduced(const Field& f, const std::vector<Rational>& H, const MatE& X);

struct Balancing {
    MatE Y;                          // unipotent with entries in O
    std::vector<GradedSlice> slices; // Z_1..Z_{n-1}, entries with norm <= beta^2
};

// Right-multiplier Y over O such that XY = exp(Z_1)...exp(Z_{n-1}) with every
// Z_k entry inside the rounding region.
Balancing balance(const MatE& x);

struct ReducedForm {
    Field field;
    std::vector<Rational> H;  // positive diagonal
    MatE T;                   // unipotent, T = XY = prod exp(Z_k)
    MatE U;                   // unimodular; U* M U = T* H T
};

struct ReductionChecks {
    bool identity = false;            // U* M U = T* H T
    bool h_minimal = false;           // every h_i matches its projected minimum
    bool ratio_bound = false;         // h_i/h_j <= alpha(j-i) upper evaluation
    bool entry_bound = false;         // |T_ij|^2 <= c(j-i)^2 exactly in Q(beta)
    bool inverse_entry_bound = false; // same for T^{-1}
    bool all() const {
        return identity && h_minimal && ratio_bound && entry_bound && inverse_entry_bound;
    }
};

// weak_reduce then balance; throws if the exact factorization identity fails.
ReducedForm balanced_hkz(const HermitianForm& form);

ReductionChecks certify_reduction(const HermitianForm& form, const ReducedForm& rf);

}  // namespace waring
