#pragma once

#include "waring/matrix.hpp"

namespace waring {

// Exact positive semidefiniteness of a hermitian matrix over E, decided by
// pivoted LDL*: a negative pivot refutes; a zero maximal pivot forces the
// whole remaining matrix to vanish.
bool is_positive_semidefinite(const MatE& m);

// Exact positive definiteness (all n pivots strictly positive).
bool is_positive_definite(const MatE& m);

// exp(Z) = sum_{k<n} Z^k/k! for strictly upper triangular Z; exact and
// unipotent, with exp(Z)exp(-Z) = I.
MatE nilpotent_exp(const MatE& z);

// Approximate upper-triangular factor W with W*W ~ M at the requested binary
// precision. M must be exactly psd (checked). Entries of W are elements of E
// (dyadic approximations of the archimedean factor); downstream consumers
// compute exactly from them, so precision only affects slack, not soundness.
MatE cholesky_upper(const MatE& m, unsigned long bits);

// Completes a primitive column v over O to a matrix in GL_n(O) whose first
// column is v. Throws with the offending gcd if v is not primitive.
MatE extend_to_unimodular(const Field& f, const std::vector<RingElement>& v);

// Iterated gcd of a list with Bezout witnesses: g = sum_i c_i v_i.
struct MultiGcd {
    RingElement g;
    std::vector<RingElement> coeffs;
};
MultiGcd ideal_gcd_list(const Field& f, const std::vector<RingElement>& v);

// det(U) is a unit of O
bool is_unimodular(const MatE& u);

}  // namespace waring
