#pragma once

#include <array>
#include <optional>
#include <string>
#include <variant>

#include "waring/linalg.hpp"
#include "waring/oracle.hpp"

namespace waring {

// c1 >= c2 >= c3 >= c4 >= 0 with c1^2+c2^2+c3^2+c4^2 = b; verified exactly.
std::array<Int, 4> four_squares(const Int& b);

struct ResidueSplit {
    RingElement p;  // window element, |a|,|b| <= 2^(sigma+1)-1, p = s mod 2^sigma O
    RingElement q;  // s = p + 2^sigma q with norm(s) >= norm(2^sigma q)
};

// The window split of the block construction; conjugation-equivariant:
// split(s*) = (p*, q*). Imaginary quadratic fields only.
ResidueSplit split_residue_window(const Field& f, const RingElement& s, int sigma);

struct PairPattern {
    Int n_left, n_right;  // diagonal of the certified 2x2 Gram
    MatE cols;            // 2 x (|a|+|b|) over O with cols * cols^* = [[n_left, p],[p*, n_right]]
};

// The explicit unit-pattern certificate for [[n_left, p],[p*, n_right]].
PairPattern two_by_two_pattern(const Field& f, const RingElement& p);

enum class BlockStrategy { automatic, oracle_only, constructive_only };

struct BlockFailureInfo {
    std::string kind;  // "ConstructiveSlackInsufficient" | "SearchBudgetExceeded"
    MatE reduced_block;
    std::string detail;
};

struct BlockRepresentation {
    MatE rows;            // g x 2 over O, rows* rows... stored as g x 2 with R*R = B
    std::string strategy; // "oracle" | "constructive" | "diagonal"
};

using BlockResult = std::variant<BlockRepresentation, BlockFailureInfo>;

// Represents a 2x2 integral hermitian psd block as a stack of rows supported
// on two coordinates. Strategy ladder: GL_2(O)-reduce and search (small
// blocks), else the constructive split (always succeeds over Z after Gauss
// reduction, <= 12 rows), else a typed failure carrying the reduced block.
BlockResult represent_binary_block(const Field& f, const MatE& block, BlockStrategy strategy,
                                   const SearchBudget& budget);

struct PairBlock {
    int i, j;             // coordinates the block lives on (i < j)
    MatE block;           // 2x2 integral hermitian psd
    std::string family;   // "rebalanced" | "divisible" | "window"
};

struct BlockDecomposition {
    std::vector<Int> diag;         // b_1..b_n >= 0
    std::vector<PairBlock> blocks; // sum of embedded blocks + diag == A + S
};

struct PremiseViolation {
    std::string inequality;  // the failed hypothesis, rendered
};

using AssembleResult = std::variant<BlockDecomposition, PremiseViolation>;

// The additive block decomposition of A + S from integral t_ij splittings:
// over Q the surplus is rebalanced into the pair blocks; over an imaginary
// quadratic field each s_ij is window-split and the divisible and window
// families are emitted separately. The output re-sums to A + S exactly.
AssembleResult assemble_blocks(const Field& f, const std::vector<Int>& a_diag, const MatE& s,
                               const std::vector<std::vector<Int>>& t);

// Part-1 check: with rational t_ij > 0, sum_j t_ij = a_i and
// t_ij t_ji >= norm(s_ij), the matrix A + S is psd (verified exactly).
bool lemma_part1_psd(const Field& f, const std::vector<Rational>& a_diag, const MatE& s,
                     const std::vector<std::vector<Rational>>& t);

}  // namespace waring
