#include "waring/sos_core.hpp"

#include <algorithm>

#include "waring/reduction.hpp"

namespace waring {

namespace {

bool probably_prime(const Int& p) {
    return mpz_probab_prime_p(p.get_mpz_t(), 30) > 0;
}

// x^2 + y^2 = p for p = 2 or a (probable) prime p = 1 mod 4, via a square
// root of -1 and the Euclidean descent.
std::optional<std::pair<Int, Int>> two_squares_prime(const Int& p) {
    if (p == 2) return std::make_pair(Int(1), Int(1));
    if (p % 4 != 1) return std::nullopt;
    Int t(0);
    Int exponent = (p - 1) / 4;
    for (Int g = 2; g < 1000; ++g) {
        Int cand;
        mpz_powm(cand.get_mpz_t(), g.get_mpz_t(), exponent.get_mpz_t(), p.get_mpz_t());
        if ((cand * cand) % p == p - 1) { t = cand; break; }
    }
    if (t == 0) return std::nullopt;
    Int a = p, b = t;
    while (b * b > p) {
        Int r = a % b;
        a = b;
        b = r;
    }
    Int y2 = p - b * b;
    Int y;
    if (!is_perfect_square(y2, &y)) return std::nullopt;
    return std::make_pair(std::max(b, y), std::min(b, y));
}

// x^2 + y^2 + z^2 = m for m >= 0, m != 0,4,7 mod 8.
std::optional<std::array<Int, 3>> three_squares(const Int& m) {
    if (m < 0 || m % 4 == 0 || m % 8 == 7) return std::nullopt;
    if (m == 0) return std::array<Int, 3>{0, 0, 0};
    Int s;
    if (is_perfect_square(m, &s)) return std::array<Int, 3>{s, 0, 0};
    // small m: exhaustive descent, no primality heuristics
    if (m < 4096) {
        Int c1 = isqrt_floor(m);
        for (Int x = c1; x >= 0; --x) {
            Int r1 = m - x * x;
            Int c2 = isqrt_floor(r1);
            for (Int y = std::min(x, c2); y >= 0; --y) {
                Int r2 = r1 - y * y, z;
                if (is_perfect_square(r2, &z) && z <= y)
                    return std::array<Int, 3>{x, y, z};
            }
        }
        return std::nullopt;
    }
    long mod8 = mpz_fdiv_ui(m.get_mpz_t(), 8);
    Int x = isqrt_floor(m);
    if (mod8 == 1 || mod8 == 5) {
        if (x % 2 != 0) --x;  // need m - x^2 = 1 mod 4
    } else if (mod8 == 2 || mod8 == 6) {
        if (x % 2 == 0) --x;  // x odd
    } else {                  // mod8 == 3: x odd, (m - x^2)/2 = 1 mod 4
        if (x % 2 == 0) --x;
    }
    for (long tries = 0; tries < 100000 && x >= 0; ++tries, x -= 2) {
        Int rem = m - x * x;
        if (rem < 0) continue;
        if (mod8 == 3) {
            Int q = rem / 2;
            if (q == 0) return std::array<Int, 3>{x, 0, 0};
            if (q == 1) return std::array<Int, 3>{x, 1, 1};
            if (probably_prime(q)) {
                auto uv = two_squares_prime(q);
                if (uv) {
                    Int u = uv->first, v = uv->second;
                    return std::array<Int, 3>{x, u + v, abs(u - v)};
                }
            }
        } else {
            if (rem == 0) return std::array<Int, 3>{x, 0, 0};
            if (rem == 1) return std::array<Int, 3>{x, 1, 0};
            if (rem == 2) return std::array<Int, 3>{x, 1, 1};
            if (probably_prime(rem)) {
                auto uv = two_squares_prime(rem);
                if (uv) return std::array<Int, 3>{x, uv->first, uv->second};
            }
        }
    }
    return std::nullopt;
}

}  // namespace

std::array<Int, 4> four_squares(const Int& b) {
    if (b < 0) throw std::invalid_argument("four_squares needs b >= 0");
    std::array<Int, 4> result{0, 0, 0, 0};
    if (b == 0) return result;
    Int m = b, scale(1);
    while (m % 4 == 0) {
        m /= 4;
        scale *= 2;
    }
    std::optional<std::array<Int, 3>> triple;
    Int extra(0);
    if (m % 8 == 7) {
        triple = three_squares(m - 1);
        extra = 1;
    } else {
        triple = three_squares(m);
    }
    if (!triple) throw std::runtime_error("four-square descent failed for " + b.get_str());
    result = {(*triple)[0] * scale, (*triple)[1] * scale, (*triple)[2] * scale, extra * scale};
    std::sort(result.begin(), result.end(), [](const Int& x, const Int& y) { return x > y; });
    Int check = result[0] * result[0] + result[1] * result[1] + result[2] * result[2] +
                result[3] * result[3];
    if (check != b) throw std::runtime_error("four-square verification failed");
    return result;
}

ResidueSplit split_residue_window(const Field& f, const RingElement& s, int sigma) {
    if (f.is_rational())
        throw std::invalid_argument("residue window split is defined over imaginary quadratic fields");
    if (sigma < 0) throw std::invalid_argument("sigma must be nonnegative");
    Int mod = pow2_int(sigma);
    Int window = pow2_int(sigma + 1) - 1;

    auto coordinate_candidates = [&](const Int& c) {
        Int r = ((c % mod) + mod) % mod;
        std::vector<Int> out;
        std::vector<Int> bases = {Int(r - 2 * mod), Int(r - mod), r, Int(r + mod)};
        for (const Int& base : bases)
            if (abs(base) <= window) out.push_back(base);
        return out;
    };

    auto pick = [&](const RingElement& target,
                    bool conj_stable) -> std::optional<ResidueSplit> {
        bool real = target.b == 0;
        std::optional<ResidueSplit> best;
        std::optional<std::tuple<Int, Int, Int, Int, Int>> best_key;
        for (const Int& pa : coordinate_candidates(target.a)) {
            for (const Int& pb : coordinate_candidates(target.b)) {
                if (real && pb != 0) continue;  // keep the split conjugation-fixed
                RingElement p(pa, pb);
                if (conj_stable) {
                    RingElement pc = f.rconj(p);
                    if (abs(pc.a) > window || abs(pc.b) > window) continue;
                }
                RingElement diff = f.rsub(target, p);
                RingElement q(diff.a / mod, diff.b / mod);
                if (f.rnorm(target) < mod * mod * f.rnorm(q)) continue;
                std::tuple<Int, Int, Int, Int, Int> key{f.rnorm(q), abs(pa), abs(pb), pa, pb};
                if (!best || key < *best_key) {
                    best = ResidueSplit{p, q};
                    best_key = key;
                }
            }
        }
        return best;
    };

    // Conjugation-equivariant on the conjugation-stable subwindow (which
    // mirrors exactly under *): resolve on the order-min of {s, s*} and
    // conjugate back. Only when no admissible element has its conjugate in
    // the window too (possible for ell = 3 mod 4, where * moves the first
    // coordinate) does the direct canonical choice decide.
    RingElement sc = f.rconj(s);
    bool flip = std::make_pair(s.a, s.b) > std::make_pair(sc.a, sc.b);
    auto stable = pick(flip ? sc : s, true);
    if (stable) {
        if (flip) return ResidueSplit{f.rconj(stable->p), f.rconj(stable->q)};
        return *stable;
    }
    auto res = pick(s, false);
    if (!res) throw std::runtime_error("no admissible window element for the residue split");
    return *res;
}

PairPattern two_by_two_pattern(const Field& f, const RingElement& p) {
    Int na = abs(p.a), nb = abs(p.b);
    Int ea = p.a >= 0 ? 1 : -1, eb = p.b >= 0 ? 1 : -1;
    const Int& nw = f.omega_norm();
    PairPattern pat;
    pat.n_left = na + (nb / 2) * nw + ceil_div(nb, Int(2));
    pat.n_right = na + nb / 2 + ceil_div(nb, Int(2)) * nw;
    Int total = na + nb;
    if (!total.fits_sint_p())
        throw std::invalid_argument("window element too large for the pattern");
    int cols = static_cast<int>(total.get_si());
    pat.cols = MatE(f, 2, cols);
    int c = 0;
    FieldElement omega = f.omega();
    for (Int k = 0; k < na; ++k, ++c) {
        pat.cols.at(0, c) = FieldElement(Rational(ea));
        pat.cols.at(1, c) = f.one();
    }
    for (Int k = 0; k < nb / 2; ++k, ++c) {
        pat.cols.at(0, c) = f.scale(omega, Rational(eb));
        pat.cols.at(1, c) = f.one();
    }
    for (Int k = 0; k < ceil_div(nb, Int(2)); ++k, ++c) {
        pat.cols.at(0, c) = FieldElement(Rational(eb));
        pat.cols.at(1, c) = f.conj(omega);
    }
    MatE prod = pat.cols * pat.cols.conj_transpose();
    MatE expect(f, 2, 2);
    expect.at(0, 0) = FieldElement(Rational(pat.n_left));
    expect.at(0, 1) = f.from_ring(p);
    expect.at(1, 0) = f.conj(f.from_ring(p));
    expect.at(1, 1) = FieldElement(Rational(pat.n_right));
    if (prod != expect) throw std::runtime_error("pattern identity failed");
    return pat;
}

namespace {

// Classical Gauss reduction of an integral binary quadratic form over Z;
// returns V in GL_2(Z) with V* B V reduced (|2 b01| <= b00 <= b11).
std::pair<MatE, MatE> gauss_reduce_binary_z(const Field& f, const MatE& b) {
    MatE cur = b;
    MatE v = MatE::identity(f, 2);
    for (int iter = 0; iter < 4096; ++iter) {
        Rational b00 = cur.at(0, 0).a, b11 = cur.at(1, 1).a, b01 = cur.at(0, 1).a;
        if (b00 > b11) {
            MatE swap(f, 2, 2);
            swap.at(0, 1) = f.one();
            swap.at(1, 0) = f.one();
            v = v * swap;
            cur = swap.conj_transpose() * cur * swap;
            continue;
        }
        if (b00 == 0) break;  // psd forces b01 = 0
        if (2 * abs(b01) <= b00) break;
        Int t = round_rat(b01 / b00);
        MatE shear = MatE::identity(f, 2);
        shear.at(0, 1) = FieldElement(Rational(-t));
        v = v * shear;
        cur = shear.conj_transpose() * cur * shear;
    }
    return {cur, v};
}

void append_diag_rows(const Field& f, std::vector<std::vector<FieldElement>>& rows, const Int& value,
                      int coord) {
    for (const Int& c : four_squares(value)) {
        if (c == 0) continue;
        std::vector<FieldElement> row(2, f.zero());
        row[coord] = FieldElement(Rational(c));
        rows.push_back(row);
    }
}

MatE rows_to_matrix(const Field& f, const std::vector<std::vector<FieldElement>>& rows) {
    MatE r(f, static_cast<int>(rows.size()), 2);
    for (size_t i = 0; i < rows.size(); ++i) {
        r.at(static_cast<int>(i), 0) = rows[i][0];
        r.at(static_cast<int>(i), 1) = rows[i][1];
    }
    return r;
}

}  // namespace

BlockResult represent_binary_block(const Field& f, const MatE& block, BlockStrategy strategy,
                                   const SearchBudget& budget) {
    if (block.rows() != 2 || block.cols() != 2 || !block.is_hermitian() || !block.is_integral())
        throw std::invalid_argument("binary block must be 2x2 integral hermitian");
    if (!is_positive_semidefinite(block))
        throw std::invalid_argument("binary block must be psd");

    if (block.is_zero())
        return BlockRepresentation{MatE(f, 0, 2), "diagonal"};

    if (block.at(0, 1).is_zero()) {
        std::vector<std::vector<FieldElement>> rows;
        append_diag_rows(f, rows, block.at(0, 0).a.get_num(), 0);
        append_diag_rows(f, rows, block.at(1, 1).a.get_num(), 1);
        MatE r = rows_to_matrix(f, rows);
        if (!(r.conj_transpose() * r == block)) throw std::runtime_error("diagonal block failed");
        return BlockRepresentation{r, "diagonal"};
    }

    // GL_2(O) reduction; representability is equivalence-invariant.
    MatE reduced = block;
    MatE u = MatE::identity(f, 2);
    if (is_positive_definite(block)) {
        if (f.is_rational()) {
            auto [rb, v] = gauss_reduce_binary_z(f, block);
            reduced = rb;
            u = v;
        } else {
            ReducedForm rf = balanced_hkz(HermitianForm(f, block));
            u = rf.U;
            reduced = u.conj_transpose() * block * u;
        }
    }
    MatE uinv = u.inverse();

    bool try_oracle = strategy != BlockStrategy::constructive_only;
    if (strategy == BlockStrategy::automatic && reduced.at(1, 1).a > 4096)
        try_oracle = false;  // sphere enumeration infeasible at this scale
    if (try_oracle) {
        SearchBudget b = budget;
        if (b.g_max <= 0) b.g_max = f.is_rational() ? 5 : 3;
        SearchResult sr = search_representation(HermitianForm(f, reduced), b);
        if (sr.rep) {
            MatE r = *sr.rep * uinv;
            if (!(r.conj_transpose() * r == block))
                throw std::runtime_error("oracle block representation failed verification");
            return BlockRepresentation{r, "oracle"};
        }
        if (strategy == BlockStrategy::oracle_only)
            return BlockFailureInfo{"SearchBudgetExceeded", reduced,
                                    sr.stats.exhausted ? "search exhausted without finding rows"
                                                       : "node budget exceeded"};
    }

    // Constructive split of the reduced block.
    std::vector<std::vector<FieldElement>> rows;
    if (f.is_rational()) {
        Rational s = reduced.at(0, 1).a;
        Int sa = abs(s.get_num());
        Int e = s >= 0 ? 1 : -1;
        Int b00 = reduced.at(0, 0).a.get_num(), b11 = reduced.at(1, 1).a.get_num();
        if (sa > b00 || sa > b11)
            return BlockFailureInfo{"ConstructiveSlackInsufficient", reduced,
                                    "off-diagonal exceeds a reduced diagonal entry"};
        for (const Int& c : four_squares(sa)) {
            if (c == 0) continue;
            rows.push_back({FieldElement(Rational(c)), FieldElement(Rational(c * e))});
        }
        append_diag_rows(f, rows, b00 - sa, 0);
        append_diag_rows(f, rows, b11 - sa, 1);
    } else {
        RingElement s = f.to_ring_checked(reduced.at(0, 1));
        if (abs(s.a) + abs(s.b) > 512)
            return BlockFailureInfo{"ConstructiveSlackInsufficient", reduced,
                                    "pattern row count would exceed the cap"};
        PairPattern pat = two_by_two_pattern(f, s);
        Int b00 = reduced.at(0, 0).a.get_num(), b11 = reduced.at(1, 1).a.get_num();
        if (pat.n_left > b00 || pat.n_right > b11)
            return BlockFailureInfo{"ConstructiveSlackInsufficient", reduced,
                                    "pattern diagonal exceeds the reduced block diagonal"};
        MatE pr = pat.cols.conj_transpose();  // rows with R*R = pattern Gram
        for (int i = 0; i < pr.rows(); ++i) rows.push_back({pr.at(i, 0), pr.at(i, 1)});
        append_diag_rows(f, rows, b00 - pat.n_left, 0);
        append_diag_rows(f, rows, b11 - pat.n_right, 1);
    }
    MatE r = rows_to_matrix(f, rows) * uinv;
    if (!(r.conj_transpose() * r == block))
        throw std::runtime_error("constructive block representation failed verification");
    return BlockRepresentation{r, "constructive"};
}

namespace {

MatE embed_pair_block(const Field& f, int n, const PairBlock& pb) {
    MatE m(f, n, n);
    m.at(pb.i, pb.i) = pb.block.at(0, 0);
    m.at(pb.i, pb.j) = pb.block.at(0, 1);
    m.at(pb.j, pb.i) = pb.block.at(1, 0);
    m.at(pb.j, pb.j) = pb.block.at(1, 1);
    return m;
}

}  // namespace

AssembleResult assemble_blocks(const Field& f, const std::vector<Int>& a_diag, const MatE& s,
                               const std::vector<std::vector<Int>>& t) {
    int n = s.rows();
    if (static_cast<int>(a_diag.size()) != n || static_cast<int>(t.size()) != n)
        throw std::invalid_argument("dimension mismatch in block assembly");
    if (!s.is_hermitian() || !s.is_integral())
        throw std::invalid_argument("S must be integral hermitian");

    for (int i = 0; i < n; ++i) {
        Int sum(0);
        for (int j = 0; j < n; ++j) {
            if (t[i][j] <= 0)
                return PremiseViolation{"t[" + std::to_string(i) + "][" + std::to_string(j) + "] > 0"};
            sum += t[i][j];
        }
        if (sum != a_diag[i])
            return PremiseViolation{"sum_j t[" + std::to_string(i) + "][j] == a_" + std::to_string(i)};
    }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Int lhs = t[i][j] * t[j][i];
            Int rhs = f.rnorm(f.to_ring_checked(s.at(i, j)));
            if (lhs < rhs)
                return PremiseViolation{"t[" + std::to_string(i) + "][" + std::to_string(j) +
                                        "]*t[" + std::to_string(j) + "][" + std::to_string(i) +
                                        "] >= norm(s_ij)"};
        }

    BlockDecomposition out;
    out.diag.assign(n, Int(0));

    if (f.is_rational()) {
        if (n == 1) {
            out.diag[0] = a_diag[0] + s.at(0, 0).a.get_num();
        } else if (s.is_zero()) {
            for (int i = 0; i < n; ++i) out.diag[i] = a_diag[i];
        } else {
            // rebalance the diagonal surplus t_ii + s_ii into the pair blocks
            std::vector<std::vector<Int>> tp(n, std::vector<Int>(n, Int(0)));
            for (int i = 0; i < n; ++i) {
                for (int j = 0; j < n; ++j)
                    if (j != i) tp[i][j] = t[i][j];
                Int surplus = t[i][i] + s.at(i, i).a.get_num();
                if (surplus < 0)
                    return PremiseViolation{"t_ii + s_ii >= 0 at i=" + std::to_string(i)};
                int j0 = i == 0 ? 1 : 0;
                tp[i][j0] += surplus;
            }
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j) {
                    MatE blk(f, 2, 2);
                    blk.at(0, 0) = FieldElement(Rational(tp[i][j]));
                    blk.at(0, 1) = s.at(i, j);
                    blk.at(1, 0) = s.at(j, i);
                    blk.at(1, 1) = FieldElement(Rational(tp[j][i]));
                    out.blocks.push_back({i, j, blk, "rebalanced"});
                }
        }
    } else {
        int sigma = f.sigma();
        Int mod = pow2_int(sigma);
        Int slack_needed = mod * Int(n - 1) * (f.omega_norm() + 4);
        for (int i = 0; i < n; ++i) {
            Int lhs = t[i][i] + s.at(i, i).a.get_num();
            if (lhs < slack_needed)
                return PremiseViolation{"t_ii + s_ii >= 2^sigma (n-1)(N(omega)+4) at i=" +
                                        std::to_string(i)};
        }
        std::vector<std::vector<RingElement>> p(n, std::vector<RingElement>(n)),
            q(n, std::vector<RingElement>(n));
        std::vector<std::vector<Int>> nn(n, std::vector<Int>(n, Int(0)));
        Int ntilde(0);
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                ResidueSplit sp = split_residue_window(f, f.to_ring_checked(s.at(i, j)), sigma);
                p[i][j] = sp.p;
                q[i][j] = sp.q;
                p[j][i] = f.rconj(sp.p);
                q[j][i] = f.rconj(sp.q);
                PairPattern pat = two_by_two_pattern(f, sp.p);
                nn[i][j] = pat.n_left;
                nn[j][i] = pat.n_right;
                ntilde = std::max(ntilde, std::max(nn[i][j], nn[j][i]));
            }
        std::vector<std::vector<Int>> tp(n, std::vector<Int>(n, Int(0))),
            delta(n, std::vector<Int>(n, Int(0)));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                if (i == j) continue;
                Int r = t[i][j] + ntilde - nn[i][j];
                tp[i][j] = ceil_div(r, mod);
                delta[i][j] = tp[i][j] * mod - r;
            }
        for (int i = 0; i < n; ++i) {
            Int b = t[i][i] + s.at(i, i).a.get_num() - ntilde * Int(n - 1);
            for (int j = 0; j < n; ++j)
                if (j != i) b -= delta[i][j];
            if (b < 0) return PremiseViolation{"b_" + std::to_string(i) + " >= 0"};
            out.diag[i] = b;
        }
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                MatE win(f, 2, 2);
                win.at(0, 0) = FieldElement(Rational(nn[i][j]));
                win.at(0, 1) = f.from_ring(p[i][j]);
                win.at(1, 0) = f.from_ring(p[j][i]);
                win.at(1, 1) = FieldElement(Rational(nn[j][i]));
                if (!win.is_zero()) out.blocks.push_back({i, j, win, "window"});
                MatE div(f, 2, 2);
                div.at(0, 0) = FieldElement(Rational(mod * tp[i][j]));
                div.at(0, 1) = f.from_ring(f.rmul(RingElement(mod, Int(0)), q[i][j]));
                div.at(1, 0) = f.from_ring(f.rmul(RingElement(mod, Int(0)), q[j][i]));
                div.at(1, 1) = FieldElement(Rational(mod * tp[j][i]));
                out.blocks.push_back({i, j, div, "divisible"});
            }
    }

    // exact resummation and per-block psd
    MatE total(f, n, n);
    for (int i = 0; i < n; ++i) total.at(i, i) = FieldElement(Rational(out.diag[i]));
    for (const auto& pb : out.blocks) {
        if (!is_positive_semidefinite(pb.block))
            throw std::runtime_error("assembled pair block is not psd");
        total = total + embed_pair_block(f, n, pb);
    }
    MatE expect = s;
    for (int i = 0; i < n; ++i)
        expect.at(i, i) = f.add(expect.at(i, i), FieldElement(Rational(a_diag[i])));
    if (total != expect) throw std::runtime_error("block decomposition does not re-sum to A + S");
    return out;
}

bool lemma_part1_psd(const Field& f, const std::vector<Rational>& a_diag, const MatE& s,
                     const std::vector<std::vector<Rational>>& t) {
    int n = s.rows();
    if (!s.is_hermitian()) throw std::invalid_argument("S must be hermitian");
    for (int i = 0; i < n; ++i) {
        Rational sum(0);
        for (int j = 0; j < n; ++j) {
            if (t[i][j] <= 0) throw std::invalid_argument("t entries must be positive");
            sum += t[i][j];
        }
        if (sum != a_diag[i]) throw std::invalid_argument("row sums of t must match the diagonal");
    }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (t[i][j] * t[j][i] < f.norm(s.at(i, j)))
                throw std::invalid_argument("t_ij t_ji >= |s_ij|^2 violated");
    MatE m = s;
    for (int i = 0; i < n; ++i)
        m.at(i, i) = f.add(m.at(i, i), FieldElement(a_diag[i]));
    return is_positive_semidefinite(m);
}

}  // namespace waring
