#include "waring/oracle.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <sstream>

namespace waring {

namespace {

struct BudgetExceeded {};

// Ring elements of norm <= cap, sorted by descending (norm, a, b) key so a
// non-increasing column prefix is a simple scan.
std::vector<RingElement> elements_up_to(const Field& f, const Int& cap) {
    std::vector<RingElement> out;
    if (cap < 0) return out;
    if (f.is_rational()) {
        Int r = isqrt_floor(cap);
        for (Int a = -r; a <= r; ++a) out.push_back(RingElement(a, Int(0)));
    } else {
        // norm(a + b*omega) >= ell*b^2/4 in both omega conventions
        Int bcap = isqrt_floor(4 * cap / Int(f.ell()));
        for (Int b = -bcap; b <= bcap; ++b) {
            // solve a^2 + tr*a*b + n*b^2 <= cap over a
            Int span = isqrt_floor(cap) + abs(b) * (f.omega_trace() + f.omega_norm());
            for (Int a = -span; a <= span; ++a) {
                RingElement e(a, b);
                if (f.rnorm(e) <= cap) out.push_back(e);
            }
        }
    }
    std::sort(out.begin(), out.end(), [&](const RingElement& x, const RingElement& y) {
        return Field::ring_key(y, f) < Field::ring_key(x, f);
    });
    return out;
}

struct Block {
    int begin, end;      // axes [begin, end)
    bool zero_history;   // every previous column vanishes on these axes
};

struct Searcher {
    const Field& f;
    MatE gram;                 // permuted Gram
    std::vector<int> perm;     // search column -> original column
    int n, g;
    long node_cap;
    long nodes = 0;
    bool build_tree;

    std::vector<std::vector<RingElement>> columns;  // placed columns
    std::vector<Block> blocks;
    std::vector<std::vector<Int>> suffix_norm;  // per placed column: suffix sums of entry norms
    std::optional<MatE> found;

    std::map<Int, std::vector<RingElement>> element_cache;

    Searcher(const Field& field, const MatE& m, int rows, long cap, bool tree)
        : f(field), gram(m), n(m.rows()), g(rows), node_cap(cap), build_tree(tree) {
        blocks.push_back({0, g, true});
    }

    const std::vector<RingElement>& elements(const Int& cap) {
        auto it = element_cache.find(cap);
        if (it != element_cache.end()) return it->second;
        return element_cache.emplace(cap, elements_up_to(f, cap)).first->second;
    }

    void tick() {
        if (++nodes > node_cap) throw BudgetExceeded{};
    }

    std::string render_column(const std::vector<RingElement>& col) const {
        std::ostringstream os;
        bool first = true;
        for (int j = 0; j < g; ++j) {
            if (col[j].is_zero()) continue;
            if (!first) os << ",";
            first = false;
            os << j << ":" << col[j].a.get_str();
            if (!f.is_rational() && col[j].b != 0) os << "+" << col[j].b.get_str() << "w";
        }
        if (first) os << "0";
        return os.str();
    }

    // Enumerate complete candidate vectors for column `col` under the
    // canonical-order constraints and the product constraints.
    void enumerate_entries(int col, int axis, Int rem_norm,
                           std::vector<RingElement>& cur,
                           std::vector<RingElement>& residual,
                           std::vector<std::vector<RingElement>>& out) {
        if (axis == g) {
            if (rem_norm != 0) return;
            for (const auto& r : residual)
                if (!r.is_zero()) return;
            out.push_back(cur);
            return;
        }
        // Cauchy-Schwarz feasibility for every previous column
        for (size_t k = 0; k < columns.size(); ++k) {
            Int lhs = f.rnorm(residual[k]);
            if (lhs > suffix_norm[k][axis] * rem_norm) return;
        }
        const Block* blk = nullptr;
        for (const auto& b : blocks)
            if (axis >= b.begin && axis < b.end) { blk = &b; break; }
        bool has_prev = axis > blk->begin;
        auto prev_key = has_prev ? Field::ring_key(cur[axis - 1], f)
                                 : std::tuple<Int, Int, Int>();
        for (const RingElement& e : elements(rem_norm)) {
            if (has_prev && prev_key < Field::ring_key(e, f)) continue;
            if (blk->zero_history && !e.is_zero() && f.canonical_associate(e).first != e)
                continue;
            tick();
            cur[axis] = e;
            std::vector<RingElement> saved;
            saved.reserve(columns.size());
            for (size_t k = 0; k < columns.size(); ++k) {
                saved.push_back(residual[k]);
                residual[k] = f.rsub(residual[k], f.rmul(f.rconj(columns[k][axis]), e));
            }
            enumerate_entries(col, axis + 1, rem_norm - f.rnorm(e), cur, residual, out);
            for (size_t k = 0; k < columns.size(); ++k) residual[k] = saved[k];
            cur[axis] = RingElement();
        }
    }

    std::vector<std::vector<RingElement>> candidates(int col) {
        Int diag = gram.at(col, col).a.get_num();
        std::vector<RingElement> cur(g), residual;
        for (size_t k = 0; k < columns.size(); ++k)
            residual.push_back(f.to_ring_checked(gram.at(static_cast<int>(k), col)));
        std::vector<std::vector<RingElement>> out;
        enumerate_entries(col, 0, diag, cur, residual, out);
        return out;
    }

    void place(const std::vector<RingElement>& col) {
        columns.push_back(col);
        std::vector<Int> suf(g + 1, Int(0));
        for (int j = g - 1; j >= 0; --j) suf[j] = suf[j + 1] + f.rnorm(col[j]);
        suffix_norm.push_back(std::move(suf));
        std::vector<Block> refined;
        for (const auto& b : blocks) {
            int start = b.begin;
            for (int j = b.begin + 1; j <= b.end; ++j) {
                if (j == b.end || !(col[j] == col[start])) {
                    refined.push_back({start, j, b.zero_history && col[start].is_zero()});
                    start = j;
                }
            }
        }
        blocks = refined;
    }

    void unplace(std::vector<Block> saved_blocks) {
        columns.pop_back();
        suffix_norm.pop_back();
        blocks = std::move(saved_blocks);
    }

    // Returns true when a representation was found (search stops); fills
    // `tree` with the decision structure when build_tree is set.
    bool search(int col, RefuteNode* tree) {
        if (col == n) {
            MatE r(f, g, n);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < g; ++j)
                    r.at(j, perm[i]) = f.from_ring(columns[i][j]);
            found = r;
            return true;
        }
        auto cands = candidates(col);
        if (cands.empty() && tree) {
            tree->refuted = "no admissible column";
            return false;
        }
        for (const auto& c : cands) {
            RefuteNode* child = nullptr;
            if (tree) {
                tree->children.push_back(RefuteNode{col, render_column(c), {}, ""});
                child = &tree->children.back();
            }
            std::vector<Block> saved = blocks;
            place(c);
            bool ok = search(col + 1, child);
            unplace(std::move(saved));
            if (ok) return true;
        }
        return false;
    }
};

std::vector<int> diag_descending_order(const HermitianForm& form) {
    std::vector<int> idx(form.rank());
    for (int i = 0; i < form.rank(); ++i) idx[i] = i;
    std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) {
        return form.diagonal_int(a) > form.diagonal_int(b);
    });
    return idx;
}

MatE prune_zero_rows(const MatE& r) {
    std::vector<int> keep;
    for (int i = 0; i < r.rows(); ++i) {
        bool zero = true;
        for (int j = 0; j < r.cols(); ++j)
            if (!r.at(i, j).is_zero()) { zero = false; break; }
        if (!zero) keep.push_back(i);
    }
    MatE out(r.field(), static_cast<int>(keep.size()), r.cols());
    for (size_t i = 0; i < keep.size(); ++i)
        for (int j = 0; j < r.cols(); ++j) out.at(static_cast<int>(i), j) = r.at(keep[i], j);
    return out;
}

}  // namespace

SearchResult search_representation(const HermitianForm& form, const SearchBudget& budget) {
    if (!is_positive_semidefinite(form.gram()))
        throw std::invalid_argument("representation search requires a psd form");
    const Field& f = form.field();
    int n = form.rank();
    Int trace = form.trace_int();
    int g = budget.g_max > 0 ? budget.g_max : (trace.fits_sint_p() ? static_cast<int>(trace.get_si()) : 0);
    if (trace.fits_sint_p() && Int(g) > trace) g = static_cast<int>(trace.get_si());
    SearchResult res;
    if (trace == 0) {
        // zero form: represented by the empty matrix
        res.rep = MatE(f, 0, n);
        res.stats.exhausted = true;
        return res;
    }
    if (g <= 0) {
        // trace too large to derive a row bound: cannot search, cannot conclude
        res.stats.exhausted = false;
        return res;
    }

    std::vector<int> order = diag_descending_order(form);
    MatE permuted(f, n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) permuted.at(i, j) = form.gram().at(order[i], order[j]);

    Searcher s(f, permuted, g, budget.node_cap, false);
    s.perm = order;
    try {
        s.search(0, nullptr);
        res.stats.exhausted = !s.found.has_value();
    } catch (const BudgetExceeded&) {
        res.stats.exhausted = false;
    }
    res.stats.nodes = s.nodes;
    if (s.found) {
        MatE r = prune_zero_rows(*s.found);
        if (!(r.conj_transpose() * r == form.gram()))
            throw std::runtime_error("search produced an unverified representation");
        res.rep = r;
    }
    return res;
}

RefuteOutcome prove_not_representable(const HermitianForm& form) {
    RefuteOutcome out;
    const Field& f = form.field();
    if (!is_positive_semidefinite(form.gram())) {
        // R*R is always psd, so a non-psd form is trivially unrepresentable.
        Certificate cert;
        cert.rank = form.rank();
        cert.trace = form.trace_int();
        cert.root.refuted = "form is not positive semidefinite";
        out.kind = RefuteOutcome::Kind::certificate;
        out.certificate = std::move(cert);
        return out;
    }
    for (int i = 0; i < form.rank(); ++i) {
        if (form.diagonal_int(i) > 3) {
            out.kind = RefuteOutcome::Kind::unknown;
            out.reason = "diagonal entry exceeds 3; outside the finite-case regime";
            return out;
        }
    }
    Int trace = form.trace_int();
    if (trace == 0) {
        out.kind = RefuteOutcome::Kind::representable;
        out.rep = MatE(f, 0, form.rank());
        return out;
    }
    int n = form.rank();
    int g = static_cast<int>(trace.get_si());
    std::vector<int> order = diag_descending_order(form);
    MatE permuted(f, n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) permuted.at(i, j) = form.gram().at(order[i], order[j]);
    Searcher s(f, permuted, g, std::numeric_limits<long>::max(), true);
    s.perm = order;
    RefuteNode root;
    root.column = -1;
    bool found = s.search(0, &root);
    if (found) {
        MatE r = prune_zero_rows(*s.found);
        if (!(r.conj_transpose() * r == form.gram()))
            throw std::runtime_error("refutation search produced an unverified representation");
        out.kind = RefuteOutcome::Kind::representable;
        out.rep = r;
        return out;
    }
    Certificate cert;
    cert.rank = n;
    cert.trace = trace;
    cert.rows_searched = g;
    cert.nodes = s.nodes;
    cert.root = std::move(root);
    out.kind = RefuteOutcome::Kind::certificate;
    out.certificate = std::move(cert);
    return out;
}

}  // namespace waring
