#include "waring/decomposer.hpp"

#include <algorithm>

namespace waring {

bool verify(const HermitianForm& form, const Representation& rep) {
    if (rep.rows.cols() != form.rank())
        throw std::invalid_argument("representation has the wrong number of columns");
    if (!rep.rows.field().same_ring(form.field()))
        throw std::invalid_argument("representation over the wrong ring");
    if (!rep.rows.is_integral()) return false;
    return rep.rows.conj_transpose() * rep.rows == form.gram();
}

namespace {

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

MatE stack_rows(const Field& f, const std::vector<std::vector<FieldElement>>& rows, int n) {
    MatE m(f, static_cast<int>(rows.size()), n);
    for (size_t i = 0; i < rows.size(); ++i)
        for (int j = 0; j < n; ++j) m.at(static_cast<int>(i), j) = rows[i][j];
    return m;
}

Int paper_target(const Field& f, int n) {
    return pow2_int(f.sigma() + 2) * Int(n) * Int(n) + Int(n);
}

// Fallback when the pipeline does not apply: exhaustive search, upgraded to a
// refutation certificate in the small-diagonal regime.
DecomposeOutcome fallback_outcome(const HermitianForm& form, const Rational& mu,
                                  const Rational& threshold, const DecomposeCaps& caps,
                                  const std::string& why) {
    const Field& f = form.field();
    int n = form.rank();
    bool small_regime = true;
    for (int i = 0; i < n; ++i)
        if (form.diagonal_int(i) > 3) { small_regime = false; break; }
    if (small_regime) {
        RefuteOutcome ro = prove_not_representable(form);
        if (ro.kind == RefuteOutcome::Kind::representable) {
            Representation rep{*ro.rep};
            DecomposeTrace trace;
            trace.path = "fallback_search";
            trace.mu = mu;
            trace.threshold = threshold;
            trace.achieved_g = rep.g();
            trace.target_paper = paper_target(f, n);
            trace.target_constructive = Int(6) * Int(n) * Int(n);
            trace.notes = why;
            if (!verify(form, rep)) throw std::runtime_error("fallback result failed verification");
            return DecomposeSuccess{std::move(rep), std::move(trace)};
        }
        BelowThreshold out{mu, threshold, std::nullopt, {}, why};
        if (ro.kind == RefuteOutcome::Kind::certificate) {
            out.certificate = std::move(ro.certificate);
            out.detail = why + "; non-representability certificate attached";
        }
        return out;
    }
    SearchResult sr = search_representation(form, caps.fallback);
    if (sr.rep) {
        Representation rep{*sr.rep};
        DecomposeTrace trace;
        trace.path = "fallback_search";
        trace.mu = mu;
        trace.threshold = threshold;
        trace.achieved_g = rep.g();
        trace.target_paper = paper_target(f, n);
        trace.target_constructive = Int(6) * Int(n) * Int(n);
        trace.notes = why;
        if (!verify(form, rep)) throw std::runtime_error("fallback result failed verification");
        return DecomposeSuccess{std::move(rep), std::move(trace)};
    }
    BelowThreshold out{mu, threshold, std::nullopt, sr.stats, why};
    out.detail = why + (sr.stats.exhausted ? "; search exhausted with no representation"
                                           : "; search budget exceeded");
    return out;
}

}  // namespace

DecomposeOutcome decompose(const HermitianForm& form, const BoundsProfile& profile,
                           const DecomposeCaps& caps) {
    const Field& f = form.field();
    if (!profile.field().same_ring(f))
        throw std::invalid_argument("profile certified for a different field");
    int n = form.rank();
    if (n == 0) throw std::invalid_argument("empty form");
    if (!is_positive_definite(form.gram()))
        throw std::invalid_argument("decompose requires a positive definite form");

    if (form.gram().is_identity()) {
        Representation rep{MatE::identity(f, n)};
        DecomposeTrace trace;
        trace.path = "short_circuit";
        trace.mu = 1;
        trace.achieved_g = n;
        trace.target_paper = paper_target(f, n);
        trace.target_constructive = Int(6) * Int(n) * Int(n);
        trace.notes = "form is the identity";
        return DecomposeSuccess{std::move(rep), std::move(trace)};
    }

    if (n == 1) {
        // unary positive form: four squares on the single entry
        Int m = form.diagonal_int(0);
        std::vector<std::vector<FieldElement>> rows;
        for (const Int& c : four_squares(m))
            if (c != 0) rows.push_back({FieldElement(Rational(c))});
        Representation rep{stack_rows(f, rows, 1)};
        DecomposeTrace trace;
        trace.path = "pipeline";
        trace.mu = Rational(m);
        trace.achieved_g = rep.g();
        trace.target_paper = paper_target(f, 1);
        trace.target_constructive = 6;
        if (!verify(form, rep)) throw std::runtime_error("unary decomposition failed");
        return DecomposeSuccess{std::move(rep), std::move(trace)};
    }

    ReducedForm rf = balanced_hkz(form);
    Rational mu = rf.H[0];
    Rational threshold = profile.threshold_G(n);
    if (mu < threshold)
        return fallback_outcome(form, mu, threshold, caps, "minimum below the pipeline threshold");

    MatE mprime = rf.U.conj_transpose() * form.gram() * rf.U;
    MatE uinv = rf.U.inverse();

    // a_k = floor(h_k / (n^2 alpha_env(n) c_env(n-k)^2))
    std::vector<Int> a(n);
    Rational alpha_env = profile.alpha_envelope(n);
    for (int k = 0; k < n; ++k) {
        Rational ce = profile.c_envelope(n - 1 - k);
        a[k] = floor_rat(rf.H[k] / (Rational(Int(n) * Int(n)) * alpha_env * ce * ce));
        if (a[k] < 0) a[k] = 0;
    }
    MatE m_minus_a = mprime;
    for (int k = 0; k < n; ++k)
        m_minus_a.at(k, k) = f.sub(m_minus_a.at(k, k), FieldElement(Rational(a[k])));
    if (!is_positive_semidefinite(m_minus_a)) {
        DecomposeTrace trace;
        trace.path = "pipeline";
        trace.mu = mu;
        trace.threshold = threshold;
        return BlockFailure{"M' - A is not positive semidefinite", {}, trace};
    }

    unsigned long bits = caps.chol_bits;
    std::string last_failure;
    std::vector<BlockFailureInfo> block_failures;
    for (int attempt = 0; attempt <= caps.max_precision_retries; ++attempt, bits *= 2) {
        block_failures.clear();
        MatE w = cholesky_upper(m_minus_a, bits);
        MatE p(f, n, n);
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j) p.at(i, j) = f.from_ring(f.round_to_ring(w.at(i, j)).first);
        MatE s = m_minus_a - p.conj_transpose() * p;

        // equal split of a_i, remainder onto the diagonal entry
        std::vector<std::vector<Int>> t(n, std::vector<Int>(n));
        bool premise_ok = true;
        std::string premise;
        for (int i = 0; i < n && premise_ok; ++i) {
            Int base = a[i] / n;
            if (base <= 0) {
                premise_ok = false;
                premise = "floor(a_i/n) >= 1 at i=" + std::to_string(i);
                break;
            }
            for (int j = 0; j < n; ++j) t[i][j] = base;
            t[i][i] = a[i] - Int(n - 1) * base;
        }
        if (premise_ok) {
            for (int i = 0; i < n && premise_ok; ++i)
                for (int j = 0; j < n; ++j) {
                    Int rhs = 4 * f.rnorm(f.to_ring_checked(s.at(i, j)));
                    if (t[i][j] * t[j][i] < rhs) {
                        premise_ok = false;
                        premise = "t_ij t_ji >= 4|s_ij|^2 at (" + std::to_string(i) + "," +
                                  std::to_string(j) + ")";
                        break;
                    }
                }
        }
        if (premise_ok && !f.is_rational()) {
            Int slack = pow2_int(f.sigma()) * Int(n - 1) * (f.omega_norm() + 4);
            for (int i = 0; i < n && premise_ok; ++i) {
                if (t[i][i] + s.at(i, i).a.get_num() < slack) {
                    premise_ok = false;
                    premise = "diagonal slack at i=" + std::to_string(i);
                }
            }
        }
        if (!premise_ok) {
            last_failure = premise;
            continue;
        }

        AssembleResult ar = assemble_blocks(f, a, s, t);
        if (std::holds_alternative<PremiseViolation>(ar)) {
            last_failure = std::get<PremiseViolation>(ar).inequality;
            continue;
        }
        const BlockDecomposition& bd = std::get<BlockDecomposition>(ar);

        DecomposeTrace trace;
        trace.path = "pipeline";
        trace.mu = mu;
        trace.threshold = threshold;
        trace.retries = attempt;
        trace.bits_used = bits;
        trace.target_paper = paper_target(f, n);
        trace.target_constructive = Int(6) * Int(n) * Int(n);

        std::vector<std::vector<FieldElement>> rows;
        bool blocks_ok = true;
        for (const PairBlock& pb : bd.blocks) {
            BlockResult br = represent_binary_block(f, pb.block, caps.block_strategy, caps.fallback);
            if (std::holds_alternative<BlockFailureInfo>(br)) {
                block_failures.push_back(std::get<BlockFailureInfo>(br));
                blocks_ok = false;
                continue;
            }
            const BlockRepresentation& rep2 = std::get<BlockRepresentation>(br);
            for (int r = 0; r < rep2.rows.rows(); ++r) {
                std::vector<FieldElement> row(n, f.zero());
                row[pb.i] = rep2.rows.at(r, 0);
                row[pb.j] = rep2.rows.at(r, 1);
                rows.push_back(std::move(row));
            }
            trace.blocks.push_back({pb.i, pb.j, pb.family, rep2.strategy, rep2.rows.rows()});
        }
        if (!blocks_ok) {
            last_failure = "block representation failed";
            continue;
        }
        for (int i = 0; i < n; ++i) {
            if (bd.diag[i] == 0) continue;
            for (const Int& c : four_squares(bd.diag[i])) {
                if (c == 0) continue;
                std::vector<FieldElement> row(n, f.zero());
                row[i] = FieldElement(Rational(c));
                rows.push_back(std::move(row));
            }
        }
        for (int i = 0; i < n; ++i) {
            std::vector<FieldElement> row(n);
            for (int j = 0; j < n; ++j) row[j] = p.at(i, j);
            rows.push_back(std::move(row));
        }
        MatE rprime = prune_zero_rows(stack_rows(f, rows, n));
        if (!(rprime.conj_transpose() * rprime == mprime))
            throw std::runtime_error("pipeline rows do not reproduce the reduced form");
        Representation rep{prune_zero_rows(rprime * uinv)};
        if (!verify(form, rep))
            throw std::runtime_error("pipeline result failed final verification");
        trace.achieved_g = rep.g();
        return DecomposeSuccess{std::move(rep), std::move(trace)};
    }

    // retries exhausted: try the search fallback before reporting failure
    SearchResult sr = search_representation(form, caps.fallback);
    if (sr.rep) {
        Representation rep{*sr.rep};
        DecomposeTrace trace;
        trace.path = "fallback_search";
        trace.mu = mu;
        trace.threshold = threshold;
        trace.achieved_g = rep.g();
        trace.target_paper = paper_target(f, n);
        trace.target_constructive = Int(6) * Int(n) * Int(n);
        trace.notes = "pipeline premises failed: " + last_failure;
        if (!verify(form, rep)) throw std::runtime_error("fallback result failed verification");
        return DecomposeSuccess{std::move(rep), std::move(trace)};
    }
    DecomposeTrace trace;
    trace.path = "pipeline";
    trace.mu = mu;
    trace.threshold = threshold;
    trace.retries = caps.max_precision_retries;
    trace.bits_used = bits / 2;
    return BlockFailure{"premises failed after precision retries: " + last_failure,
                        std::move(block_failures), trace};
}

Representation compress_representation(const HermitianForm& form, const Representation& rep,
                                       const BoundsProfile& profile, const DecomposeCaps& caps) {
    const Field& f = form.field();
    if (!verify(form, rep)) throw std::invalid_argument("input representation does not verify");
    int n = form.rank();
    Representation best{prune_zero_rows(rep.rows)};

    if (form.gram().is_zero()) return best;
    if (!is_positive_definite(form.gram())) return best;  // peeling needs a definite form

    if (n == 1) {
        Int m = form.diagonal_int(0);
        std::vector<std::vector<FieldElement>> rows;
        for (const Int& c : four_squares(m))
            if (c != 0) rows.push_back({FieldElement(Rational(c))});
        if (static_cast<int>(rows.size()) < best.g()) {
            Representation cand{stack_rows(f, rows, 1)};
            if (!verify(form, cand)) throw std::runtime_error("unary compression failed");
            return cand;
        }
        return best;
    }

    ShortestVector sv = shortest_vector_gram(f, form.gram());
    Rational threshold = n <= profile.range() ? profile.threshold_G(n) : Rational(0);
    if (n <= profile.range() && sv.mu >= threshold) {
        DecomposeOutcome out = decompose(form, profile, caps);
        if (auto* s = std::get_if<DecomposeSuccess>(&out)) {
            if (s->rep.g() < best.g()) return s->rep;
        }
        return best;
    }

    MatE v = extend_to_unimodular(f, sv.v);
    MatE mt = v.conj_transpose() * form.gram() * v;
    MatE rt = best.rows * v;
    std::vector<std::vector<FieldElement>> head;
    std::vector<std::vector<FieldElement>> tail;
    for (int i = 0; i < rt.rows(); ++i) {
        std::vector<FieldElement> row(n);
        for (int j = 0; j < n; ++j) row[j] = rt.at(i, j);
        if (row[0].is_zero()) tail.push_back(std::move(row));
        else head.push_back(std::move(row));
    }
    // sum of the norms of the head leading coefficients equals mu, each >= 1
    if (Rational(static_cast<long>(head.size())) > sv.mu)
        throw std::runtime_error("peeling found more leading rows than the minimum allows");

    MatE head_m = stack_rows(f, head, n);
    MatE head_gram = head_m.conj_transpose() * head_m;
    MatE tail_form(f, n - 1, n - 1);
    for (int i = 1; i < n; ++i)
        for (int j = 1; j < n; ++j)
            tail_form.at(i - 1, j - 1) = f.sub(mt.at(i, j), head_gram.at(i, j));
    MatE tail_rows(f, static_cast<int>(tail.size()), n - 1);
    for (size_t i = 0; i < tail.size(); ++i)
        for (int j = 1; j < n; ++j) tail_rows.at(static_cast<int>(i), j - 1) = tail[i][j];

    HermitianForm tail_hform(f, tail_form);
    Representation tail_rep{tail_rows};
    if (!verify(tail_hform, tail_rep)) throw std::runtime_error("tail split failed verification");
    Representation tail_best = compress_representation(tail_hform, tail_rep, profile, caps);

    std::vector<std::vector<FieldElement>> rows = head;
    for (int i = 0; i < tail_best.rows.rows(); ++i) {
        std::vector<FieldElement> row(n, f.zero());
        for (int j = 1; j < n; ++j) row[j] = tail_best.rows.at(i, j - 1);
        rows.push_back(std::move(row));
    }
    MatE assembled = prune_zero_rows(stack_rows(f, rows, n));
    MatE vinv = v.inverse();
    Representation cand{prune_zero_rows(assembled * vinv)};
    if (!verify(form, cand)) throw std::runtime_error("compressed representation failed verification");
    if (cand.g() <= best.g()) return cand;
    return best;
}

HermitianForm scale_form(const HermitianForm& form, const Int& s) {
    if (s < 1) throw std::invalid_argument("scale factor must be a positive integer");
    return HermitianForm(form.field(), form.gram().scaled(Rational(s)));
}

}  // namespace waring
