#include "waring/linalg.hpp"

namespace waring {

namespace {

// One pivoted elimination step on a hermitian matrix; returns false if a
// negative pivot or a nonzero row over a zero pivot block is found.
bool psd_recurse(const Field& f, MatE m, bool require_definite) {
    int n = m.rows();
    for (int step = 0; step < n; ++step) {
        // largest remaining diagonal entry as pivot (diagonals are real)
        int piv = step;
        for (int i = step; i < n; ++i)
            if (m.at(i, i).a > m.at(piv, piv).a) piv = i;
        if (piv != step) {
            for (int j = 0; j < n; ++j) std::swap(m.at(step, j), m.at(piv, j));
            for (int i = 0; i < n; ++i) std::swap(m.at(i, step), m.at(i, piv));
        }
        const Rational d = m.at(step, step).a;
        if (d < 0) return false;
        if (d == 0) {
            if (require_definite) return false;
            // maximal diagonal is zero: psd iff the whole remaining block vanishes
            for (int i = step; i < n; ++i)
                for (int j = step; j < n; ++j)
                    if (!m.at(i, j).is_zero()) return false;
            return true;
        }
        Rational dinv = Rational(1) / d;
        for (int i = step + 1; i < n; ++i) {
            if (m.at(i, step).is_zero()) continue;
            FieldElement li = f.scale(m.at(i, step), dinv);
            for (int j = step + 1; j < n; ++j)
                m.at(i, j) = f.sub(m.at(i, j), f.mul(li, m.at(step, j)));
        }
        // keep the matrix hermitian for later pivot swaps
        for (int j = step + 1; j < n; ++j) {
            m.at(step, j) = f.zero();
            m.at(j, step) = f.zero();
        }
    }
    return true;
}

}  // namespace

bool is_positive_semidefinite(const MatE& m) {
    if (!m.is_hermitian()) throw std::invalid_argument("psd test requires a hermitian matrix");
    for (int i = 0; i < m.rows(); ++i)
        if (!m.field().is_real(m.at(i, i)))
            throw std::invalid_argument("hermitian matrix has non-real diagonal");
    return psd_recurse(m.field(), m, false);
}

bool is_positive_definite(const MatE& m) {
    if (!m.is_hermitian()) throw std::invalid_argument("pd test requires a hermitian matrix");
    return psd_recurse(m.field(), m, true);
}

MatE nilpotent_exp(const MatE& z) {
    if (!z.is_strictly_upper())
        throw std::invalid_argument("nilpotent_exp requires a strictly upper triangular matrix");
    const Field& f = z.field();
    int n = z.rows();
    MatE result = MatE::identity(f, n);
    MatE power = MatE::identity(f, n);
    Rational fact(1);
    for (int k = 1; k < n; ++k) {
        power = power * z;
        if (power.is_zero()) break;
        fact *= k;
        result = result + power.scaled(Rational(1) / fact);
    }
    return result;
}

MatE cholesky_upper(const MatE& m, unsigned long bits) {
    if (!is_positive_semidefinite(m))
        throw std::invalid_argument("cholesky_upper requires an exactly psd matrix");
    const Field& f = m.field();
    int n = m.rows();
    // Work on a dyadic grid fine enough that the residual stays below
    // 2^(1-bits) even through near-zero pivots.
    unsigned long work = 2 * bits + 32;
    MatE w(f, n, n);
    for (int k = 0; k < n; ++k) {
        Rational s = m.at(k, k).a;
        for (int i = 0; i < k; ++i) s -= f.norm(w.at(i, k));
        if (s <= 0) continue;  // exact-psd zero pivot: row stays zero
        Rational wkk = sqrt_dyadic_floor(s, work);
        if (wkk == 0) continue;
        w.at(k, k) = FieldElement(wkk);
        Rational winv = Rational(1) / wkk;
        for (int j = k + 1; j < n; ++j) {
            FieldElement acc = m.at(k, j);
            for (int i = 0; i < k; ++i)
                acc = f.sub(acc, f.mul(f.conj(w.at(i, k)), w.at(i, j)));
            FieldElement e = f.scale(acc, winv);
            w.at(k, j) = FieldElement(dyadic_round(e.a, work), dyadic_round(e.b, work));
        }
    }
    return w;
}

MultiGcd ideal_gcd_list(const Field& f, const std::vector<RingElement>& v) {
    MultiGcd res;
    res.coeffs.assign(v.size(), RingElement());
    size_t first = v.size();
    for (size_t i = 0; i < v.size(); ++i)
        if (!v[i].is_zero()) { first = i; break; }
    if (first == v.size()) {
        res.g = RingElement();
        return res;
    }
    res.g = v[first];
    res.coeffs[first] = RingElement(Int(1), Int(0));
    for (size_t i = first + 1; i < v.size(); ++i) {
        if (v[i].is_zero()) continue;
        GcdResult step = f.ideal_gcd(res.g, v[i]);
        for (auto& c : res.coeffs) c = f.rmul(step.x, c);
        res.coeffs[i] = step.y;
        res.g = step.g;
    }
    // canonicalize (also when only one nonzero input)
    auto [g, u] = f.canonical_associate(res.g);
    if (!(u == RingElement(Int(1), Int(0)))) {
        res.g = g;
        for (auto& c : res.coeffs) c = f.rmul(u, c);
    }
    return res;
}

bool is_unimodular(const MatE& u) {
    if (u.rows() != u.cols() || !u.is_integral()) return false;
    FieldElement d = u.determinant();
    auto r = u.field().to_ring(d);
    return r && u.field().is_unit(*r);
}

namespace {

MatE extend_recursive(const Field& f, const std::vector<RingElement>& v) {
    int n = static_cast<int>(v.size());
    if (n == 1) {
        MatE m(f, 1, 1);
        m.at(0, 0) = f.from_ring(v[0]);
        return m;
    }
    std::vector<RingElement> head(v.begin(), v.end() - 1);
    MultiGcd hg = ideal_gcd_list(f, head);
    if (hg.g.is_zero()) {
        // v = (0, ..., 0, v_n) with v_n a unit
        MatE m(f, n, n);
        m.at(n - 1, 0) = f.from_ring(v[n - 1]);
        for (int j = 1; j < n; ++j) m.at(j - 1, j) = f.one();
        return m;
    }
    std::vector<RingElement> w(head.size());
    for (size_t i = 0; i < head.size(); ++i) {
        auto q = f.rdiv_exact(head[i], hg.g);
        if (!q) throw std::runtime_error("gcd division failed in basis extension");
        w[i] = *q;
    }
    GcdResult d = f.ideal_gcd(hg.g, v[n - 1]);  // d.g a unit by primitivity
    MatE W = extend_recursive(f, w);
    // columns: (h*w | v_n), then W's columns 2..n-1 lifted, then (-y*w | x);
    // this ordering maps e_1 to the identity completion.
    MatE m(f, n, n);
    for (int i = 0; i < n - 1; ++i) {
        m.at(i, 0) = f.from_ring(head[i]);
        for (int j = 1; j < n - 1; ++j) m.at(i, j) = W.at(i, j);
        m.at(i, n - 1) = f.mul(f.from_ring(f.rneg(d.y)), W.at(i, 0));
    }
    m.at(n - 1, 0) = f.from_ring(v[n - 1]);
    m.at(n - 1, n - 1) = f.from_ring(d.x);
    return m;
}

}  // namespace

MatE extend_to_unimodular(const Field& f, const std::vector<RingElement>& v) {
    if (v.empty()) throw std::invalid_argument("empty vector");
    MultiGcd g = ideal_gcd_list(f, v);
    if (g.g.is_zero() || !f.is_unit(g.g)) {
        throw std::invalid_argument("vector is not primitive; ideal generator " +
                                    g.g.a.get_str() + (f.is_rational() ? "" : "+" + g.g.b.get_str() + "w"));
    }
    MatE m = extend_recursive(f, v);
    if (!is_unimodular(m)) throw std::runtime_error("basis extension produced non-unimodular matrix");
    for (int i = 0; i < m.rows(); ++i)
        if (m.at(i, 0) != f.from_ring(v[static_cast<size_t>(i)]))
            throw std::runtime_error("basis extension lost the first column");
    return m;
}

}  // namespace waring
