#include "waring/reduction.hpp"

namespace waring {

namespace {

// Symmetric rational Gram of the restriction-of-scalars Z-lattice: basis
// e_i, omega*e_i per coordinate when E is imaginary quadratic.
struct ScalarLattice {
    int n = 0;
    int deg = 1;
    std::vector<std::vector<Rational>> gram;  // N x N, N = n*deg

    std::vector<RingElement> to_ring_vector(const std::vector<Int>& x) const {
        std::vector<RingElement> v(n);
        for (int i = 0; i < n; ++i) {
            if (deg == 1)
                v[i] = RingElement(x[i], Int(0));
            else
                v[i] = RingElement(x[2 * i], x[2 * i + 1]);
        }
        return v;
    }
};

ScalarLattice scalar_lattice(const Field& f, const MatE& gram) {
    ScalarLattice L;
    L.n = gram.rows();
    L.deg = f.degree();
    int N = L.n * L.deg;
    L.gram.assign(N, std::vector<Rational>(N, Rational(0)));
    FieldElement w[2] = {f.one(), f.omega()};
    for (int i = 0; i < L.n; ++i) {
        for (int s = 0; s < L.deg; ++s) {
            for (int j = 0; j < L.n; ++j) {
                for (int t = 0; t < L.deg; ++t) {
                    // pairing of basis vectors w_s e_i and w_t e_j under x* M x:
                    // trace of conj(w_s) M_ij w_t
                    FieldElement z = f.mul(f.mul(f.conj(w[s]), gram.at(i, j)), w[t]);
                    L.gram[i * L.deg + s][j * L.deg + t] = f.trace(z) / 2;
                }
            }
        }
    }
    return L;
}

struct Enumerator {
    const Field& f;
    const ScalarLattice& L;
    int N;
    std::vector<Rational> d;               // LDL pivots
    std::vector<std::vector<Rational>> u;  // unit upper factor
    Rational bound;
    bool have_candidate = false;
    Rational best_mu;
    std::vector<RingElement> best_v;
    std::vector<Int> x;

    Enumerator(const Field& field, const ScalarLattice& lat) : f(field), L(lat), N(lat.n * lat.deg) {
        d.assign(N, Rational(0));
        u.assign(N, std::vector<Rational>(N, Rational(0)));
        auto a = L.gram;
        for (int k = 0; k < N; ++k) {
            d[k] = a[k][k];
            if (d[k] <= 0) throw std::invalid_argument("form is not positive definite");
            for (int j = k; j < N; ++j) u[k][j] = a[k][j] / d[k];
            for (int i = k + 1; i < N; ++i)
                for (int j = k + 1; j < N; ++j) a[i][j] -= a[i][k] * u[k][j];
        }
        bound = L.gram[0][0];
        for (int i = 1; i < N; ++i) bound = std::min(bound, L.gram[i][i]);
        x.assign(N, Int(0));
    }

    void consider() {
        std::vector<RingElement> v = L.to_ring_vector(x);
        bool zero = true;
        for (const auto& c : v)
            if (!c.is_zero()) { zero = false; break; }
        if (zero) return;
        Rational val(0);
        for (int i = 0; i < N; ++i) {
            Rational s(x[i]);
            for (int j = i + 1; j < N; ++j) s += u[i][j] * Rational(x[j]);
            val += d[i] * s * s;
        }
        std::vector<RingElement> canon = canonical_unit_vector(f, v);
        if (!have_candidate || val < best_mu ||
            (val == best_mu && vector_key_less(f, canon, best_v))) {
            best_mu = val;
            best_v = canon;
            have_candidate = true;
            if (val < bound) bound = val;
        }
    }

    void run(int level, const Rational& partial) {
        if (level < 0) {
            consider();
            return;
        }
        Rational c(0);
        for (int j = level + 1; j < N; ++j) c += u[level][j] * Rational(x[j]);
        Rational budget = bound - partial;
        Int center = round_rat(-c);
        for (int dir = 0; dir < 2; ++dir) {
            Int xi = dir == 0 ? center : center - 1;
            Int step = dir == 0 ? 1 : -1;
            while (true) {
                Rational off = Rational(xi) + c;
                Rational term = d[level] * off * off;
                if (term > budget) break;
                x[level] = xi;
                run(level - 1, partial + term);
                budget = bound - partial;  // bound may have shrunk
                xi += step;
            }
        }
        x[level] = 0;
    }
};

}  // namespace

std::vector<RingElement> canonical_unit_vector(const Field& f, const std::vector<RingElement>& v) {
    size_t first = v.size();
    for (size_t i = 0; i < v.size(); ++i)
        if (!v[i].is_zero()) { first = i; break; }
    if (first == v.size()) return v;
    auto [assoc, unit] = f.canonical_associate(v[first]);
    std::vector<RingElement> w(v.size());
    for (size_t i = 0; i < v.size(); ++i) w[i] = f.rmul(unit, v[i]);
    return w;
}

bool vector_key_less(const Field& f, const std::vector<RingElement>& a,
                     const std::vector<RingElement>& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    for (size_t i = a.size(); i-- > 0;) {
        auto ka = Field::ring_key(a[i], f);
        auto kb = Field::ring_key(b[i], f);
        if (ka != kb) return ka < kb;
    }
    return false;
}

ShortestVector shortest_vector_gram(const Field& f, const MatE& gram) {
    if (gram.rows() != gram.cols() || gram.rows() == 0)
        throw std::invalid_argument("shortest vector needs a nonempty square Gram matrix");
    if (!gram.is_hermitian()) throw std::invalid_argument("Gram matrix is not hermitian");
    ScalarLattice L = scalar_lattice(f, gram);
    Enumerator e(f, L);
    e.run(e.N - 1, Rational(0));
    if (!e.have_candidate) throw std::runtime_error("enumeration found no vector");
    return {e.best_mu, e.best_v};
}

ShortestVector shortest_vector(const HermitianForm& form) {
    if (!is_positive_definite(form.gram()))
        throw std::invalid_argument("form is not positive definite");
    return shortest_vector_gram(form.field(), form.gram());
}

WeakReduction weak_reduce_gram(const Field& f, const MatE& gram) {
    int n = gram.rows();
    WeakReduction r{std::vector<Rational>(), MatE::identity(f, n), MatE::identity(f, n)};
    if (n == 0) return r;
    ShortestVector sv = shortest_vector_gram(f, gram);
    MatE V = extend_to_unimodular(f, sv.v);
    MatE m1 = V.conj_transpose() * gram * V;
    Rational h1 = m1.at(0, 0).a;
    if (h1 != sv.mu) throw std::runtime_error("minimal vector does not realize its value");
    r.H.push_back(h1);
    if (n == 1) {
        r.U = V;
        return r;
    }
    // Schur complement = Gram of the projected lattice
    MatE s(f, n - 1, n - 1);
    for (int i = 1; i < n; ++i)
        for (int j = 1; j < n; ++j) {
            FieldElement corr = f.scale(f.mul(m1.at(i, 0), m1.at(0, j)), Rational(1) / h1);
            s.at(i - 1, j - 1) = f.sub(m1.at(i, j), corr);
        }
    WeakReduction tail = weak_reduce_gram(f, s);
    r.H.insert(r.H.end(), tail.H.begin(), tail.H.end());
    MatE lift = MatE::identity(f, n).with_block(1, 1, tail.U);
    r.U = V * lift;
    MatE m2 = r.U.conj_transpose() * gram * r.U;
    MatE X = MatE::identity(f, n).with_block(1, 1, tail.X);
    for (int j = 1; j < n; ++j) X.at(0, j) = f.scale(m2.at(0, j), Rational(1) / h1);
    r.X = X;
    // exact reconstruction: U* M U = X* H X
    MatE hx = r.X;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) hx.at(i, j) = f.scale(r.X.at(i, j), r.H[i]);
    if (r.X.conj_transpose() * hx != m2)
        throw std::runtime_error("weak reduction identity failed");
    return r;
}

WeakReduction weak_reduce(const HermitianForm& form) {
    if (!is_positive_definite(form.gram()))
        throw std::invalid_argument("form is not positive definite");
    return weak_reduce_gram(form.field(), form.gram());
}

bool verify_weakly_reduced(const Field& f, const std::vector<Rational>& H, const MatE& X) {
    int n = X.rows();
    for (int i = 0; i < n; ++i) {
        int m = n - i;
        MatE xi = X.submatrix(i, i, m, m);
        MatE hx = xi;
        for (int r = 0; r < m; ++r)
            for (int c = 0; c < m; ++c) hx.at(r, c) = f.scale(xi.at(r, c), H[i + r]);
        MatE gi = xi.conj_transpose() * hx;
        ShortestVector sv = shortest_vector_gram(f, gi);
        if (sv.mu != H[i]) return false;
    }
    return true;
}

Balancing balance(const MatE& x) {
    if (!x.is_unipotent_upper())
        throw std::invalid_argument("balance requires a unipotent upper triangular matrix");
    const Field& f = x.field();
    int n = x.rows();
    Balancing out{MatE::identity(f, n), {}};
    if (n <= 1) return out;
    MatE ysum = MatE::identity(f, n);   // I + Y_1 + ... + Y_{k-1}
    MatE expprod = MatE::identity(f, n);  // exp(Z_1)...exp(Z_{k-1})
    for (int k = 1; k <= n - 1; ++k) {
        MatE diff = x * ysum - expprod;
        GradedSlice xk = GradedSlice::of(diff, k);
        GradedSlice yk{n, k, {}}, zk{n, k, {}};
        yk.entries.reserve(xk.entries.size());
        zk.entries.reserve(xk.entries.size());
        for (const FieldElement& e : xk.entries) {
            auto [c, eta] = f.round_to_ring(e);
            yk.entries.push_back(f.neg(f.from_ring(c)));
            zk.entries.push_back(eta);
            if (f.norm(eta) > f.beta_sq())
                throw std::runtime_error("rounding residue escaped the fundamental region");
        }
        ysum = ysum + yk.embed(f);
        expprod = expprod * nilpotent_exp(zk.embed(f));
        out.slices.push_back(std::move(zk));
    }
    out.Y = ysum;
    if (x * out.Y != expprod) throw std::runtime_error("balancing factorization failed");
    return out;
}

ReducedForm balanced_hkz(const HermitianForm& form) {
    WeakReduction wr = weak_reduce(form);
    Balancing b = balance(wr.X);
    ReducedForm rf{form.field(), wr.H, wr.X * b.Y, wr.U * b.Y};
    ReductionChecks checks = certify_reduction(form, rf);
    if (!checks.all()) throw std::runtime_error("balanced reduction failed certification");
    return rf;
}

ReductionChecks certify_reduction(const HermitianForm& form, const ReducedForm& rf) {
    ReductionChecks c;
    const Field& f = form.field();
    int n = form.rank();
    MatE ht = rf.T;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) ht.at(i, j) = f.scale(rf.T.at(i, j), rf.H[i]);
    c.identity = is_unimodular(rf.U) &&
                 rf.U.conj_transpose() * form.gram() * rf.U == rf.T.conj_transpose() * ht;

    // X = T Y^{-1} has the same projected minima as T for the h_i checks: the
    // h_i are re-derived from the trailing blocks of T itself (T = XY with Y
    // unimodular upper unipotent leaves every projected lattice unchanged).
    c.h_minimal = verify_weakly_reduced(f, rf.H, rf.T);

    FieldBounds fb(f);
    c.ratio_bound = true;
    for (int i = 0; i < n && c.ratio_bound; ++i)
        for (int j = i + 1; j < n; ++j)
            if (rf.H[i] / rf.H[j] > fb.alpha_upper(j - i)) {
                c.ratio_bound = false;
                break;
            }

    MatE tinv = rf.T.inverse();
    c.entry_bound = true;
    c.inverse_entry_bound = true;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            AlgebraicBound cb = fb.maclaurin_c(j - i);
            AlgebraicBound csq = cb * cb;
            if (AlgebraicBound(f.norm(rf.T.at(i, j)), 0, f.beta_sq()) > csq)
                c.entry_bound = false;
            if (AlgebraicBound(f.norm(tinv.at(i, j)), 0, f.beta_sq()) > csq)
                c.inverse_entry_bound = false;
        }
    }
    return c;
}

}  // namespace waring
