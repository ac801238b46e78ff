#include "waring/matrix.hpp"

namespace waring {

namespace {

void check_compatible(const MatE& a, const MatE& b) {
    if (!a.field().same_ring(b.field()))
        throw std::invalid_argument("matrices over different rings");
}

}  // namespace

MatE MatE::operator+(const MatE& o) const {
    check_compatible(*this, o);
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("shape mismatch in +");
    MatE r(field_, rows_, cols_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) r.at(i, j) = field_.add(at(i, j), o.at(i, j));
    return r;
}

MatE MatE::operator-(const MatE& o) const {
    check_compatible(*this, o);
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("shape mismatch in -");
    MatE r(field_, rows_, cols_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) r.at(i, j) = field_.sub(at(i, j), o.at(i, j));
    return r;
}

MatE MatE::operator-() const {
    MatE r(field_, rows_, cols_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) r.at(i, j) = field_.neg(at(i, j));
    return r;
}

MatE MatE::operator*(const MatE& o) const {
    check_compatible(*this, o);
    if (cols_ != o.rows_) throw std::invalid_argument("shape mismatch in *");
    MatE r(field_, rows_, o.cols_);
    for (int i = 0; i < rows_; ++i) {
        for (int k = 0; k < cols_; ++k) {
            const FieldElement& x = at(i, k);
            if (x.is_zero()) continue;
            for (int j = 0; j < o.cols_; ++j) {
                if (o.at(k, j).is_zero()) continue;
                r.at(i, j) = field_.add(r.at(i, j), field_.mul(x, o.at(k, j)));
            }
        }
    }
    return r;
}

MatE MatE::scaled(const Rational& c) const {
    MatE r(field_, rows_, cols_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) r.at(i, j) = field_.scale(at(i, j), c);
    return r;
}

MatE MatE::conj_transpose() const {
    MatE r(field_, cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) r.at(j, i) = field_.conj(at(i, j));
    return r;
}

MatE MatE::transpose() const {
    MatE r(field_, cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
    return r;
}

bool MatE::is_zero() const {
    for (const auto& x : e_)
        if (!x.is_zero()) return false;
    return true;
}

bool MatE::is_hermitian() const {
    if (rows_ != cols_) return false;
    for (int i = 0; i < rows_; ++i)
        for (int j = i; j < cols_; ++j)
            if (at(i, j) != field_.conj(at(j, i))) return false;
    return true;
}

bool MatE::is_upper_triangular() const {
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < std::min(i, cols_); ++j)
            if (!at(i, j).is_zero()) return false;
    return true;
}

bool MatE::is_strictly_upper() const {
    if (!is_upper_triangular()) return false;
    for (int i = 0; i < std::min(rows_, cols_); ++i)
        if (!at(i, i).is_zero()) return false;
    return true;
}

bool MatE::is_unipotent_upper() const {
    if (rows_ != cols_ || !is_upper_triangular()) return false;
    for (int i = 0; i < rows_; ++i)
        if (at(i, i) != field_.one()) return false;
    return true;
}

bool MatE::is_integral() const {
    for (const auto& x : e_)
        if (!field_.is_ring(x)) return false;
    return true;
}

bool MatE::is_identity() const {
    if (rows_ != cols_) return false;
    return *this == identity(field_, rows_);
}

MatE MatE::submatrix(int r0, int c0, int r, int c) const {
    if (r0 < 0 || c0 < 0 || r0 + r > rows_ || c0 + c > cols_)
        throw std::invalid_argument("submatrix out of range");
    MatE m(field_, r, c);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j) m.at(i, j) = at(r0 + i, c0 + j);
    return m;
}

MatE MatE::with_block(int r0, int c0, const MatE& block) const {
    MatE m = *this;
    for (int i = 0; i < block.rows(); ++i)
        for (int j = 0; j < block.cols(); ++j) m.at(r0 + i, c0 + j) = block.at(i, j);
    return m;
}

FieldElement MatE::determinant() const {
    if (rows_ != cols_) throw std::invalid_argument("determinant of non-square matrix");
    MatE a = *this;
    const Field& f = field_;
    FieldElement det = f.one();
    int n = rows_;
    for (int k = 0; k < n; ++k) {
        int piv = -1;
        for (int i = k; i < n; ++i)
            if (!a.at(i, k).is_zero()) { piv = i; break; }
        if (piv < 0) return f.zero();
        if (piv != k) {
            for (int j = 0; j < n; ++j) std::swap(a.at(k, j), a.at(piv, j));
            det = f.neg(det);
        }
        det = f.mul(det, a.at(k, k));
        FieldElement pinv = f.inv(a.at(k, k));
        for (int i = k + 1; i < n; ++i) {
            if (a.at(i, k).is_zero()) continue;
            FieldElement factor = f.mul(a.at(i, k), pinv);
            for (int j = k; j < n; ++j)
                a.at(i, j) = f.sub(a.at(i, j), f.mul(factor, a.at(k, j)));
        }
    }
    return det;
}

MatE MatE::inverse() const {
    if (rows_ != cols_) throw std::invalid_argument("inverse of non-square matrix");
    int n = rows_;
    const Field& f = field_;
    MatE a = *this;
    MatE inv = identity(f, n);
    for (int k = 0; k < n; ++k) {
        int piv = -1;
        for (int i = k; i < n; ++i)
            if (!a.at(i, k).is_zero()) { piv = i; break; }
        if (piv < 0) throw std::invalid_argument("matrix is singular");
        if (piv != k)
            for (int j = 0; j < n; ++j) {
                std::swap(a.at(k, j), a.at(piv, j));
                std::swap(inv.at(k, j), inv.at(piv, j));
            }
        FieldElement pinv = f.inv(a.at(k, k));
        for (int j = 0; j < n; ++j) {
            a.at(k, j) = f.mul(a.at(k, j), pinv);
            inv.at(k, j) = f.mul(inv.at(k, j), pinv);
        }
        for (int i = 0; i < n; ++i) {
            if (i == k || a.at(i, k).is_zero()) continue;
            FieldElement factor = a.at(i, k);
            for (int j = 0; j < n; ++j) {
                a.at(i, j) = f.sub(a.at(i, j), f.mul(factor, a.at(k, j)));
                inv.at(i, j) = f.sub(inv.at(i, j), f.mul(factor, inv.at(k, j)));
            }
        }
    }
    return inv;
}

HermitianForm::HermitianForm(Field field, MatE gram) : field_(std::move(field)), gram_(std::move(gram)) {
    if (gram_.rows() != gram_.cols()) throw std::invalid_argument("Gram matrix must be square");
    if (!gram_.field().same_ring(field_)) throw std::invalid_argument("Gram matrix over wrong ring");
    if (!gram_.is_hermitian()) throw std::invalid_argument("Gram matrix is not hermitian");
    if (!gram_.is_integral()) throw std::invalid_argument("Gram matrix is not integral");
    for (int i = 0; i < gram_.rows(); ++i) {
        const FieldElement& d = gram_.at(i, i);
        if (!field_.is_real(d) || d.a < 0)
            throw std::invalid_argument("diagonal entries must be nonnegative rational integers");
    }
}

Int HermitianForm::diagonal_int(int i) const { return gram_.at(i, i).a.get_num(); }

Int HermitianForm::trace_int() const {
    Int t = 0;
    for (int i = 0; i < rank(); ++i) t += diagonal_int(i);
    return t;
}

GradedSlice GradedSlice::of(const MatE& m, int k) {
    if (m.rows() != m.cols()) throw std::invalid_argument("slice of non-square matrix");
    if (k < 1 || k >= m.rows()) throw std::invalid_argument("slice offset out of range");
    GradedSlice s;
    s.n = m.rows();
    s.k = k;
    s.entries.reserve(m.rows() - k);
    for (int i = 0; i + k < m.rows(); ++i) s.entries.push_back(m.at(i, i + k));
    return s;
}

MatE GradedSlice::embed(const Field& f) const {
    MatE m(f, n, n);
    for (int i = 0; i + k < n; ++i) m.at(i, i + k) = entries[static_cast<size_t>(i)];
    return m;
}

}  // namespace waring
