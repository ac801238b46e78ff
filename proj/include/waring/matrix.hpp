#pragma once

#include <vector>

#include "waring/number_field.hpp"

namespace waring {

// Dense matrix over E with exact entries. Binary operations require both
// operands to live over the same ring.
class MatE {
  public:
    MatE() : field_(Field::rationals()), rows_(0), cols_(0) {}
    MatE(Field field, int rows, int cols)
        : field_(std::move(field)), rows_(rows), cols_(cols),
          e_(static_cast<size_t>(rows) * cols) {
        if (rows < 0 || cols < 0) throw std::invalid_argument("negative matrix dimension");
    }

    static MatE identity(const Field& f, int n) {
        MatE m(f, n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = f.one();
        return m;
    }
    static MatE zero(const Field& f, int rows, int cols) { return MatE(f, rows, cols); }

    const Field& field() const { return field_; }
    int rows() const { return rows_; }
    int cols() const { return cols_; }

    FieldElement& at(int i, int j) { return e_[static_cast<size_t>(i) * cols_ + j]; }
    const FieldElement& at(int i, int j) const { return e_[static_cast<size_t>(i) * cols_ + j]; }

    bool operator==(const MatE& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && field_.same_ring(o.field_) && e_ == o.e_;
    }
    bool operator!=(const MatE& o) const { return !(*this == o); }

    MatE operator+(const MatE& o) const;
    MatE operator-(const MatE& o) const;
    MatE operator*(const MatE& o) const;
    MatE operator-() const;
    MatE scaled(const Rational& c) const;
    MatE conj_transpose() const;  // A* = (conj a_ji)
    MatE transpose() const;

    bool is_zero() const;
    bool is_hermitian() const;
    bool is_upper_triangular() const;
    bool is_strictly_upper() const;
    bool is_unipotent_upper() const;
    bool is_integral() const;  // all entries in O
    bool is_identity() const;

    MatE submatrix(int r0, int c0, int r, int c) const;
    MatE with_block(int r0, int c0, const MatE& block) const;

    // Exact determinant by rational Gaussian elimination.
    FieldElement determinant() const;
    // Exact inverse; throws if singular.
    MatE inverse() const;

  private:
    Field field_;
    int rows_, cols_;
    std::vector<FieldElement> e_;
};

// Gram matrix of an integral hermitian form: entries in O, M = M*, diagonal
// rational integers >= 0.
class HermitianForm {
  public:
    HermitianForm(Field field, MatE gram);

    const Field& field() const { return field_; }
    const MatE& gram() const { return gram_; }
    int rank() const { return gram_.rows(); }

    Int diagonal_int(int i) const;  // the (i,i) entry as a rational integer
    Int trace_int() const;

    bool operator==(const HermitianForm& o) const {
        return field_.same_ring(o.field_) && gram_ == o.gram_;
    }

  private:
    Field field_;
    MatE gram_;
};

// The k-th superdiagonal of an n x n matrix (k >= 1): the slice T_k of the
// graded triangular algebra.
struct GradedSlice {
    int n = 0;
    int k = 1;
    std::vector<FieldElement> entries;  // length n - k

    static GradedSlice of(const MatE& m, int k);
    MatE embed(const Field& f) const;
};

}  // namespace waring
