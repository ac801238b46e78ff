#pragma once

#include <array>
#include <optional>
#include <tuple>
#include <vector>

#include "waring/rational.hpp"

namespace waring {

enum class FieldKind { rational, imaginary_quadratic };

// Element of E = Q or Q(sqrt(-ell)), stored as a + b*omega over {1, omega}.
// For E = Q the b component is identically zero.
struct FieldElement {
    Rational a;
    Rational b;

    FieldElement() : a(0), b(0) {}
    FieldElement(Rational a_, Rational b_) : a(std::move(a_)), b(std::move(b_)) {}
    explicit FieldElement(const Rational& a_) : a(a_), b(0) {}

    bool operator==(const FieldElement& o) const { return a == o.a && b == o.b; }
    bool operator!=(const FieldElement& o) const { return !(*this == o); }
    bool is_zero() const { return a == 0 && b == 0; }
};

// Element of the ring of integers O, stored as a + b*omega with integer coords.
struct RingElement {
    Int a;
    Int b;

    RingElement() : a(0), b(0) {}
    RingElement(Int a_, Int b_) : a(std::move(a_)), b(std::move(b_)) {}
    explicit RingElement(Int a_) : a(std::move(a_)), b(0) {}

    bool operator==(const RingElement& o) const { return a == o.a && b == o.b; }
    bool operator!=(const RingElement& o) const { return !(*this == o); }
    bool is_zero() const { return a == 0 && b == 0; }
};

// Element p + q*beta of the real quadratic extension Q(beta), beta = sqrt(beta_sq) > 0.
// Supports exact sign analysis, so bound comparisons never touch floating point.
class AlgebraicBound {
  public:
    AlgebraicBound() : p_(0), q_(0), beta_sq_(1) {}
    AlgebraicBound(Rational p, Rational q, Rational beta_sq)
        : p_(std::move(p)), q_(std::move(q)), beta_sq_(std::move(beta_sq)) {
        if (beta_sq_ <= 0) throw std::invalid_argument("beta^2 must be positive");
    }
    static AlgebraicBound from_rational(const Rational& p, const Rational& beta_sq) {
        return AlgebraicBound(p, 0, beta_sq);
    }

    const Rational& p() const { return p_; }
    const Rational& q() const { return q_; }
    const Rational& beta_sq() const { return beta_sq_; }

    AlgebraicBound operator+(const AlgebraicBound& o) const {
        check(o);
        return AlgebraicBound(p_ + o.p_, q_ + o.q_, beta_sq_);
    }
    AlgebraicBound operator-(const AlgebraicBound& o) const {
        check(o);
        return AlgebraicBound(p_ - o.p_, q_ - o.q_, beta_sq_);
    }
    AlgebraicBound operator*(const AlgebraicBound& o) const {
        check(o);
        return AlgebraicBound(p_ * o.p_ + q_ * o.q_ * beta_sq_, p_ * o.q_ + q_ * o.p_, beta_sq_);
    }
    AlgebraicBound operator-() const { return AlgebraicBound(-p_, -q_, beta_sq_); }
    AlgebraicBound scaled(const Rational& c) const { return AlgebraicBound(p_ * c, q_ * c, beta_sq_); }

    // Exact sign of p + q*beta via case split and squaring.
    int sign() const {
        int sp = sgn(p_), sq = sgn(q_);
        if (sq == 0) return sp;
        if (sp == 0) return sq;
        if (sp == sq) return sp;
        // opposite signs: compare p^2 against q^2 * beta^2
        Rational lhs = p_ * p_;
        Rational rhs = q_ * q_ * beta_sq_;
        int c = cmp(lhs, rhs);
        if (c == 0) return 0;
        return c > 0 ? sp : sq;
    }

    bool operator<(const AlgebraicBound& o) const { return (*this - o).sign() < 0; }
    bool operator<=(const AlgebraicBound& o) const { return (*this - o).sign() <= 0; }
    bool operator>(const AlgebraicBound& o) const { return (*this - o).sign() > 0; }
    bool operator>=(const AlgebraicBound& o) const { return (*this - o).sign() >= 0; }
    bool operator==(const AlgebraicBound& o) const { return (*this - o).sign() == 0; }

    // Rational enclosure [lo, hi] of the value at the given dyadic precision.
    std::pair<Rational, Rational> enclosure(unsigned long bits) const {
        Rational blo = sqrt_dyadic_floor(beta_sq_, bits);
        Rational bhi = sqrt_dyadic_ceil(beta_sq_, bits);
        if (q_ >= 0) return {p_ + q_ * blo, p_ + q_ * bhi};
        return {p_ + q_ * bhi, p_ + q_ * blo};
    }

  private:
    void check(const AlgebraicBound& o) const {
        if (beta_sq_ != o.beta_sq_)
            throw std::invalid_argument("mixing bounds over different Q(beta)");
    }
    Rational p_, q_, beta_sq_;
};

struct GcdResult {
    RingElement g;  // generator of the ideal (a, b)
    RingElement x;  // Bezout witnesses: g = x*a + y*b
    RingElement y;
};

// Exact arithmetic in Q or one of the nine class-number-1 imaginary quadratic
// fields. All element operations are pure; a Field value is freely copyable.
class Field {
  public:
    static Field rationals();
    static Field rationals(int sigma);
    static Field imaginary_quadratic(int ell);
    static Field imaginary_quadratic(int ell, int sigma);

    static const std::array<int, 9>& supported_ells();
    static int default_sigma(FieldKind kind, int ell);

    FieldKind kind() const { return kind_; }
    bool is_rational() const { return kind_ == FieldKind::rational; }
    int ell() const { return ell_; }
    int sigma() const { return sigma_; }
    int degree() const { return is_rational() ? 1 : 2; }

    const Rational& beta_sq() const { return beta_sq_; }
    const Int& discriminant() const { return d_E_; }      // d_E (1 for Q)
    Int abs_discriminant() const { return abs(d_E_); }
    const Int& omega_trace() const { return tr_omega_; }  // omega + omega*
    const Int& omega_norm() const { return n_omega_; }    // omega * omega*

    bool operator==(const Field& o) const {
        return kind_ == o.kind_ && ell_ == o.ell_ && sigma_ == o.sigma_;
    }
    bool operator!=(const Field& o) const { return !(*this == o); }
    bool same_ring(const Field& o) const { return kind_ == o.kind_ && ell_ == o.ell_; }

    std::string name() const;

    // --- field element arithmetic ------------------------------------------
    FieldElement add(const FieldElement& x, const FieldElement& y) const;
    FieldElement sub(const FieldElement& x, const FieldElement& y) const;
    FieldElement mul(const FieldElement& x, const FieldElement& y) const;
    FieldElement neg(const FieldElement& x) const;
    FieldElement conj(const FieldElement& x) const;
    FieldElement inv(const FieldElement& x) const;
    FieldElement div(const FieldElement& x, const FieldElement& y) const;
    FieldElement scale(const FieldElement& x, const Rational& c) const;
    Rational norm(const FieldElement& x) const;  // x * conj(x), a nonnegative rational
    Rational trace(const FieldElement& x) const; // x + conj(x)

    FieldElement from_rational(const Rational& r) const { return FieldElement(r); }
    FieldElement from_ring(const RingElement& x) const {
        return FieldElement(Rational(x.a), Rational(x.b));
    }
    FieldElement one() const { return FieldElement(Rational(1)); }
    FieldElement zero() const { return FieldElement(); }
    FieldElement omega() const;

    bool is_real(const FieldElement& x) const;  // x == conj(x)
    bool is_ring(const FieldElement& x) const;
    std::optional<RingElement> to_ring(const FieldElement& x) const;
    RingElement to_ring_checked(const FieldElement& x) const;

    // --- ring element arithmetic -------------------------------------------
    RingElement radd(const RingElement& x, const RingElement& y) const;
    RingElement rsub(const RingElement& x, const RingElement& y) const;
    RingElement rmul(const RingElement& x, const RingElement& y) const;
    RingElement rneg(const RingElement& x) const;
    RingElement rconj(const RingElement& x) const;
    Int rnorm(const RingElement& x) const;  // nonnegative rational integer
    bool divides(const RingElement& d, const RingElement& x) const;
    std::optional<RingElement> rdiv_exact(const RingElement& x, const RingElement& d) const;

    bool is_unit(const RingElement& x) const { return rnorm(x) == 1; }
    const std::vector<RingElement>& units() const { return units_; }
    // Associate of x with lexicographically largest (a, b), and the unit applied.
    std::pair<RingElement, RingElement> canonical_associate(const RingElement& x) const;

    // Total order key used for deterministic tie-breaking: (norm, a, b).
    static std::tuple<Int, Int, Int> ring_key(const RingElement& x, const Field& f);
    bool ring_less(const RingElement& x, const RingElement& y) const;

    // --- rounding and gcd ----------------------------------------------------
    // x = c + eta with c in O and norm(eta) <= beta^2, deterministic ties:
    // among minimizing c, the lexicographically smallest (|a|, |b|, a, b).
    std::pair<RingElement, FieldElement> round_to_ring(const FieldElement& x) const;

    // Generator of the ideal (a, b) with Bezout witnesses; works in all nine
    // rings (shortest-vector search on the ideal lattice covers the four
    // non-Euclidean PIDs). Result is canonicalized by unit.
    GcdResult ideal_gcd(const RingElement& a, const RingElement& b) const;

    // Index [O : (a,b)] of the ideal as a Z-lattice (the ideal norm).
    Int ideal_norm(const RingElement& a, const RingElement& b) const;

    AlgebraicBound beta() const { return AlgebraicBound(0, 1, beta_sq_); }
    AlgebraicBound bound_from_rational(const Rational& r) const {
        return AlgebraicBound(r, 0, beta_sq_);
    }

  private:
    Field(FieldKind kind, int ell, int sigma);

    FieldKind kind_;
    int ell_ = 0;
    int sigma_ = 0;
    Int tr_omega_;   // trace of omega
    Int n_omega_;    // norm of omega
    Int d_E_;        // field discriminant
    Rational beta_sq_;
    std::vector<RingElement> units_;
};

}  // namespace waring
