#pragma once

#include <map>
#include <memory>
#include <vector>

#include "waring/number_field.hpp"

namespace waring {

// One-sided rational enclosures of the transcendental functions the bound
// calculators need. Everything is exact rational arithmetic on a dyadic grid;
// lo/hi results genuinely bracket the true value.
class RealBounds {
  public:
    explicit RealBounds(unsigned long bits = 96);

    unsigned long bits() const { return bits_; }

    const Rational& pi_lo() const { return pi_lo_; }
    const Rational& pi_hi() const { return pi_hi_; }

    Rational exp_lo(const Rational& x) const;
    Rational exp_hi(const Rational& x) const;
    Rational ln_lo(const Rational& x) const;  // x > 0
    Rational ln_hi(const Rational& x) const;

    Rational sqrt_lo(const Rational& x) const { return sqrt_dyadic_floor(x, bits_); }
    Rational sqrt_hi(const Rational& x) const { return sqrt_dyadic_ceil(x, bits_); }
    Rational nroot_lo(const Rational& x, unsigned long k) const { return nroot_dyadic_floor(x, k, bits_); }
    Rational nroot_hi(const Rational& x, unsigned long k) const { return nroot_dyadic_ceil(x, k, bits_); }

    // x^e for x > 0, e >= 0, via exp(e ln x) with directed rounding
    Rational pow_lo(const Rational& x, const Rational& e) const;
    Rational pow_hi(const Rational& x, const Rational& e) const;

  private:
    Rational exp_core(const Rational& x, bool upper) const;
    Rational ln_core(const Rational& x, bool upper) const;

    unsigned long bits_;
    Rational pi_lo_, pi_hi_;
    Rational ln2_lo_, ln2_hi_;
};

// Round x > 0 up to 3 significant decimal digits.
Rational round_up_3sig(const Rational& x);

// Bound functions that need no certified constants: the Hermite-type sigma
// bound, alpha, the Maclaurin coefficients c(m) of exp(beta*x/(1-x)), and
// harmonic numbers. Values are cached per instance.
class FieldBounds {
  public:
    FieldBounds(Field field, unsigned long bits = 96);

    const Field& field() const { return field_; }
    const RealBounds& reals() const { return rb_; }

    // Rational upper bound on sigma_{n,E} (n >= 1); pi enters inverted, so a
    // certified lower bound of pi feeds the upper evaluation.
    Rational sigma_upper(int n) const;
    // Closed-form relaxation e^{-1+1/n} n^{1+1/n} |d_E|^{1/2}, upper evaluation.
    Rational sigma_relaxation_upper(int n) const;
    // Rational upper bound on alpha(m) = sigma_{m+1} prod_{k=2}^{m+1} sigma_k^{1/(k-1)}.
    Rational alpha_upper(int m) const;
    // Exact c(m) in Q(beta): sum_{k=1..m} C(m-1,k-1) beta^k / k!, c(0) = 1.
    AlgebraicBound maclaurin_c(int m) const;
    // Rational upper bound on c(m) (exact value rounded through sqrt(beta^2)).
    Rational maclaurin_c_upper(int m) const;
    // Exact harmonic number H_m.
    Rational harmonic(int m) const;
    // Enclosure of sqrt(beta * m) (m >= 0).
    std::pair<Rational, Rational> sqrt_beta_m(const Rational& m) const;

  private:
    Field field_;
    RealBounds rb_;
    mutable std::vector<Rational> sigma_cache_;        // index n
    mutable std::vector<Rational> alpha_prod_cache_;  // root products for alpha
    mutable std::vector<Rational> harmonic_cache_;
};

// Certified constants (D1, D2, D3) with the range they were verified on, plus
// the envelope and threshold evaluators built from them.
class BoundsProfile {
  public:
    // Computes the smallest D1, D2 (rounded up to 3 significant digits)
    // satisfying the bound inequalities for all m <= range, then D3 from the
    // max expression; bumps D3 until G(n) > 2^(sigma+2) n^2 + n on [2, range].
    static BoundsProfile certify(const Field& field, int range, unsigned long bits = 96);

    // Reassemble a profile from stored constants (e.g. a profile file). The
    // inequalities are re-verified so a tampered profile is rejected.
    static BoundsProfile from_constants(const Field& field, const Rational& d1,
                                        const Rational& d2, const Rational& d3,
                                        int range, unsigned long bits = 96);

    const Field& field() const { return calc_->field(); }
    const FieldBounds& calc() const { return *calc_; }
    const Rational& d1() const { return d1_; }
    const Rational& d2() const { return d2_; }
    const Rational& d3() const { return d3_; }
    int range() const { return range_; }
    unsigned long bits() const { return calc_->reals().bits(); }

    // c-envelope D2 e^{2 sqrt(beta m)}, upper evaluation (m >= 0).
    Rational c_envelope(int m) const;
    // alpha-envelope D1 |d_E|^{(1+H_n)/2} e^{(ln n)^2/2}, upper evaluation (n >= 1).
    Rational alpha_envelope(int n) const;
    // Threshold G(n) = D3 |d_E|^{2(1+H_n)} n^10 e^{(4+4 sqrt 2) sqrt(beta n) + 2 (ln n)^2},
    // upper evaluation; n >= 2 and n <= range enforced.
    Rational threshold_G(int n) const;
    // (recursion bound sum_{j=2..n} G(j) + 4, closed form n*G(n)); n >= 1.
    std::pair<Rational, Rational> g_upper_bound(int n) const;
    // min{ n >= 2 : G(n) > s }, a certified lower bound on phi*(s).
    int phi_lower_bound(const Int& s) const;
    // Enclosure of the growth exponent k = (4 + 4 sqrt 2) sqrt(beta).
    std::pair<Rational, Rational> growth_exponent() const;

  private:
    BoundsProfile(std::shared_ptr<const FieldBounds> calc, Rational d1, Rational d2,
                  Rational d3, int range);
    void verify_or_throw() const;

    std::shared_ptr<const FieldBounds> calc_;
    Rational d1_, d2_, d3_;
    int range_;
};

// Checks H_m <= 1 + ln m for all 1 <= m <= limit using incremental dyadic
// interval arithmetic; returns the first violation or 0 if none.
long harmonic_log_violation(long limit);

}  // namespace waring
