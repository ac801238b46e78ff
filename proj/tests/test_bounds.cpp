#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "waring/bounds.hpp"

using namespace waring;

namespace {

std::vector<Field> all_fields() {
    std::vector<Field> fs = {Field::rationals()};
    for (int ell : Field::supported_ells()) fs.push_back(Field::imaginary_quadratic(ell));
    return fs;
}

// Series coefficients of exp(beta x/(1-x)) by the derivative recurrence
// (m+1) f_{m+1} = sum_j (j+1) u_{j+1} f_{m-j} with u_j = beta for j >= 1:
// an oracle independent of the binomial closed form.
std::vector<AlgebraicBound> convolution_series(const Field& f, int terms) {
    Rational bsq = f.beta_sq();
    AlgebraicBound beta(0, 1, bsq);
    std::vector<AlgebraicBound> u(terms + 2, AlgebraicBound(0, 0, bsq));
    for (int j = 1; j <= terms + 1; ++j) u[j] = beta;
    std::vector<AlgebraicBound> coeff;
    coeff.push_back(AlgebraicBound(1, 0, bsq));
    for (int m = 0; m < terms; ++m) {
        AlgebraicBound acc(0, 0, bsq);
        for (int j = 0; j <= m; ++j)
            acc = acc + u[j + 1].scaled(Rational(j + 1)) * coeff[m - j];
        coeff.push_back(acc.scaled(Rational(1, m + 1)));
    }
    return coeff;
}

}  // namespace

TEST_CASE("pi enclosure") {
    RealBounds rb(96);
    CHECK(rb.pi_lo() < rb.pi_hi());
    Rational pi_ref_lo = Rational(Int("3141592653589793238")) / Rational(Int("1000000000000000000"));
    Rational pi_ref_hi = Rational(Int("3141592653589793239")) / Rational(Int("1000000000000000000"));
    CHECK(rb.pi_lo() > pi_ref_lo);
    CHECK(rb.pi_hi() < pi_ref_hi);
}

TEST_CASE("exp and ln enclosures bracket and compose") {
    RealBounds rb(96);
    CHECK(rb.exp_lo(Rational(0)) == 1);
    CHECK(rb.exp_hi(Rational(0)) == 1);
    for (long k : {1L, 2L, 7L, 50L, 173L}) {
        Rational x(k);
        CHECK(rb.exp_lo(x) < rb.exp_hi(x));
        // ln(exp(x)) straddles x
        CHECK(rb.ln_lo(rb.exp_lo(x)) <= x);
        CHECK(rb.ln_hi(rb.exp_hi(x)) >= x);
    }
    CHECK(rb.exp_lo(Rational(-3)) > 0);
    CHECK(rb.exp_hi(Rational(-3)) < Rational(1, 20));
    CHECK(rb.ln_lo(Rational(1)) == 0);
    // e itself: 2.718281828...
    CHECK(rb.exp_lo(Rational(1)) > Rational(Int("27182818284")) / Rational(Int("10000000000")));
    CHECK(rb.exp_hi(Rational(1)) < Rational(Int("27182818285")) / Rational(Int("10000000000")));
    // enclosures are tight at the requested precision
    Rational w = rb.exp_hi(Rational(1)) - rb.exp_lo(Rational(1));
    CHECK(w < Rational(1) / Rational(pow2_int(80)));
}

TEST_CASE("sigma examples") {
    FieldBounds q(Field::rationals());
    CHECK(q.sigma_upper(1) == 1);  // 4 omega_1^{-2} with omega_1 = 2, exact
    // sigma_2 = 4/pi = 1.27324survey...: upper bound at least the true value and tight
    Rational four_over_pi_lo = Rational(4) / q.reals().pi_hi();
    CHECK(q.sigma_upper(2) >= four_over_pi_lo);
    CHECK(q.sigma_upper(2) < four_over_pi_lo * Rational(1000001, 1000000));
    CHECK(q.sigma_upper(2) > Rational(127323, 100000));  // 4/pi = 1.2732395...
    CHECK(q.sigma_upper(2) < Rational(127325, 100000));

    // closed-form relaxation at n = 2 over Q(i): e^{-1/2} 2^{3/2} |−4|^{1/2} ~ 3.4307
    FieldBounds qi(Field::imaginary_quadratic(1));
    Rational relax = qi.sigma_relaxation_upper(2);
    CHECK(relax > Rational(34310, 10000));  // e^{-1/2} 2^{3/2} * 2 = 3.43107...
    CHECK(relax < Rational(34312, 10000));
    // the relaxation dominates the sharper bound
    CHECK(qi.sigma_upper(2) <= relax);
}

TEST_CASE("alpha examples and monotonicity") {
    FieldBounds q(Field::rationals());
    // alpha(1) = sigma_2^2 = 16/pi^2 ~ 1.6211
    Rational a1 = q.alpha_upper(1);
    Rational s2 = q.sigma_upper(2);
    CHECK(a1 >= s2 * s2 * Rational(999999, 1000000));
    CHECK(a1 <= s2 * s2 * Rational(1000001, 1000000));
    CHECK(a1 > Rational(16210, 10000));
    CHECK(a1 < Rational(16212, 10000));
    for (const Field& f : {Field::rationals(), Field::imaginary_quadratic(3)}) {
        FieldBounds fb(f);
        for (int m = 1; m < 64; ++m) CHECK(fb.alpha_upper(m + 1) >= fb.alpha_upper(m));
    }
}

TEST_CASE("maclaurin coefficients: closed form vs convolution oracle") {
    for (const Field& f : all_fields()) {
        FieldBounds fb(f);
        auto oracle = convolution_series(f, 64);
        CHECK(fb.maclaurin_c(0) == AlgebraicBound(1, 0, f.beta_sq()));
        CHECK(fb.maclaurin_c(1) == AlgebraicBound(0, 1, f.beta_sq()));  // c(1) = beta
        // c(2) = beta + beta^2/2
        CHECK(fb.maclaurin_c(2) == AlgebraicBound(f.beta_sq() / 2, 1, f.beta_sq()));
        for (int m = 0; m <= 64; ++m) CHECK(fb.maclaurin_c(m) == oracle[m]);
    }
}

TEST_CASE("certified constants") {
    for (const Field& f : {Field::rationals(), Field::imaginary_quadratic(1),
                           Field::imaginary_quadratic(163)}) {
        BoundsProfile p = BoundsProfile::certify(f, 200);
        CHECK(p.d2() >= 1);  // c(0) = 1 forces it
        // D3 max expression holds by construction
        Rational d1sq = p.d1() * p.d1(), d2sq = p.d2() * p.d2();
        CHECK(p.d3() >= f.beta_sq());
        CHECK(p.d3() >= d1sq * d2sq);
        CHECK(p.d3() >= Rational(144) * f.beta_sq() * d1sq * d1sq * d2sq * d2sq * d2sq);
        CHECK(p.d3() >= Rational(pow2_int(f.sigma() + 2)) * Rational(f.omega_norm() + 4) * d1sq * d2sq);
        // envelopes dominate the exact values on the certified range
        for (int m = 0; m <= 200; m += 7) {
            AlgebraicBound diff =
                AlgebraicBound(p.c_envelope(m), 0, f.beta_sq()) - p.calc().maclaurin_c(m);
            CHECK(diff.sign() >= 0);
        }
        for (int m = 1; m <= 200; m += 7)
            CHECK(p.calc().alpha_upper(m) <= p.alpha_envelope(m));
        // alpha envelope at n dominates alpha(m) for every m <= n
        for (int n = 2; n <= 64; n *= 2)
            for (int m = 1; m <= n; ++m)
                CHECK(p.calc().alpha_upper(m) <= p.alpha_envelope(n));
    }
}

TEST_CASE("recertifying with a larger range never shrinks the constants") {
    Field f = Field::imaginary_quadratic(7);
    BoundsProfile p64 = BoundsProfile::certify(f, 64);
    BoundsProfile p200 = BoundsProfile::certify(f, 200);
    CHECK(p200.d1() >= p64.d1());
    CHECK(p200.d2() >= p64.d2());
}

TEST_CASE("threshold G properties") {
    for (const Field& f : {Field::rationals(), Field::imaginary_quadratic(2)}) {
        BoundsProfile p = BoundsProfile::certify(f, 64);
        Rational prev(0);
        for (int n = 2; n <= 64; ++n) {
            Rational g = p.threshold_G(n);
            CHECK(g > Rational(pow2_int(f.sigma() + 2)) * n * n + n);
            CHECK(g > prev);
            prev = g;
        }
    }
    // Q: G(2)/D3 = 2^10 e^{(4+4 sqrt 2) + 2 (ln 2)^2} within relative 1e-6
    BoundsProfile q = BoundsProfile::certify(Field::rationals(), 64);
    Rational ratio = q.threshold_G(2) / q.d3();
    RealBounds rb(160);
    Rational sqrt2_lo = rb.nroot_lo(Rational(2), 2), sqrt2_hi = rb.nroot_hi(Rational(2), 2);
    Rational ln2_lo = rb.ln_lo(Rational(2)), ln2_hi = rb.ln_hi(Rational(2));
    Rational lo = Rational(1024) * rb.exp_lo(4 + 4 * sqrt2_lo + 2 * ln2_lo * ln2_lo);
    Rational hi = Rational(1024) * rb.exp_hi(4 + 4 * sqrt2_hi + 2 * ln2_hi * ln2_hi);
    CHECK(ratio >= lo * Rational(999999, 1000000));
    CHECK(ratio <= hi * Rational(1000001, 1000000));
}

TEST_CASE("g upper bound recursion vs closed form") {
    BoundsProfile p = BoundsProfile::certify(Field::rationals(), 64);
    auto [rec1, closed1] = p.g_upper_bound(1);
    CHECK(rec1 == 4);
    CHECK(closed1 == 4);
    auto [rec2, closed2] = p.g_upper_bound(2);
    CHECK(rec2 == p.threshold_G(2) + 4);
    CHECK(rec2 <= closed2);
    for (int n = 2; n <= 32; ++n) {
        auto [rec, closed] = p.g_upper_bound(n);
        CHECK(rec <= closed);
    }
}

TEST_CASE("phi lower bound") {
    BoundsProfile p = BoundsProfile::certify(Field::rationals(), 64);
    CHECK(p.phi_lower_bound(Int(1)) == 2);
    long prev = 0;
    Int s(1);
    for (int k = 0; k <= 12; ++k, s *= 10) {
        long n = p.phi_lower_bound(s);
        CHECK(n >= prev);
        prev = n;
    }
    // k over Q is 4 + 2 sqrt(2) = 6.828427...; enclosure within 1e-6
    auto [klo, khi] = p.growth_exponent();
    CHECK(khi - klo < Rational(1, 1000000));
    // (k - 4)^2 = 8 exactly for the true value: check it lies inside
    CHECK((klo - 4) * (klo - 4) <= 8);
    CHECK((khi - 4) * (khi - 4) >= 8);
    CHECK(klo > Rational(6828427, 1000000));
    CHECK(khi < Rational(6828428, 1000000));
}

TEST_CASE("harmonic numbers against 1 + ln m") {
    CHECK(harmonic_log_violation(100000) == 0);
    FieldBounds fb(Field::rationals());
    CHECK(fb.harmonic(1) == 1);
    CHECK(fb.harmonic(4) == Rational(25, 12));
}

TEST_CASE("tampered profiles are rejected") {
    Field f = Field::rationals();
    BoundsProfile p = BoundsProfile::certify(f, 64);
    CHECK_THROWS_AS(BoundsProfile::from_constants(f, p.d1() / 100, p.d2(), p.d3(), 64),
                    std::runtime_error);
    CHECK_THROWS_AS(BoundsProfile::from_constants(f, p.d1(), p.d2() / 100, p.d3(), 64),
                    std::runtime_error);
    CHECK_THROWS_AS(BoundsProfile::from_constants(f, p.d1(), p.d2(), Rational(1, 100), 64),
                    std::runtime_error);
    BoundsProfile copy = BoundsProfile::from_constants(f, p.d1(), p.d2(), p.d3(), 64);
    CHECK(copy.threshold_G(5) == p.threshold_G(5));
}

TEST_CASE("rounding up to three significant digits") {
    auto rat = [](long n, long d) {
        Rational r(n, d);
        r.canonicalize();
        return r;
    };
    CHECK(round_up_3sig(rat(12345, 10000)) == rat(124, 100));
    CHECK(round_up_3sig(Rational(1)) == 1);
    CHECK(round_up_3sig(rat(999001, 1000)) == 1000);
    CHECK(round_up_3sig(Rational(1, 3)) == rat(334, 1000));
}
