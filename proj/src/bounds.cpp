#include "waring/bounds.hpp"

#include <algorithm>

namespace waring {

namespace {

// arctan(1/m) enclosure from the alternating Leibniz series.
std::pair<Rational, Rational> arctan_inv(long m, unsigned long bits) {
    Rational sum(0);
    Rational msq = Rational(Int(m) * Int(m));
    Rational term = Rational(1, m);
    Rational eps = Rational(1) / Rational(pow2_int(bits + 8));
    int k = 0;
    while (true) {
        Rational contrib = term / Rational(2 * k + 1);
        if (k % 2 == 0) sum += contrib; else sum -= contrib;
        term /= msq;
        ++k;
        Rational next = term / Rational(2 * k + 1);
        if (next < eps) {
            // alternating: value between sum and sum -/+ next
            if (k % 2 == 0) return {sum, sum + next};
            return {sum - next, sum};
        }
    }
}

}  // namespace

RealBounds::RealBounds(unsigned long bits) : bits_(bits) {
    auto a5 = arctan_inv(5, bits);
    auto a239 = arctan_inv(239, bits);
    pi_lo_ = dyadic_floor(16 * a5.first - 4 * a239.second, bits_);
    pi_hi_ = dyadic_ceil(16 * a5.second - 4 * a239.first, bits_);
    ln2_lo_ = 0;  // filled below via ln_core on 2 (needs ln2 unset: special-cased)
    ln2_hi_ = 0;
    // ln 2 = 2 artanh(1/3)
    Rational t(1, 3), tsq(1, 9);
    Rational sum(0), power = t;
    Rational eps = Rational(1) / Rational(pow2_int(bits + 8));
    int k = 0;
    while (true) {
        sum += power / Rational(2 * k + 1);
        power *= tsq;
        ++k;
        Rational tail = power / Rational(2 * k + 1) * Rational(9, 8);  // 1/(1-t^2) = 9/8
        if (tail < eps) {
            ln2_lo_ = dyadic_floor(2 * sum, bits_);
            ln2_hi_ = dyadic_ceil(2 * (sum + tail), bits_);
            break;
        }
    }
}

Rational RealBounds::exp_core(const Rational& x, bool upper) const {
    if (x == 0) return Rational(1);
    if (x < 0) {
        Rational r = exp_core(-x, !upper);  // 1/exp(-x) with opposite rounding
        Rational inv = Rational(1) / r;
        return upper ? dyadic_ceil(inv, 2 * bits_) : dyadic_floor(inv, 2 * bits_);
    }
    // halve until y <= 1/2, run the series, square back
    unsigned long halvings = 0;
    Rational y = x;
    while (y > Rational(1, 2)) {
        y /= 2;
        ++halvings;
    }
    unsigned long work = bits_ + 8 * (halvings + 2);
    y = upper ? dyadic_ceil(y, work) : dyadic_floor(y, work);
    Rational sum(1), term(1);
    Rational eps = Rational(1) / Rational(pow2_int(work + 8));
    for (int k = 1; k < 10000; ++k) {
        term = term * y / Rational(k);
        sum += term;
        if (term < eps) break;
    }
    if (upper) sum += term * 2;  // geometric tail, ratio <= 1/2
    Rational r = upper ? dyadic_ceil(sum, work) : dyadic_floor(sum, work);
    for (unsigned long i = 0; i < halvings; ++i) {
        r = r * r;
        r = upper ? dyadic_ceil(r, work) : dyadic_floor(r, work);
    }
    return r;
}

Rational RealBounds::exp_lo(const Rational& x) const {
    Rational r = exp_core(x, false);
    return r < 0 ? Rational(0) : r;
}

Rational RealBounds::exp_hi(const Rational& x) const { return exp_core(x, true); }

Rational RealBounds::ln_core(const Rational& x, bool upper) const {
    if (x <= 0) throw std::invalid_argument("ln of nonpositive value");
    if (x == 1) return Rational(0);
    if (x < 1) return -ln_core(Rational(1) / x, !upper);
    // x = r * 2^m with r in [1, 2)
    Int f = floor_rat(x);
    unsigned long m = mpz_sizeinbase(f.get_mpz_t(), 2) - 1;
    Rational r = x / Rational(pow2_int(m));
    Rational t = (r - 1) / (r + 1);  // in [0, 1/3)
    unsigned long work = bits_ + 16;
    t = upper ? dyadic_ceil(t, work) : dyadic_floor(t, work);
    if (t < 0) t = 0;
    Rational tsq = t * t;
    Rational sum(0), power = t;
    Rational eps = Rational(1) / Rational(pow2_int(work + 8));
    for (int k = 0; k < 10000; ++k) {
        sum += power / Rational(2 * k + 1);
        power *= tsq;
        Rational tail = power / Rational(2 * k + 3) * Rational(9, 8);
        if (tail < eps) {
            if (upper) sum += tail;
            break;
        }
    }
    Rational lnr = 2 * sum;
    Rational res = upper ? Rational(m) * ln2_hi_ + lnr : Rational(m) * ln2_lo_ + lnr;
    return upper ? dyadic_ceil(res, work) : dyadic_floor(res, work);
}

Rational RealBounds::ln_lo(const Rational& x) const { return ln_core(x, false); }
Rational RealBounds::ln_hi(const Rational& x) const { return ln_core(x, true); }

Rational RealBounds::pow_lo(const Rational& x, const Rational& e) const {
    if (e == 0) return Rational(1);
    if (x == 1) return Rational(1);
    return exp_lo(e * ln_lo(x));
}

Rational RealBounds::pow_hi(const Rational& x, const Rational& e) const {
    if (e == 0) return Rational(1);
    if (x == 1) return Rational(1);
    return exp_hi(e * ln_hi(x));
}

Rational round_up_3sig(const Rational& x) {
    if (x <= 0) throw std::invalid_argument("round_up_3sig needs a positive value");
    // scale so the mantissa lies in [100, 1000), then ceil
    int s = 0;
    Rational y = x;
    while (y < 100) { y *= 10; ++s; }
    while (y >= 1000) { y /= 10; --s; }
    Int mant = ceil_rat(y);
    Rational r(mant);
    for (int i = 0; i < s; ++i) r /= 10;
    for (int i = 0; i > s; --i) r *= 10;
    return r;
}

FieldBounds::FieldBounds(Field field, unsigned long bits) : field_(std::move(field)), rb_(bits) {}

Rational FieldBounds::sigma_upper(int n) const {
    if (n < 1) throw std::invalid_argument("sigma_n needs n >= 1");
    if (static_cast<size_t>(n) < sigma_cache_.size() && sigma_cache_[n] != 0)
        return sigma_cache_[n];
    Rational up;
    if (field_.is_rational()) {
        // sigma^n = 4^n / omega_n^2, omega_n = r_n pi^floor(n/2)
        unsigned long k = static_cast<unsigned long>(n / 2);
        Rational rn;
        if (n % 2 == 0) {
            Int fact;
            mpz_fac_ui(fact.get_mpz_t(), n / 2);
            rn = Rational(1) / Rational(fact);
        } else {
            Int num = pow2_int(n + 1), half_fact, full_fact;
            mpz_fac_ui(half_fact.get_mpz_t(), (n + 1) / 2);
            mpz_fac_ui(full_fact.get_mpz_t(), n + 1);
            rn = Rational(num * half_fact) / Rational(full_fact);
        }
        Rational omega_lo = rn * pow_rat(rb_.pi_lo(), k);
        Rational pow4 = pow_rat(Rational(4), n);
        up = rb_.nroot_hi(pow4 / (omega_lo * omega_lo), n);
    } else {
        // sigma^n = 2^n n! |d|^(n/2) / pi^n
        Int fact;
        mpz_fac_ui(fact.get_mpz_t(), n);
        Rational d_abs(field_.abs_discriminant());
        Rational d_half_up;
        if (n % 2 == 0)
            d_half_up = pow_rat(d_abs, n / 2);
        else
            d_half_up = pow_rat(d_abs, (n - 1) / 2) * rb_.sqrt_hi(d_abs);
        Rational num = pow_rat(Rational(2), n) * Rational(fact) * d_half_up;
        up = rb_.nroot_hi(num / pow_rat(rb_.pi_lo(), n), n);
    }
    if (sigma_cache_.size() <= static_cast<size_t>(n)) sigma_cache_.resize(n + 1, Rational(0));
    sigma_cache_[n] = up;
    return up;
}

Rational FieldBounds::sigma_relaxation_upper(int n) const {
    if (n < 1) throw std::invalid_argument("n >= 1 required");
    // e^{-1 + 1/n} n^{1 + 1/n} |d|^{1/2}
    Rational e1 = rb_.exp_hi(Rational(-1) + Rational(1, n));
    Rational np = Rational(Int(n)) * rb_.nroot_hi(Rational(Int(n)), n);
    Rational ds = rb_.sqrt_hi(Rational(field_.abs_discriminant()));
    return e1 * np * ds;
}

Rational FieldBounds::alpha_upper(int m) const {
    if (m < 1) throw std::invalid_argument("alpha needs m >= 1");
    // alpha(m) = sigma_{m+1} prod_{k=2}^{m+1} sigma_k^{1/(k-1)};
    // the root product is extended incrementally and cached.
    if (alpha_prod_cache_.empty())
        alpha_prod_cache_ = {Rational(0), rb_.nroot_hi(sigma_upper(2), 1)};
    while (alpha_prod_cache_.size() <= static_cast<size_t>(m)) {
        int mm = static_cast<int>(alpha_prod_cache_.size());
        alpha_prod_cache_.push_back(alpha_prod_cache_.back() *
                                    rb_.nroot_hi(sigma_upper(mm + 1), mm));
    }
    return sigma_upper(m + 1) * alpha_prod_cache_[m];
}

AlgebraicBound FieldBounds::maclaurin_c(int m) const {
    if (m < 0) throw std::invalid_argument("c(m) needs m >= 0");
    const Rational& bsq = field_.beta_sq();
    if (m == 0) return AlgebraicBound(1, 0, bsq);
    Rational p(0), q(0);
    for (int k = 1; k <= m; ++k) {
        Int binom, fact;
        mpz_bin_uiui(binom.get_mpz_t(), m - 1, k - 1);
        mpz_fac_ui(fact.get_mpz_t(), k);
        Rational coeff = Rational(binom) / Rational(fact);
        Rational beta_even = pow_rat(bsq, k / 2);  // beta^k = (beta^2)^(k/2) [* beta if odd]
        if (k % 2 == 0)
            p += coeff * beta_even;
        else
            q += coeff * beta_even;
    }
    return AlgebraicBound(p, q, bsq);
}

Rational FieldBounds::maclaurin_c_upper(int m) const {
    AlgebraicBound c = maclaurin_c(m);
    // coefficients are nonnegative, so the upper sqrt gives an upper bound
    return c.p() + c.q() * rb_.sqrt_hi(c.beta_sq());
}

Rational FieldBounds::harmonic(int m) const {
    if (m < 0) throw std::invalid_argument("harmonic needs m >= 0");
    if (harmonic_cache_.empty()) harmonic_cache_.push_back(Rational(0));
    while (harmonic_cache_.size() <= static_cast<size_t>(m)) {
        int k = static_cast<int>(harmonic_cache_.size());
        harmonic_cache_.push_back(harmonic_cache_.back() + Rational(1, k));
    }
    return harmonic_cache_[m];
}

std::pair<Rational, Rational> FieldBounds::sqrt_beta_m(const Rational& m) const {
    if (m < 0) throw std::invalid_argument("sqrt_beta_m needs m >= 0");
    // sqrt(beta*m) = (beta^2 m^2)^(1/4)
    Rational v = field_.beta_sq() * m * m;
    return {rb_.nroot_lo(v, 4), rb_.nroot_hi(v, 4)};
}

BoundsProfile::BoundsProfile(std::shared_ptr<const FieldBounds> calc, Rational d1, Rational d2,
                             Rational d3, int range)
    : calc_(std::move(calc)), d1_(std::move(d1)), d2_(std::move(d2)), d3_(std::move(d3)),
      range_(range) {}

BoundsProfile BoundsProfile::certify(const Field& field, int range, unsigned long bits) {
    if (range < 64) throw std::invalid_argument("certification range must be >= 64");
    auto calc = std::make_shared<FieldBounds>(field, bits);
    const RealBounds& rb = calc->reals();

    // D2: smallest (3 significant digits, rounded up) with
    // c(m) <= D2 e^{2 sqrt(beta m)} for all m <= range; m = 0 forces D2 >= 1.
    Rational d2_raw(0);
    for (int m = 0; m <= range; ++m) {
        Rational denom_lo = rb.exp_lo(2 * calc->sqrt_beta_m(Rational(m)).first);
        Rational need = calc->maclaurin_c_upper(m) / denom_lo;
        if (need > d2_raw) d2_raw = need;
    }
    Rational d2 = round_up_3sig(d2_raw);

    // D1: same for alpha(m) <= D1 |d|^{(1+H_m)/2} e^{(ln m)^2 / 2}, m in [1, range].
    Rational d_abs(field.abs_discriminant());
    Rational d1_raw(0);
    for (int m = 1; m <= range; ++m) {
        Rational expo = (Rational(1) + calc->harmonic(m)) / 2;
        Rational rhs_lo = rb.pow_lo(d_abs, expo);
        Rational lnm_lo = m == 1 ? Rational(0) : rb.ln_lo(Rational(m));
        rhs_lo *= rb.exp_lo(lnm_lo * lnm_lo / 2);
        Rational need = calc->alpha_upper(m) / rhs_lo;
        if (need > d1_raw) d1_raw = need;
    }
    Rational d1 = round_up_3sig(d1_raw);

    // D3 from the max expression, exact rationals.
    const Rational& bsq = field.beta_sq();
    Rational d1sq = d1 * d1, d2sq = d2 * d2;
    Rational cand1 = bsq;
    Rational cand2 = d1sq * d2sq;
    Rational cand3 = Rational(144) * bsq * d1sq * d1sq * d2sq * d2sq * d2sq;
    Rational cand4 = Rational(pow2_int(field.sigma() + 2)) *
                     Rational(field.omega_norm() + 4) * d1sq * d2sq;
    Rational d3 = std::max(std::max(cand1, cand2), std::max(cand3, cand4));

    BoundsProfile profile(calc, d1, d2, d3, range);
    // Main-theorem requirement: G(n) > 2^{sigma+2} n^2 + n on the certified range.
    int limit = std::min(range, 64);
    for (int guard = 0; guard < 64; ++guard) {
        bool ok = true;
        for (int n = 2; n <= limit; ++n) {
            Rational rhs = Rational(pow2_int(field.sigma() + 2)) * n * n + n;
            if (!(profile.threshold_G(n) > rhs)) { ok = false; break; }
        }
        if (ok) break;
        profile.d3_ *= 2;
    }
    profile.verify_or_throw();
    return profile;
}

BoundsProfile BoundsProfile::from_constants(const Field& field, const Rational& d1,
                                            const Rational& d2, const Rational& d3,
                                            int range, unsigned long bits) {
    auto calc = std::make_shared<FieldBounds>(field, bits);
    BoundsProfile profile(calc, d1, d2, d3, range);
    profile.verify_or_throw();
    return profile;
}

void BoundsProfile::verify_or_throw() const {
    const Field& field = calc_->field();
    const RealBounds& rb = calc_->reals();
    // exact inequality checks against the lower evaluations of the envelopes
    for (int m = 0; m <= range_; ++m) {
        Rational env_lo = d2_ * rb.exp_lo(2 * calc_->sqrt_beta_m(Rational(m)).first);
        AlgebraicBound diff = AlgebraicBound(env_lo, 0, field.beta_sq()) - calc_->maclaurin_c(m);
        if (diff.sign() < 0)
            throw std::runtime_error("profile fails c(m) certification at m=" + std::to_string(m));
    }
    Rational d_abs(field.abs_discriminant());
    for (int m = 1; m <= range_; ++m) {
        Rational expo = (Rational(1) + calc_->harmonic(m)) / 2;
        Rational lnm_lo = m == 1 ? Rational(0) : rb.ln_lo(Rational(m));
        Rational env_lo = d1_ * rb.pow_lo(d_abs, expo) * rb.exp_lo(lnm_lo * lnm_lo / 2);
        if (calc_->alpha_upper(m) > env_lo)
            throw std::runtime_error("profile fails alpha certification at m=" + std::to_string(m));
    }
    const Rational& bsq = field.beta_sq();
    Rational d1sq = d1_ * d1_, d2sq = d2_ * d2_;
    Rational cand2 = d1sq * d2sq;
    Rational cand3 = Rational(144) * bsq * d1sq * d1sq * d2sq * d2sq * d2sq;
    Rational cand4 =
        Rational(pow2_int(field.sigma() + 2)) * Rational(field.omega_norm() + 4) * d1sq * d2sq;
    Rational needed = std::max(std::max(bsq, cand2), std::max(cand3, cand4));
    if (d3_ < needed) throw std::runtime_error("profile D3 violates the max expression");
}

Rational BoundsProfile::c_envelope(int m) const {
    if (m < 0) throw std::invalid_argument("c envelope needs m >= 0");
    if (m > range_) throw std::domain_error("m exceeds certification range");
    return d2_ * calc_->reals().exp_hi(2 * calc_->sqrt_beta_m(Rational(m)).second);
}

Rational BoundsProfile::alpha_envelope(int n) const {
    if (n < 1) throw std::invalid_argument("alpha envelope needs n >= 1");
    if (n > range_) throw std::domain_error("n exceeds certification range");
    const RealBounds& rb = calc_->reals();
    Rational d_abs(field().abs_discriminant());
    Rational expo = (Rational(1) + calc_->harmonic(n)) / 2;
    Rational lnn_hi = n == 1 ? Rational(0) : rb.ln_hi(Rational(n));
    return d1_ * rb.pow_hi(d_abs, expo) * rb.exp_hi(lnn_hi * lnn_hi / 2);
}

Rational BoundsProfile::threshold_G(int n) const {
    if (n < 2) throw std::invalid_argument("threshold needs n >= 2");
    if (n > range_) throw std::domain_error("n exceeds certification range");
    const RealBounds& rb = calc_->reals();
    Rational d_abs(field().abs_discriminant());
    Rational dpow = rb.pow_hi(d_abs, 2 * (Rational(1) + calc_->harmonic(n)));
    Rational npow = pow_rat(Rational(Int(n)), 10);
    // exponent (4 + 4 sqrt 2) sqrt(beta n) + 2 (ln n)^2,
    // with 4 sqrt(2) sqrt(beta n) = 4 sqrt(2 beta n) = 4 (4 beta^2 n^2)^(1/4)
    const Rational& bsq = field().beta_sq();
    Rational nn = Rational(Int(n)) * Rational(Int(n));
    Rational term1 = 4 * rb.nroot_hi(bsq * nn, 4);
    Rational term2 = 4 * rb.nroot_hi(4 * bsq * nn, 4);
    Rational lnn_hi = rb.ln_hi(Rational(n));
    Rational expo = term1 + term2 + 2 * lnn_hi * lnn_hi;
    return d3_ * dpow * npow * rb.exp_hi(expo);
}

std::pair<Rational, Rational> BoundsProfile::g_upper_bound(int n) const {
    if (n < 1) throw std::invalid_argument("g bound needs n >= 1");
    if (n == 1) return {Rational(4), Rational(4)};
    Rational rec(4);
    for (int j = 2; j <= n; ++j) rec += threshold_G(j);
    return {rec, Rational(Int(n)) * threshold_G(n)};
}

int BoundsProfile::phi_lower_bound(const Int& s) const {
    if (s < 1) throw std::invalid_argument("phi bound needs s >= 1");
    for (int n = 2; n <= range_; ++n)
        if (threshold_G(n) > Rational(s)) return n;
    throw std::domain_error("s exceeds the certified threshold range");
}

std::pair<Rational, Rational> BoundsProfile::growth_exponent() const {
    const RealBounds& rb = calc_->reals();
    const Rational& bsq = field().beta_sq();
    Rational lo = 4 * rb.nroot_lo(bsq, 4) + 4 * rb.nroot_lo(4 * bsq, 4);
    Rational hi = 4 * rb.nroot_hi(bsq, 4) + 4 * rb.nroot_hi(4 * bsq, 4);
    return {lo, hi};
}

long harmonic_log_violation(long limit) {
    const unsigned long bits = 64;
    Rational h_hi(1);   // upper bound on H_m, m = 1
    Rational ln_lo(0);  // lower bound on ln m
    if (limit >= 1 && h_hi > Rational(1) + ln_lo) return 1;
    for (long m = 2; m <= limit; ++m) {
        h_hi = dyadic_ceil(h_hi + Rational(1, m), bits);
        // ln m = ln(m-1) + 2 artanh(1/(2m-1)), truncated series is a lower bound
        Rational t(1, 2 * m - 1);
        Rational tsq = t * t;
        Rational series = t + t * tsq / 3 + t * tsq * tsq / 5 + t * tsq * tsq * tsq / 7;
        ln_lo = dyadic_floor(ln_lo + 2 * series, bits);
        if (h_hi > Rational(1) + ln_lo) return m;
    }
    return 0;
}

}  // namespace waring
