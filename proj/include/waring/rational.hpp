#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

namespace waring {

using Int = mpz_class;
using Rational = mpq_class;

inline Int floor_div(const Int& a, const Int& b) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

inline Int ceil_div(const Int& a, const Int& b) {
    Int q;
    mpz_cdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

inline Int floor_rat(const Rational& x) {
    return floor_div(x.get_num(), x.get_den());
}

inline Int ceil_rat(const Rational& x) {
    return ceil_div(x.get_num(), x.get_den());
}

// Nearest integer; on a half-integer tie prefers the candidate of smaller
// absolute value (then the smaller one), matching the ring rounding rule.
inline Int round_rat(const Rational& x) {
    Int f = floor_rat(x);
    Rational lo = x - Rational(f);        // in [0,1)
    if (lo < Rational(1, 2)) return f;
    if (lo > Rational(1, 2)) return f + 1;
    Int c1 = f, c2 = f + 1;
    Int a1 = abs(c1), a2 = abs(c2);
    if (a1 != a2) return a1 < a2 ? c1 : c2;
    return c1 < c2 ? c1 : c2;
}

inline Int isqrt_floor(const Int& n) {
    if (n < 0) throw std::invalid_argument("isqrt of negative value");
    Int r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

inline bool is_perfect_square(const Int& n, Int* root = nullptr) {
    if (n < 0) return false;
    Int r = isqrt_floor(n);
    if (r * r == n) {
        if (root) *root = r;
        return true;
    }
    return false;
}

// floor(n^(1/k)) for n >= 0, k >= 1
inline Int kth_root_floor(const Int& n, unsigned long k) {
    if (n < 0) throw std::invalid_argument("kth_root_floor of negative value");
    Int r;
    mpz_root(r.get_mpz_t(), n.get_mpz_t(), k);
    return r;
}

inline Int pow_int(const Int& b, unsigned long e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
    return r;
}

inline Rational pow_rat(const Rational& b, unsigned long e) {
    Rational r;
    mpz_pow_ui(r.get_num_mpz_t(), b.get_num().get_mpz_t(), e);
    mpz_pow_ui(r.get_den_mpz_t(), b.get_den().get_mpz_t(), e);
    r.canonicalize();
    return r;
}

inline Int pow2_int(unsigned long e) { return pow_int(Int(2), e); }

// Directed rounding onto the dyadic grid 2^-bits.
inline Rational dyadic_floor(const Rational& x, unsigned long bits) {
    Int scale = pow2_int(bits);
    return Rational(floor_rat(x * Rational(scale))) / Rational(scale);
}

inline Rational dyadic_ceil(const Rational& x, unsigned long bits) {
    Int scale = pow2_int(bits);
    return Rational(ceil_rat(x * Rational(scale))) / Rational(scale);
}

inline Rational dyadic_round(const Rational& x, unsigned long bits) {
    Int scale = pow2_int(bits);
    return Rational(round_rat(x * Rational(scale))) / Rational(scale);
}

// sqrt(x) rounded down/up onto the dyadic grid 2^-bits (x >= 0, exact rational in/out)
inline Rational sqrt_dyadic_floor(const Rational& x, unsigned long bits) {
    if (x < 0) throw std::invalid_argument("sqrt of negative value");
    // floor(sqrt(x)*2^b) = floor(sqrt(x*4^b)) needs integer radicand: use
    // floor(sqrt(floor(x*4^b))) which still lower-bounds sqrt(x)*2^b.
    Int scale = pow2_int(bits);
    Int v = floor_rat(x * Rational(scale * scale));
    return Rational(isqrt_floor(v)) / Rational(scale);
}

inline Rational sqrt_dyadic_ceil(const Rational& x, unsigned long bits) {
    if (x < 0) throw std::invalid_argument("sqrt of negative value");
    Int scale = pow2_int(bits);
    Int v = ceil_rat(x * Rational(scale * scale));
    Int r = isqrt_floor(v);
    if (r * r < v) r += 1;
    return Rational(r) / Rational(scale);
}

// x^(1/k) rounded down/up onto the dyadic grid (x >= 0, k >= 1)
inline Rational nroot_dyadic_floor(const Rational& x, unsigned long k, unsigned long bits) {
    if (x < 0) throw std::invalid_argument("root of negative value");
    Int scale = pow2_int(bits);
    Int v = floor_rat(x * Rational(pow_int(scale, k)));
    return Rational(kth_root_floor(v, k)) / Rational(scale);
}

inline Rational nroot_dyadic_ceil(const Rational& x, unsigned long k, unsigned long bits) {
    if (x < 0) throw std::invalid_argument("root of negative value");
    Int scale = pow2_int(bits);
    Int v = ceil_rat(x * Rational(pow_int(scale, k)));
    Int r = kth_root_floor(v, k);
    if (pow_int(r, k) < v) r += 1;
    return Rational(r) / Rational(scale);
}

inline std::string rat_to_string(const Rational& x) {
    return x.get_str();
}

// fixed-point decimal rendering (truncated toward zero)
inline std::string rat_to_decimal(const Rational& x, int digits = 10) {
    bool neg = x < 0;
    Rational y = neg ? Rational(-x) : x;
    Int scale = pow_int(Int(10), static_cast<unsigned long>(digits));
    Int v = floor_rat(y * Rational(scale));
    Int ip = v / scale, fp = v % scale;
    std::string frac = fp.get_str();
    frac.insert(frac.begin(), static_cast<size_t>(digits) - frac.size(), '0');
    return (neg ? "-" : "") + ip.get_str() + "." + frac;
}

inline Rational rat_from_string(const std::string& s) {
    Rational x;
    if (x.set_str(s, 10) != 0)
        throw std::invalid_argument("malformed rational: " + s);
    x.canonicalize();
    return x;
}

inline double rat_to_double(const Rational& x) { return x.get_d(); }

}  // namespace waring
