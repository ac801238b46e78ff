#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "waring/number_field.hpp"

using namespace waring;

namespace {

std::vector<Field> all_fields() {
    std::vector<Field> fs = {Field::rationals()};
    for (int ell : Field::supported_ells()) fs.push_back(Field::imaginary_quadratic(ell));
    return fs;
}

Rational rat(long num, long den) {
    Rational r(num, den);
    r.canonicalize();
    return r;
}

Rational random_rational(std::mt19937_64& rng, int height) {
    std::uniform_int_distribution<long> num(-height, height);
    std::uniform_int_distribution<long> den(1, height);
    Rational r(num(rng), den(rng));
    r.canonicalize();
    return r;
}

FieldElement random_element(const Field& f, std::mt19937_64& rng, int height) {
    if (f.is_rational()) return FieldElement(random_rational(rng, height));
    return FieldElement(random_rational(rng, height), random_rational(rng, height));
}

}  // namespace

TEST_CASE("beta squared matches the closed formulas") {
    CHECK(Field::rationals().beta_sq() == Rational(1, 4));
    struct Row { int ell; Rational expect; };
    std::vector<Row> table = {
        {1, rat(1, 2)},    {2, rat(3, 4)},    {3, rat(1, 3)},
        {7, rat(4, 7)},    {11, rat(9, 11)},  {19, rat(25, 19)},
        {43, rat(121, 43)},{67, rat(289, 67)},{163, rat(1681, 163)}};
    for (const auto& row : table) {
        Field f = Field::imaginary_quadratic(row.ell);
        CHECK(f.beta_sq() == row.expect);
        // direct substitution into the case split
        if (row.ell % 4 == 3)
            CHECK(f.beta_sq() == rat((row.ell + 1) * (row.ell + 1), 16 * row.ell));
        else
            CHECK(f.beta_sq() == rat(row.ell + 1, 4));
    }
}

TEST_CASE("field constants") {
    Field q = Field::rationals();
    CHECK(q.discriminant() == 1);
    CHECK(q.omega_norm() == 1);
    Field qi = Field::imaginary_quadratic(1);
    CHECK(qi.discriminant() == -4);
    CHECK(qi.omega_norm() == 1);
    CHECK(qi.units().size() == 4);
    Field q3 = Field::imaginary_quadratic(3);
    CHECK(q3.discriminant() == -3);
    CHECK(q3.units().size() == 6);
    Field q7 = Field::imaginary_quadratic(7);
    CHECK(q7.discriminant() == -7);
    CHECK(q7.omega_norm() == 2);
    CHECK_THROWS_AS(Field::imaginary_quadratic(5), std::invalid_argument);
}

TEST_CASE("norm examples") {
    Field q = Field::rationals();
    CHECK(q.norm(FieldElement(Rational(-3))) == 9);
    Field qi = Field::imaginary_quadratic(1);
    CHECK(qi.norm(qi.add(qi.one(), qi.omega())) == 2);  // (1+i)(1-i) = 2
    Field q7 = Field::imaginary_quadratic(7);
    CHECK(q7.norm(q7.omega()) == 2);  // (1+7)/4
}

TEST_CASE("norm is multiplicative") {
    std::mt19937_64 rng(12345);
    for (const Field& f : all_fields()) {
        for (int trial = 0; trial < 200; ++trial) {
            FieldElement x = random_element(f, rng, 30);
            FieldElement y = random_element(f, rng, 30);
            CHECK(f.norm(f.mul(x, y)) == f.norm(x) * f.norm(y));
        }
    }
}

TEST_CASE("conjugation is an involution and norms are nonnegative") {
    std::mt19937_64 rng(99);
    for (const Field& f : all_fields()) {
        for (int trial = 0; trial < 100; ++trial) {
            FieldElement x = random_element(f, rng, 25);
            CHECK(f.conj(f.conj(x)) == x);
            CHECK(f.norm(x) >= 0);
            CHECK((f.norm(x) == 0) == x.is_zero());
        }
    }
}

TEST_CASE("round_to_ring tie and identity examples") {
    Field q = Field::rationals();
    auto [c, eta] = q.round_to_ring(FieldElement(Rational(7, 2)));
    CHECK(c == RingElement(Int(3)));  // tie broken toward smaller magnitude
    CHECK(eta.a == Rational(1, 2));
    CHECK(q.norm(eta) == Rational(1, 4));

    auto [cneg, etaneg] = q.round_to_ring(FieldElement(Rational(-7, 2)));
    CHECK(cneg == RingElement(Int(-3)));

    Field qi = Field::imaginary_quadratic(1);
    auto [c0, eta0] = qi.round_to_ring(qi.zero());
    CHECK(c0 == RingElement());
    CHECK(eta0.is_zero());

    Field q3 = Field::imaginary_quadratic(3);
    // (1/2) + (1/2) sqrt(-3) is omega itself: sqrt(-3) = 2 omega - 1
    FieldElement half(Rational(1, 2));
    FieldElement sqrt_m3 = q3.sub(q3.scale(q3.omega(), Rational(2)), q3.one());
    FieldElement x = q3.add(half, q3.scale(sqrt_m3, Rational(1, 2)));
    CHECK(x == q3.omega());
    auto [cw, etaw] = q3.round_to_ring(x);
    CHECK(etaw.is_zero());
    CHECK(cw == RingElement(Int(0), Int(1)));
    CHECK(q3.norm(etaw) <= q3.beta_sq());
}

TEST_CASE("round_to_ring residues stay inside the fundamental region") {
    std::mt19937_64 rng(777);
    for (const Field& f : all_fields()) {
        for (int trial = 0; trial < 10000; ++trial) {
            FieldElement x = random_element(f, rng, 50);
            auto [c, eta] = f.round_to_ring(x);
            CHECK(f.add(f.from_ring(c), eta) == x);
            CHECK(f.norm(eta) <= f.beta_sq());
        }
    }
}

TEST_CASE("ideal gcd over Z") {
    Field q = Field::rationals();
    GcdResult g = q.ideal_gcd(RingElement(Int(6)), RingElement(Int(10)));
    CHECK(g.g == RingElement(Int(2)));
    CHECK(q.radd(q.rmul(g.x, RingElement(Int(6))), q.rmul(g.y, RingElement(Int(10)))) == g.g);
}

TEST_CASE("ideal gcd with a unit argument is a unit") {
    for (const Field& f : all_fields()) {
        RingElement u = f.units()[1];  // -1
        RingElement b(Int(17), f.is_rational() ? Int(0) : Int(5));
        GcdResult g = f.ideal_gcd(u, b);
        CHECK(f.is_unit(g.g));
        CHECK(f.radd(f.rmul(g.x, u), f.rmul(g.y, b)) == g.g);
    }
}

TEST_CASE("ideal gcd in the non-Euclidean ring of Q(sqrt(-19))") {
    // (2, 1+w) is the unit ideal there: 2 is inert and 1+w is not divisible by 2
    Field f = Field::imaginary_quadratic(19);
    RingElement a(Int(2)), b(Int(1), Int(1));
    CHECK(f.ideal_norm(a, b) == 1);
    GcdResult g = f.ideal_gcd(a, b);
    CHECK(f.rnorm(g.g) == f.ideal_norm(a, b));
    CHECK(f.is_unit(g.g));
    CHECK(f.radd(f.rmul(g.x, a), f.rmul(g.y, b)) == g.g);
}

TEST_CASE("ideal gcd norm matches the ideal norm on random pairs") {
    std::mt19937_64 rng(4242);
    std::uniform_int_distribution<long> coord(-12, 12);
    for (const Field& f : all_fields()) {
        if (f.is_rational()) continue;
        for (int trial = 0; trial < 60; ++trial) {
            RingElement a(Int(coord(rng)), Int(coord(rng)));
            RingElement b(Int(coord(rng)), Int(coord(rng)));
            if (a.is_zero() && b.is_zero()) continue;
            GcdResult g = f.ideal_gcd(a, b);
            CHECK(f.rnorm(g.g) == f.ideal_norm(a, b));
            CHECK(f.divides(g.g, a));
            CHECK(f.divides(g.g, b));
            CHECK(f.radd(f.rmul(g.x, a), f.rmul(g.y, b)) == g.g);
        }
    }
}

TEST_CASE("algebraic bound ordering is total and matches numeric enclosures") {
    std::mt19937_64 rng(31337);
    for (const Field& f : {Field::rationals(), Field::imaginary_quadratic(7),
                           Field::imaginary_quadratic(163)}) {
        for (int trial = 0; trial < 10000; ++trial) {
            AlgebraicBound x(random_rational(rng, 40), random_rational(rng, 40), f.beta_sq());
            AlgebraicBound y(random_rational(rng, 40), random_rational(rng, 40), f.beta_sq());
            auto ex = x.enclosure(128);
            auto ey = y.enclosure(128);
            if (ex.second < ey.first) CHECK(x < y);
            if (ey.second < ex.first) CHECK(y < x);
            // antisymmetry of the exact comparison
            CHECK(((x < y) ? 1 : 0) + ((y < x) ? 1 : 0) + ((x == y) ? 1 : 0) == 1);
        }
    }
}

TEST_CASE("algebraic bound arithmetic") {
    Rational bsq(1, 2);
    AlgebraicBound beta(0, 1, bsq);
    CHECK(beta * beta == AlgebraicBound(bsq, 0, bsq));
    AlgebraicBound x(1, -1, bsq);  // 1 - sqrt(1/2) > 0
    CHECK(x.sign() == 1);
    AlgebraicBound y(-1, 1, bsq);
    CHECK(y.sign() == -1);
    CHECK((x + y).sign() == 0);
}
