#include "cyid/exact.hpp"

#include <doctest.h>

#include <thread>

using namespace cyid;

namespace {

Rational q(long p, long d = 1) { return Rational(BigInt(p), BigInt(d)); }

}  // namespace

TEST_CASE("rational stays canonical") {
    Rational r = q(6, -4);
    CHECK(r.num() == BigInt(-3));
    CHECK(r.den() == BigInt(2));
    CHECK((q(1, 3) + q(1, 6)) == q(1, 2));
    CHECK((q(2, 3) * q(3, 2)).is_integer());
    CHECK_THROWS_AS(q(1, 0), PoleError);
    CHECK_THROWS_AS(q(1) / q(0), PoleError);
    CHECK(Rational::parse("-10/4") == q(-5, 2));
    CHECK(Rational::parse("7").str() == "7");
    CHECK_THROWS_AS(Rational::parse("x"), DomainError);
    CHECK_THROWS_AS(q(1, 2).to_long(), DomainError);
}

TEST_CASE("factorial") {
    CHECK(factorial(0) == BigInt(1));
    CHECK(factorial(5) == BigInt(120));
    CHECK(factorial(25).str() == "15511210043330985984000000");
    CHECK_THROWS_AS(factorial(-1), DomainError);
    for (long m = 1; m <= 200; ++m) CHECK(factorial(m) == factorial(m - 1) * BigInt(m));
}

TEST_CASE("binomial examples") {
    CHECK(binom(q(5), 2) == q(10));
    CHECK(binom(q(2), 5) == q(0));
    CHECK(binom(q(-1, 6), 2) == q(7, 72));
    CHECK(binom(q(-5, 6), 3) == q(-935, 1296));
    CHECK(binom(q(3), -1) == q(0));
    CHECK(binom(5, 2) == BigInt(10));
    CHECK(binom(-1, 3) == BigInt(-1));
    CHECK(binom(-3, 2) == BigInt(6));
    CHECK(binom(0, 0) == BigInt(1));
    // beyond the factorial path
    CHECK(binom(100000, 2) == BigInt(4999950000L));
}

TEST_CASE("binomial matches the falling factorial on integers") {
    for (long a = -12; a <= 12; ++a) {
        for (long k = -2; k <= 14; ++k) {
            Rational ff(1);
            for (long i = 0; i < k; ++i) ff *= q(a - i);
            Rational expect = k < 0 ? q(0) : ff / Rational(factorial(k));
            CHECK(Rational(binom(a, k)) == expect);
        }
    }
}

TEST_CASE("Pascal rule on rational tops") {
    std::vector<Rational> tops = {q(-1, 6), q(-5, 6), q(1, 2), q(7, 3), q(-4), q(0), q(9), q(-13, 5)};
    for (auto& a : tops)
        for (long k = 1; k <= 12; ++k) CHECK(binom(a, k) == binom(a - q(1), k - 1) + binom(a - q(1), k));
}

TEST_CASE("binomial symmetry") {
    for (long n = 0; n <= 40; ++n)
        for (long k = 0; k <= n; ++k) CHECK(binom(n, k) == binom(n, n - k));
}

TEST_CASE("harmonic numbers") {
    CHECK(harmonic(0) == q(0));
    CHECK(harmonic(-3) == q(0));
    CHECK(harmonic(1) == q(1));
    CHECK(harmonic(3) == q(11, 6));
    CHECK(harmonic(10) == q(7381, 2520));
    for (long k = 1; k <= 300; ++k) CHECK(harmonic(k) - harmonic(k - 1) == q(1, k));
}

TEST_CASE("integer powers") {
    CHECK(ipow(q(432), 0) == q(1));
    CHECK(ipow(q(2), -3) == q(1, 8));
    CHECK(ipow(q(-2, 3), 3) == q(-8, 27));
    CHECK(ipow(q(0), 0) == q(1));
    CHECK_THROWS_AS(ipow(q(0), -1), PoleError);
    std::vector<Rational> bases = {q(2), q(-3), q(5, 7), q(-1, 6)};
    for (auto& b : bases)
        for (long e1 = -5; e1 <= 5; ++e1)
            for (long e2 = -5; e2 <= 5; ++e2) CHECK(ipow(b, e1 + e2) == ipow(b, e1) * ipow(b, e2));
}

TEST_CASE("multinomial") {
    CHECK(multinomial(4, {1, 1, 1, 1}) == BigInt(24));
    CHECK(multinomial(3, {3, 0, 0, 0}) == BigInt(1));
    CHECK(multinomial(6, {2, 2, 2}) == BigInt(90));
    CHECK_THROWS_AS(multinomial(3, {1, 1}), DomainError);
    CHECK_THROWS_AS(multinomial(1, {2, -1}), DomainError);
    // equals the product of nested binomials
    for (long a = 0; a <= 6; ++a)
        for (long b = 0; a + b <= 6; ++b)
            for (long c = 0; a + b + c <= 6; ++c) {
                long n = 8, d = n - a - b - c;
                CHECK(multinomial(n, {a, b, c, d}) == binom(n, a) * binom(n - a, b) * binom(n - a - b, c));
            }
}

TEST_CASE("caches are safe under concurrent growth") {
    std::vector<std::thread> ts;
    std::vector<int> ok(4, 1);
    for (int t = 0; t < 4; ++t)
        ts.emplace_back([t, &ok] {
            for (long m = 2500 + t; m >= 0; m -= 7) {
                if (!(factorial(m + 1) == factorial(m) * BigInt(m + 1))) ok[t] = 0;
                if (!(harmonic(m + 1) - harmonic(m) == q(1, m + 1))) ok[t] = 0;
            }
        });
    for (auto& t : ts) t.join();
    for (int b : ok) CHECK(b == 1);
}
