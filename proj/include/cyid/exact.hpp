#pragma once

#include <gmpxx.h>

#include <compare>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace cyid {

struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

// zero denominator or 0^-e
struct PoleError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

class BigInt {
public:
    BigInt() = default;
    BigInt(long v) : v_(v) {}
    explicit BigInt(mpz_class v) : v_(std::move(v)) {}
    static BigInt parse(std::string_view s);

    const mpz_class& raw() const { return v_; }
    int sign() const { return sgn(v_); }
    bool is_zero() const { return sign() == 0; }
    bool fits_long() const { return v_.fits_slong_p(); }
    long to_long() const;
    std::string str() const { return v_.get_str(); }

    BigInt operator-() const { return BigInt(mpz_class(-v_)); }
    BigInt& operator+=(const BigInt& o) { v_ += o.v_; return *this; }
    BigInt& operator-=(const BigInt& o) { v_ -= o.v_; return *this; }
    BigInt& operator*=(const BigInt& o) { v_ *= o.v_; return *this; }
    friend BigInt operator+(BigInt a, const BigInt& b) { return a += b; }
    friend BigInt operator-(BigInt a, const BigInt& b) { return a -= b; }
    friend BigInt operator*(BigInt a, const BigInt& b) { return a *= b; }
    friend bool operator==(const BigInt& a, const BigInt& b) { return cmp(a.v_, b.v_) == 0; }
    friend std::strong_ordering operator<=>(const BigInt& a, const BigInt& b) { return cmp(a.v_, b.v_) <=> 0; }

private:
    mpz_class v_;
};

// Always canonical: gcd(num, den) = 1 and den > 0.
class Rational {
public:
    Rational() = default;
    Rational(long v) : q_(v) {}
    Rational(const BigInt& v) : q_(v.raw()) {}
    Rational(const BigInt& num, const BigInt& den);
    explicit Rational(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }
    // "p" or "p/q"
    static Rational parse(std::string_view s);

    const mpq_class& raw() const { return q_; }
    BigInt num() const { return BigInt(q_.get_num()); }
    BigInt den() const { return BigInt(q_.get_den()); }
    bool is_integer() const { return q_.get_den() == 1; }
    bool is_zero() const { return sgn(q_) == 0; }
    int sign() const { return sgn(q_); }
    // throws DomainError when not an integer or out of range
    long to_long() const;
    std::string str() const { return q_.get_str(); }

    Rational operator-() const { return Rational(mpq_class(-q_)); }
    Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
    Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
    Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
    Rational& operator/=(const Rational& o);
    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
    friend bool operator==(const Rational& a, const Rational& b) { return cmp(a.q_, b.q_) == 0; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) { return cmp(a.q_, b.q_) <=> 0; }

private:
    mpq_class q_;
};

// m! from a shared, grow-only table. Returned reference stays valid forever.
const BigInt& factorial(long m);

// Generalized binomial, total: k < 0 gives 0, otherwise a(a-1)...(a-k+1)/k!.
Rational binom(const Rational& a, long k);
BigInt binom(long a, long k);

// H_k, with H_k = 0 for k <= 0
const Rational& harmonic(long k);

Rational ipow(const Rational& base, long e);

BigInt multinomial(long n, const std::vector<long>& parts);

}  // namespace cyid
