#pragma once

#include "cyid/dsl.hpp"
#include "cyid/exact.hpp"

#include <array>
#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace cyid {

// Exponents of x, y, z, t. Always four slots; unused variables stay 0.
struct Exp4 {
    std::array<int, 4> e{};

    static constexpr int kLimit = 32767;

    Exp4 operator+(const Exp4& o) const {
        return {{e[0] + o.e[0], e[1] + o.e[1], e[2] + o.e[2], e[3] + o.e[3]}};
    }
    Exp4 operator-() const { return {{-e[0], -e[1], -e[2], -e[3]}}; }
    bool is_zero() const { return e[0] == 0 && e[1] == 0 && e[2] == 0 && e[3] == 0; }
    // 16 bits per slot, biased; throws DomainError outside [-kLimit, kLimit]
    std::uint64_t pack() const;
    static Exp4 unpack(std::uint64_t key);
    friend auto operator<=>(const Exp4&, const Exp4&) = default;
};

class LaurentPoly {
public:
    using Term = std::pair<Exp4, BigInt>;

    LaurentPoly() = default;
    // combines like terms and drops zeros
    explicit LaurentPoly(std::vector<Term> terms);
    static LaurentPoly constant(const BigInt& c);
    static LaurentPoly monomial(const Exp4& e, const BigInt& c = BigInt(1));

    // sorted by exponent, no zero coefficients
    const std::vector<Term>& terms() const { return terms_; }
    size_t size() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }
    BigInt coeff(const Exp4& e) const;
    BigInt constant_term() const { return coeff(Exp4{}); }
    // per-variable exponent range over the terms; 0 for the zero polynomial
    int min_exp(int v) const { return min_[v]; }
    int max_exp(int v) const { return max_[v]; }
    std::string str() const;

    friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) { return a.terms_ == b.terms_; }

private:
    void summarize();

    std::vector<Term> terms_;
    std::array<int, 4> min_{}, max_{};
};

LaurentPoly add(const LaurentPoly& a, const LaurentPoly& b);
LaurentPoly mul(const LaurentPoly& a, const LaurentPoly& b);

// Sums and products of monomials in x, y, z, t with integer coefficients.
// Division is allowed only by a single term with coefficient +-1.
LaurentPoly parse_laurent(std::string_view text);

struct CtSpec {
    LaurentPoly poly;
    long mult = 1;  // the exponent is mult * n
};

// "<poly> ^ <M>n", split at the last " ^ "
CtSpec parse_ct_spec(std::string_view text);

// constant term of poly^(mult*n); with prune, monomials that can no longer
// reach exponent 0 in the remaining factors are dropped
BigInt ct_power(const CtSpec& spec, long n, bool prune = true);
std::vector<BigInt> ct_sequence(const CtSpec& spec, long n_max, bool prune = true);

}  // namespace cyid
