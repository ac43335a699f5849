#pragma once

#include "cyid/dsl.hpp"
#include "cyid/exact.hpp"

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace cyid {

// Dense polynomial in one variable, lowest degree first, no trailing zeros.
using Poly1 = std::vector<BigInt>;

BigInt poly_eval(const Poly1& p, long x);
std::string poly_str(const Poly1& p, char var);

// Operator sum_j z^j P_j(T), where T stands for theta = z d/dz.
struct ThetaOperator {
    std::map<int, Poly1> slices;  // only nonzero slices
    int max_j() const { return slices.empty() ? 0 : slices.rbegin()->first; }
};

// Polynomial in T and z with integer coefficients, + - * ^ and parentheses.
ThetaOperator parse_theta(std::string_view text);

// sum_j Q_j(m) A_{m-j} = 0 for all m >= 0, with Q_j(m) = P_j(m-j) and A_{<0} = 0
struct Recurrence {
    std::map<int, Poly1> shifted;
    std::string str() const;
};

Recurrence to_recurrence(const ThetaOperator& op);

struct Failure {
    long m;
    Rational residual;
};

struct CheckReport {
    std::vector<Failure> failures;  // ascending m
    bool satisfied() const { return failures.empty(); }
};

Rational residual(const Recurrence& rec, const std::vector<Rational>& seq, long m);
CheckReport check_sequence(const Recurrence& rec, const std::vector<Rational>& seq);

enum class Twist { Plus, Minus, Auto };

Twist parse_twist(std::string_view s);

// Plus checks seq as is, Minus checks (-1)^m seq, Auto checks both.
struct TwistReport {
    std::optional<CheckReport> plus, minus;
    // +1 or -1 for the sign that held (+1 preferred), 0 if none did
    int held() const;
    // both tried and exactly one held
    bool exactly_one() const;
};

TwistReport check_twisted(const Recurrence& rec, const std::vector<Rational>& seq, Twist twist);

}  // namespace cyid
