#pragma once

#include "cyid/dsl.hpp"

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace cyid {

// Bindings for the six variable names. Unset slots are unbound.
class Env {
public:
    Env() = default;
    Env(std::initializer_list<std::pair<char, long>> init) {
        for (auto& [c, v] : init) set(c, v);
    }

    void set(char name, long v);
    void unset(char name);
    bool has(char name) const;
    long get(char name) const;
    // "k=3, j=1" over bound variables other than n
    std::string assignment() const;

private:
    std::array<long, 6> vals_{};
    unsigned mask_ = 0;
};

struct EvalOptions {
    // a singular summand contributes 0 to the innermost enclosing sum
    bool skip_singular = false;
};

class EvalError : public std::runtime_error {
public:
    explicit EvalError(const std::string& msg);
    const char* what() const noexcept override { return full_.c_str(); }
    const std::string& message() const { return msg_; }
    std::optional<long> n() const { return n_; }
    void set_n(long n);

private:
    std::string msg_, full_;
    std::optional<long> n_;
};

// zero denominator or 0^negative
struct SingularTerm : EvalError {
    SingularTerm(const std::string& what, const std::string& assignment);
    std::string assignment;
};

struct NonIntegerArgument : EvalError {
    using EvalError::EvalError;
};

struct UnboundVariable : EvalError {
    explicit UnboundVariable(char name);
    char name;
};

Rational eval(const Expr& e, const Env& env, const EvalOptions& opts = {});

// values at n = n_min..n_max; errors are tagged with the failing n
std::vector<Rational> eval_sequence(const Expr& e, long n_max, const EvalOptions& opts = {}, long n_min = 0);

// DSL text of the corrected harmonic-sum coefficient formula for (b, c)
std::string harmonic_cy_formula(long b, long c);
std::vector<Rational> harmonic_cy_coefficients(long b, long c, long n_max);

}  // namespace cyid
