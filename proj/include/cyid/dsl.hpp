#pragma once

#include "cyid/exact.hpp"

#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace cyid {

enum class Op { Int, Var, Neg, Add, Sub, Mul, Div, Pow, Fact, Binom, H, IDiv, Sum, SumC };

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

// Variable names are single letters from {n,i,j,k,p,m}.
struct Expr {
    Op op;
    BigInt value;              // Int
    char name = 0;             // Var, Sum index
    std::vector<char> indices; // SumC
    // Neg/Fact/H: {a}; binary ops, Binom, IDiv: {a, b}; Sum: {lo, hi, body}; SumC: {total, body}
    std::vector<ExprPtr> kids;
    // subtree uses only small literals, variables, +, -, *, unary minus and idiv
    bool int_only = false;
};

ExprPtr make_int(BigInt v);
ExprPtr make_var(char name);
ExprPtr make_unary(Op op, ExprPtr a);
ExprPtr make_binary(Op op, ExprPtr a, ExprPtr b);
ExprPtr make_sum(char index, ExprPtr lo, ExprPtr hi, ExprPtr body);
ExprPtr make_sumc(std::vector<char> indices, ExprPtr total, ExprPtr body);

struct ParseError : std::runtime_error {
    ParseError(const std::string& msg, int line, int col);
    int line, col;
};

bool is_var_name(char c);

ExprPtr parse(std::string_view text);
std::string render(const Expr& e);
std::set<char> free_vars(const Expr& e);
bool equal(const Expr& a, const Expr& b);
// deepest nesting of summation indices; sumc over p parts counts p-1
int sum_depth(const Expr& e);

}  // namespace cyid
