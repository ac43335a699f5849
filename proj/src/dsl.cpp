#include "cyid/dsl.hpp"

#include <algorithm>
#include <cctype>

namespace cyid {

ParseError::ParseError(const std::string& msg, int line, int col)
    : std::runtime_error(std::to_string(line) + ":" + std::to_string(col) + ": " + msg), line(line), col(col) {}

bool is_var_name(char c) {
    return c == 'n' || c == 'i' || c == 'j' || c == 'k' || c == 'p' || c == 'm';
}

namespace {

bool small(const BigInt& v) {
    return v.fits_long() && std::labs(v.to_long()) < (1L << 31);
}

std::shared_ptr<Expr> node(Op op) {
    auto e = std::make_shared<Expr>();
    e->op = op;
    return e;
}

}  // namespace

ExprPtr make_int(BigInt v) {
    auto e = node(Op::Int);
    e->int_only = small(v);
    e->value = std::move(v);
    return e;
}

ExprPtr make_var(char name) {
    auto e = node(Op::Var);
    e->name = name;
    e->int_only = true;
    return e;
}

ExprPtr make_unary(Op op, ExprPtr a) {
    auto e = node(op);
    e->int_only = op == Op::Neg && a->int_only;
    e->kids = {std::move(a)};
    return e;
}

ExprPtr make_binary(Op op, ExprPtr a, ExprPtr b) {
    auto e = node(op);
    bool arith = op == Op::Add || op == Op::Sub || op == Op::Mul || op == Op::IDiv;
    e->int_only = arith && a->int_only && b->int_only;
    e->kids = {std::move(a), std::move(b)};
    return e;
}

ExprPtr make_sum(char index, ExprPtr lo, ExprPtr hi, ExprPtr body) {
    auto e = node(Op::Sum);
    e->name = index;
    e->kids = {std::move(lo), std::move(hi), std::move(body)};
    return e;
}

ExprPtr make_sumc(std::vector<char> indices, ExprPtr total, ExprPtr body) {
    auto e = node(Op::SumC);
    e->indices = std::move(indices);
    e->kids = {std::move(total), std::move(body)};
    return e;
}

namespace {

enum class Tok { Int, Name, Punct, Dots, End };

struct Token {
    Tok kind;
    std::string text;
    int line, col;
};

std::vector<Token> lex(std::string_view s) {
    std::vector<Token> out;
    int line = 1, col = 1;
    size_t i = 0;
    auto adv = [&](size_t n) {
        for (size_t j = 0; j < n; ++j, ++i) {
            if (s[i] == '\n') { ++line; col = 1; } else ++col;
        }
    };
    while (i < s.size()) {
        char c = s[i];
        if (std::isspace((unsigned char)c)) { adv(1); continue; }
        int l = line, cl = col;
        if (std::isdigit((unsigned char)c)) {
            size_t j = i;
            while (j < s.size() && std::isdigit((unsigned char)s[j])) ++j;
            out.push_back({Tok::Int, std::string(s.substr(i, j - i)), l, cl});
            adv(j - i);
        } else if (std::isalpha((unsigned char)c) || c == '_') {
            size_t j = i;
            while (j < s.size() && (std::isalnum((unsigned char)s[j]) || s[j] == '_')) ++j;
            out.push_back({Tok::Name, std::string(s.substr(i, j - i)), l, cl});
            adv(j - i);
        } else if (c == '.' && i + 1 < s.size() && s[i + 1] == '.') {
            out.push_back({Tok::Dots, "..", l, cl});
            adv(2);
        } else if (std::string_view("+-*/^(),=").find(c) != std::string_view::npos) {
            out.push_back({Tok::Punct, std::string(1, c), l, cl});
            adv(1);
        } else {
            throw ParseError(std::string("unexpected character '") + c + "'", l, cl);
        }
    }
    out.push_back({Tok::End, "", line, col});
    return out;
}

bool has_sum(const Expr& e) {
    if (e.op == Op::Sum || e.op == Op::SumC) return true;
    return std::any_of(e.kids.begin(), e.kids.end(), [](const ExprPtr& k) { return has_sum(*k); });
}

class Parser {
public:
    explicit Parser(std::string_view s) : t_(lex(s)) {}

    ExprPtr parse() {
        auto e = expr();
        if (peek().kind != Tok::End) fail("unexpected '" + peek().text + "'");
        return e;
    }

private:
    const Token& peek(size_t o = 0) const { return t_[std::min(p_ + o, t_.size() - 1)]; }
    bool is(const char* s, size_t o = 0) const {
        const Token& t = peek(o);
        return (t.kind == Tok::Punct || t.kind == Tok::Dots) && t.text == s;
    }
    [[noreturn]] void fail(const std::string& msg) const {
        const Token& t = peek();
        throw ParseError(t.kind == Tok::End ? msg + " at end of input" : msg, t.line, t.col);
    }
    void expect(const char* s) {
        if (!is(s)) fail(std::string("expected '") + s + "'");
        ++p_;
    }

    ExprPtr expr() {
        auto e = term();
        while (is("+") || is("-")) {
            Op op = is("+") ? Op::Add : Op::Sub;
            ++p_;
            e = make_binary(op, e, term());
        }
        return e;
    }

    ExprPtr term() {
        auto e = factor();
        while (is("*") || is("/")) {
            Op op = is("*") ? Op::Mul : Op::Div;
            ++p_;
            e = make_binary(op, e, factor());
        }
        return e;
    }

    ExprPtr factor() {
        bool neg = false;
        if (is("-")) { ++p_; neg = true; }
        auto a = atom();
        if (is("^")) {
            ++p_;
            a = make_binary(Op::Pow, a, exponent());
        }
        return neg ? make_unary(Op::Neg, a) : a;
    }

    ExprPtr exponent() {
        if (is("(")) {
            ++p_;
            auto e = expr();
            expect(")");
            if (has_sum(*e)) fail("exponent contains a sum");
            return e;
        }
        bool neg = false;
        if (is("-")) { ++p_; neg = true; }
        if (peek().kind != Tok::Int) fail("exponent must be an integer or parenthesised");
        BigInt v = BigInt::parse(peek().text);
        ++p_;
        return make_int(neg ? -v : v);
    }

    ExprPtr atom() {
        const Token& t = peek();
        if (t.kind == Tok::Int) {
            ++p_;
            return make_int(BigInt::parse(t.text));
        }
        if (is("(")) {
            // "(-3)" is the literal -3
            if (is("-", 1) && peek(2).kind == Tok::Int && is(")", 3)) {
                BigInt v = BigInt::parse(peek(2).text);
                p_ += 4;
                return make_int(-v);
            }
            ++p_;
            auto e = expr();
            expect(")");
            return e;
        }
        if (t.kind != Tok::Name) fail(t.kind == Tok::End ? "expected an expression" : "unexpected '" + t.text + "'");
        std::string name = t.text;
        if (name.size() == 1 && is_var_name(name[0])) {
            ++p_;
            return make_var(name[0]);
        }
        ++p_;
        if (name == "binom" || name == "idiv") {
            expect("(");
            auto a = expr();
            expect(",");
            auto b = expr();
            expect(")");
            return make_binary(name == "binom" ? Op::Binom : Op::IDiv, a, b);
        }
        if (name == "fact" || name == "H") {
            expect("(");
            auto a = expr();
            expect(")");
            return make_unary(name == "fact" ? Op::Fact : Op::H, a);
        }
        if (name == "sum") return sum();
        if (name == "sumc") return sumc();
        --p_;
        fail("unknown identifier '" + name + "'");
    }

    char index_name() {
        const Token& t = peek();
        if (t.kind != Tok::Name || t.text.size() != 1 || !is_var_name(t.text[0]))
            fail("expected a summation index");
        char c = t.text[0];
        if (c == 'n' || std::find(bound_.begin(), bound_.end(), c) != bound_.end())
            fail(std::string("index '") + c + "' shadows an outer variable");
        ++p_;
        return c;
    }

    ExprPtr sum() {
        expect("(");
        char v = index_name();
        expect("=");
        auto lo = expr();
        expect("..");
        auto hi = expr();
        if (has_sum(*lo) || has_sum(*hi)) fail("sum bound contains a sum");
        expect(",");
        bound_.push_back(v);
        auto body = expr();
        bound_.pop_back();
        expect(")");
        return make_sum(v, lo, hi, body);
    }

    ExprPtr sumc() {
        expect("(");
        std::vector<char> vs{index_name()};
        while (is("+")) {
            ++p_;
            char v = index_name();
            if (std::find(vs.begin(), vs.end(), v) != vs.end()) fail("repeated index");
            vs.push_back(v);
        }
        if (vs.size() < 2) fail("sumc needs at least two indices");
        expect("=");
        auto total = expr();
        if (has_sum(*total)) fail("sum bound contains a sum");
        expect(",");
        bound_.insert(bound_.end(), vs.begin(), vs.end());
        auto body = expr();
        bound_.resize(bound_.size() - vs.size());
        expect(")");
        return make_sumc(vs, total, body);
    }

    std::vector<Token> t_;
    size_t p_ = 0;
    std::vector<char> bound_;
};

bool atomic(const Expr& e) {
    switch (e.op) {
    case Op::Int: case Op::Var: case Op::Fact: case Op::Binom: case Op::H:
    case Op::IDiv: case Op::Sum: case Op::SumC:
        return true;
    default:
        return false;
    }
}

void out(const Expr& e, std::string& s);

void paren(const Expr& e, bool wrap, std::string& s) {
    // "(-3)" would reparse as the literal -3
    if (wrap && e.op == Op::Neg && e.kids[0]->op == Op::Int && e.kids[0]->value.sign() >= 0) {
        s += "(-(" + e.kids[0]->value.str() + "))";
        return;
    }
    if (wrap) s += '(';
    out(e, s);
    if (wrap) s += ')';
}

void out(const Expr& e, std::string& s) {
    const auto& k = e.kids;
    switch (e.op) {
    case Op::Int:
        if (e.value.sign() < 0) s += "(" + e.value.str() + ")";
        else s += e.value.str();
        return;
    case Op::Var:
        s += e.name;
        return;
    case Op::Neg:
        s += '-';
        paren(*k[0], !(atomic(*k[0]) || k[0]->op == Op::Pow), s);
        return;
    case Op::Add:
    case Op::Sub:
        out(*k[0], s);
        s += e.op == Op::Add ? " + " : " - ";
        paren(*k[1], k[1]->op == Op::Add || k[1]->op == Op::Sub, s);
        return;
    case Op::Mul:
    case Op::Div: {
        auto low = [](const Expr& x) { return x.op == Op::Add || x.op == Op::Sub; };
        paren(*k[0], low(*k[0]), s);
        s += e.op == Op::Mul ? " * " : " / ";
        paren(*k[1], low(*k[1]) || k[1]->op == Op::Mul || k[1]->op == Op::Div, s);
        return;
    }
    case Op::Pow:
        paren(*k[0], !atomic(*k[0]), s);
        s += '^';
        if (k[1]->op == Op::Int) s += k[1]->value.str();
        else paren(*k[1], true, s);
        return;
    case Op::Fact:
    case Op::H:
        s += e.op == Op::Fact ? "fact(" : "H(";
        out(*k[0], s);
        s += ')';
        return;
    case Op::Binom:
    case Op::IDiv:
        s += e.op == Op::Binom ? "binom(" : "idiv(";
        out(*k[0], s);
        s += ", ";
        out(*k[1], s);
        s += ')';
        return;
    case Op::Sum:
        s += "sum(";
        s += e.name;
        s += '=';
        out(*k[0], s);
        s += "..";
        out(*k[1], s);
        s += ", ";
        out(*k[2], s);
        s += ')';
        return;
    case Op::SumC:
        s += "sumc(";
        for (size_t i = 0; i < e.indices.size(); ++i) {
            if (i) s += '+';
            s += e.indices[i];
        }
        s += " = ";
        out(*k[0], s);
        s += ", ";
        out(*k[1], s);
        s += ')';
        return;
    }
}

void collect(const Expr& e, std::vector<char>& bound, std::set<char>& fv) {
    switch (e.op) {
    case Op::Var:
        if (std::find(bound.begin(), bound.end(), e.name) == bound.end()) fv.insert(e.name);
        return;
    case Op::Sum:
        collect(*e.kids[0], bound, fv);
        collect(*e.kids[1], bound, fv);
        bound.push_back(e.name);
        collect(*e.kids[2], bound, fv);
        bound.pop_back();
        return;
    case Op::SumC:
        collect(*e.kids[0], bound, fv);
        bound.insert(bound.end(), e.indices.begin(), e.indices.end());
        collect(*e.kids[1], bound, fv);
        bound.resize(bound.size() - e.indices.size());
        return;
    default:
        for (auto& k : e.kids) collect(*k, bound, fv);
    }
}

}  // namespace

ExprPtr parse(std::string_view text) { return Parser(text).parse(); }

std::string render(const Expr& e) {
    std::string s;
    out(e, s);
    return s;
}

std::set<char> free_vars(const Expr& e) {
    std::set<char> fv;
    std::vector<char> bound;
    collect(e, bound, fv);
    return fv;
}

bool equal(const Expr& a, const Expr& b) {
    if (a.op != b.op || a.name != b.name || a.indices != b.indices || a.kids.size() != b.kids.size())
        return false;
    if (a.op == Op::Int && !(a.value == b.value)) return false;
    for (size_t i = 0; i < a.kids.size(); ++i)
        if (!equal(*a.kids[i], *b.kids[i])) return false;
    return true;
}

int sum_depth(const Expr& e) {
    int d = 0;
    for (auto& k : e.kids) d = std::max(d, sum_depth(*k));
    if (e.op == Op::Sum) return 1 + sum_depth(*e.kids[2]);
    if (e.op == Op::SumC) return int(e.indices.size()) - 1 + sum_depth(*e.kids[1]);
    return d;
}

}  // namespace cyid
