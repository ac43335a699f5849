#include "cyid/theta.hpp"

#include <cctype>

namespace cyid {

BigInt poly_eval(const Poly1& p, long x) {
    BigInt r(0), X(x);
    for (size_t i = p.size(); i-- > 0;) r = r * X + p[i];
    return r;
}

std::string poly_str(const Poly1& p, char var) {
    std::string s;
    for (size_t i = p.size(); i-- > 0;) {
        const BigInt& c = p[i];
        if (c.is_zero()) continue;
        BigInt a = c.sign() < 0 ? -c : c;
        if (s.empty()) s += c.sign() < 0 ? "-" : "";
        else s += c.sign() < 0 ? " - " : " + ";
        if (i == 0) {
            s += a.str();
            continue;
        }
        if (!(a == BigInt(1))) s += a.str() + "*";
        s += var;
        if (i > 1) s += "^" + std::to_string(i);
    }
    return s.empty() ? "0" : s;
}

namespace {

// Bivariate polynomial keyed by (power of z, power of T).
using Poly2 = std::map<std::pair<int, int>, BigInt>;

void trim(Poly2& p) {
    for (auto it = p.begin(); it != p.end();) {
        if (it->second.is_zero()) it = p.erase(it);
        else ++it;
    }
}

Poly2 add2(Poly2 a, const Poly2& b, int sign) {
    for (auto& [k, c] : b) a[k] += sign > 0 ? c : -c;
    trim(a);
    return a;
}

Poly2 mul2(const Poly2& a, const Poly2& b) {
    Poly2 r;
    for (auto& [ka, ca] : a)
        for (auto& [kb, cb] : b) r[{ka.first + kb.first, ka.second + kb.second}] += ca * cb;
    trim(r);
    return r;
}

class ThetaParser {
public:
    explicit ThetaParser(std::string_view s) : s_(s) {}

    Poly2 parse() {
        auto p = expr();
        if (peek()) fail("unexpected '" + std::string(1, s_[i_]) + "'");
        return p;
    }

private:
    char peek() {
        while (i_ < s_.size() && std::isspace((unsigned char)s_[i_])) ++i_;
        return i_ < s_.size() ? s_[i_] : '\0';
    }
    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError(i_ >= s_.size() ? msg + " at end of input" : msg, 1, int(i_) + 1);
    }

    Poly2 expr() {
        int sign = 1;
        if (peek() == '-' || peek() == '+') sign = s_[i_++] == '-' ? -1 : 1;
        Poly2 r = add2({}, term(), sign);
        while (peek() == '+' || peek() == '-') {
            int sg = s_[i_++] == '-' ? -1 : 1;
            r = add2(r, term(), sg);
        }
        return r;
    }

    Poly2 term() {
        Poly2 r = factor();
        while (peek() == '*') {
            ++i_;
            r = mul2(r, factor());
        }
        return r;
    }

    Poly2 factor() {
        char c = peek();
        Poly2 r;
        if (c == '(') {
            ++i_;
            r = expr();
            if (peek() != ')') fail("expected ')'");
            ++i_;
        } else if (std::isdigit((unsigned char)c)) {
            size_t j = i_;
            while (j < s_.size() && std::isdigit((unsigned char)s_[j])) ++j;
            r[{0, 0}] = BigInt::parse(s_.substr(i_, j - i_));
            i_ = j;
        } else if (c == 'T' || c == 'z') {
            ++i_;
            r[c == 'z' ? std::pair{1, 0} : std::pair{0, 1}] = BigInt(1);
        } else if (std::isalpha((unsigned char)c)) {
            fail(std::string("unknown symbol '") + c + "'");
        } else {
            fail(c ? "unexpected '" + std::string(1, c) + "'" : "expected a term");
        }
        trim(r);
        if (peek() == '^') {
            ++i_;
            if (peek() == '-') fail("negative powers are not allowed");
            if (!std::isdigit((unsigned char)peek())) fail("expected an integer exponent");
            size_t j = i_;
            while (j < s_.size() && std::isdigit((unsigned char)s_[j])) ++j;
            if (j - i_ > 4) fail("exponent too large");
            int k = std::stoi(std::string(s_.substr(i_, j - i_)));
            i_ = j;
            Poly2 base = r;
            r = {{{0, 0}, BigInt(1)}};
            for (int t = 0; t < k; ++t) r = mul2(r, base);
        }
        return r;
    }

    std::string_view s_;
    size_t i_ = 0;
};

// coefficients of p(x - s)
Poly1 shift(const Poly1& p, long s) {
    Poly1 r(p.size(), BigInt(0));
    // Horner on polynomials: r = r*(x - s) + p_i
    for (size_t i = p.size(); i-- > 0;) {
        Poly1 next(p.size(), BigInt(0));
        for (size_t d = 0; d < r.size(); ++d) {
            if (r[d].is_zero()) continue;
            if (d + 1 < next.size()) next[d + 1] += r[d];
            next[d] -= r[d] * BigInt(s);
        }
        next[0] += p[i];
        r = std::move(next);
    }
    while (!r.empty() && r.back().is_zero()) r.pop_back();
    return r;
}

}  // namespace

ThetaOperator parse_theta(std::string_view text) {
    Poly2 p = ThetaParser(text).parse();
    ThetaOperator op;
    for (auto& [k, c] : p) {
        Poly1& s = op.slices[k.first];
        if (s.size() <= size_t(k.second)) s.resize(k.second + 1, BigInt(0));
        s[k.second] = c;
    }
    if (op.slices.empty()) throw ParseError("operator is zero", 1, 1);
    return op;
}

Recurrence to_recurrence(const ThetaOperator& op) {
    Recurrence r;
    for (auto& [j, p] : op.slices) r.shifted[j] = shift(p, j);
    return r;
}

std::string Recurrence::str() const {
    std::string s;
    for (auto& [j, q] : shifted) {
        if (!s.empty()) s += " + ";
        s += "(" + poly_str(q, 'm') + ")*A(m" + (j ? "-" + std::to_string(j) : "") + ")";
    }
    return s + " = 0";
}

Rational residual(const Recurrence& rec, const std::vector<Rational>& seq, long m) {
    Rational r(0);
    for (auto& [j, q] : rec.shifted) {
        long idx = m - j;
        if (idx < 0) continue;
        r += Rational(poly_eval(q, m)) * seq.at(size_t(idx));
    }
    return r;
}

CheckReport check_sequence(const Recurrence& rec, const std::vector<Rational>& seq) {
    CheckReport out;
    for (long m = 0; m < long(seq.size()); ++m) {
        Rational r = residual(rec, seq, m);
        if (!r.is_zero()) out.failures.push_back({m, r});
    }
    return out;
}

Twist parse_twist(std::string_view s) {
    if (s == "+1" || s == "1" || s == "plus") return Twist::Plus;
    if (s == "-1" || s == "minus") return Twist::Minus;
    if (s == "auto") return Twist::Auto;
    throw DomainError("twist must be +1, -1 or auto");
}

int TwistReport::held() const {
    if (plus && plus->satisfied()) return 1;
    if (minus && minus->satisfied()) return -1;
    return 0;
}

bool TwistReport::exactly_one() const {
    return plus && minus && plus->satisfied() != minus->satisfied();
}

TwistReport check_twisted(const Recurrence& rec, const std::vector<Rational>& seq, Twist twist) {
    TwistReport out;
    if (twist != Twist::Minus) out.plus = check_sequence(rec, seq);
    if (twist != Twist::Plus) {
        std::vector<Rational> tw(seq);
        for (size_t m = 1; m < tw.size(); m += 2) tw[m] = -tw[m];
        out.minus = check_sequence(rec, tw);
    }
    return out;
}

}  // namespace cyid
