#include "cyid/laurent.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <unordered_map>

namespace cyid {

std::uint64_t Exp4::pack() const {
    std::uint64_t key = 0;
    for (int v : e) {
        if (v < -kLimit || v > kLimit) throw DomainError("exponent out of range: " + std::to_string(v));
        key = key << 16 | std::uint64_t(v + 32768);
    }
    return key;
}

Exp4 Exp4::unpack(std::uint64_t key) {
    Exp4 r;
    for (int i = 3; i >= 0; --i) {
        r.e[i] = int(key & 0xffff) - 32768;
        key >>= 16;
    }
    return r;
}

LaurentPoly::LaurentPoly(std::vector<Term> terms) {
    std::map<Exp4, BigInt> acc;
    for (auto& [e, c] : terms) acc[e] += c;
    for (auto& [e, c] : acc)
        if (!c.is_zero()) terms_.emplace_back(e, std::move(c));
    summarize();
}

LaurentPoly LaurentPoly::constant(const BigInt& c) { return LaurentPoly({{Exp4{}, c}}); }

LaurentPoly LaurentPoly::monomial(const Exp4& e, const BigInt& c) { return LaurentPoly({{e, c}}); }

void LaurentPoly::summarize() {
    min_.fill(0);
    max_.fill(0);
    for (size_t i = 0; i < terms_.size(); ++i) {
        for (int v = 0; v < 4; ++v) {
            int x = terms_[i].first.e[v];
            if (i == 0 || x < min_[v]) min_[v] = x;
            if (i == 0 || x > max_[v]) max_[v] = x;
        }
    }
}

BigInt LaurentPoly::coeff(const Exp4& e) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), e,
                               [](const Term& t, const Exp4& k) { return t.first < k; });
    if (it != terms_.end() && it->first == e) return it->second;
    return BigInt(0);
}

std::string LaurentPoly::str() const {
    if (terms_.empty()) return "0";
    static const char names[] = "xyzt";
    std::string s;
    for (size_t i = 0; i < terms_.size(); ++i) {
        const auto& [e, c] = terms_[i];
        BigInt a = c.sign() < 0 ? -c : c;
        if (i == 0) s += c.sign() < 0 ? "-" : "";
        else s += c.sign() < 0 ? " - " : " + ";
        std::string mono;
        for (int v = 0; v < 4; ++v) {
            if (e.e[v] == 0) continue;
            if (!mono.empty()) mono += '*';
            mono += names[v];
            if (e.e[v] != 1) mono += "^" + std::to_string(e.e[v]);
        }
        if (mono.empty()) s += a.str();
        else if (a == BigInt(1)) s += mono;
        else s += a.str() + "*" + mono;
    }
    return s;
}

LaurentPoly add(const LaurentPoly& a, const LaurentPoly& b) {
    std::vector<LaurentPoly::Term> t(a.terms());
    t.insert(t.end(), b.terms().begin(), b.terms().end());
    return LaurentPoly(std::move(t));
}

namespace {

// product with an optional filter on result monomials
template <class Keep>
LaurentPoly mul_if(const LaurentPoly& a, const LaurentPoly& b, Keep keep) {
    std::unordered_map<std::uint64_t, mpz_class> acc;
    acc.reserve(a.size() * b.size());
    for (const auto& [ea, ca] : a.terms()) {
        for (const auto& [eb, cb] : b.terms()) {
            Exp4 e = ea + eb;
            if (!keep(e)) continue;
            mpz_class& slot = acc[e.pack()];
            mpz_addmul(slot.get_mpz_t(), ca.raw().get_mpz_t(), cb.raw().get_mpz_t());
        }
    }
    std::vector<std::pair<std::uint64_t, mpz_class>> sorted;
    sorted.reserve(acc.size());
    for (auto& kv : acc)
        if (sgn(kv.second) != 0) sorted.emplace_back(kv.first, std::move(kv.second));
    // the biased packing orders keys like Exp4
    std::sort(sorted.begin(), sorted.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    std::vector<LaurentPoly::Term> terms;
    terms.reserve(sorted.size());
    for (auto& [k, c] : sorted) terms.emplace_back(Exp4::unpack(k), BigInt(std::move(c)));
    return LaurentPoly(std::move(terms));
}

class LaurentParser {
public:
    explicit LaurentParser(std::string_view s) : s_(s) {}

    LaurentPoly parse() {
        auto p = expr();
        skip();
        if (i_ < s_.size()) fail("unexpected '" + std::string(1, s_[i_]) + "'");
        return p;
    }

private:
    void skip() {
        while (i_ < s_.size() && std::isspace((unsigned char)s_[i_])) ++i_;
    }
    char peek() {
        skip();
        return i_ < s_.size() ? s_[i_] : '\0';
    }
    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError(i_ >= s_.size() ? msg + " at end of input" : msg, 1, int(i_) + 1);
    }

    LaurentPoly expr() {
        bool neg = false;
        if (peek() == '-' || peek() == '+') {
            neg = s_[i_] == '-';
            ++i_;
        }
        auto r = term();
        if (neg) r = mul(r, LaurentPoly::constant(BigInt(-1)));
        while (peek() == '+' || peek() == '-') {
            bool minus = s_[i_++] == '-';
            auto t = term();
            if (minus) t = mul(t, LaurentPoly::constant(BigInt(-1)));
            r = add(r, t);
        }
        return r;
    }


    LaurentPoly term() {
        auto r = factor();
        for (;;) {
            char c = peek();
            if (c == '*') {
                ++i_;
                r = mul(r, factor());
            } else if (c == '/') {
                ++i_;
                r = mul(r, invert(factor()));
            } else if (c == '(' || std::isalpha((unsigned char)c)) {
                r = mul(r, factor());
            } else {
                return r;
            }
        }
    }

    LaurentPoly invert(const LaurentPoly& p) {
        if (p.size() != 1) fail("division by a non-monomial");
        const auto& [e, c] = p.terms()[0];
        if (!(c == BigInt(1) || c == BigInt(-1))) fail("division by a coefficient other than 1 or -1");
        return LaurentPoly::monomial(-e, c);
    }

    long integer() {
        skip();
        size_t j = i_;
        while (j < s_.size() && std::isdigit((unsigned char)s_[j])) ++j;
        if (j == i_) fail("expected an integer");
        if (j - i_ > 9) fail("integer too large");
        long v = std::stol(std::string(s_.substr(i_, j - i_)));
        i_ = j;
        return v;
    }

    LaurentPoly factor() {
        char c = peek();
        LaurentPoly r;
        if (c == '(') {
            ++i_;
            r = expr();
            if (peek() != ')') fail("expected ')'");
            ++i_;
        } else if (std::isdigit((unsigned char)c)) {
            skip();
            size_t j = i_;
            while (j < s_.size() && std::isdigit((unsigned char)s_[j])) ++j;
            r = LaurentPoly::constant(BigInt::parse(s_.substr(i_, j - i_)));
            i_ = j;
        } else if (std::isalpha((unsigned char)c)) {
            static const std::string_view names = "xyzt";
            auto v = names.find(c);
            if (v == std::string_view::npos) fail(std::string("unknown variable '") + c + "'");
            Exp4 e;
            e.e[v] = 1;
            ++i_;
            r = LaurentPoly::monomial(e);
        } else {
            fail(c ? "unexpected '" + std::string(1, c) + "'" : "expected a term");
        }
        if (peek() == '^') {
            ++i_;
            bool neg = false;
            if (peek() == '-') {
                ++i_;
                neg = true;
            }
            long k = integer();
            if (neg) r = invert(r);
            LaurentPoly base = r;
            r = LaurentPoly::constant(BigInt(1));
            for (long j = 0; j < k; ++j) r = mul(r, base);
        }
        return r;
    }

    std::string_view s_;
    size_t i_ = 0;
};

}  // namespace

LaurentPoly mul(const LaurentPoly& a, const LaurentPoly& b) {
    return mul_if(a, b, [](const Exp4&) { return true; });
}

LaurentPoly parse_laurent(std::string_view text) { return LaurentParser(text).parse(); }

CtSpec parse_ct_spec(std::string_view text) {
    while (!text.empty() && std::isspace((unsigned char)text.back())) text.remove_suffix(1);
    auto fail = [&](const std::string& msg) { throw ParseError(msg, 1, int(text.size()) + 1); };
    if (text.empty() || text.back() != 'n') fail("expected '^ <M>n' at the end");
    size_t j = text.size() - 1;
    while (j > 0 && std::isdigit((unsigned char)text[j - 1])) --j;
    if (j == text.size() - 1) fail("missing power multiplier");
    long mult = std::stol(std::string(text.substr(j, text.size() - 1 - j)));
    size_t k = j;
    while (k > 0 && std::isspace((unsigned char)text[k - 1])) --k;
    if (k == 0 || text[k - 1] != '^') fail("expected '^' before the power multiplier");
    if (mult < 1) fail("power multiplier must be positive");
    return CtSpec{parse_laurent(text.substr(0, k - 1)), mult};
}

BigInt ct_power(const CtSpec& spec, long n, bool prune) {
    if (n < 0) throw DomainError("ct_power needs n >= 0");
    const LaurentPoly& P = spec.poly;
    long N = spec.mult * n;
    LaurentPoly cur = LaurentPoly::constant(BigInt(1));
    for (long m = 1; m <= N; ++m) {
        long r = N - m;
        if (!prune) {
            cur = mul(cur, P);
            continue;
        }
        cur = mul_if(cur, P, [&](const Exp4& e) {
            for (int v = 0; v < 4; ++v) {
                if (e.e[v] + r * P.min_exp(v) > 0 || e.e[v] + r * P.max_exp(v) < 0) return false;
            }
            return true;
        });
    }
    return cur.constant_term();
}

std::vector<BigInt> ct_sequence(const CtSpec& spec, long n_max, bool prune) {
    std::vector<BigInt> out;
    for (long n = 0; n <= n_max; ++n) out.push_back(ct_power(spec, n, prune));
    return out;
}

}  // namespace cyid
