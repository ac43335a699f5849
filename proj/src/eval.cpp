#include "cyid/eval.hpp"

#include <climits>

namespace cyid {

namespace {

int slot(char c) {
    switch (c) {
    case 'n': return 0;
    case 'i': return 1;
    case 'j': return 2;
    case 'k': return 3;
    case 'p': return 4;
    case 'm': return 5;
    }
    return -1;
}

constexpr char kNames[] = "nijkpm";

}  // namespace

void Env::set(char name, long v) {
    int s = slot(name);
    if (s < 0) throw UnboundVariable(name);
    vals_[s] = v;
    mask_ |= 1u << s;
}

void Env::unset(char name) {
    int s = slot(name);
    if (s >= 0) mask_ &= ~(1u << s);
}

bool Env::has(char name) const {
    int s = slot(name);
    return s >= 0 && (mask_ >> s & 1u);
}

long Env::get(char name) const {
    if (!has(name)) throw UnboundVariable(name);
    return vals_[slot(name)];
}

std::string Env::assignment() const {
    std::string s;
    for (int i = 1; i < 6; ++i) {
        if (!(mask_ >> i & 1u)) continue;
        if (!s.empty()) s += ", ";
        s += kNames[i];
        s += "=" + std::to_string(vals_[i]);
    }
    return s;
}

EvalError::EvalError(const std::string& msg) : std::runtime_error(msg), msg_(msg), full_(msg) {}

void EvalError::set_n(long n) {
    n_ = n;
    full_ = "n=" + std::to_string(n) + ": " + msg_;
}

SingularTerm::SingularTerm(const std::string& what, const std::string& assignment)
    : EvalError(assignment.empty() ? what : what + " at " + assignment), assignment(assignment) {}

UnboundVariable::UnboundVariable(char name)
    : EvalError(std::string("unbound variable '") + name + "'"), name(name) {}

namespace {

class Evaluator {
public:
    Evaluator(const Env& env, const EvalOptions& opts) : env_(env), opts_(opts) {}

    Rational val(const Expr& e) {
        const auto& k = e.kids;
        switch (e.op) {
        case Op::Int:
            return Rational(e.value);
        case Op::Var:
            return Rational(env_.get(e.name));
        case Op::Neg:
            return -val(*k[0]);
        case Op::Add:
        case Op::Sub:
        case Op::Mul:
            if (e.int_only) {
                if (auto v = fast(e)) return Rational(*v);
            }
            if (e.op == Op::Add) return val(*k[0]) + val(*k[1]);
            if (e.op == Op::Sub) return val(*k[0]) - val(*k[1]);
            return val(*k[0]) * val(*k[1]);
        case Op::Div: {
            Rational a = val(*k[0]);
            Rational b = val(*k[1]);
            if (b.is_zero()) throw SingularTerm("division by zero", env_.assignment());
            return a / b;
        }
        case Op::Pow: {
            long x = ival(*k[1], "exponent");
            Rational b = val(*k[0]);
            if (b.is_zero() && x < 0) throw SingularTerm("0 raised to a negative power", env_.assignment());
            return ipow(b, x);
        }
        case Op::Fact: {
            long m = ival(*k[0], "factorial argument");
            if (m < 0) throw EvalError("factorial of negative integer " + std::to_string(m));
            return Rational(factorial(m));
        }
        case Op::Binom: {
            long b = ival(*k[1], "binomial bottom");
            if (k[0]->int_only) {
                if (auto a = fast(*k[0])) return Rational(binom(*a, b));
            }
            Rational a = val(*k[0]);
            if (a.is_integer() && a.num().fits_long()) return Rational(binom(a.num().to_long(), b));
            return binom(a, b);
        }
        case Op::H:
            return harmonic(ival(*k[0], "harmonic index"));
        case Op::IDiv: {
            if (e.int_only) {
                if (auto v = fast(e)) return Rational(*v);
            }
            Rational a = val(*k[0]);
            Rational b = val(*k[1]);
            if (b.is_zero()) throw SingularTerm("idiv by zero", env_.assignment());
            Rational q = a / b;
            mpz_class f;
            mpz_fdiv_q(f.get_mpz_t(), q.raw().get_num_mpz_t(), q.raw().get_den_mpz_t());
            return Rational(BigInt(std::move(f)));
        }
        case Op::Sum:
            return sum(e);
        case Op::SumC:
            return sumc(e);
        }
        throw EvalError("bad expression node");
    }

private:
    // int64 evaluation of an int_only subtree; nullopt on overflow
    std::optional<long> fast(const Expr& e) {
        const auto& k = e.kids;
        long a, b, r;
        switch (e.op) {
        case Op::Int:
            return e.value.to_long();
        case Op::Var:
            return env_.get(e.name);
        case Op::Neg: {
            auto x = fast(*k[0]);
            if (!x || *x == LONG_MIN) return std::nullopt;
            return -*x;
        }
        default:
            break;
        }
        auto x = fast(*k[0]);
        if (!x) return std::nullopt;
        auto y = fast(*k[1]);
        if (!y) return std::nullopt;
        a = *x;
        b = *y;
        switch (e.op) {
        case Op::Add:
            if (__builtin_add_overflow(a, b, &r)) return std::nullopt;
            return r;
        case Op::Sub:
            if (__builtin_sub_overflow(a, b, &r)) return std::nullopt;
            return r;
        case Op::Mul:
            if (__builtin_mul_overflow(a, b, &r)) return std::nullopt;
            return r;
        case Op::IDiv:
            if (b == 0) throw SingularTerm("idiv by zero", env_.assignment());
            if (a == LONG_MIN && b == -1) return std::nullopt;
            r = a / b;
            if ((a % b != 0) && ((a < 0) != (b < 0))) --r;
            return r;
        default:
            return std::nullopt;
        }
    }

    long ival(const Expr& e, const char* what) {
        if (e.int_only) {
            if (auto v = fast(e)) return *v;
        }
        Rational v = val(e);
        if (!v.is_integer()) throw NonIntegerArgument(std::string(what) + " is not an integer: " + v.str());
        if (!v.num().fits_long()) throw NonIntegerArgument(std::string(what) + " out of range: " + v.str());
        return v.num().to_long();
    }

    void term(const Expr& body, Rational& acc) {
        try {
            acc += val(body);
        } catch (const SingularTerm&) {
            if (!opts_.skip_singular) throw;
        }
    }

    Rational sum(const Expr& e) {
        long lo = ival(*e.kids[0], "sum bound");
        long hi = ival(*e.kids[1], "sum bound");
        Rational acc(0);
        bool had = env_.has(e.name);
        long old = had ? env_.get(e.name) : 0;
        for (long v = lo; v <= hi; ++v) {
            env_.set(e.name, v);
            term(*e.kids[2], acc);
        }
        if (had) env_.set(e.name, old);
        else env_.unset(e.name);
        return acc;
    }

    void compositions(const Expr& e, size_t idx, long left, Rational& acc) {
        char v = e.indices[idx];
        if (idx + 1 == e.indices.size()) {
            env_.set(v, left);
            term(*e.kids[1], acc);
            return;
        }
        for (long x = 0; x <= left; ++x) {
            env_.set(v, x);
            compositions(e, idx + 1, left - x, acc);
        }
    }

    Rational sumc(const Expr& e) {
        long total = ival(*e.kids[0], "sumc total");
        Rational acc(0);
        if (total < 0) return acc;
        Env saved = env_;
        compositions(e, 0, total, acc);
        env_ = saved;
        return acc;
    }

    Env env_;
    const EvalOptions& opts_;
};

}  // namespace

Rational eval(const Expr& e, const Env& env, const EvalOptions& opts) {
    try {
        return Evaluator(env, opts).val(e);
    } catch (const DomainError& x) {
        throw EvalError(x.what());
    } catch (const PoleError& x) {
        throw SingularTerm(x.what(), env.assignment());
    }
}

std::vector<Rational> eval_sequence(const Expr& e, long n_max, const EvalOptions& opts, long n_min) {
    std::vector<Rational> out;
    if (n_max >= n_min) out.reserve(size_t(n_max - n_min + 1));
    Env env;
    for (long n = n_min; n <= n_max; ++n) {
        env.set('n', n);
        try {
            out.push_back(eval(e, env, opts));
        } catch (EvalError& x) {
            x.set_n(n);
            throw;
        }
    }
    return out;
}

std::string harmonic_cy_formula(long b, long c) {
    std::string B = std::to_string(b), C = std::to_string(c);
    return "(fact(3*n)/fact(n)^3)^" + B + " * sum(k=0..n, binom(n,k)^" + C + " * binom(3*n,n+k)^-" + B +
           " * (1 + k*(-" + C + "*H(k) + " + C + "*H(n-k) + " + B + "*H(n+k) - " + B + "*H(2*n-k))))";
}

std::vector<Rational> harmonic_cy_coefficients(long b, long c, long n_max) {
    if (b < 1 || c < 1) throw DomainError("harmonic_cy_coefficients needs b, c >= 1");
    return eval_sequence(*parse(harmonic_cy_formula(b, c)), n_max);
}

}  // namespace cyid
