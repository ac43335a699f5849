#include "cyid/exact.hpp"

#include <array>
#include <atomic>
#include <memory>
#include <mutex>

namespace cyid {

BigInt BigInt::parse(std::string_view s) {
    mpz_class v;
    if (s.empty() || v.set_str(std::string(s), 10) != 0)
        throw DomainError("not an integer: " + std::string(s));
    return BigInt(std::move(v));
}

long BigInt::to_long() const {
    if (!fits_long()) throw DomainError("integer out of range: " + str());
    return v_.get_si();
}

Rational::Rational(const BigInt& num, const BigInt& den) {
    if (den.is_zero()) throw PoleError("zero denominator");
    q_ = mpq_class(num.raw(), den.raw());
    q_.canonicalize();
}

Rational Rational::parse(std::string_view s) {
    auto slash = s.find('/');
    if (slash == std::string_view::npos) return Rational(BigInt::parse(s));
    return Rational(BigInt::parse(s.substr(0, slash)), BigInt::parse(s.substr(slash + 1)));
}

long Rational::to_long() const {
    if (!is_integer()) throw DomainError("not an integer: " + str());
    return num().to_long();
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero()) throw PoleError("division by zero");
    q_ /= o.q_;
    return *this;
}

namespace {

// Grow-only table. Entries below size_ are immutable, so readers need no lock;
// chunks never move once allocated.
template <class T>
class GrowTable {
public:
    static constexpr size_t kChunk = 1024;
    static constexpr size_t kMaxChunks = 1 << 12;

    template <class Next>
    const T& get(size_t i, Next next) {
        if (i < size_.load(std::memory_order_acquire)) return at(i);
        if (i >= kChunk * kMaxChunks) throw DomainError("cache index too large");
        std::lock_guard<std::mutex> lock(mu_);
        size_t n = size_.load(std::memory_order_relaxed);
        while (n <= i) {
            auto& c = chunks_[n / kChunk];
            if (!c) c = std::make_unique<T[]>(kChunk);
            c[n % kChunk] = n == 0 ? next(0, nullptr) : next(n, &at(n - 1));
            ++n;
            size_.store(n, std::memory_order_release);
        }
        return at(i);
    }

private:
    T& at(size_t i) const { return chunks_[i / kChunk][i % kChunk]; }

    std::array<std::unique_ptr<T[]>, kMaxChunks> chunks_;
    std::atomic<size_t> size_{0};
    std::mutex mu_;
};

GrowTable<BigInt>& fact_table() {
    static GrowTable<BigInt> t;
    return t;
}

GrowTable<Rational>& harm_table() {
    static GrowTable<Rational> t;
    return t;
}

constexpr long kFactCap = 1 << 16;

}  // namespace

const BigInt& factorial(long m) {
    if (m < 0) throw DomainError("factorial of negative integer " + std::to_string(m));
    return fact_table().get(size_t(m), [](size_t n, const BigInt* prev) {
        return prev ? *prev * BigInt(long(n)) : BigInt(1);
    });
}

BigInt binom(long a, long k) {
    if (k < 0) return BigInt(0);
    if (a < 0) {
        // binom(-b, k) = (-1)^k binom(b+k-1, k)
        BigInt r = binom(k - a - 1, k);
        return k % 2 ? -r : r;
    }
    if (k > a) return BigInt(0);
    if (a > kFactCap) {
        mpz_class r;
        mpz_bin_uiui(r.get_mpz_t(), (unsigned long)a, (unsigned long)k);
        return BigInt(std::move(r));
    }
    mpz_class r = factorial(a).raw();
    mpz_divexact(r.get_mpz_t(), r.get_mpz_t(), factorial(k).raw().get_mpz_t());
    mpz_divexact(r.get_mpz_t(), r.get_mpz_t(), factorial(a - k).raw().get_mpz_t());
    return BigInt(std::move(r));
}

Rational binom(const Rational& a, long k) {
    if (k < 0) return Rational(0);
    if (a.is_integer() && a.num().fits_long()) return Rational(binom(a.num().to_long(), k));
    mpq_class r(1), t(a.raw());
    for (long i = 0; i < k; ++i) {
        r *= t;
        t -= 1;
    }
    r /= mpq_class(factorial(k).raw());
    return Rational(std::move(r));
}

const Rational& harmonic(long k) {
    static const Rational zero(0);
    if (k <= 0) return zero;
    return harm_table().get(size_t(k), [](size_t n, const Rational* prev) {
        return prev ? *prev + Rational(BigInt(1), BigInt(long(n))) : Rational(0);
    });
}

Rational ipow(const Rational& base, long e) {
    if (base.is_zero() && e < 0) throw PoleError("0 raised to negative power");
    if (e == 0) return Rational(1);
    unsigned long m = e < 0 ? 0ul - (unsigned long)e : (unsigned long)e;
    mpz_class num, den;
    mpz_pow_ui(num.get_mpz_t(), base.raw().get_num_mpz_t(), m);
    mpz_pow_ui(den.get_mpz_t(), base.raw().get_den_mpz_t(), m);
    if (e < 0) std::swap(num, den);
    return Rational(mpq_class(num, den));
}

BigInt multinomial(long n, const std::vector<long>& parts) {
    long total = 0;
    for (long p : parts) {
        if (p < 0) throw DomainError("negative multinomial part");
        total += p;
    }
    if (total != n) throw DomainError("multinomial parts do not sum to n");
    mpz_class r = factorial(n).raw();
    for (long p : parts) mpz_divexact(r.get_mpz_t(), r.get_mpz_t(), factorial(p).raw().get_mpz_t());
    return BigInt(std::move(r));
}

}  // namespace cyid
