#include "cyid/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <sstream>
#include <thread>

namespace cyid {

RecordKind parse_kind(const std::string& s) {
    if (s == "member" || s == "group") return RecordKind::Member;
    if (s == "ghost") return RecordKind::Ghost;
    if (s == "closed") return RecordKind::Closed;
    if (s == "ct") return RecordKind::Ct;
    if (s == "rec") return RecordKind::Rec;
    throw DomainError("unknown kind '" + s + "' (member, ghost, closed, ct, rec)");
}

const char* verdict_name(Verdict v) {
    switch (v) {
    case Verdict::Agree: return "agree";
    case Verdict::Mismatch: return "mismatch";
    case Verdict::ZeroConfirmed: return "zero-confirmed";
    case Verdict::ClosedFormConfirmed: return "closed-form-confirmed";
    case Verdict::ConditionConfirmed: return "condition-confirmed";
    case Verdict::RecurrenceSatisfied: return "recurrence-satisfied";
    case Verdict::SkippedDivergent: return "skipped-divergent";
    case Verdict::Reported: return "reported";
    case Verdict::Error: return "error";
    }
    return "?";
}

std::map<Verdict, long> VerificationReport::totals() const {
    std::map<Verdict, long> t;
    for (auto& r : results) ++t[r.verdict];
    return t;
}

long VerificationReport::unexpected_mismatches() const {
    return std::count_if(results.begin(), results.end(),
                         [](const RecordResult& r) { return r.unexpected() && r.verdict == Verdict::Mismatch; });
}

long VerificationReport::unexpected_errors() const {
    return std::count_if(results.begin(), results.end(),
                         [](const RecordResult& r) { return r.unexpected() && r.verdict == Verdict::Error; });
}

int VerificationReport::exit_code() const {
    if (unexpected_errors()) return 2;
    if (unexpected_mismatches()) return 1;
    return 0;
}

void VerificationReport::append(VerificationReport other) {
    for (auto& r : other.results) results.push_back(std::move(r));
    seconds += other.seconds;
}

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

RecordResult base(const FormulaRecord& r) {
    RecordResult out;
    out.item_id = r.item_id;
    out.label = r.label;
    out.kind = r.kind;
    out.status = r.status;
    out.typo_suspect = r.typo_suspect;
    return out;
}

// Values for n = from..to, stopping at the first error.
struct Series {
    long from = 0;
    std::vector<Rational> vals;
    std::optional<long> err_n;
    std::string err;

    long to() const { return from + long(vals.size()) - 1; }
    bool ok() const { return !err_n; }
    const Rational& at(long n) const { return vals[size_t(n - from)]; }
    bool has(long n) const { return n >= from && n <= to(); }
    bool non_integral() const {
        return std::any_of(vals.begin(), vals.end(), [](const Rational& v) { return !v.is_integer(); });
    }
};

Series evaluate(const Expr& e, long from, long to, bool skip) {
    Series s;
    s.from = from;
    EvalOptions opts{skip};
    Env env;
    for (long n = from; n <= to; ++n) {
        env.set('n', n);
        try {
            s.vals.push_back(eval(e, env, opts));
        } catch (const std::exception& x) {
            s.err_n = n;
            s.err = x.what();
            break;
        }
    }
    return s;
}

std::string preview(const Series& s, size_t count = 5) {
    std::string out;
    for (size_t i = 0; i < s.vals.size() && i < count; ++i) out += (i ? ", " : "") + s.vals[i].str();
    if (s.vals.size() > count) out += ", ...";
    return out;
}

void set_error(RecordResult& res, long n, const std::string& msg) {
    res.verdict = Verdict::Error;
    res.first_n = n;
    res.detail = msg;
}

// compare a member against the reference on their common range
void compare(RecordResult& res, const Series& m, const Series& ref) {
    long lo = std::max(m.from, ref.from), hi = std::min(m.to(), ref.to());
    res.n_from = lo;
    res.n_to = hi;
    bool twisted = true;
    for (long n = lo; n <= hi; ++n) {
        const Rational& a = m.at(n);
        const Rational& b = ref.at(n);
        if (res.first_n < 0 && !(a == b)) {
            res.first_n = n;
            res.lhs = a.str();
            res.rhs = b.str();
        }
        if (!(a == (n % 2 ? -b : b))) twisted = false;
    }
    if (res.first_n < 0) {
        res.verdict = Verdict::Agree;
        return;
    }
    res.verdict = Verdict::Mismatch;
    if (twisted) res.detail = "agrees under (-1)^n twist";
}

struct MemberState {
    const FormulaRecord* rec;
    Series s;
    double seconds;
};

}  // namespace

RecordResult verify_closed_form(const FormulaRecord& rec, const Ranges& ranges) {
    auto t0 = Clock::now();
    RecordResult res = base(rec);
    int depth = std::max(sum_depth(*rec.lhs), sum_depth(*rec.rhs));
    long to = rec.cond ? ranges.conditional : depth <= 1 ? ranges.closed_single : ranges.closed_multi;
    res.n_from = rec.nmin;
    res.n_to = to;
    EvalOptions opts{rec.skip_singular};
    Env env;
    for (long n = rec.nmin; n <= to; ++n) {
        env.set('n', n);
        Rational l, r;
        try {
            l = eval(*rec.lhs, env, opts);
            bool on = !rec.cond || n % rec.cond->q == rec.cond->r;
            r = eval(on ? *rec.rhs : *rec.cond->otherwise, env, opts);
        } catch (const std::exception& x) {
            set_error(res, n, x.what());
            res.seconds = since(t0);
            return res;
        }
        if (!l.is_integer()) res.non_integral = true;
        if (!(l == r)) {
            res.verdict = Verdict::Mismatch;
            res.first_n = n;
            res.lhs = l.str();
            res.rhs = r.str();
            res.seconds = since(t0);
            return res;
        }
    }
    res.verdict = rec.cond ? Verdict::ConditionConfirmed : Verdict::ClosedFormConfirmed;
    res.seconds = since(t0);
    return res;
}

RecordResult verify_recurrence(const FormulaRecord& rec, const Ranges& ranges) {
    auto t0 = Clock::now();
    RecordResult res = base(rec);
    res.n_from = 0;
    res.n_to = ranges.rec;
    try {
        auto seq = harmonic_cy_coefficients(rec.b, rec.c, ranges.rec);
        auto rep = check_twisted(to_recurrence(*rec.op), seq, rec.twist);
        res.twist = rep.held();
        if (res.twist) {
            res.verdict = Verdict::RecurrenceSatisfied;
            if (rep.plus && rep.minus)
                res.detail = rep.exactly_one() ? "holds under exactly one twist" : "holds under both twists";
        } else {
            const CheckReport& first = rep.plus ? *rep.plus : *rep.minus;
            res.verdict = Verdict::Mismatch;
            res.first_n = first.failures.front().m;
            res.lhs = first.failures.front().residual.str();
            res.rhs = "0";
            if (rep.plus && rep.minus)
                res.detail = "fails under both twists; (-1)^n twist first fails at m=" +
                             std::to_string(rep.minus->failures.front().m);
        }
    } catch (const std::exception& x) {
        set_error(res, -1, x.what());
    }
    res.seconds = since(t0);
    return res;
}

VerificationReport verify_group(const IdentityGroup& g, const Ranges& ranges, const Filters& filters) {
    auto t0 = Clock::now();
    VerificationReport out;
    bool need_members = filters.wants(RecordKind::Member) || filters.wants(RecordKind::Ct);

    std::vector<MemberState> members;
    if (need_members) {
        for (auto& r : g.records) {
            if (r.kind != RecordKind::Member || !r.evaluable()) continue;
            auto t = Clock::now();
            long to = ranges.for_depth(sum_depth(*r.body));
            members.push_back({&r, evaluate(*r.body, r.nmin, to, r.skip_singular), 0});
            members.back().seconds = since(t);
        }
    }
    // reference per order class: first member that is not typo-suspect and evaluates;
    // groups without one compare against their first evaluable member
    auto pick = [&](bool fifth, bool strict) -> const MemberState* {
        for (auto& m : members)
            if (m.rec->fifth_order == fifth && m.s.ok() && !(strict && m.rec->typo_suspect)) return &m;
        return nullptr;
    };
    const MemberState* ref_strict[2] = {pick(false, true), pick(true, true)};
    const MemberState* ref[2] = {ref_strict[0] ? ref_strict[0] : pick(false, false),
                                 ref_strict[1] ? ref_strict[1] : pick(true, false)};
    auto class_size = [&](bool fifth) {
        return std::count_if(members.begin(), members.end(),
                             [&](const MemberState& m) { return m.rec->fifth_order == fifth && m.s.ok(); });
    };

    size_t mi = 0;
    for (auto& r : g.records) {
        if (!filters.wants(r.kind)) {
            if (r.kind == RecordKind::Member && r.evaluable() && need_members) ++mi;
            continue;
        }
        auto t = Clock::now();
        RecordResult res = base(r);
        switch (r.kind) {
        case RecordKind::Member: {
            if (!r.evaluable()) {
                res.verdict = Verdict::SkippedDivergent;
                break;
            }
            const MemberState& m = members[mi++];
            res.non_integral = m.s.non_integral();
            if (!m.s.ok()) {
                set_error(res, *m.s.err_n, m.s.err);
                break;
            }
            const MemberState* rf = ref[r.fifth_order];
            if (rf == &m) {
                res.n_from = m.s.from;
                res.n_to = m.s.to();
                res.verdict = class_size(r.fifth_order) > 1 ? Verdict::Agree : Verdict::Reported;
                res.detail = class_size(r.fifth_order) > 1 ? "reference" : "only member: " + preview(m.s);
            } else {
                compare(res, m.s, rf->s);
                if (res.detail.empty() && res.verdict == Verdict::Mismatch)
                    res.detail = "reference " + rf->rec->label;
            }
            res.seconds = m.seconds;
            break;
        }
        case RecordKind::Ghost: {
            if (r.status == Status::Divergent || !r.evaluable()) {
                res.verdict = Verdict::SkippedDivergent;
                break;
            }
            long to = r.status == Status::ZeroExpected ? ranges.ghost
                                                       : std::min(ranges.ghost, ranges.for_depth(sum_depth(*r.body)));
            Series s = evaluate(*r.body, r.nmin, to, r.skip_singular);
            res.n_from = s.from;
            res.n_to = s.to();
            res.non_integral = s.non_integral();
            if (!s.ok()) {
                set_error(res, *s.err_n, s.err);
                break;
            }
            if (r.status == Status::Reported) {
                res.verdict = Verdict::Reported;
                res.detail = preview(s);
                break;
            }
            res.verdict = Verdict::ZeroConfirmed;
            for (long n = s.from; n <= s.to(); ++n) {
                if (!s.at(n).is_zero()) {
                    res.verdict = Verdict::Mismatch;
                    res.first_n = n;
                    res.lhs = s.at(n).str();
                    res.rhs = "0";
                    break;
                }
            }
            break;
        }
        case RecordKind::Ct: {
            long to = ranges.for_ct(r.ct->mult);
            std::vector<BigInt> cs;
            try {
                cs = ct_sequence(*r.ct, to);
            } catch (const std::exception& x) {
                set_error(res, -1, x.what());
                break;
            }
            const MemberState* rf = ref_strict[0];
            if (!rf) {
                res.verdict = Verdict::Reported;
                res.n_from = 0;
                res.n_to = to;
                std::string v;
                for (size_t i = 0; i < cs.size(); ++i) v += (i ? ", " : "") + cs[i].str();
                res.detail = "no binomial member: " + v;
                break;
            }
            Series s;
            for (auto& c : cs) s.vals.push_back(Rational(c));
            compare(res, s, rf->s);
            res.detail = "against " + rf->rec->label + (res.detail.empty() ? "" : "; " + res.detail);
            break;
        }
        case RecordKind::Closed:
            res = verify_closed_form(r, ranges);
            break;
        case RecordKind::Rec:
            res = verify_recurrence(r, ranges);
            break;
        }
        if (res.seconds == 0) res.seconds = since(t);
        out.results.push_back(std::move(res));
    }
    out.seconds = since(t0);
    return out;
}

VerificationReport verify_all(const std::vector<IdentityGroup>& corpus, const Ranges& ranges, const Filters& filters,
                              int jobs) {
    auto t0 = Clock::now();
    std::vector<const IdentityGroup*> todo;
    for (auto& g : corpus)
        if (filters.wants(g)) todo.push_back(&g);
    std::vector<VerificationReport> parts(todo.size());
    std::atomic<size_t> next{0};
    auto worker = [&] {
        for (size_t i; (i = next.fetch_add(1)) < todo.size();) parts[i] = verify_group(*todo[i], ranges, filters);
    };
    jobs = std::max(1, std::min<int>(jobs, int(todo.size())));
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    VerificationReport out;
    for (auto& p : parts) out.append(std::move(p));
    out.seconds = since(t0);
    return out;
}

namespace {

std::string clean(std::string s) {
    for (char& c : s)
        if (c == '\t' || c == '\n' || c == '\r') c = ' ';
    return s;
}

}  // namespace

std::string render_tsv(const VerificationReport& r) {
    std::ostringstream o;
    o << "item\tlabel\tkind\tstatus\tverdict\tn_from\tn_to\tfirst_n\tlhs\trhs\ttwist\tadvisory\tdetail\n";
    for (auto& x : r.results) {
        o << x.item_id << '\t' << x.label << '\t' << kind_name(x.kind) << '\t' << status_name(x.status) << '\t'
          << verdict_name(x.verdict) << '\t' << x.n_from << '\t' << x.n_to << '\t';
        if (x.first_n >= 0) o << x.first_n;
        o << '\t' << x.lhs << '\t' << x.rhs << '\t';
        if (x.twist) o << (x.twist > 0 ? "+1" : "-1");
        o << '\t' << (x.non_integral ? "non-integral" : "") << '\t' << clean(x.detail) << '\n';
    }
    return o.str();
}

std::string render_human(const VerificationReport& r, bool verbose) {
    std::ostringstream o;
    for (auto& x : r.results) {
        o << x.item_id << ' ' << x.label << "  " << kind_name(x.kind) << "  " << verdict_name(x.verdict);
        if (x.typo_suspect) o << " [typo-suspect]";
        if (x.n_to >= x.n_from) o << "  n=" << x.n_from << ".." << x.n_to;
        if (x.verdict == Verdict::Mismatch) o << "  first n=" << x.first_n << ": " << x.lhs << " vs " << x.rhs;
        if (x.verdict == Verdict::Error && x.first_n >= 0) o << "  at n=" << x.first_n;
        if (x.twist) o << "  twist " << (x.twist > 0 ? "+1" : "-1");
        if (x.non_integral) o << "  (non-integral)";
        if (!x.detail.empty()) o << "  " << x.detail;
        if (verbose) o << "  [" << x.seconds << "s]";
        o << '\n';
    }
    o << "---\n";
    for (auto& [v, c] : r.totals()) o << verdict_name(v) << ": " << c << '\n';
    o << "unexpected mismatches: " << r.unexpected_mismatches() << '\n';
    o << "unexpected errors: " << r.unexpected_errors() << '\n';
    return o.str();
}

}  // namespace cyid
