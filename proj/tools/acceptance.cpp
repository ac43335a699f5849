// Acceptance run: one PASS/FAIL line per criterion. All comparisons are exact.
// Exit status is 0 iff the failing sub-checks are exactly the known errata below.
#include "cyid/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <thread>

using namespace cyid;

namespace {

// Printed formulas that do not hold as written. Each one is flagged typo-suspect in the corpus.
const std::set<std::string> kKnownErrata = {
    "2:other (xv)",         "2:other (xxii)",      "2:other (xxxviii)",  "2:other (xxxxi)",     "2:other (xxxxvii)",
    "2:other (Lii)",        "2:other (Liii)",      "2:other (Lx)",       "2:other (Lxii)",      "2:other (Lxviii)",
    "2:other (Lxxx)",       "2:other (Lxxxviii)",  "2:other (Lxxxxiii)", "2:other (Lxxxxvii)",  "2:other (Cv)",
    "2:other (Cviii)",      "2:other (Cxviii)",    "2:other (Cxix)",     "2:other (Cxxiv)[k=1]", "2:other (Cxxiv)[k=2]",
    "2:other (Cxxiv)[k=3]", "2:other (Cxxix)",     "2:other (Cxxxiv)",   "2:other (Cxxxv)",     "2:other (Cxxxvii)",
    "3:intro o3",           "3:parity (hh)",       "3:parity (iib)",     "3:parity (kk)",       "6:ct 185",
    "7:r1_4",               "7:r2_3",
};

// Spec limits; the n ranges are the criteria's own.
constexpr long kClosedMulti = 8, kClosedSingle = 10, kConditional = 12, kSimplePair = 20, kGhost = 12, kRec = 20;
constexpr double kItem22Seconds = 5.0, kCt16Seconds = 10.0;

struct Criterion {
    int id;
    std::string name;
    std::vector<std::string> failing;
    std::vector<std::string> notes;
};

int jobs() { return int(std::max(1u, std::thread::hardware_concurrency())); }

double since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

const IdentityGroup* find_item(const std::vector<IdentityGroup>& corpus, const std::string& id) {
    for (auto& g : corpus)
        if (g.item_id == id) return &g;
    return nullptr;
}

const FormulaRecord* reference_member(const IdentityGroup& g) {
    for (auto& r : g.records)
        if (r.kind == RecordKind::Member && !r.typo_suspect && r.evaluable() && !r.fifth_order) return &r;
    return nullptr;
}

std::string values(const std::vector<Rational>& v) {
    std::string s;
    for (auto& x : v) s += (s.empty() ? "" : ", ") + x.str();
    return s;
}

Criterion group_equality(const std::vector<IdentityGroup>& corpus) {
    Criterion c{1, "group equality", {}, {}};
    auto t0 = std::chrono::steady_clock::now();
    auto rep = verify_all(corpus, {}, Filters{{}, {RecordKind::Member}}, jobs());
    long groups = 0, compared = 0, reported = 0;
    std::map<std::string, int> evaluable;
    for (auto& g : corpus)
        for (auto& r : g.records) evaluable[g.item_id] += r.kind == RecordKind::Member && r.evaluable();
    for (auto& [id, k] : evaluable) groups += k >= 2;
    for (auto& r : rep.results) {
        if (evaluable[r.item_id] < 2) continue;
        if (r.typo_suspect) {
            ++reported;
            continue;
        }
        if (r.verdict == Verdict::Agree) ++compared;
        else if (r.verdict == Verdict::Mismatch || r.verdict == Verdict::Error)
            c.failing.push_back("1:" + r.item_id + " " + r.label + " " + verdict_name(r.verdict) + " at n=" +
                                std::to_string(r.first_n));
    }
    c.notes.push_back(std::to_string(groups) + " groups, " + std::to_string(compared) + " members agree, " +
                      std::to_string(reported) + " typo-suspect reported, " + std::to_string(since(t0)) + "s");
    return c;
}

Criterion closed_forms(const std::vector<IdentityGroup>& corpus) {
    Criterion c{2, "closed forms", {}, {}};
    const IdentityGroup* g = find_item(corpus, "other");
    if (!g) {
        c.failing.push_back("2:section missing");
        return c;
    }
    long ok = 0;
    for (auto& r : g->records) {
        if (r.kind != RecordKind::Closed) continue;
        auto res = verify_closed_form(r);
        long need = r.cond ? kConditional : std::max(sum_depth(*r.lhs), sum_depth(*r.rhs)) <= 1 ? kClosedSingle : kClosedMulti;
        bool good = (res.verdict == Verdict::ClosedFormConfirmed || res.verdict == Verdict::ConditionConfirmed) &&
                    res.n_to >= need;
        if (good) ++ok;
        else c.failing.push_back("2:other " + r.label);
    }
    c.notes.push_back(std::to_string(ok) + " confirmed");
    return c;
}

Criterion conditionals(const std::vector<IdentityGroup>& corpus) {
    Criterion c{3, "conditionals", {}, {}};
    long ok = 0;
    for (const char* id : {"intro", "parity"}) {
        const IdentityGroup* g = find_item(corpus, id);
        if (!g) {
            c.failing.push_back(std::string("3:") + id + " missing");
            continue;
        }
        for (auto& r : g->records) {
            if (r.kind != RecordKind::Closed || !r.cond) continue;
            auto res = verify_closed_form(r);
            if (res.verdict == Verdict::ConditionConfirmed && res.n_to >= kConditional) ++ok;
            else c.failing.push_back(std::string("3:") + id + " " + r.label);
        }
    }
    c.notes.push_back(std::to_string(ok) + " confirmed");
    return c;
}

Criterion simple_pair(const std::vector<IdentityGroup>& corpus) {
    Criterion c{4, "simple-identity pair", {}, {}};
    const IdentityGroup* g = find_item(corpus, "intro");
    const FormulaRecord *s1 = nullptr, *s2 = nullptr, *w = nullptr;
    if (g)
        for (auto& r : g->records) {
            if (r.label == "s1") s1 = &r;
            if (r.label == "s2") s2 = &r;
            if (r.label == "w") w = &r;
        }
    if (!s1 || !s2 || !w) {
        c.failing.push_back("4:records missing");
        return c;
    }
    try {
        auto a = eval_sequence(*s1->body, kSimplePair);
        auto b = eval_sequence(*s2->body, kSimplePair);
        // the weighted form is 0/0 at n = 0
        auto d = eval_sequence(*w->body, kSimplePair, {true}, 1);
        if (a != b) c.failing.push_back("4:s1 vs s2");
        if (!std::equal(d.begin(), d.end(), a.begin() + 1)) c.failing.push_back("4:w vs s1");
        c.notes.push_back("n<=20: " + values({a.begin(), a.begin() + 6}) + ", ...");
    } catch (const std::exception& e) {
        c.failing.push_back(std::string("4:error ") + e.what());
    }
    return c;
}

Criterion ghost_zeros(const std::vector<IdentityGroup>& corpus) {
    Criterion c{5, "ghost zeros", {}, {}};
    const std::set<std::string> items = {"21", "26", "32", "59", "73", "99", "198", "210", "212"};
    std::set<std::string> seen;
    long skipped = 0;
    for (auto& g : corpus) {
        for (auto& r : g.records) {
            if (r.kind != RecordKind::Ghost) continue;
            if (r.status == Status::ZeroExpected) {
                seen.insert(g.item_id);
                if (!items.count(g.item_id)) c.failing.push_back("5:unlisted zero ghost " + g.item_id + " " + r.label);
                try {
                    for (auto& v : eval_sequence(*r.body, kGhost, {r.skip_singular}, r.nmin))
                        if (!v.is_zero()) {
                            c.failing.push_back("5:" + g.item_id + " " + r.label + " nonzero");
                            break;
                        }
                } catch (const std::exception&) {
                    c.failing.push_back("5:" + g.item_id + " " + r.label + " error");
                }
            } else if (r.status == Status::Divergent) {
                if (r.evaluable()) c.failing.push_back("5:" + g.item_id + " " + r.label + " divergent but parsed");
            }
        }
        // divergent ghosts come back skipped without being evaluated
        for (auto& res : verify_group(g, {}, Filters{{}, {RecordKind::Ghost}}).results) {
            if (res.status != Status::Divergent) continue;
            if (res.verdict == Verdict::SkippedDivergent) ++skipped;
            else c.failing.push_back("5:" + res.item_id + " " + res.label + " not skipped");
        }
    }
    for (auto& id : items)
        if (!seen.count(id)) c.failing.push_back("5:no zero ghost in item " + id);
    c.notes.push_back(std::to_string(seen.size()) + " items zero for n<=12, " + std::to_string(skipped) +
                      " divergent skipped");
    return c;
}

Criterion ct_cross(const std::vector<IdentityGroup>& corpus) {
    Criterion c{6, "ct cross-checks", {}, {}};
    for (const char* id : {"16", "25", "26", "29", "42", "185", "209", "214", "218", "287", "308", "309"}) {
        const IdentityGroup* g = find_item(corpus, id);
        const FormulaRecord* ct = nullptr;
        if (g)
            for (auto& r : g->records)
                if (r.ct) ct = &r;
        const FormulaRecord* ref = g ? reference_member(*g) : nullptr;
        if (!ct || !ref) {
            c.failing.push_back(std::string("6:ct ") + id + " missing");
            continue;
        }
        long n_max = ct->ct->mult >= 3 ? 3 : 4;
        try {
            auto lhs = ct_sequence(*ct->ct, n_max);
            auto rhs = eval_sequence(*ref->body, n_max);
            bool same = true;
            for (long n = 0; n <= n_max; ++n) same = same && Rational(lhs[n]) == rhs[n];
            if (!same) c.failing.push_back(std::string("6:ct ") + id);
        } catch (const std::exception&) {
            c.failing.push_back(std::string("6:ct ") + id + " error");
        }
    }
    // balanced exponents: CT of (x+y+z+t+1/(xyzt))^(5n) is the multinomial (5n; n,n,n,n,n)
    const IdentityGroup* one = find_item(corpus, "1");
    if (!one || one->records.empty() || !one->records[0].ct) {
        c.failing.push_back("6:ct 1 missing");
    } else {
        auto seq = ct_sequence(*one->records[0].ct, 3);
        for (long n = 0; n <= 3; ++n)
            if (!(seq[n] == multinomial(5 * n, {n, n, n, n, n}))) c.failing.push_back("6:ct 1 at n=" + std::to_string(n));
    }
    return c;
}

Criterion recurrences(const std::vector<IdentityGroup>& corpus) {
    Criterion c{7, "recurrences", {}, {}};
    const IdentityGroup* g = find_item(corpus, "table");
    if (!g) {
        c.failing.push_back("7:table missing");
        return c;
    }
    for (auto& r : g->records) {
        if (r.kind != RecordKind::Rec) continue;
        auto seq = harmonic_cy_coefficients(r.b, r.c, kRec);
        auto rep = check_twisted(to_recurrence(*r.op), seq, Twist::Auto);
        // (1,4) is the case the table marks as needing exactly one sign
        bool ok = r.b == 1 && r.c == 4 ? rep.exactly_one() : rep.held() != 0;
        std::string twist = rep.plus->satisfied() && rep.minus->satisfied() ? "both"
                            : rep.plus->satisfied()                          ? "+1"
                            : rep.minus->satisfied()                         ? "-1"
                                                                             : "none";
        c.notes.push_back(r.label + " twist " + twist);
        if (!ok) c.failing.push_back("7:" + r.label);
    }
    if (!(harmonic_cy_coefficients(1, 5, 1)[1] == Rational(-5))) c.failing.push_back("7:anchor (1,5)");
    if (!(harmonic_cy_coefficients(2, 3, 1)[1] == Rational(0))) c.failing.push_back("7:anchor (2,3)");
    return c;
}

Criterion properties(const std::vector<IdentityGroup>& corpus) {
    Criterion c{8, "property suites", {}, {}};
    auto q = [](long p, long d) { return Rational(BigInt(p), BigInt(d)); };
    for (auto& a : {q(-1, 6), q(-5, 6), q(1, 2), q(7, 3), q(-4, 1), q(9, 1)})
        for (long k = 1; k <= 12; ++k)
            if (!(binom(a, k) == binom(a - Rational(1), k - 1) + binom(a - Rational(1), k))) {
                c.failing.push_back("8:pascal " + a.str());
                break;
            }
    for (long n = 0; n <= 40; ++n)
        for (long k = 0; k <= n; ++k)
            if (!(binom(n, k) == binom(n, n - k))) c.failing.push_back("8:symmetry");
    for (long k = 1; k <= 300; ++k)
        if (!(harmonic(k) - harmonic(k - 1) == q(1, k))) c.failing.push_back("8:harmonic difference");

    long formulas = 0, round = 0, cts = 0;
    for (auto& g : corpus)
        for (auto& r : g.records) {
            for (auto& e : {r.body, r.lhs, r.rhs, r.cond ? r.cond->otherwise : nullptr}) {
                if (!e) continue;
                ++formulas;
                try {
                    if (equal(*parse(render(*e)), *e)) ++round;
                    else c.failing.push_back("8:round trip line " + std::to_string(r.line));
                } catch (const ParseError&) {
                    c.failing.push_back("8:round trip line " + std::to_string(r.line));
                }
            }
            if (r.ct) {
                ++cts;
                if (ct_sequence(*r.ct, 2, true) != ct_sequence(*r.ct, 2, false))
                    c.failing.push_back("8:pruning " + r.item_id);
            }
        }
    std::string first = render_tsv(verify_all(corpus, {}, {}, jobs()));
    std::string second = render_tsv(verify_all(corpus, {}, {}, jobs()));
    if (first != second) c.failing.push_back("8:determinism");
    c.notes.push_back(std::to_string(round) + "/" + std::to_string(formulas) + " formulas round-trip, " +
                      std::to_string(cts) + " ct specs prune-equal");
    return c;
}

Criterion performance(const std::vector<IdentityGroup>& corpus) {
    Criterion c{9, "performance smoke", {}, {}};
    const IdentityGroup* i22 = find_item(corpus, "22");
    const IdentityGroup* i16 = find_item(corpus, "16");
    const FormulaRecord* single = i22 ? reference_member(*i22) : nullptr;
    const FormulaRecord* ct = nullptr;
    if (i16)
        for (auto& r : i16->records)
            if (r.ct) ct = &r;
    if (!single || sum_depth(*single->body) != 1 || !ct) {
        c.failing.push_back("9:records missing");
        return c;
    }
    auto t0 = std::chrono::steady_clock::now();
    auto seq = eval_sequence(*single->body, 300);
    double s1 = since(t0);
    t0 = std::chrono::steady_clock::now();
    BigInt v = ct_power(*ct->ct, 4);
    double s2 = since(t0);
    if (s1 >= kItem22Seconds) c.failing.push_back("9:item 22 to n=300");
    if (s2 >= kCt16Seconds) c.failing.push_back("9:ct 16 at n=4");
    if (!(v == BigInt(190120))) c.failing.push_back("9:ct 16 value");
    char buf[96];
    std::snprintf(buf, sizeof buf, "item 22 n<=300 %.3fs, ct 16 n=4 %.3fs", s1, s2);
    c.notes.push_back(buf);
    return c;
}

}  // namespace

int main(int argc, char** argv) {
    std::string path = argc > 1 ? argv[1] : CYID_SOURCE_CORPUS;
    std::vector<IdentityGroup> corpus;
    try {
        corpus = load_corpus(path);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    std::vector<std::function<Criterion(const std::vector<IdentityGroup>&)>> runs = {
        group_equality, closed_forms, conditionals, simple_pair, ghost_zeros,
        ct_cross,       recurrences,  properties,   performance};
    std::set<std::string> failing;
    for (auto& run : runs) {
        Criterion c = run(corpus);
        std::cout << (c.failing.empty() ? "PASS" : "FAIL") << "  " << c.id << ". " << c.name;
        for (auto& n : c.notes) std::cout << "  [" << n << "]";
        std::cout << "\n";
        for (auto& f : c.failing) {
            std::cout << "      failing " << f.substr(f.find(':') + 1) << (kKnownErrata.count(f) ? " (known erratum)" : "")
                      << "\n";
            failing.insert(f);
        }
        std::cout.flush();
    }

    std::vector<std::string> unexpected, fixed;
    for (auto& f : failing)
        if (!kKnownErrata.count(f)) unexpected.push_back(f);
    for (auto& f : kKnownErrata)
        if (!failing.count(f)) fixed.push_back(f);
    for (auto& f : unexpected) std::cout << "unexpected failure: " << f << "\n";
    for (auto& f : fixed) std::cout << "known erratum now passes: " << f << "\n";
    std::cout << failing.size() << " failing sub-checks, " << kKnownErrata.size() << " known errata, "
              << (unexpected.empty() && fixed.empty() ? "matches" : "does not match") << "\n";
    return unexpected.empty() && fixed.empty() ? 0 : 1;
}
