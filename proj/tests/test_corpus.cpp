#include "cyid/harness.hpp"

#include <doctest.h>

#include <algorithm>

using namespace cyid;

namespace {

const std::vector<IdentityGroup>& corpus() {
    static const auto c = load_corpus(CYID_CORPUS);
    return c;
}

const IdentityGroup& item(const std::string& id) {
    for (auto& g : corpus())
        if (g.item_id == id) return g;
    throw std::runtime_error("no item " + id);
}

const FormulaRecord& record(const std::string& id, const std::string& label) {
    for (auto& r : item(id).records)
        if (r.label == label) return r;
    throw std::runtime_error("no record " + label);
}

const RecordResult& result(const VerificationReport& rep, const std::string& label) {
    for (auto& r : rep.results)
        if (r.label == label) return r;
    throw std::runtime_error("no result " + label);
}

const char* kFixture = R"(# a fixture
item 15
member m1 :: fact(3 * n) / fact(n)^3 * sum(k=0..n, binom(n, k)^3)
member m2 :: binom(3 * n, n) * sum(k=0..n, binom(n, k) * binom(n + k, n) * binom(2 * n - 2 * k, n) * binom(2 * n, n + k))
ghost g1 zero-expected :: sum(k=0..n, (n - 2 * k) * binom(n, k)^4)
ghost g2 divergent :: "A_n"=\sum_k k^{-2}

item b
member m1 :: binom(2 * n, n)
member m2 :: binom(2 * n, n) + n * (n - 1) * (n - 2)
ct c1 :: x + 1/x ^ 2n
)";

}  // namespace

TEST_CASE("corpus shape") {
    long items = 0, members = 0, ghosts = 0, closed = 0, cts = 0, recs = 0, typo = 0;
    for (auto& g : corpus()) {
        ++items;
        for (auto& r : g.records) {
            members += r.kind == RecordKind::Member;
            ghosts += r.kind == RecordKind::Ghost;
            closed += r.kind == RecordKind::Closed;
            cts += r.kind == RecordKind::Ct;
            recs += r.kind == RecordKind::Rec;
            typo += r.typo_suspect;
            CHECK(r.item_id == g.item_id);
            CHECK(r.typo_suspect == (r.status == Status::TypoSuspect));
            if (r.status == Status::Divergent) CHECK_FALSE(r.evaluable());
        }
    }
    CHECK(items == 112);
    CHECK(members == 777);
    CHECK(ghosts == 42);
    CHECK(closed == 154);
    CHECK(cts == 29);
    CHECK(recs == 4);
    CHECK(typo == 214);

    auto& w = record("intro", "w");
    CHECK(w.skip_singular);
    CHECK(w.nmin == 1);
    CHECK(w.comments.size() == 1);
}

TEST_CASE("parser errors carry the line") {
    CHECK(parse_corpus("").empty());
    CHECK(parse_corpus("# only a comment\n\n").empty());
    try {
        parse_corpus("item a\nmember m1 :: n\nwidget w :: n\n", "bad.cyid");
        FAIL("expected a corpus error");
    } catch (const CorpusError& e) {
        CHECK(e.line == 3);
        CHECK(std::string(e.what()).find("bad.cyid") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_corpus("member m1 :: n\n"), CorpusError);
    CHECK_THROWS_AS(parse_corpus("item a\nmember m1 :: binom(n\n"), CorpusError);
    CHECK_THROWS_AS(parse_corpus("item a\nmember m1 :: n  flags: sparkly\n"), CorpusError);
    CHECK_THROWS_AS(parse_corpus("item a\nclosed c :: n\n"), CorpusError);
    CHECK_THROWS_AS(parse_corpus("item a\nghost g maybe :: n\n"), CorpusError);
    CHECK_THROWS_AS(parse_corpus("item a\nrec r :: T - z ; seq = harmonic(1)\n"), CorpusError);
}

TEST_CASE("members of one item agree") {
    auto rep = verify_group(item("15"));
    CHECK(result(rep, "m1").verdict == Verdict::Agree);
    CHECK(result(rep, "m1").detail == "reference");
    CHECK(result(rep, "m2").verdict == Verdict::Agree);
    CHECK(result(rep, "m2").n_to == 16);
    CHECK(result(rep, "m6").n_to == 10);
    auto& m3 = result(rep, "m3");
    CHECK(m3.verdict == Verdict::Mismatch);
    CHECK(m3.typo_suspect);
    CHECK(m3.first_n == 2);
    CHECK(m3.lhs == "840");
    CHECK(m3.rhs == "900");
    CHECK_FALSE(m3.unexpected());
    CHECK(rep.exit_code() == 0);
}

TEST_CASE("ghosts") {
    auto rep = verify_group(item("26"));
    CHECK(result(rep, "g45").verdict == Verdict::ZeroConfirmed);
    CHECK(result(rep, "g45").n_to == 12);
    auto all = verify_all(corpus(), {}, Filters{{}, {RecordKind::Ghost}});
    auto t = all.totals();
    CHECK(t[Verdict::ZeroConfirmed] == 9);
    CHECK(t[Verdict::SkippedDivergent] == 29);
    for (auto& r : all.results) CHECK(r.kind == RecordKind::Ghost);
}

TEST_CASE("a corrupted member mismatches at n = 1") {
    auto groups = parse_corpus(kFixture, "fixture");
    REQUIRE(groups.size() == 2);
    auto rep = verify_all(groups);
    CHECK(result(rep, "g1").verdict == Verdict::ZeroConfirmed);
    CHECK(result(rep, "g2").verdict == Verdict::SkippedDivergent);
    CHECK(result(rep, "c1").verdict == Verdict::Agree);
    // n(n-1)(n-2) vanishes for n <= 2
    auto& bad = rep.results[std::find_if(rep.results.begin(), rep.results.end(),
                                         [](auto& r) { return r.item_id == "b" && r.label == "m2"; }) -
                            rep.results.begin()];
    CHECK(bad.verdict == Verdict::Mismatch);
    CHECK(bad.first_n == 3);
    CHECK(rep.exit_code() == 1);

    std::string text = kFixture;
    text.replace(text.find("binom(n, k)^3)"), 14, "binom(n, k)^3 + n)");
    auto rep2 = verify_all(parse_corpus(text));
    CHECK(result(rep2, "m2").verdict == Verdict::Mismatch);
    CHECK(result(rep2, "m2").first_n == 1);
}

TEST_CASE("unexpected errors dominate the exit status") {
    auto rep = verify_all(parse_corpus("item e\nmember m1 :: binom(2 * n, n)\nmember m2 :: 1 / (n - 2)\n"));
    CHECK(rep.results[1].verdict == Verdict::Error);
    CHECK(rep.results[1].first_n == 2);
    CHECK(rep.unexpected_errors() == 1);
    CHECK(rep.exit_code() == 2);
    auto quiet = verify_all(parse_corpus("item e\nmember m1 :: binom(2 * n, n)\nmember m2 :: 1 / (n - 2)  flags: typo-suspect\n"));
    CHECK(quiet.exit_code() == 0);
}

TEST_CASE("closed forms") {
    auto i = verify_closed_form(record("other", "(i)"));
    CHECK(i.verdict == Verdict::ClosedFormConfirmed);
    CHECK(i.n_to == 8);
    auto cc = verify_closed_form(record("parity", "(cc)"));
    CHECK(cc.verdict == Verdict::ConditionConfirmed);
    CHECK(cc.n_to == 12);
    auto xv = verify_closed_form(record("other", "(xv)"));
    CHECK(xv.verdict == Verdict::Mismatch);
    CHECK(xv.first_n == 1);
    CHECK(xv.lhs == "4");
    CHECK(xv.rhs == "-1");
    CHECK_FALSE(xv.unexpected());
}

TEST_CASE("recurrence records") {
    auto r15 = verify_recurrence(record("table", "r1_5"));
    CHECK(r15.verdict == Verdict::RecurrenceSatisfied);
    CHECK(r15.twist == 1);
    CHECK(r15.n_to == 20);
    auto r24 = verify_recurrence(record("table", "r2_4"));
    CHECK(r24.verdict == Verdict::RecurrenceSatisfied);
    CHECK(r24.twist == -1);
    auto r14 = verify_recurrence(record("table", "r1_4"));
    CHECK(r14.verdict == Verdict::Mismatch);
    CHECK(r14.typo_suspect);
}

TEST_CASE("filters") {
    Filters f;
    f.items = {"15", "16"};
    auto rep = verify_all(corpus(), {}, f);
    for (auto& r : rep.results) CHECK((r.item_id == "15" || r.item_id == "16"));
    CHECK(rep.results.size() == item("15").records.size() + item("16").records.size());
    CHECK(parse_kind("group") == RecordKind::Member);
    CHECK_THROWS(parse_kind("widget"));
}

TEST_CASE("full run is deterministic and accounts for every record") {
    auto a = verify_all(corpus(), {}, {}, 1);
    auto b = verify_all(corpus(), {}, {}, 4);
    CHECK(render_tsv(a) == render_tsv(b));
    long records = 0;
    for (auto& g : corpus()) records += long(g.records.size());
    CHECK(long(a.results.size()) == records);
    auto t = a.totals();
    long sum = 0;
    for (auto& [v, c] : t) sum += c;
    CHECK(sum == records);
    CHECK(a.exit_code() == 0);
    CHECK(t[Verdict::Error] == 8);
    CHECK(t[Verdict::SkippedDivergent] == 31);
    for (auto& r : a.results) {
        if (r.status == Status::Divergent) CHECK(r.verdict == Verdict::SkippedDivergent);
        if (r.verdict == Verdict::Mismatch || r.verdict == Verdict::Error) CHECK(r.typo_suspect);
    }
}

TEST_CASE("widening the range never turns a mismatch into agreement") {
    Ranges small;
    small.single = small.dbl = small.triple = 5;
    Ranges big;
    big.single = big.dbl = big.triple = 8;
    for (const char* id : {"15", "16", "22", "24"}) {
        auto a = verify_group(item(id), small), b = verify_group(item(id), big);
        REQUIRE(a.results.size() == b.results.size());
        for (size_t k = 0; k < a.results.size(); ++k) {
            if (a.results[k].kind != RecordKind::Member) continue;
            if (a.results[k].verdict == Verdict::Mismatch) {
                CHECK(b.results[k].verdict == Verdict::Mismatch);
                CHECK(b.results[k].first_n == a.results[k].first_n);
            }
        }
    }
}
