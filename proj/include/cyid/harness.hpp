#pragma once

#include "cyid/corpus.hpp"
#include "cyid/eval.hpp"

#include <map>
#include <set>
#include <string>
#include <vector>

namespace cyid {

struct Ranges {
    long single = 16;
    long dbl = 10;
    long triple = 8;
    long ct = 4;
    long ct_big = 3;  // power multiplier >= 8
    long rec = 20;
    long ghost = 12;
    long closed_single = 10;
    long closed_multi = 8;
    long conditional = 12;

    long for_depth(int depth) const { return depth <= 1 ? single : depth == 2 ? dbl : triple; }
    long for_ct(long mult) const { return mult >= 8 ? ct_big : ct; }
};

struct Filters {
    std::set<std::string> items;     // empty: all
    std::set<RecordKind> kinds;      // empty: all
    bool wants(const IdentityGroup& g) const { return items.empty() || items.count(g.item_id); }
    bool wants(RecordKind k) const { return kinds.empty() || kinds.count(k); }
};

// accepts member (or group), ghost, closed, ct, rec
RecordKind parse_kind(const std::string& s);

enum class Verdict {
    Agree,
    Mismatch,
    ZeroConfirmed,
    ClosedFormConfirmed,
    ConditionConfirmed,
    RecurrenceSatisfied,
    SkippedDivergent,
    Reported,
    Error,
};

const char* verdict_name(Verdict v);

struct RecordResult {
    std::string item_id, label;
    RecordKind kind = RecordKind::Member;
    Status status = Status::ExpectedTrue;
    bool typo_suspect = false;

    Verdict verdict = Verdict::Reported;
    long n_from = 0, n_to = -1;  // range actually checked
    long first_n = -1;           // mismatch or error position
    std::string lhs, rhs;        // values at first_n
    int twist = 0;               // recurrence: +1 or -1
    bool non_integral = false;   // advisory
    std::string detail;
    double seconds = 0;

    // counts against the exit status
    bool unexpected() const {
        return !typo_suspect && (verdict == Verdict::Mismatch || verdict == Verdict::Error);
    }
};

struct VerificationReport {
    std::vector<RecordResult> results;  // corpus order
    double seconds = 0;

    std::map<Verdict, long> totals() const;
    long unexpected_mismatches() const;
    long unexpected_errors() const;
    // 0 clean, 1 unexpected mismatch, 2 unexpected error
    int exit_code() const;
    void append(VerificationReport other);
};

// members, ghosts and ct records of one item; closed and rec records go through their own checks
VerificationReport verify_group(const IdentityGroup& g, const Ranges& ranges = {}, const Filters& filters = {});
RecordResult verify_closed_form(const FormulaRecord& rec, const Ranges& ranges = {});
RecordResult verify_recurrence(const FormulaRecord& rec, const Ranges& ranges = {});
// whole corpus; jobs > 1 runs groups on worker threads, output stays in corpus order
VerificationReport verify_all(const std::vector<IdentityGroup>& corpus, const Ranges& ranges = {},
                              const Filters& filters = {}, int jobs = 1);

std::string render_tsv(const VerificationReport& r);
std::string render_human(const VerificationReport& r, bool verbose = false);

}  // namespace cyid
