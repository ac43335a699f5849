#pragma once

#include "cyid/dsl.hpp"
#include "cyid/laurent.hpp"
#include "cyid/theta.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace cyid {

enum class RecordKind { Member, Ghost, Closed, Ct, Rec };

enum class Status { ExpectedTrue, TypoSuspect, Divergent, ZeroExpected, Reported };

const char* kind_name(RecordKind k);
const char* status_name(Status s);

// RHS holds when n % q == r; otherwise the left side must equal `otherwise`
struct Condition {
    long q = 1, r = 0;
    ExprPtr otherwise;  // literal 0 when not written
};

struct FormulaRecord {
    std::string item_id;
    std::string label;
    RecordKind kind = RecordKind::Member;
    Status status = Status::ExpectedTrue;
    int line = 0;
    std::string text;                   // payload as written
    std::vector<std::string> comments;  // '#' lines right above the record

    bool typo_suspect = false;
    bool skip_singular = false;
    bool fifth_order = false;
    long nmin = 0;

    ExprPtr body;  // member, evaluable ghost
    ExprPtr lhs, rhs;
    std::optional<Condition> cond;
    std::optional<CtSpec> ct;
    std::optional<ThetaOperator> op;
    long b = 0, c = 0;
    Twist twist = Twist::Auto;

    bool evaluable() const { return body != nullptr; }
};

struct IdentityGroup {
    std::string item_id;
    int line = 0;
    std::vector<std::string> comments;
    std::vector<FormulaRecord> records;  // file order
};

struct CorpusError : std::runtime_error {
    CorpusError(const std::string& source, int line, const std::string& msg);
    int line;
};

std::vector<IdentityGroup> parse_corpus(std::string_view text, const std::string& source = "<corpus>");
std::vector<IdentityGroup> load_corpus(const std::string& path);

}  // namespace cyid
