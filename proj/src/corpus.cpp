#include "cyid/corpus.hpp"

#include <cctype>
#include <fstream>
#include <regex>
#include <sstream>

namespace cyid {

const char* kind_name(RecordKind k) {
    switch (k) {
    case RecordKind::Member: return "member";
    case RecordKind::Ghost: return "ghost";
    case RecordKind::Closed: return "closed";
    case RecordKind::Ct: return "ct";
    case RecordKind::Rec: return "rec";
    }
    return "?";
}

const char* status_name(Status s) {
    switch (s) {
    case Status::ExpectedTrue: return "expected-true";
    case Status::TypoSuspect: return "typo-suspect";
    case Status::Divergent: return "divergent";
    case Status::ZeroExpected: return "zero-expected";
    case Status::Reported: return "reported";
    }
    return "?";
}

CorpusError::CorpusError(const std::string& source, int line, const std::string& msg)
    : std::runtime_error(source + ":" + std::to_string(line) + ": " + msg), line(line) {}

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace((unsigned char)s.front())) s.remove_prefix(1);
    while (!s.empty() && std::isspace((unsigned char)s.back())) s.remove_suffix(1);
    return s;
}

std::vector<std::string> words(std::string_view s) {
    std::vector<std::string> out;
    std::istringstream in{std::string(s)};
    for (std::string w; in >> w;) out.push_back(w);
    return out;
}

class Loader {
public:
    explicit Loader(const std::string& source) : source_(source) {}

    std::vector<IdentityGroup> run(std::string_view text) {
        size_t pos = 0;
        while (pos <= text.size()) {
            size_t eol = text.find('\n', pos);
            if (eol == std::string_view::npos) eol = text.size();
            ++line_;
            take(text.substr(pos, eol - pos));
            pos = eol + 1;
        }
        return std::move(groups_);
    }

private:
    [[noreturn]] void fail(const std::string& msg) const { throw CorpusError(source_, line_, msg); }

    void take(std::string_view raw) {
        auto s = trim(raw);
        if (s.empty()) {
            pending_.clear();
            return;
        }
        if (s.front() == '#') {
            pending_.emplace_back(trim(s.substr(1)));
            return;
        }
        auto sp = s.find(' ');
        std::string kw(s.substr(0, sp));
        std::string_view rest = sp == std::string_view::npos ? std::string_view() : trim(s.substr(sp));
        if (kw == "item") {
            if (rest.empty() || rest.find(' ') != std::string_view::npos) fail("item needs one id");
            IdentityGroup g;
            g.item_id = rest;
            g.line = line_;
            g.comments = std::move(pending_);
            pending_.clear();
            groups_.push_back(std::move(g));
            return;
        }
        RecordKind kind;
        if (kw == "member") kind = RecordKind::Member;
        else if (kw == "ghost") kind = RecordKind::Ghost;
        else if (kw == "closed") kind = RecordKind::Closed;
        else if (kw == "ct") kind = RecordKind::Ct;
        else if (kw == "rec") kind = RecordKind::Rec;
        else fail("unknown record kind '" + kw + "'");
        if (groups_.empty()) fail("record before any item line");
        groups_.back().records.push_back(record(kind, rest));
    }

    FormulaRecord record(RecordKind kind, std::string_view rest) {
        FormulaRecord r;
        r.kind = kind;
        r.line = line_;
        r.item_id = groups_.back().item_id;
        r.comments = std::move(pending_);
        pending_.clear();

        auto sep = rest.find(" :: ");
        if (sep == std::string_view::npos) fail("missing ' :: '");
        auto head = words(rest.substr(0, sep));
        std::string_view payload = trim(rest.substr(sep + 4));

        auto fl = payload.rfind(" flags:");
        if (fl != std::string_view::npos) {
            for (auto& f : words(payload.substr(fl + 7))) flag(r, f);
            payload = trim(payload.substr(0, fl));
        }
        r.text = payload;
        if (head.empty()) fail("missing label");
        r.label = head[0];
        bool divergent = r.status == Status::Divergent;

        if (kind == RecordKind::Ghost) {
            if (head.size() != 2) fail("ghost needs a label and a status");
            if (head[1] == "zero-expected") r.status = Status::ZeroExpected;
            else if (head[1] == "divergent") r.status = Status::Divergent;
            else if (head[1] == "reported") r.status = Status::Reported;
            else fail("unknown ghost status '" + head[1] + "'");
            divergent = r.status == Status::Divergent;
        } else if (head.size() != 1) {
            fail("unexpected text before ' :: '");
        } else if (r.typo_suspect && !divergent) {
            r.status = Status::TypoSuspect;
        }

        try {
            switch (kind) {
            case RecordKind::Member:
            case RecordKind::Ghost:
                if (!divergent) r.body = dsl(payload);
                break;
            case RecordKind::Closed:
                closed(r, payload);
                break;
            case RecordKind::Ct:
                r.ct = parse_ct_spec(payload);
                break;
            case RecordKind::Rec:
                rec(r, payload);
                break;
            }
        } catch (const ParseError& e) {
            fail(std::string("in ") + kind_name(kind) + " " + r.label + ": " + e.what());
        } catch (const DomainError& e) {
            fail(std::string("in ") + kind_name(kind) + " " + r.label + ": " + e.what());
        }
        return r;
    }

    void flag(FormulaRecord& r, const std::string& f) {
        if (f == "typo-suspect") r.typo_suspect = true;
        else if (f == "skip_singular") r.skip_singular = true;
        else if (f == "divergent") r.status = Status::Divergent;
        else if (f == "order=5") r.fifth_order = true;
        else if (f.rfind("nmin=", 0) == 0) {
            try {
                r.nmin = std::stol(f.substr(5));
            } catch (...) {
                fail("bad flag '" + f + "'");
            }
            if (r.nmin < 0) fail("bad flag '" + f + "'");
        } else {
            fail("unknown flag '" + f + "'");
        }
    }

    static ExprPtr dsl(std::string_view s) { return parse(trim(s)); }

    void closed(FormulaRecord& r, std::string_view payload) {
        auto w = payload.find(" when ");
        if (w != std::string_view::npos) {
            static const std::regex cond_re(R"(^n\s*%\s*(\d+)\s*==\s*(\d+)(?:\s+else\s+(.+))?$)");
            std::string c(trim(payload.substr(w + 6)));
            std::smatch m;
            if (!std::regex_match(c, m, cond_re)) fail("bad condition '" + c + "'");
            Condition cond;
            cond.q = std::stol(m[1]);
            cond.r = std::stol(m[2]);
            if (cond.q < 1 || cond.r >= cond.q) fail("bad condition '" + c + "'");
            cond.otherwise = m[3].matched ? dsl(m[3].str()) : make_int(BigInt(0));
            r.cond = cond;
            payload = trim(payload.substr(0, w));
        }
        auto eq = payload.find(" == ");
        if (eq == std::string_view::npos || payload.find(" == ", eq + 1) != std::string_view::npos)
            fail("closed form needs exactly one ' == '");
        r.lhs = dsl(payload.substr(0, eq));
        r.rhs = dsl(payload.substr(eq + 4));
    }

    void rec(FormulaRecord& r, std::string_view payload) {
        static const std::regex seq_re(R"(^seq\s*=\s*harmonic\(\s*(\d+)\s*,\s*(\d+)\s*\)$)");
        static const std::regex twist_re(R"(^twist\s*=\s*(\S+)$)");
        std::vector<std::string_view> parts;
        size_t pos = 0;
        for (;;) {
            auto semi = payload.find(';', pos);
            parts.push_back(trim(payload.substr(pos, semi == std::string_view::npos ? semi : semi - pos)));
            if (semi == std::string_view::npos) break;
            pos = semi + 1;
        }
        if (parts.size() < 2 || parts.size() > 3) fail("rec needs '<operator> ; seq = harmonic(b,c) [; twist = ...]'");
        r.op = parse_theta(parts[0]);
        std::smatch m;
        std::string seq(parts[1]);
        if (!std::regex_match(seq, m, seq_re)) fail("bad sequence '" + seq + "'");
        r.b = std::stol(m[1]);
        r.c = std::stol(m[2]);
        if (r.b < 1 || r.c < 1) fail("harmonic(b,c) needs b, c >= 1");
        if (parts.size() == 3) {
            std::string tw(parts[2]);
            if (!std::regex_match(tw, m, twist_re)) fail("bad twist '" + tw + "'");
            r.twist = parse_twist(m[1].str());
        }
    }

    std::string source_;
    int line_ = 0;
    std::vector<std::string> pending_;
    std::vector<IdentityGroup> groups_;
};

}  // namespace

std::vector<IdentityGroup> parse_corpus(std::string_view text, const std::string& source) {
    return Loader(source).run(text);
}

std::vector<IdentityGroup> load_corpus(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw CorpusError(path, 0, "cannot open corpus file");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_corpus(ss.str(), path);
}

}  // namespace cyid
