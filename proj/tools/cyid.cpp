#include "cyid/harness.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <sstream>

#ifndef CYID_SOURCE_CORPUS
#define CYID_SOURCE_CORPUS "corpus/paper.cyid"
#endif

namespace {

using namespace cyid;

std::string default_corpus() {
    const char* local = "corpus/paper.cyid";
    if (std::filesystem::exists(local)) return local;
    return CYID_SOURCE_CORPUS;
}

std::vector<std::string> split_commas(const std::vector<std::string>& in) {
    std::vector<std::string> out;
    for (auto& s : in) {
        std::stringstream ss(s);
        for (std::string w; std::getline(ss, w, ',');)
            if (!w.empty()) out.push_back(w);
    }
    return out;
}

int cmd_eval(const std::string& text, long n, long nmin, long nmax, bool skip) {
    ExprPtr e = parse(text);
    for (char v : free_vars(*e))
        if (v != 'n') throw EvalError(std::string("free variable '") + v + "' (only n may be free)");
    if (n >= 0) nmin = nmax = n;
    EvalOptions opts{skip};
    auto vals = eval_sequence(*e, nmax, opts, nmin);
    for (long i = nmin; i <= nmax; ++i) std::cout << i << '\t' << vals[size_t(i - nmin)].str() << '\n';
    return 0;
}

int cmd_ct(const std::string& text, long mult, long nmax, bool no_prune) {
    CtSpec spec{parse_laurent(text), mult};
    for (long n = 0; n <= nmax; ++n) std::cout << n << '\t' << ct_power(spec, n, !no_prune).str() << '\n';
    return 0;
}

int cmd_rec(const std::string& text, long b, long c, long nmax, const std::string& twist, const std::string& format) {
    auto rec = to_recurrence(parse_theta(text));
    auto seq = harmonic_cy_coefficients(b, c, nmax);
    auto rep = check_twisted(rec, seq, parse_twist(twist));
    auto first = [](const std::optional<CheckReport>& r) -> std::string {
        if (!r) return "";
        if (r->satisfied()) return "ok";
        return std::to_string(r->failures.front().m) + ":" + r->failures.front().residual.str();
    };
    int held = rep.held();
    if (format == "tsv") {
        std::cout << "b\tc\tn_max\tverdict\ttwist\tplus\tminus\n";
        std::cout << b << '\t' << c << '\t' << nmax << '\t' << (held ? "satisfied" : "failed") << '\t'
                  << (held > 0 ? "+1" : held < 0 ? "-1" : "") << '\t' << first(rep.plus) << '\t' << first(rep.minus)
                  << '\n';
    } else {
        std::cout << "recurrence: " << rec.str() << '\n';
        if (held) {
            std::cout << "satisfied for n <= " << nmax << ", twist " << (held > 0 ? "+1" : "-1");
            if (rep.plus && rep.minus) std::cout << (rep.exactly_one() ? " (exactly one twist holds)" : " (both twists hold)");
            std::cout << '\n';
        } else {
            for (auto* r : {&rep.plus, &rep.minus}) {
                if (!*r) continue;
                auto& f = (*r)->failures.front();
                std::cout << "twist " << (r == &rep.plus ? "+1" : "-1") << ": first failure at m=" << f.m
                          << ", residual " << f.residual.str() << '\n';
            }
            std::cout << "failed\n";
        }
    }
    return held ? 0 : 1;
}

int cmd_list(const std::string& path, const std::string& format) {
    auto corpus = load_corpus(path);
    std::map<RecordKind, long> total;
    long typo = 0, groups = 0;
    if (format == "tsv") std::cout << "item\tmember\tghost\tclosed\tct\trec\ttypo_suspect\n";
    for (auto& g : corpus) {
        std::map<RecordKind, long> k;
        long t = 0;
        for (auto& r : g.records) {
            ++k[r.kind];
            t += r.typo_suspect;
        }
        for (auto& [kind, c] : k) total[kind] += c;
        typo += t;
        ++groups;
        if (format == "tsv")
            std::cout << g.item_id << '\t' << k[RecordKind::Member] << '\t' << k[RecordKind::Ghost] << '\t'
                      << k[RecordKind::Closed] << '\t' << k[RecordKind::Ct] << '\t' << k[RecordKind::Rec] << '\t' << t
                      << '\n';
        else {
            std::cout << "item " << g.item_id << ':';
            for (auto& [kind, c] : k) std::cout << ' ' << c << ' ' << kind_name(kind);
            if (t) std::cout << " (" << t << " typo-suspect)";
            std::cout << '\n';
        }
    }
    if (format != "tsv") {
        std::cout << "---\n" << groups << " items";
        for (auto& [kind, c] : total) std::cout << ", " << c << ' ' << kind_name(kind);
        std::cout << ", " << typo << " typo-suspect\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact verification of binomial-sum, constant-term and recurrence identities"};
    app.require_subcommand(1);

    std::string text, format = "human", twist = "auto", corpus = default_corpus();
    long n = -1, nmin = 0, nmax = -1, mult = 1, b = 1, c = 1;
    bool skip = false, no_prune = false, verbose = false;
    int jobs = 1;
    std::vector<std::string> items, kinds;
    Ranges ranges;

    auto* ev = app.add_subcommand("eval", "Evaluate a DSL expression in n");
    ev->add_option("expr", text, "DSL expression")->required();
    ev->add_option("--n", n, "single n")->check(CLI::NonNegativeNumber);
    ev->add_option("--nmin", nmin, "first n (default 0)")->check(CLI::NonNegativeNumber);
    ev->add_option("--nmax", nmax, "last n (default 10)")->check(CLI::NonNegativeNumber);
    ev->add_flag("--skip-singular", skip, "singular summands contribute 0");

    auto* ct = app.add_subcommand("ct", "Constant terms of P^(M*n)");
    ct->add_option("poly", text, "Laurent polynomial in x, y, z, t")->required();
    ct->add_option("--mult", mult, "power multiplier M")->required()->check(CLI::PositiveNumber);
    ct->add_option("--nmax", nmax, "last n (default 4)")->check(CLI::NonNegativeNumber);
    ct->add_flag("--no-prune", no_prune, "disable the reachability pruning");

    auto* vf = app.add_subcommand("verify", "Verify the corpus");
    vf->add_option("--corpus", corpus, "corpus file");
    vf->add_option("--items", items, "comma separated item ids");
    vf->add_option("--kind", kinds, "member, ghost, closed, ct, rec (comma separated)");
    vf->add_option("--nmax-single", ranges.single)->check(CLI::NonNegativeNumber);
    vf->add_option("--nmax-double", ranges.dbl)->check(CLI::NonNegativeNumber);
    vf->add_option("--nmax-triple", ranges.triple)->check(CLI::NonNegativeNumber);
    vf->add_option("--nmax-ct", ranges.ct, "CT range for multipliers below 8")->check(CLI::NonNegativeNumber);
    vf->add_option("--nmax-ct-big", ranges.ct_big, "CT range for multipliers >= 8")->check(CLI::NonNegativeNumber);
    vf->add_option("--nmax-rec", ranges.rec)->check(CLI::NonNegativeNumber);
    vf->add_option("--nmax-ghost", ranges.ghost)->check(CLI::NonNegativeNumber);
    vf->add_option("--nmax-closed", ranges.closed_single, "closed forms with at most one sum")
        ->check(CLI::NonNegativeNumber);
    vf->add_option("--nmax-closed-multi", ranges.closed_multi)->check(CLI::NonNegativeNumber);
    vf->add_option("--nmax-conditional", ranges.conditional)->check(CLI::NonNegativeNumber);
    vf->add_option("--jobs,-j", jobs, "worker threads")->check(CLI::PositiveNumber);
    vf->add_flag("--verbose,-v", verbose, "per-record timing");

    auto* rc = app.add_subcommand("rec-check", "Check harmonic(b,c) against a theta operator");
    rc->add_option("operator", text, "polynomial in T and z")->required();
    rc->add_option("--b", b)->required()->check(CLI::PositiveNumber);
    rc->add_option("--c", c)->required()->check(CLI::PositiveNumber);
    rc->add_option("--nmax", nmax, "last n (default 20)")->check(CLI::NonNegativeNumber);
    rc->add_option("--twist", twist, "+1, -1 or auto")->check(CLI::IsMember({"+1", "-1", "auto"}));

    auto* ls = app.add_subcommand("list", "Print the corpus inventory");
    ls->add_option("--corpus", corpus, "corpus file");

    for (auto* s : {vf, rc, ls})
        s->add_option("--format", format, "human or tsv")->check(CLI::IsMember({"human", "tsv"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*ev) return cmd_eval(text, n, nmin, nmax < 0 ? 10 : nmax, skip);
        if (*ct) return cmd_ct(text, mult, nmax < 0 ? 4 : nmax, no_prune);
        if (*rc) return cmd_rec(text, b, c, nmax < 0 ? 20 : nmax, twist, format);
        if (*ls) return cmd_list(corpus, format);
        if (*vf) {
            Filters filters;
            for (auto& i : split_commas(items)) filters.items.insert(i);
            for (auto& k : split_commas(kinds)) filters.kinds.insert(parse_kind(k));
            auto groups = load_corpus(corpus);
            auto report = verify_all(groups, ranges, filters, jobs);
            std::cout << (format == "tsv" ? render_tsv(report) : render_human(report, verbose));
            if (format != "tsv") std::cout << "elapsed: " << report.seconds << "s\n";
            return report.exit_code();
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 2;
}
