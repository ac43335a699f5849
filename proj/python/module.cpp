#include "cyid/harness.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace cyid;

namespace {

// Exact values cross the boundary as decimal strings; the Python side turns them into int/Fraction.
std::vector<std::string> strs(const std::vector<Rational>& v) {
    std::vector<std::string> out;
    for (auto& x : v) out.push_back(x.str());
    return out;
}

py::dict record_dict(const RecordResult& r) {
    py::dict d;
    d["item"] = r.item_id;
    d["label"] = r.label;
    d["kind"] = kind_name(r.kind);
    d["status"] = status_name(r.status);
    d["verdict"] = verdict_name(r.verdict);
    d["n_from"] = r.n_from;
    d["n_to"] = r.n_to;
    d["first_n"] = r.first_n < 0 ? py::object(py::none()) : py::object(py::int_(r.first_n));
    d["lhs"] = r.lhs;
    d["rhs"] = r.rhs;
    d["twist"] = r.twist;
    d["non_integral"] = r.non_integral;
    d["detail"] = r.detail;
    return d;
}

py::dict check_dict(const CheckReport& c) {
    py::dict d;
    d["satisfied"] = c.satisfied();
    if (!c.failures.empty()) {
        d["first_failure"] = c.failures.front().m;
        d["residual"] = c.failures.front().residual.str();
    } else {
        d["first_failure"] = py::none();
        d["residual"] = py::none();
    }
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "exact evaluation of binomial-sum, constant-term and recurrence identities";

    py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
    py::register_exception<EvalError>(m, "EvalError", PyExc_ArithmeticError);
    py::register_exception<CorpusError>(m, "CorpusError", PyExc_ValueError);

    m.def("render", [](const std::string& text) { return render(*parse(text)); }, py::arg("expr"));
    m.def("free_vars", [](const std::string& text) {
        auto vs = free_vars(*parse(text));
        return std::string(vs.begin(), vs.end());
    }, py::arg("expr"));
    m.def("sum_depth", [](const std::string& text) { return sum_depth(*parse(text)); }, py::arg("expr"));
    m.def("evaluate", [](const std::string& text, long n_max, long n_min, bool skip_singular) {
        auto e = parse(text);
        py::gil_scoped_release nogil;
        return strs(eval_sequence(*e, n_max, {skip_singular}, n_min));
    }, py::arg("expr"), py::arg("n_max"), py::arg("n_min") = 0, py::arg("skip_singular") = false);
    m.def("ct_sequence", [](const std::string& poly, long mult, long n_max, bool prune) {
        CtSpec spec{parse_laurent(poly), mult};
        if (mult < 1) throw DomainError("mult must be positive");
        py::gil_scoped_release nogil;
        std::vector<std::string> out;
        for (auto& v : ct_sequence(spec, n_max, prune)) out.push_back(v.str());
        return out;
    }, py::arg("poly"), py::arg("mult"), py::arg("n_max"), py::arg("prune") = true);
    m.def("harmonic_coefficients", [](long b, long c, long n_max) { return strs(harmonic_cy_coefficients(b, c, n_max)); },
          py::arg("b"), py::arg("c"), py::arg("n_max"));
    m.def("recurrence", [](const std::string& op) { return to_recurrence(parse_theta(op)).str(); }, py::arg("op"));
    m.def("check_recurrence", [](const std::string& op, long b, long c, long n_max, const std::string& twist) {
        auto rep = check_twisted(to_recurrence(parse_theta(op)), harmonic_cy_coefficients(b, c, n_max), parse_twist(twist));
        py::dict d;
        d["held"] = rep.held();
        d["exactly_one"] = rep.exactly_one();
        d["plus"] = rep.plus ? py::object(check_dict(*rep.plus)) : py::object(py::none());
        d["minus"] = rep.minus ? py::object(check_dict(*rep.minus)) : py::object(py::none());
        return d;
    }, py::arg("op"), py::arg("b"), py::arg("c"), py::arg("n_max") = 20, py::arg("twist") = "auto");
    m.def("verify", [](const std::string& path, const std::vector<std::string>& items, const std::vector<std::string>& kinds,
                       int jobs) {
        auto corpus = load_corpus(path);
        Filters f;
        f.items.insert(items.begin(), items.end());
        for (auto& k : kinds) f.kinds.insert(parse_kind(k));
        VerificationReport rep;
        {
            py::gil_scoped_release nogil;
            rep = verify_all(corpus, {}, f, jobs);
        }
        py::list rows;
        for (auto& r : rep.results) rows.append(record_dict(r));
        py::dict d;
        d["results"] = rows;
        d["exit_code"] = rep.exit_code();
        d["tsv"] = render_tsv(rep);
        return d;
    }, py::arg("path"), py::arg("items") = std::vector<std::string>{}, py::arg("kinds") = std::vector<std::string>{},
          py::arg("jobs") = 1);
}
