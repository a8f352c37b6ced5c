#include "gpcalc/cli.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iterator>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "gpcalc/errors.hpp"
#include "gpcalc/problem.hpp"

namespace gpcalc::cli {

using nlohmann::json;

namespace {

struct Args {
    std::string problem;
    bool json_only = false;
    bool no_timing = false;
    bool serial = false;
    // analyze
    std::string property;
    bool via_join = false;
    // relamen, reldiffuse, words
    std::string v1, v2;
    std::string mode = "tracial";
    std::vector<std::string> assumptions;
    bool override_hypotheses = false;
    // bimodule, fuse
    std::string left, right;
    std::size_t max_len = default_max_length;
    std::string counting = "classes";
    std::string first, second;
    // coarse, condexp
    std::string v0;
    // words
    std::string word, against;
    // moments, condexp
    std::string element, inner;
    std::string merge = "innermost";
    std::uint64_t seed = 0;
    // statezero
    std::string vertex;
};

struct Outcome {
    json arguments = json::object();
    json result = json::object();
    std::optional<Verdict> verdict;
    std::vector<std::string> text;
    int exit_code = exit_yes;
};

int exit_for(Truth t) {
    switch (t) {
        case Truth::yes: return exit_yes;
        case Truth::no: return exit_no;
        case Truth::unknown: return exit_unknown;
    }
    return exit_internal;
}

json names_json(const Graph& g, VertexSet s) { return vertex_names(g, s); }

json clause_json(const Graph& g, const Clause& c) {
    json at = json::array();
    for (Vertex v : c.at) at.push_back(g.name(v));
    json children = json::array();
    for (const auto& ch : c.children) children.push_back(clause_json(g, ch));
    return {{"id", c.id}, {"value", to_string(c.value)}, {"at", at}, {"label", label(g, c)},
            {"note", c.note}, {"children", children}};
}

void clause_text(const Graph& g, const Clause& c, int depth, std::vector<std::string>& out) {
    std::string line(static_cast<std::size_t>(2 * depth), ' ');
    line += label(g, c);
    if (!c.note.empty()) line += "  [" + c.note + "]";
    out.push_back(line);
    for (const auto& ch : c.children) clause_text(g, ch, depth + 1, out);
}

json series_json(const GradedSeries& s) {
    json out = json::array();
    for (const auto& k : s.coefficients) out.push_back(k.to_string());
    return out;
}

std::string series_text(const GradedSeries& s) {
    std::string out;
    for (std::size_t i = 0; i < s.coefficients.size(); ++i) out += (i ? "," : "") + s.coefficients[i].to_string();
    return out;
}

json bimodule_json(const Graph& g, const FormalBimodule& b) {
    json entries = json::array();
    for (const auto& [u, k] : b.entries()) entries.push_back({{"set", names_json(g, u)}, {"multiplicity", k.to_string()}});
    return {{"left", names_json(g, b.left_set())}, {"right", names_json(g, b.right_set())}, {"entries", entries}};
}

void bimodule_text(const Graph& g, const FormalBimodule& b, std::vector<std::string>& out) {
    out.push_back("left " + format_vertex_set(g, b.left_set()) + " right " + format_vertex_set(g, b.right_set()));
    if (b.entries().empty()) out.push_back("  (zero bimodule)");
    for (const auto& [u, k] : b.entries()) out.push_back("  " + format_vertex_set(g, u) + " : " + k.to_string());
}

std::string matrix_text(const Matrix& m) {
    std::string out;
    for (std::size_t j = 0; j < m.block_count(); ++j) {
        out += "[";
        for (int r = 0; r < m.block_size(j); ++r) {
            if (r) out += "; ";
            for (int c = 0; c < m.block_size(j); ++c) out += (c ? " " : "") + m.at(j, r, c).to_string();
        }
        out += "]";
    }
    return out;
}

json element_json(const Graph& g, const Element& x) {
    json terms = json::array();
    for (const auto& t : x.terms()) {
        json letters = json::array();
        for (const auto& l : t.letters) letters.push_back({{"vertex", g.name(l.vertex)}, {"matrix", matrix_text(l.matrix)}});
        terms.push_back({{"coefficient", t.coefficient.to_string()}, {"letters", letters}});
    }
    return terms;
}

std::string element_text(const Graph& g, const Element& x) {
    if (x.empty()) return "0";
    std::string out;
    for (std::size_t i = 0; i < x.terms().size(); ++i) {
        const auto& t = x.terms()[i];
        if (i) out += " + ";
        out += "(" + t.coefficient.to_string() + ")";
        for (std::size_t k = 0; k < t.letters.size(); ++k) {
            out += (k ? "*" : " ") + g.name(t.letters[k].vertex) + matrix_text(t.letters[k].matrix);
        }
    }
    return out;
}

json word_json(const Graph& g, const Word& w) {
    json out = json::array();
    for (Vertex v : w) out.push_back(g.name(v));
    return out;
}

void set_verdict(Outcome& o, Verdict v) {
    o.exit_code = exit_for(v.value);
    o.verdict = std::move(v);
}

// One handler per command.
using Handler = std::function<Outcome(const Args&, const ProblemFile&, const Graph&)>;

ExecutionPolicy policy_of(const Args& a) { return a.serial ? ExecutionPolicy::serial : ExecutionPolicy::parallel; }

Outcome run_analyze(const Args& a, const ProblemFile& p, const Graph& g) {
    Outcome o;
    o.arguments = {{"property", a.property}, {"via_join", a.via_join}};
    const Property prop = parse_property(a.property);
    const auto d = build_descriptors(p, g);
    Verdict v = a.via_join ? decide_global_via_join(g, d, prop) : decide_global(g, d, prop);
    o.result = {{"property", a.property}, {"pipeline", a.via_join ? "join" : "direct"}};
    o.text.push_back(std::string("property ") + to_string(prop) + " via " + (a.via_join ? "join components" : "clauses"));
    set_verdict(o, std::move(v));
    return o;
}

RelativeAmenabilityOptions assumptions_of(const Args& a, const Graph& g) {
    RelativeAmenabilityOptions opts;
    opts.override_hypotheses = a.override_hypotheses;
    for (const auto& s : a.assumptions) {
        const auto colon = s.find(':');
        const auto eq = s.find('=');
        if (colon == std::string::npos || eq == std::string::npos || eq < colon) {
            throw Error(ErrorKind::invalid_argument, "assumption must read v:w=yes|no, got '" + s + "'");
        }
        const Vertex v = g.index_of(s.substr(0, colon));
        const Vertex w = g.index_of(s.substr(colon + 1, eq - colon - 1));
        const std::string val = s.substr(eq + 1);
        if (val != "yes" && val != "no") throw Error(ErrorKind::invalid_argument, "assumption value must be yes or no");
        opts.assumptions[{v, w}] = val == "yes";
    }
    return opts;
}

Outcome run_relamen(const Args& a, const ProblemFile& p, const Graph& g) {
    Outcome o;
    o.arguments = {{"v1", a.v1},
                   {"v2", a.v2},
                   {"mode", a.mode},
                   {"assume", a.assumptions},
                   {"override_hypotheses", a.override_hypotheses}};
    const VertexSet v1 = parse_vertex_set(g, a.v1);
    const VertexSet v2 = parse_vertex_set(g, a.v2);
    const Mode mode = parse_mode(a.mode);
    Verdict v = decide_relative_amenability(g, build_descriptors(p, g), v1, v2, mode, assumptions_of(a, g));
    o.result = {{"v1", names_json(g, v1)}, {"v2", names_json(g, v2)}, {"mode", to_string(mode)}};
    o.text.push_back("M_V1 amenable relative to M_V2 for V1 = " + format_vertex_set(g, v1) +
                     ", V2 = " + format_vertex_set(g, v2) + " (" + to_string(mode) + ")");
    set_verdict(o, std::move(v));
    return o;
}

Outcome run_reldiffuse(const Args& a, const ProblemFile& p, const Graph& g) {
    Outcome o;
    o.arguments = {{"v1", a.v1}, {"v2", a.v2}, {"override_hypotheses", a.override_hypotheses}};
    const VertexSet v1 = parse_vertex_set(g, a.v1);
    const VertexSet v2 = parse_vertex_set(g, a.v2);
    Verdict v = decide_relative_diffuseness(g, build_descriptors(p, g), v1, v2, a.override_hypotheses);
    o.result = {{"v1", names_json(g, v1)}, {"v2", names_json(g, v2)}};
    o.text.push_back("M_V1 diffuse relative to M_V2 for V1 = " + format_vertex_set(g, v1) +
                     ", V2 = " + format_vertex_set(g, v2));
    set_verdict(o, std::move(v));
    return o;
}

BimoduleOptions bimodule_options(const Args& a) {
    BimoduleOptions opts;
    opts.counting = parse_word_counting(a.counting);
    opts.execution = policy_of(a);
    return opts;
}

Outcome run_bimodule(const Args& a, const ProblemFile& p, const Graph& g) {
    Outcome o;
    o.arguments = {{"left", a.left}, {"right", a.right}, {"max_len", a.max_len}, {"counting", a.counting}};
    const VertexSet v1 = parse_vertex_set(g, a.left);
    const VertexSet v2 = parse_vertex_set(g, a.right);
    const auto dec = decompose(g, v1, v2, build_dims(p, g), a.max_len, bimodule_options(a));
    json parts = json::array();
    o.text.push_back("L2(M) over M_" + format_vertex_set(g, v1) + " - M_" + format_vertex_set(g, v2) +
                     ", words up to length " + std::to_string(a.max_len));
    for (const auto& [u, m] : dec.parts) {
        parts.push_back({{"set", names_json(g, u)},
                         {"multiplicity", m.k.to_string()},
                         {"series", series_json(m.series)},
                         {"language_finite", m.language_finite}});
        o.text.push_back("  " + format_vertex_set(g, u) + " : " + m.k.to_string() + "   series " + series_text(m.series) +
                         (m.language_finite ? "" : " ..."));
    }
    o.result = {{"counting", a.counting}, {"max_len", a.max_len}, {"bimodule", bimodule_json(g, dec.bimodule)},
                {"parts", parts}};
    return o;
}

Outcome run_fuse(const Args& a, const ProblemFile& p, const Graph& g) {
    Outcome o;
    o.arguments = {{"first", a.first}, {"second", a.second}, {"max_len", a.max_len}, {"counting", a.counting}};
    const auto b1 = build_bimodule(p, g, a.first);
    const auto b2 = build_bimodule(p, g, a.second);
    const auto fused = fuse(g, b1, b2, build_dims(p, g), a.max_len, bimodule_options(a));
    o.result = {{"first", bimodule_json(g, b1)}, {"second", bimodule_json(g, b2)}, {"fused", bimodule_json(g, fused)}};
    o.text.push_back(a.first + " fused with " + a.second + ":");
    bimodule_text(g, fused, o.text);
    return o;
}

Outcome run_coarse(const Args& a, const ProblemFile& p, const Graph& g) {
    Outcome o;
    o.arguments = {{"v0", a.v0}};
    const VertexSet v0 = parse_vertex_set(g, a.v0);
    Verdict v = weakly_coarse_complement(g, v0, build_descriptors(p, g));
    o.result = {{"v0", names_json(g, v0)}};
    o.text.push_back("orthocomplement of L2(M_V0) weakly coarse for V0 = " + format_vertex_set(g, v0));
    set_verdict(o, std::move(v));
    return o;
}

Outcome run_words(const Args& a, const ProblemFile&, const Graph& g) {
    Outcome o;
    o.arguments = {{"word", a.word}, {"against", a.against}, {"v1", a.v1}, {"v2", a.v2}};
    const Word w = parse_word(g, a.word);
    const Word r = reduce(g, w);
    const Word nf = normal_form(g, w);
    o.result = {{"word", word_json(g, w)},
                {"reduced", is_reduced(g, w)},
                {"reduction", word_json(g, r)},
                {"normal_form", word_json(g, nf)}};
    o.text.push_back("word        " + format_word(g, w) + (is_reduced(g, w) ? " (reduced)" : " (not reduced)"));
    o.text.push_back("reduction   " + format_word(g, r));
    o.text.push_back("normal form " + format_word(g, nf));
    if (!a.against.empty()) {
        const Word w2 = parse_word(g, a.against);
        const auto sigma = equivalent(g, w, w2);
        json eq = {{"against", word_json(g, w2)}, {"equivalent", sigma.has_value()}};
        if (sigma) {
            eq["certificate"] = *sigma;
            const auto m = monotone_matching(g, w, w2);
            json pairs = json::array();
            if (m) {
                for (const auto& [i, j] : m->pairs) pairs.push_back({i, j});
            }
            eq["matching"] = pairs;
        }
        o.result["equivalence"] = eq;
        o.text.push_back("against     " + format_word(g, w2) + (sigma ? ": equivalent" : ": not equivalent"));
        o.exit_code = sigma ? exit_yes : exit_no;
    }
    if (!a.v1.empty() || !a.v2.empty()) {
        const VertexSet v1 = parse_vertex_set(g, a.v1);
        const VertexSet v2 = parse_vertex_set(g, a.v2);
        const bool rel = is_relatively_reduced(g, r, v1, v2);
        const auto f = relative_factorize(g, r, v1, v2);
        o.result["relative"] = {{"v1", names_json(g, v1)},
                                {"v2", names_json(g, v2)},
                                {"relatively_reduced", rel},
                                {"linkset", names_json(g, linkset(g, r, v1 & v2))},
                                {"factorization",
                                 {{"left", word_json(g, f.left)},
                                  {"middle", word_json(g, f.middle)},
                                  {"right", word_json(g, f.right)},
                                  {"linkset", names_json(g, f.linkset)}}}};
        o.text.push_back("relative to (" + format_vertex_set(g, v1) + ", " + format_vertex_set(g, v2) +
                         "): " + (rel ? "relatively reduced" : "not relatively reduced") + ", linkset " +
                         format_vertex_set(g, linkset(g, r, v1 & v2)));
        o.text.push_back("factorization " + format_word(g, f.left) + " | " + format_word(g, f.middle) + " | " +
                         format_word(g, f.right) + "  (middle linkset " + format_vertex_set(g, f.linkset) + ")");
    }
    return o;
}

EvalOptions eval_options(const Args& a) {
    EvalOptions opts;
    if (a.merge == "innermost") {
        opts.merge = MergePolicy::innermost;
    } else if (a.merge == "random") {
        opts.merge = MergePolicy::random;
    } else {
        throw Error(ErrorKind::invalid_argument, "merge policy must be innermost or random");
    }
    opts.seed = a.seed;
    opts.execution = policy_of(a);
    return opts;
}

Outcome run_moments(const Args& a, const ProblemFile& p, const Graph& g) {
    Outcome o;
    o.arguments = {{"element", a.element}, {"inner", a.inner}, {"merge", a.merge}, {"seed", a.seed}};
    const auto gp = build_graph_product(p, g);
    const Element x = build_element(p, gp, a.element);
    const auto opts = eval_options(a);
    if (a.inner.empty()) {
        const Gauss value = state(gp, x, opts);
        o.result = {{"quantity", "state"}, {"value", value.to_string()}};
        o.text.push_back("phi(" + a.element + ") = " + value.to_string());
    } else {
        const Element y = build_element(p, gp, a.inner);
        const Gauss value = inner_product(gp, x, y, opts);
        o.result = {{"quantity", "inner_product"}, {"value", value.to_string()}};
        o.text.push_back("<" + a.element + ", " + a.inner + "> = phi(" + a.inner + "* " + a.element + ") = " +
                         value.to_string());
    }
    return o;
}

Outcome run_condexp(const Args& a, const ProblemFile& p, const Graph& g) {
    Outcome o;
    o.arguments = {{"element", a.element}, {"v0", a.v0}, {"merge", a.merge}, {"seed", a.seed}};
    const auto gp = build_graph_product(p, g);
    const VertexSet v0 = parse_vertex_set(g, a.v0);
    const Element x = build_element(p, gp, a.element);
    const auto opts = eval_options(a);
    const Element e = conditional_expectation(gp, x, v0, opts);
    o.result = {{"v0", names_json(g, v0)}, {"terms", element_json(g, e)}};
    o.text.push_back("E_" + format_vertex_set(g, v0) + "(" + a.element + ") = " + element_text(g, e));
    return o;
}

Outcome run_statezero(const Args& a, const ProblemFile& p, const Graph& g) {
    Outcome o;
    o.arguments = {{"vertex", a.vertex}};
    const Vertex v = g.index_of(a.vertex);
    const AlgebraSpec* spec = nullptr;
    for (const auto& [name, s] : p.algebras) {
        if (name == a.vertex) spec = &s;
    }
    Clause root;
    root.id = "StateZero";
    root.at = {v};
    if (spec->concrete) {
        const auto& c = *spec->concrete;
        const bool yes = has_state_zero_unitary(c);
        root.value = yes ? Truth::yes : Truth::no;
        root.note = "every minimal central projection of the centralizer has state at most 1/2";
        json blocks = json::array();
        const ConcreteAlgebra cent = centralizer(c);
        for (const auto& b : cent.blocks()) {
            blocks.push_back({{"size", b.size}, {"state", rational_to_string(b.spectrum.front().eigenvalue)}});
        }
        o.result = {{"source", "concrete"}, {"centralizer", blocks}};
        if (c.is_tracial()) {
            const auto range = unitary_trace_abs_range(c);
            o.result["trace_abs_range"] = {rational_to_string(range.lo), rational_to_string(range.hi)};
            o.text.push_back("|tau(u)| over unitaries: [" + rational_to_string(range.lo) + ", " +
                             rational_to_string(range.hi) + "]");
        }
    } else {
        root.value = spec->descriptor.state_zero_unitary ? Truth::yes : Truth::no;
        root.note = "declared in the descriptor";
        o.result = {{"source", "descriptor"}};
    }
    o.text.insert(o.text.begin(), "state-zero unitary in the centralizer of M_" + a.vertex);
    Verdict verdict;
    verdict.value = root.value;
    verdict.witness = std::move(root);
    set_verdict(o, std::move(verdict));
    return o;
}

Outcome run_joindecomp(const Args&, const ProblemFile&, const Graph& g) {
    Outcome o;
    json comps = json::array();
    std::string line = "join components:";
    for (VertexSet c : join_decompose(g)) {
        comps.push_back(names_json(g, c));
        line += " " + format_vertex_set(g, c);
    }
    o.text.push_back(line);
    json witness;
    const auto w = irreducibility_witness(g);
    if (std::holds_alternative<Disconnected>(w)) {
        witness = {{"kind", "disconnected"}};
        o.text.push_back("join-irreducible: graph is disconnected");
    } else if (const auto* t = std::get_if<TriplesFound>(&w)) {
        json triples = json::array();
        for (const auto& x : t->triples) triples.push_back({g.name(x.v0), g.name(x.v1), g.name(x.v2)});
        witness = {{"kind", "triples"}, {"triples", triples}};
        o.text.push_back("join-irreducible: triples found for every vertex");
    } else {
        const auto& n = std::get<NotIrreducible>(w);
        witness = {{"kind", "join"}, {"left", names_json(g, n.left)}, {"right", names_json(g, n.right)}};
        o.text.push_back("not join-irreducible: " + format_vertex_set(g, n.left) + " joined with " +
                         format_vertex_set(g, n.right));
    }
    o.result = {{"components", comps}, {"irreducibility", witness}};
    return o;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::system_error(std::make_error_code(std::errc::no_such_file_or_directory), path);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

json base_report(const std::string& command) {
    return {{"format", "gpcalc-report"}, {"version", report_version}, {"command", command}};
}

int emit_error(const Args& a, const std::string& command, const std::string& kind, const std::string& message,
               int code, std::ostream& out, std::ostream& err, const json& extra = json::object()) {
    json report = base_report(command);
    json e = {{"kind", kind}, {"message", message}};
    e.update(extra);
    report["error"] = e;
    report["exit_code"] = code;
    if (a.json_only) {
        out << report.dump(2) << "\n";
    } else {
        err << "gpcalc " << command << ": " << kind << ": " << message << "\n";
    }
    return code;
}

}  // namespace

int execute(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Args a;
    CLI::App app{"Decision procedures and exact computations for graph products of algebras", "gpcalc"};
    app.require_subcommand(1, 1);

    std::map<std::string, Handler> handlers;
    auto add = [&](const std::string& name, const std::string& description, Handler h) {
        CLI::App* sub = app.add_subcommand(name, description);
        sub->add_option("problem", a.problem, "problem file (text or JSON)")->required();
        sub->add_flag("--json", a.json_only, "print only the machine-readable report");
        sub->add_flag("--no-timing", a.no_timing, "omit timing so reports compare byte for byte");
        sub->add_flag("--serial", a.serial, "run every kernel single-threaded");
        handlers[name] = std::move(h);
        return sub;
    };

    auto* analyze = add("analyze", "decide diffuse / factor / full / amenable for the whole algebra", run_analyze);
    analyze->add_option("--property", a.property)->required()->check(CLI::IsMember({"diffuse", "factor", "full", "amenable"}));
    analyze->add_flag("--via-join", a.via_join, "use the join-component pipeline");

    auto* relamen = add("relamen", "relative amenability of M_V1 inside M relative to M_V2", run_relamen);
    relamen->add_option("--v1", a.v1)->required();
    relamen->add_option("--v2", a.v2)->required();
    relamen->add_option("--mode", a.mode)->check(CLI::IsMember({"tracial", "statial"}));
    relamen->add_option("--assume", a.assumptions, "v:w=yes|no for the undecided statial subcase");
    relamen->add_flag("--override-hypotheses", a.override_hypotheses);

    auto* reldiff = add("reldiffuse", "whether M_V1 is diffuse relative to M_V2", run_reldiffuse);
    reldiff->add_option("--v1", a.v1)->required();
    reldiff->add_option("--v2", a.v2)->required();
    reldiff->add_flag("--override-hypotheses", a.override_hypotheses);

    auto* bim = add("bimodule", "decompose L2(M) as an M_left - M_right bimodule", run_bimodule);
    bim->add_option("--left", a.left)->required();
    bim->add_option("--right", a.right)->required();
    bim->add_option("--max-len", a.max_len, "longest word in the graded series");
    bim->add_option("--counting", a.counting)->check(CLI::IsMember({"classes", "words"}));

    auto* fus = add("fuse", "relative tensor product of two bimodules declared in the file", run_fuse);
    fus->add_option("--first", a.first)->required();
    fus->add_option("--second", a.second)->required();
    fus->add_option("--max-len", a.max_len);
    fus->add_option("--counting", a.counting)->check(CLI::IsMember({"classes", "words"}));

    auto* coarse = add("coarse", "weak coarseness of the orthocomplement of L2(M_V0)", run_coarse);
    coarse->add_option("--v0", a.v0)->required();

    auto* words = add("words", "reduction, normal form, equivalence and relative factorization", run_words);
    words->add_option("--word", a.word)->required();
    words->add_option("--against", a.against);
    words->add_option("--v1", a.v1);
    words->add_option("--v2", a.v2);

    auto* mom = add("moments", "state of an element, or inner product with --inner", run_moments);
    mom->add_option("--element", a.element)->required();
    mom->add_option("--inner", a.inner);
    mom->add_option("--merge", a.merge)->check(CLI::IsMember({"innermost", "random"}));
    mom->add_option("--seed", a.seed);

    auto* cond = add("condexp", "conditional expectation onto M_V0", run_condexp);
    cond->add_option("--element", a.element)->required();
    cond->add_option("--v0", a.v0)->required();
    cond->add_option("--merge", a.merge)->check(CLI::IsMember({"innermost", "random"}));
    cond->add_option("--seed", a.seed);

    auto* sz = add("statezero", "state-zero unitary in the centralizer of one vertex algebra", run_statezero);
    sz->add_option("--vertex", a.vertex)->required();

    add("joindecomp", "join decomposition and irreducibility witness", run_joindecomp);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(std::move(reversed));
    } catch (const CLI::ParseError& e) {
        std::ostringstream o, eo;
        const int code = app.exit(e, o, eo);
        out << o.str();
        err << eo.str();
        return code == 0 ? 0 : exit_usage;
    }

    const std::string command = app.get_subcommands().front()->get_name();
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    std::optional<Graph> graph;
    try {
        const ProblemFile p = parse_problem(read_file(a.problem));
        graph = build_graph(p);
        o = handlers.at(command)(a, p, *graph);
    } catch (const std::system_error& e) {
        return emit_error(a, command, "no_input", e.what(), exit_no_input, out, err);
    } catch (const ParseError& e) {
        return emit_error(a, command, "parse_error", e.what(), exit_parse, out, err,
                          {{"line", e.line()}, {"column", e.column()}});
    } catch (const HypothesisViolation& e) {
        return emit_error(a, command, "hypothesis_violation", e.what(), exit_hypothesis, out, err,
                          {{"clause", e.clause()}});
    } catch (const Error& e) {
        return emit_error(a, command, to_string(e.kind()), e.what(), exit_invalid, out, err);
    } catch (const std::exception& e) {
        return emit_error(a, command, "internal", e.what(), exit_internal, out, err);
    }
    const double elapsed =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    const Graph& g = *graph;

    json report = base_report(command);
    o.arguments["problem"] = a.problem;
    o.arguments["serial"] = a.serial;
    report["arguments"] = o.arguments;
    report["vertex_order"] = g.names();
    report["result"] = o.result;
    if (o.verdict) {
        report["verdict"] = to_string(o.verdict->value);
        report["witness"] = clause_json(g, o.verdict->witness);
        report["reasons"] = o.verdict->reasons(g);
    } else {
        report["verdict"] = nullptr;
    }
    report["exit_code"] = o.exit_code;
    if (!a.no_timing) report["timing"] = {{"elapsed_ms", elapsed}, {"threads", a.serial ? 1 : kernels::max_threads()}};

    if (!a.json_only) {
        out << "gpcalc " << command << " (report version " << report_version << ")\n";
        out << "vertex order:";
        for (const auto& n : g.names()) out << " " << n;
        out << "\n";
        for (const auto& line : o.text) out << line << "\n";
        if (o.verdict) {
            out << "verdict: " << to_string(o.verdict->value) << "\n";
            std::vector<std::string> tree;
            clause_text(g, o.verdict->witness, 1, tree);
            out << "witness:\n";
            for (const auto& line : tree) out << line << "\n";
            out << "reasons:\n";
            for (const auto& r : o.verdict->reasons(g)) out << "  " << r << "\n";
        }
        out << "exit code: " << o.exit_code << "\n";
        if (!a.no_timing) {
            char buf[64];
            std::snprintf(buf, sizeof buf, "%.3f", elapsed);
            out << "elapsed: " << buf << " ms\n";
        }
        out << "--- machine-readable report ---\n";
    }
    out << report.dump(2) << "\n";
    return o.exit_code;
}

}  // namespace gpcalc::cli
