#include "gpcalc/problem.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

#include <json.hpp>

#include "gpcalc/errors.hpp"

namespace gpcalc {

using nlohmann::json;

namespace {

// Runs f and rethrows any library error as a ParseError at (line, col).
template <class F>
auto located(std::size_t line, std::size_t col, F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const ParseError&) {
        throw;
    } catch (const std::exception& e) {
        throw ParseError(line, col, e.what());
    }
}

bool parse_bool(const std::string& v) {
    if (v == "yes" || v == "true" || v == "1") return true;
    if (v == "no" || v == "false" || v == "0") return false;
    throw std::invalid_argument("expected yes or no, got '" + v + "'");
}

int parse_int(const std::string& s) {
    std::size_t used = 0;
    int n = std::stoi(s, &used);
    if (used != s.size()) throw std::invalid_argument("expected an integer, got '" + s + "'");
    return n;
}

AlgebraSpec make_preset(const std::string& name, int arg) {
    AlgebraSpec a;
    a.kind = AlgebraSpec::Kind::preset;
    a.preset = name;
    a.preset_arg = arg;
    if (name == "cyclic") {
        a.concrete = presets::cyclic_group_algebra(arg);
        a.descriptor = presets::cyclic_group(arg);
    } else if (name == "matrix") {
        if (arg < 2) throw std::invalid_argument("matrix preset needs size >= 2");
        a.concrete = presets::matrix_algebra(arg);
        a.descriptor = descriptor_of(*a.concrete);
    } else if (name == "integers") {
        a.descriptor = presets::integers();
    } else if (name == "free") {
        a.descriptor = presets::free_group(arg);
    } else if (name == "hyperfinite") {
        a.descriptor = presets::hyperfinite_ii1();
    } else {
        throw std::invalid_argument("unknown preset '" + name + "'");
    }
    return a;
}

bool preset_takes_arg(const std::string& name) { return name == "cyclic" || name == "matrix" || name == "free"; }

AlgebraSpec make_descriptor(const std::vector<std::pair<std::string, std::string>>& kvs) {
    AlgebraSpec a;
    a.kind = AlgebraSpec::Kind::descriptor;
    bool have_dim = false;
    std::set<std::string> seen;
    for (const auto& [k, v] : kvs) {
        if (!seen.insert(k).second) throw std::invalid_argument("duplicate descriptor key '" + k + "'");
        if (k == "l2dim") {
            a.descriptor.l2dim = ExtNat::parse(v);
            have_dim = true;
        } else if (k == "amenable") {
            a.descriptor.amenable = parse_bool(v);
        } else if (k == "diffuse") {
            a.descriptor.diffuse = parse_bool(v);
        } else if (k == "factor") {
            a.descriptor.factor = parse_bool(v);
        } else if (k == "full") {
            a.descriptor.full = parse_bool(v);
        } else if (k == "szu") {
            a.descriptor.state_zero_unitary = parse_bool(v);
        } else if (k == "tracial") {
            a.descriptor.tracial = parse_bool(v);
        } else {
            throw std::invalid_argument("unknown descriptor key '" + k + "'");
        }
    }
    if (!have_dim) throw std::invalid_argument("descriptor needs l2dim");
    validate(a.descriptor);
    return a;
}

AlgebraSpec make_concrete(std::vector<Block> blocks) {
    AlgebraSpec a;
    a.kind = AlgebraSpec::Kind::concrete;
    a.concrete = ConcreteAlgebra(std::move(blocks));
    a.descriptor = descriptor_of(*a.concrete);
    return a;
}

struct Token {
    std::string text;
    std::size_t col;  // 1-based
};

std::vector<Token> tokenize(const std::string& line) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < line.size()) {
        if (line[i] == ' ' || line[i] == '\t' || line[i] == '\r') {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
        out.push_back({line.substr(i, j - i), i + 1});
        i = j;
    }
    return out;
}

std::vector<std::string> set_names(const std::string& text) {
    std::string_view body = text;
    if (body.size() < 2 || body.front() != '{' || body.back() != '}') {
        throw std::invalid_argument("vertex set must be written {a,b,...}");
    }
    body = body.substr(1, body.size() - 2);
    std::vector<std::string> out;
    std::size_t pos = 0;
    while (pos < body.size()) {
        std::size_t end = body.find(',', pos);
        if (end == std::string_view::npos) end = body.size();
        std::string name(body.substr(pos, end - pos));
        if (name.empty()) throw std::invalid_argument("empty name in vertex set");
        out.push_back(name);
        pos = end + 1;
    }
    return out;
}

std::string format_names(const std::vector<std::string>& names) {
    std::string out = "{";
    for (std::size_t i = 0; i < names.size(); ++i) out += (i ? "," : "") + names[i];
    return out + "}";
}

Matrix parse_matrix_body(const std::string& body, const ConcreteAlgebra& alg) {
    std::vector<int> sizes;
    std::vector<std::vector<Gauss>> blocks;
    std::size_t pos = 0;
    while (true) {
        pos = body.find_first_not_of(" \t\r", pos);
        if (pos == std::string::npos) break;
        if (body[pos] != '[') throw std::invalid_argument("expected '[' to open a matrix block");
        std::size_t close = body.find(']', pos);
        if (close == std::string::npos) throw std::invalid_argument("unclosed matrix block");
        std::string inner = body.substr(pos + 1, close - pos - 1);
        std::vector<std::vector<Gauss>> rows;
        std::stringstream rs(inner);
        std::string row;
        while (std::getline(rs, row, ';')) {
            std::stringstream es(row);
            std::string entry;
            std::vector<Gauss> r;
            while (es >> entry) r.push_back(Gauss::parse(entry));
            rows.push_back(std::move(r));
        }
        const int n = static_cast<int>(rows.size());
        std::vector<Gauss> flat;
        for (const auto& r : rows) {
            if (static_cast<int>(r.size()) != n) throw std::invalid_argument("matrix block is not square");
            flat.insert(flat.end(), r.begin(), r.end());
        }
        sizes.push_back(n);
        blocks.push_back(std::move(flat));
        pos = close + 1;
    }
    Matrix m(std::move(sizes), std::move(blocks));
    if (!m.conforms_to(alg)) throw Error(ErrorKind::nonconforming_matrix, "matrix does not match the vertex blocks");
    return m;
}

std::vector<Block> parse_blocks(const std::string& body) {
    std::vector<Block> blocks;
    std::stringstream ss(body);
    std::string part;
    while (std::getline(ss, part, ';')) {
        std::stringstream ps(part);
        std::string word;
        if (!(ps >> word) || word != "block") throw std::invalid_argument("expected 'block <size> <eigenvalue>:<mult> ...'");
        std::string size;
        if (!(ps >> size)) throw std::invalid_argument("block needs a size");
        Block b;
        b.size = parse_int(size);
        std::string entry;
        while (ps >> entry) {
            auto colon = entry.find(':');
            SpectrumEntry e;
            e.eigenvalue = parse_rational(entry.substr(0, colon));
            e.multiplicity = colon == std::string::npos ? 1 : parse_int(entry.substr(colon + 1));
            b.spectrum.push_back(e);
        }
        blocks.push_back(std::move(b));
    }
    return blocks;
}

std::string format_blocks(const ConcreteAlgebra& c) {
    std::string out;
    for (std::size_t j = 0; j < c.block_count(); ++j) {
        if (j) out += " ;";
        out += " block " + std::to_string(c.blocks()[j].size);
        for (const auto& e : c.blocks()[j].spectrum) {
            out += " " + rational_to_string(e.eigenvalue) + ":" + std::to_string(e.multiplicity);
        }
    }
    return out;
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

std::string format_descriptor(const AlgebraDescriptor& d) {
    return "l2dim=" + d.l2dim.to_string() + " amenable=" + yes_no(d.amenable) + " diffuse=" + yes_no(d.diffuse) +
           " factor=" + yes_no(d.factor) + " full=" + yes_no(d.full) + " szu=" + yes_no(d.state_zero_unitary) +
           " tracial=" + yes_no(d.tracial);
}

std::string format_matrix(const Matrix& m) {
    std::string out;
    for (std::size_t j = 0; j < m.block_count(); ++j) {
        out += j ? " [" : "[";
        const int n = m.block_size(j);
        for (int r = 0; r < n; ++r) {
            if (r) out += "; ";
            for (int c = 0; c < n; ++c) out += (c ? " " : "") + m.at(j, r, c).to_string();
        }
        out += "]";
    }
    return out;
}

// Semantic state shared by both formats.
class Builder {
public:
    ProblemFile p;

    void vertices(const std::vector<std::string>& names) {
        for (const auto& n : names) {
            if (n.empty() || n.find_first_of("{},:;*()[]=#") != std::string::npos) {
                throw std::invalid_argument("invalid vertex name '" + n + "'");
            }
            if (std::find(p.vertices.begin(), p.vertices.end(), n) != p.vertices.end()) {
                throw std::invalid_argument("duplicate vertex '" + n + "'");
            }
            p.vertices.push_back(n);
        }
    }

    void edge(const std::string& a, const std::string& b) {
        require_vertex(a);
        require_vertex(b);
        if (a == b) throw std::invalid_argument("self-loop at '" + a + "'");
        p.edges.emplace_back(a, b);
    }

    void algebra(const std::string& v, AlgebraSpec spec) {
        require_vertex(v);
        for (const auto& [name, _] : p.algebras) {
            if (name == v) throw std::invalid_argument("second algebra for vertex '" + v + "'");
        }
        p.algebras.emplace_back(v, std::move(spec));
    }

    const ConcreteAlgebra& concrete_of(const std::string& v) const {
        require_vertex(v);
        for (const auto& [name, spec] : p.algebras) {
            if (name == v) {
                if (!spec.concrete) throw std::invalid_argument("vertex '" + v + "' has no concrete algebra");
                return *spec.concrete;
            }
        }
        throw std::invalid_argument("matrix declared before the algebra of vertex '" + v + "'");
    }

    void matrix(MatrixSpec m) {
        require_fresh(m.name);
        p.matrices.push_back(std::move(m));
    }

    void element(ElementSpec e) {
        require_fresh(e.name);
        for (const auto& t : e.terms) {
            for (const auto& name : t.matrices) {
                auto it = std::find_if(p.matrices.begin(), p.matrices.end(),
                                       [&](const MatrixSpec& m) { return m.name == name; });
                if (it == p.matrices.end()) throw std::invalid_argument("unknown matrix '" + name + "'");
            }
        }
        p.elements.push_back(std::move(e));
    }

    void bimodule(BimoduleSpec b) {
        for (const auto& x : p.bimodules) {
            if (x.name == b.name) throw std::invalid_argument("duplicate bimodule '" + b.name + "'");
        }
        for (const auto& n : b.left) require_vertex(n);
        for (const auto& n : b.right) require_vertex(n);
        p.bimodules.push_back(std::move(b));
    }

    void bimodule_entry(std::vector<std::string> set, ExtNat k) {
        auto& b = p.bimodules.back();
        for (const auto& n : set) {
            require_vertex(n);
            if (std::find(b.left.begin(), b.left.end(), n) == b.left.end() ||
                std::find(b.right.begin(), b.right.end(), n) == b.right.end()) {
                throw std::invalid_argument("bimodule key must lie inside left & right");
            }
        }
        b.entries.emplace_back(std::move(set), std::move(k));
    }

    // Every vertex needs exactly one algebra.
    void finish() const {
        if (p.vertices.empty()) throw std::invalid_argument("problem declares no vertices");
        for (const auto& v : p.vertices) {
            bool found = false;
            for (const auto& [name, _] : p.algebras) found = found || name == v;
            if (!found) throw Error(ErrorKind::missing_descriptor, "vertex '" + v + "' has no algebra");
        }
    }

private:
    void require_vertex(const std::string& v) const {
        if (std::find(p.vertices.begin(), p.vertices.end(), v) == p.vertices.end()) {
            throw Error(ErrorKind::unknown_vertex, "unknown vertex '" + v + "'");
        }
    }

    void require_fresh(const std::string& name) const {
        for (const auto& m : p.matrices) {
            if (m.name == name) throw std::invalid_argument("duplicate name '" + name + "'");
        }
        for (const auto& e : p.elements) {
            if (e.name == name) throw std::invalid_argument("duplicate name '" + name + "'");
        }
    }
};

std::vector<std::string> split_word(const std::string& w) {
    std::vector<std::string> out;
    std::stringstream ss(w);
    std::string part;
    while (std::getline(ss, part, '*')) {
        if (part.empty()) throw std::invalid_argument("empty factor in word '" + w + "'");
        out.push_back(part);
    }
    return out;
}

}  // namespace

ProblemFile parse_problem_text(std::string_view text) {
    enum class Section { none, graph, algebra, element, bimodule };
    Builder b;
    Section section = Section::none;
    std::stringstream in{std::string(text)};
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        auto tok = tokenize(line);
        if (tok.empty()) continue;
        const std::string& head = tok[0].text;
        const std::size_t col = tok[0].col;
        auto fail = [&](std::size_t c, const std::string& msg) { throw ParseError(lineno, c, msg); };

        if (head == "GRAPH" || head == "ALGEBRA" || head == "ELEMENT") {
            if (tok.size() != 1) fail(tok[1].col, "unexpected text after section header");
            section = head == "GRAPH" ? Section::graph : head == "ALGEBRA" ? Section::algebra : Section::element;
            continue;
        }
        if (head == "BIMODULE") {
            if (tok.size() != 4) fail(col, "expected 'BIMODULE <name> left={..} right={..}'");
            BimoduleSpec spec;
            spec.name = tok[1].text;
            if (tok[2].text.rfind("left=", 0) != 0) fail(tok[2].col, "expected left={..}");
            if (tok[3].text.rfind("right=", 0) != 0) fail(tok[3].col, "expected right={..}");
            spec.left = located(lineno, tok[2].col, [&] { return set_names(tok[2].text.substr(5)); });
            spec.right = located(lineno, tok[3].col, [&] { return set_names(tok[3].text.substr(6)); });
            located(lineno, col, [&] { b.bimodule(std::move(spec)); });
            section = Section::bimodule;
            continue;
        }

        switch (section) {
            case Section::none:
                fail(col, "content before any section header");
                break;
            case Section::graph:
                if (head == "vertices") {
                    std::vector<std::string> names;
                    for (std::size_t i = 1; i < tok.size(); ++i) names.push_back(tok[i].text);
                    located(lineno, col, [&] { b.vertices(names); });
                } else if (head == "edge") {
                    if (tok.size() != 3) fail(col, "expected 'edge <u> <v>'");
                    located(lineno, tok[1].col, [&] { b.edge(tok[1].text, tok[2].text); });
                } else {
                    fail(col, "expected 'vertices' or 'edge'");
                }
                break;
            case Section::algebra: {
                if (tok.size() < 2) fail(col, "expected '<vertex> preset|descriptor|concrete ...'");
                const std::string& kind = tok[1].text;
                AlgebraSpec spec;
                if (kind == "preset") {
                    if (tok.size() < 3) fail(tok[1].col, "preset needs a name");
                    const std::string& name = tok[2].text;
                    const bool takes = preset_takes_arg(name);
                    if (tok.size() != (takes ? 4u : 3u)) fail(tok[2].col, "wrong number of preset arguments");
                    spec = located(lineno, tok[2].col,
                                   [&] { return make_preset(name, takes ? parse_int(tok[3].text) : 0); });
                } else if (kind == "descriptor") {
                    std::vector<std::pair<std::string, std::string>> kvs;
                    for (std::size_t i = 2; i < tok.size(); ++i) {
                        auto eq = tok[i].text.find('=');
                        if (eq == std::string::npos) fail(tok[i].col, "expected key=value");
                        kvs.emplace_back(tok[i].text.substr(0, eq), tok[i].text.substr(eq + 1));
                    }
                    spec = located(lineno, tok[1].col, [&] { return make_descriptor(kvs); });
                } else if (kind == "concrete") {
                    const std::string body = line.substr(tok[1].col - 1 + kind.size());
                    spec = located(lineno, tok[1].col, [&] { return make_concrete(parse_blocks(body)); });
                } else {
                    fail(tok[1].col, "expected preset, descriptor or concrete");
                }
                located(lineno, col, [&] { b.algebra(head, std::move(spec)); });
                break;
            }
            case Section::element:
                if (tok.size() < 4 || tok[(head == "matrix" ? 3 : 2)].text != "=") {
                    fail(col, "expected 'matrix <name> <vertex> = [...]' or 'element <name> = ...'");
                }
                if (head == "matrix") {
                    MatrixSpec m;
                    m.name = tok[1].text;
                    m.vertex = tok[2].text;
                    const std::string body = line.substr(tok[3].col);
                    m.matrix = located(lineno, tok[3].col + 1,
                                       [&] { return parse_matrix_body(body, b.concrete_of(m.vertex)); });
                    located(lineno, col, [&] { b.matrix(std::move(m)); });
                } else if (head == "element") {
                    ElementSpec e;
                    e.name = tok[1].text;
                    std::size_t i = 3;
                    while (i < tok.size()) {
                        const Token& c = tok[i];
                        if (c.text.size() < 2 || c.text.front() != '(' || c.text.back() != ')') {
                            fail(c.col, "expected a parenthesized coefficient");
                        }
                        ElementTermSpec t;
                        t.coefficient = located(lineno, c.col, [&] {
                            return Gauss::parse(std::string_view(c.text).substr(1, c.text.size() - 2));
                        });
                        ++i;
                        if (i < tok.size() && tok[i].text != "+") {
                            t.matrices = located(lineno, tok[i].col, [&] { return split_word(tok[i].text); });
                            ++i;
                        }
                        e.terms.push_back(std::move(t));
                        if (i < tok.size()) {
                            if (tok[i].text != "+") fail(tok[i].col, "expected '+' between terms");
                            ++i;
                            if (i == tok.size()) fail(tok[i - 1].col, "dangling '+'");
                        }
                    }
                    located(lineno, col, [&] { b.element(std::move(e)); });
                } else {
                    fail(col, "expected 'matrix' or 'element'");
                }
                break;
            case Section::bimodule: {
                if (tok.size() != 3 || tok[1].text != ":") fail(col, "expected '{..} : <multiplicity>'");
                auto set = located(lineno, col, [&] { return set_names(head); });
                auto k = located(lineno, tok[2].col, [&] { return ExtNat::parse(tok[2].text); });
                located(lineno, col, [&] { b.bimodule_entry(std::move(set), std::move(k)); });
                break;
            }
        }
    }
    located(lineno ? lineno : 1, 1, [&] { b.finish(); });
    return b.p;
}

std::string serialize_problem(const ProblemFile& p) {
    std::string out = "GRAPH\nvertices";
    for (const auto& v : p.vertices) out += " " + v;
    out += "\n";
    for (const auto& [a, b] : p.edges) out += "edge " + a + " " + b + "\n";
    out += "ALGEBRA\n";
    for (const auto& [v, spec] : p.algebras) {
        out += v;
        switch (spec.kind) {
            case AlgebraSpec::Kind::preset:
                out += " preset " + spec.preset;
                if (preset_takes_arg(spec.preset)) out += " " + std::to_string(spec.preset_arg);
                break;
            case AlgebraSpec::Kind::descriptor: out += " descriptor " + format_descriptor(spec.descriptor); break;
            case AlgebraSpec::Kind::concrete: out += " concrete" + format_blocks(*spec.concrete); break;
        }
        out += "\n";
    }
    if (!p.matrices.empty() || !p.elements.empty()) {
        out += "ELEMENT\n";
        for (const auto& m : p.matrices) out += "matrix " + m.name + " " + m.vertex + " = " + format_matrix(m.matrix) + "\n";
        for (const auto& e : p.elements) {
            out += "element " + e.name + " =";
            for (std::size_t i = 0; i < e.terms.size(); ++i) {
                if (i) out += " +";
                out += " (" + e.terms[i].coefficient.to_string() + ")";
                if (!e.terms[i].matrices.empty()) {
                    out += " ";
                    for (std::size_t k = 0; k < e.terms[i].matrices.size(); ++k) {
                        out += (k ? "*" : "") + e.terms[i].matrices[k];
                    }
                }
            }
            out += "\n";
        }
    }
    for (const auto& b : p.bimodules) {
        out += "BIMODULE " + b.name + " left=" + format_names(b.left) + " right=" + format_names(b.right) + "\n";
        for (const auto& [set, k] : b.entries) out += format_names(set) + " : " + k.to_string() + "\n";
    }
    return out;
}

namespace {

json algebra_json(const std::string& v, const AlgebraSpec& spec) {
    json j{{"vertex", v}};
    switch (spec.kind) {
        case AlgebraSpec::Kind::preset:
            j["preset"] = spec.preset;
            if (preset_takes_arg(spec.preset)) j["arg"] = spec.preset_arg;
            break;
        case AlgebraSpec::Kind::descriptor: {
            const auto& d = spec.descriptor;
            j["descriptor"] = {{"l2dim", d.l2dim.to_string()}, {"amenable", d.amenable}, {"diffuse", d.diffuse},
                               {"factor", d.factor},           {"full", d.full},         {"szu", d.state_zero_unitary},
                               {"tracial", d.tracial}};
            break;
        }
        case AlgebraSpec::Kind::concrete: {
            json blocks = json::array();
            for (const auto& b : spec.concrete->blocks()) {
                json spectrum = json::array();
                for (const auto& e : b.spectrum) spectrum.push_back({rational_to_string(e.eigenvalue), e.multiplicity});
                blocks.push_back({{"size", b.size}, {"spectrum", spectrum}});
            }
            j["concrete"] = blocks;
            break;
        }
    }
    return j;
}

json matrix_json(const MatrixSpec& m) {
    json blocks = json::array();
    for (std::size_t j = 0; j < m.matrix.block_count(); ++j) {
        json rows = json::array();
        const int n = m.matrix.block_size(j);
        for (int r = 0; r < n; ++r) {
            json row = json::array();
            for (int c = 0; c < n; ++c) row.push_back(m.matrix.at(j, r, c).to_string());
            rows.push_back(row);
        }
        blocks.push_back(rows);
    }
    return {{"name", m.name}, {"vertex", m.vertex}, {"blocks", blocks}};
}

std::string get_string(const json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_string()) throw std::invalid_argument(std::string("missing string field '") + key + "'");
    return j[key].get<std::string>();
}

const json& get_array(const json& j, const char* key) {
    static const json empty = json::array();
    if (!j.contains(key)) return empty;
    if (!j[key].is_array()) throw std::invalid_argument(std::string("field '") + key + "' must be an array");
    return j[key];
}

}  // namespace

std::string serialize_problem_json(const ProblemFile& p) {
    json j;
    j["format"] = "gpcalc-problem";
    j["version"] = 1;
    json edges = json::array();
    for (const auto& [a, b] : p.edges) edges.push_back({a, b});
    j["graph"] = {{"vertices", p.vertices}, {"edges", edges}};
    json algs = json::array();
    for (const auto& [v, spec] : p.algebras) algs.push_back(algebra_json(v, spec));
    j["algebras"] = algs;
    json mats = json::array();
    for (const auto& m : p.matrices) mats.push_back(matrix_json(m));
    j["matrices"] = mats;
    json elems = json::array();
    for (const auto& e : p.elements) {
        json terms = json::array();
        for (const auto& t : e.terms) terms.push_back({{"coefficient", t.coefficient.to_string()}, {"word", t.matrices}});
        elems.push_back({{"name", e.name}, {"terms", terms}});
    }
    j["elements"] = elems;
    json bims = json::array();
    for (const auto& b : p.bimodules) {
        json entries = json::array();
        for (const auto& [set, k] : b.entries) entries.push_back({{"set", set}, {"multiplicity", k.to_string()}});
        bims.push_back({{"name", b.name}, {"left", b.left}, {"right", b.right}, {"entries", entries}});
    }
    j["bimodules"] = bims;
    return j.dump(2) + "\n";
}

ProblemFile parse_problem_json(std::string_view text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        // Byte offset to line and column.
        std::size_t line = 1, col = 1;
        const std::size_t stop = std::min(e.byte == 0 ? 0 : e.byte - 1, text.size());
        for (std::size_t i = 0; i < stop; ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw ParseError(line, col, "malformed JSON");
    }
    return located(1, 1, [&] {
        if (!j.is_object()) throw std::invalid_argument("top level must be an object");
        if (j.value("format", "") != "gpcalc-problem") throw std::invalid_argument("format must be \"gpcalc-problem\"");
        if (j.value("version", 0) != 1) throw std::invalid_argument("unsupported problem version");
        Builder b;
        const json& graph = j.at("graph");
        b.vertices(graph.at("vertices").get<std::vector<std::string>>());
        for (const auto& e : get_array(graph, "edges")) {
            auto pair = e.get<std::vector<std::string>>();
            if (pair.size() != 2) throw std::invalid_argument("edge must have two endpoints");
            b.edge(pair[0], pair[1]);
        }
        for (const auto& a : get_array(j, "algebras")) {
            const std::string v = get_string(a, "vertex");
            if (a.contains("preset")) {
                const std::string name = get_string(a, "preset");
                b.algebra(v, make_preset(name, preset_takes_arg(name) ? a.at("arg").get<int>() : 0));
            } else if (a.contains("descriptor")) {
                std::vector<std::pair<std::string, std::string>> kvs;
                for (const auto& [k, val] : a["descriptor"].items()) {
                    kvs.emplace_back(k, val.is_boolean() ? (val.get<bool>() ? "yes" : "no")
                                        : val.is_number() ? std::to_string(val.get<long long>())
                                                          : val.get<std::string>());
                }
                b.algebra(v, make_descriptor(kvs));
            } else if (a.contains("concrete")) {
                std::vector<Block> blocks;
                for (const auto& bj : a["concrete"]) {
                    Block blk;
                    blk.size = bj.at("size").get<int>();
                    for (const auto& e : bj.at("spectrum")) {
                        blk.spectrum.push_back({parse_rational(e.at(0).get<std::string>()), e.at(1).get<int>()});
                    }
                    blocks.push_back(std::move(blk));
                }
                b.algebra(v, make_concrete(std::move(blocks)));
            } else {
                throw std::invalid_argument("algebra entry needs preset, descriptor or concrete");
            }
        }
        for (const auto& m : get_array(j, "matrices")) {
            MatrixSpec spec;
            spec.name = get_string(m, "name");
            spec.vertex = get_string(m, "vertex");
            std::string body;
            for (const auto& blk : m.at("blocks")) {
                body += "[";
                bool first_row = true;
                for (const auto& row : blk) {
                    if (!first_row) body += ";";
                    first_row = false;
                    for (const auto& entry : row) body += " " + entry.get<std::string>();
                }
                body += "] ";
            }
            spec.matrix = parse_matrix_body(body, b.concrete_of(spec.vertex));
            b.matrix(std::move(spec));
        }
        for (const auto& e : get_array(j, "elements")) {
            ElementSpec spec;
            spec.name = get_string(e, "name");
            for (const auto& t : get_array(e, "terms")) {
                ElementTermSpec term;
                term.coefficient = Gauss::parse(get_string(t, "coefficient"));
                term.matrices = t.value("word", std::vector<std::string>{});
                spec.terms.push_back(std::move(term));
            }
            b.element(std::move(spec));
        }
        for (const auto& bm : get_array(j, "bimodules")) {
            BimoduleSpec spec;
            spec.name = get_string(bm, "name");
            spec.left = bm.at("left").get<std::vector<std::string>>();
            spec.right = bm.at("right").get<std::vector<std::string>>();
            b.bimodule(std::move(spec));
            for (const auto& entry : get_array(bm, "entries")) {
                b.bimodule_entry(entry.at("set").get<std::vector<std::string>>(),
                                 ExtNat::parse(get_string(entry, "multiplicity")));
            }
        }
        b.finish();
        return b.p;
    });
}

ProblemFile parse_problem(std::string_view text) {
    auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string_view::npos && text[first] == '{') return parse_problem_json(text);
    return parse_problem_text(text);
}

Graph build_graph(const ProblemFile& p) { return Graph(p.vertices, p.edges); }

namespace {

const AlgebraSpec& spec_for(const ProblemFile& p, const std::string& v) {
    for (const auto& [name, spec] : p.algebras) {
        if (name == v) return spec;
    }
    throw Error(ErrorKind::missing_descriptor, "vertex '" + v + "' has no algebra");
}

}  // namespace

Descriptors build_descriptors(const ProblemFile& p, const Graph& g) {
    Descriptors d;
    for (Vertex v : g.vertices()) d.push_back(spec_for(p, g.name(v)).descriptor);
    return d;
}

std::vector<ExtNat> build_dims(const ProblemFile& p, const Graph& g) {
    std::vector<ExtNat> out;
    for (const auto& d : build_descriptors(p, g)) out.push_back(d.l2dim);
    return out;
}

GraphProduct build_graph_product(const ProblemFile& p, const Graph& g) {
    std::vector<ConcreteAlgebra> algs;
    for (Vertex v : g.vertices()) {
        const auto& spec = spec_for(p, g.name(v));
        if (!spec.concrete) {
            throw Error(ErrorKind::invalid_argument, "vertex '" + g.name(v) + "' needs a concrete algebra for moments");
        }
        algs.push_back(*spec.concrete);
    }
    return GraphProduct(g, std::move(algs));
}

Element build_element(const ProblemFile& p, const GraphProduct& gp, const std::string& name) {
    auto it = std::find_if(p.elements.begin(), p.elements.end(), [&](const ElementSpec& e) { return e.name == name; });
    if (it == p.elements.end()) throw Error(ErrorKind::invalid_argument, "unknown element '" + name + "'");
    std::vector<Term> terms;
    for (const auto& t : it->terms) {
        Term term{t.coefficient, {}};
        for (const auto& m : t.matrices) {
            auto mt = std::find_if(p.matrices.begin(), p.matrices.end(), [&](const MatrixSpec& s) { return s.name == m; });
            term.letters.push_back(Letter{gp.graph().index_of(mt->vertex), mt->matrix});
        }
        terms.push_back(std::move(term));
    }
    return Element(std::move(terms));
}

FormalBimodule build_bimodule(const ProblemFile& p, const Graph& g, const std::string& name) {
    auto it = std::find_if(p.bimodules.begin(), p.bimodules.end(), [&](const BimoduleSpec& b) { return b.name == name; });
    if (it == p.bimodules.end()) throw Error(ErrorKind::invalid_argument, "unknown bimodule '" + name + "'");
    auto to_set = [&](const std::vector<std::string>& names) {
        VertexSet s;
        for (const auto& n : names) s.insert(g.index_of(n));
        return s;
    };
    FormalBimodule b(to_set(it->left), to_set(it->right));
    for (const auto& [set, k] : it->entries) b.add(to_set(set), k);
    return b;
}

}  // namespace gpcalc
