#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "gpcalc/bimodule.hpp"
#include "gpcalc/decider.hpp"
#include "gpcalc/ext_nat.hpp"
#include "gpcalc/gauss.hpp"
#include "gpcalc/graph.hpp"
#include "gpcalc/moments.hpp"
#include "gpcalc/vertex_algebra.hpp"

namespace gpcalc {

// How an algebra was written down; kept so that serialization reproduces the input.
struct AlgebraSpec {
    enum class Kind { preset, descriptor, concrete };
    Kind kind = Kind::descriptor;
    std::string preset;      // cyclic, matrix, integers, free, hyperfinite
    int preset_arg = 0;      // order, size or rank; 0 when unused
    AlgebraDescriptor descriptor;
    std::optional<ConcreteAlgebra> concrete;

    bool operator==(const AlgebraSpec&) const = default;
};

struct MatrixSpec {
    std::string name;
    std::string vertex;
    Matrix matrix;

    bool operator==(const MatrixSpec&) const = default;
};

struct ElementTermSpec {
    Gauss coefficient;
    std::vector<std::string> matrices;  // empty: the identity

    bool operator==(const ElementTermSpec&) const = default;
};

struct ElementSpec {
    std::string name;
    std::vector<ElementTermSpec> terms;

    bool operator==(const ElementSpec&) const = default;
};

struct BimoduleSpec {
    std::string name;
    std::vector<std::string> left;
    std::vector<std::string> right;
    std::vector<std::pair<std::vector<std::string>, ExtNat>> entries;

    bool operator==(const BimoduleSpec&) const = default;
};

struct ProblemFile {
    std::vector<std::string> vertices;
    std::vector<std::pair<std::string, std::string>> edges;
    std::vector<std::pair<std::string, AlgebraSpec>> algebras;  // declaration order
    std::vector<MatrixSpec> matrices;
    std::vector<ElementSpec> elements;
    std::vector<BimoduleSpec> bimodules;

    bool operator==(const ProblemFile&) const = default;
};

// Text or JSON, detected by the first non-blank character. Throws ParseError with
// line and column, or Error for semantic violations (unknown vertex, invalid state).
ProblemFile parse_problem(std::string_view text);
ProblemFile parse_problem_text(std::string_view text);
ProblemFile parse_problem_json(std::string_view text);

std::string serialize_problem(const ProblemFile& p);
std::string serialize_problem_json(const ProblemFile& p);

// Semantic views. Each throws Error(missing_descriptor) or Error(invalid_argument)
// when the problem lacks what the view needs.
Graph build_graph(const ProblemFile& p);
Descriptors build_descriptors(const ProblemFile& p, const Graph& g);
std::vector<ExtNat> build_dims(const ProblemFile& p, const Graph& g);
GraphProduct build_graph_product(const ProblemFile& p, const Graph& g);
Element build_element(const ProblemFile& p, const GraphProduct& gp, const std::string& name);
FormalBimodule build_bimodule(const ProblemFile& p, const Graph& g, const std::string& name);

}  // namespace gpcalc
