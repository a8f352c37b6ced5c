#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "gpcalc/graph.hpp"
#include "gpcalc/vertex_algebra.hpp"

namespace gpcalc {

enum class Truth { yes, no, unknown };

const char* to_string(Truth t);
// No dominates Unknown dominates Yes.
Truth conjunction(Truth a, Truth b);
Truth disjunction(Truth a, Truth b);

// One evaluated theorem condition. `at` lists the vertices the condition was
// evaluated on, in the order the condition names them.
struct Clause {
    std::string id;  // e.g. "ThmD.3.a"
    Truth value = Truth::yes;
    std::vector<Vertex> at;
    std::string note;
    std::vector<Clause> children;

    bool operator==(const Clause&) const = default;
};

// "ThmD.3.a fails at b", "ThmB.2.b fails at (v,w,u)", "ThmD.1 holds".
std::string label(const Graph& g, const Clause& c);

struct Verdict {
    Truth value = Truth::unknown;
    Clause witness;  // root clause; its value equals `value`

    // Labels of the leaves whose value equals the verdict, depth first.
    std::vector<std::string> reasons(const Graph& g) const;
};

enum class Property { diffuse, factor, full, amenable };
enum class Mode { tracial, statial };

const char* to_string(Property p);
Property parse_property(const std::string& s);
const char* to_string(Mode m);
Mode parse_mode(const std::string& s);

using Descriptors = std::vector<AlgebraDescriptor>;

// Throws Error(missing_descriptor) unless there is one descriptor per vertex.
void check_descriptors(const Graph& g, const Descriptors& d);

// Clause-wise evaluation of the diffuse/factor/full characterization and the amenability
// characterization. A vertex without a state-zero unitary makes diffuse/factor/full Unknown.
Verdict decide_global(const Graph& g, const Descriptors& d, Property p);

// Independent pipeline: join components, then the per-component table
// (singleton: vertex flags; pair: dimension test; three or more: diffuse full factor, not amenable).
Verdict decide_global_via_join(const Graph& g, const Descriptors& d, Property p);

struct RelativeAmenabilityOptions {
    // Statial mode, w in V2, max dim >= 3: whether M_v * M_w is amenable relative to M_w,
    // keyed by (v, w).
    std::map<std::pair<Vertex, Vertex>, bool> assumptions;
    // Report a failed hypothesis as Unknown instead of throwing.
    bool override_hypotheses = false;
};

// Throws HypothesisViolation when a vertex lacks a state-zero unitary, or in tracial mode
// when a vertex is not tracial.
Verdict decide_relative_amenability(const Graph& g, const Descriptors& d, VertexSet v1, VertexSet v2, Mode mode,
                                    const RelativeAmenabilityOptions& options = {});

// The local vertex condition (clause RelDiff.iv) decides; the subalgebra condition
// (RelDiff.iii) is evaluated independently and must agree. Throws HypothesisViolation on non-tracial input or a missing trace-zero
// unitary unless overridden.
Verdict decide_relative_diffuseness(const Graph& g, const Descriptors& d, VertexSet v1, VertexSet v2,
                                    bool override_hypotheses = false);

}  // namespace gpcalc
