#pragma once

// Re-derives every clause of a verdict from the graph and descriptors alone.

#include <map>
#include <string>

#include "gpcalc/decider.hpp"

namespace oracle {

struct WitnessContext {
    gpcalc::VertexSet v1;  // relative operations
    gpcalc::VertexSet v2;
    gpcalc::VertexSet v0;  // weak coarseness
    gpcalc::Mode mode = gpcalc::Mode::tracial;
    std::map<std::pair<gpcalc::Vertex, gpcalc::Vertex>, bool> assumptions;
};

// Empty on success, else a description of the first inconsistency.
std::string check_witness(const gpcalc::Graph& g, const gpcalc::Descriptors& d, const gpcalc::Verdict& v,
                          const WitnessContext& ctx = {});

// Amenability of the graph product from the pair characterization, written directly.
bool amenable_product(const gpcalc::Graph& g, const gpcalc::Descriptors& d, gpcalc::VertexSet s);

}  // namespace oracle
