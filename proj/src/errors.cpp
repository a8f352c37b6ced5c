#include "gpcalc/errors.hpp"

namespace gpcalc {

const char* to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::unknown_vertex: return "unknown-vertex";
        case ErrorKind::empty_graph: return "empty-graph";
        case ErrorKind::too_many_vertices: return "too-many-vertices";
        case ErrorKind::non_reduced_input: return "non-reduced-input";
        case ErrorKind::invalid_target: return "invalid-target";
        case ErrorKind::weight_zero: return "weight-zero";
        case ErrorKind::invalid_state: return "invalid-state";
        case ErrorKind::non_tracial_input: return "non-tracial-input";
        case ErrorKind::nonconforming_matrix: return "nonconforming-matrix";
        case ErrorKind::invalid_linkset: return "invalid-linkset";
        case ErrorKind::mismatched_middle: return "mismatched-middle-set";
        case ErrorKind::missing_descriptor: return "missing-descriptor";
        case ErrorKind::hypothesis_violation: return "hypothesis-violation";
        case ErrorKind::parse_error: return "parse-error";
        case ErrorKind::invalid_argument: return "invalid-argument";
    }
    return "error";
}

}  // namespace gpcalc
