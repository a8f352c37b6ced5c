#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "gpcalc/ext_nat.hpp"
#include "gpcalc/graph.hpp"
#include "gpcalc/kernels.hpp"
#include "gpcalc/words.hpp"

namespace gpcalc {

// all_words accepts every relatively reduced word; normal_forms additionally
// requires lexicographic normal form, so each equivalence class is accepted once.
enum class Representatives { all_words, normal_forms };

struct AutomatonState {
    VertexSet blocked;   // letters that cannot be appended, V1 counted as a virtual prefix
    VertexSet link;      // members of V1 & V2 adjacent to every letter so far
    VertexSet smaller;   // letters that would be lex-movable past a larger letter (normal_forms only)

    bool operator==(const AutomatonState&) const = default;
};

class ReducednessAutomaton {
public:
    static constexpr int initial = 0;

    const Graph& graph() const noexcept { return graph_; }
    VertexSet left_set() const noexcept { return left_; }
    VertexSet right_set() const noexcept { return right_; }
    const std::optional<VertexSet>& target() const noexcept { return target_; }
    Representatives representatives() const noexcept { return reps_; }

    int state_count() const noexcept { return table_.states; }
    const AutomatonState& state(int s) const { return states_.at(static_cast<std::size_t>(s)); }
    // Successor or -1.
    int next(int s, Vertex u) const {
        return table_.next[static_cast<std::size_t>(s * table_.letters + u)];
    }
    bool accepting(int s) const { return accepting_[static_cast<std::size_t>(s)]; }
    bool accepts(const Word& w) const;
    const kernels::TransferTable& table() const noexcept { return table_; }

private:
    friend ReducednessAutomaton build_automaton(const Graph&, VertexSet, VertexSet, std::optional<VertexSet>,
                                                Representatives);
    Graph graph_;
    VertexSet left_, right_;
    std::optional<VertexSet> target_;
    Representatives reps_ = Representatives::all_words;
    std::vector<AutomatonState> states_;
    std::vector<bool> accepting_;
    kernels::TransferTable table_;
};

// Only reachable states are materialized; with a target, states whose link set no
// longer contains the target are dropped. Throws Error(invalid_target).
ReducednessAutomaton build_automaton(const Graph& g, VertexSet v1, VertexSet v2,
                                     std::optional<VertexSet> target = std::nullopt,
                                     Representatives reps = Representatives::all_words);

struct WordCounts {
    std::vector<ExtNat> per_length;  // lengths 0..length
    ExtNat total;
    bool language_finite = true;
};

// Some accepting state is reachable from a reachable cycle.
bool language_infinite(const ReducednessAutomaton& a);

// weights are indexed by vertex and must be >= 1. Throws Error(weight_zero).
WordCounts count_words(const ReducednessAutomaton& a, std::size_t length, const std::vector<ExtNat>& weights,
                       ExecutionPolicy policy = ExecutionPolicy::parallel);

}  // namespace gpcalc
