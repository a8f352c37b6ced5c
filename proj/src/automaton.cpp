#include "gpcalc/automaton.hpp"

#include <array>
#include <deque>
#include <map>

#include "gpcalc/errors.hpp"

namespace gpcalc {

bool ReducednessAutomaton::accepts(const Word& w) const {
    int s = initial;
    for (Vertex u : w) {
        if (u < 0 || u >= graph_.size()) throw Error(ErrorKind::unknown_vertex, "letter outside the graph");
        s = next(s, u);
        if (s < 0) return false;
    }
    return accepting(s);
}

ReducednessAutomaton build_automaton(const Graph& g, VertexSet v1, VertexSet v2, std::optional<VertexSet> target,
                                     Representatives reps) {
    if (!v1.subset_of(g.vertices()) || !v2.subset_of(g.vertices())) {
        throw Error(ErrorKind::unknown_vertex, "vertex set outside the graph");
    }
    if (target && !target->subset_of(v1 & v2)) {
        throw Error(ErrorKind::invalid_target, "linkset target is not contained in V1 & V2");
    }
    ReducednessAutomaton a;
    a.graph_ = g;
    a.left_ = v1;
    a.right_ = v2;
    a.target_ = target;
    a.reps_ = reps;
    const int n = g.size();
    a.table_.letters = n;

    using Key = std::array<std::uint64_t, 3>;
    std::map<Key, int> index;
    auto intern = [&](const AutomatonState& st) {
        Key key{st.blocked.bits(), st.link.bits(), st.smaller.bits()};
        auto [it, fresh] = index.emplace(key, static_cast<int>(a.states_.size()));
        if (fresh) a.states_.push_back(st);
        return it->second;
    };

    intern(AutomatonState{v1, v1 & v2, VertexSet{}});
    for (std::size_t s = 0; s < a.states_.size(); ++s) {
        for (Vertex u = 0; u < n; ++u) {
            const AutomatonState cur = a.states_[s];
            int dest = -1;
            bool allowed = !cur.blocked.contains(u);
            if (reps == Representatives::normal_forms && cur.smaller.contains(u)) allowed = false;
            if (allowed) {
                AutomatonState nxt;
                nxt.blocked = (cur.blocked & g.link(u)) | VertexSet::single(u);
                nxt.link = cur.link & g.link(u);
                if (reps == Representatives::normal_forms) {
                    nxt.smaller = (cur.smaller & g.link(u)) | (g.link(u) & VertexSet::first(u));
                }
                if (!target || target->subset_of(nxt.link)) dest = intern(nxt);
            }
            a.table_.next.push_back(dest);
        }
    }
    a.table_.states = static_cast<int>(a.states_.size());
    a.accepting_.resize(a.states_.size());
    for (std::size_t s = 0; s < a.states_.size(); ++s) {
        const auto& st = a.states_[s];
        // A member of `link` is adjacent to every letter, so it never occurs in the word; the
        // letters of V2 blocked by the word alone are therefore (blocked & v2) - link.
        a.accepting_[s] = (st.blocked & v2).subset_of(st.link) && (!target || st.link == *target);
    }
    return a;
}

bool language_infinite(const ReducednessAutomaton& a) {
    const int states = a.state_count();
    const int letters = a.graph().size();
    // States that can reach acceptance.
    std::vector<std::vector<int>> preds(static_cast<std::size_t>(states));
    for (int s = 0; s < states; ++s) {
        for (int u = 0; u < letters; ++u) {
            int t = a.next(s, u);
            if (t >= 0) preds[static_cast<std::size_t>(t)].push_back(s);
        }
    }
    std::vector<bool> live(static_cast<std::size_t>(states), false);
    std::deque<int> queue;
    for (int s = 0; s < states; ++s) {
        if (a.accepting(s)) {
            live[static_cast<std::size_t>(s)] = true;
            queue.push_back(s);
        }
    }
    while (!queue.empty()) {
        int t = queue.front();
        queue.pop_front();
        for (int s : preds[static_cast<std::size_t>(t)]) {
            if (!live[static_cast<std::size_t>(s)]) {
                live[static_cast<std::size_t>(s)] = true;
                queue.push_back(s);
            }
        }
    }
    // Every materialized state is reachable; a cycle among live states means infinitely many words.
    std::vector<int> indegree(static_cast<std::size_t>(states), 0);
    for (int s = 0; s < states; ++s) {
        if (!live[static_cast<std::size_t>(s)]) continue;
        for (int u = 0; u < letters; ++u) {
            int t = a.next(s, u);
            if (t >= 0 && live[static_cast<std::size_t>(t)]) ++indegree[static_cast<std::size_t>(t)];
        }
    }
    int remaining = 0;
    for (int s = 0; s < states; ++s) {
        if (!live[static_cast<std::size_t>(s)]) continue;
        ++remaining;
        if (indegree[static_cast<std::size_t>(s)] == 0) queue.push_back(s);
    }
    while (!queue.empty()) {
        int s = queue.front();
        queue.pop_front();
        --remaining;
        for (int u = 0; u < letters; ++u) {
            int t = a.next(s, u);
            if (t >= 0 && live[static_cast<std::size_t>(t)] && --indegree[static_cast<std::size_t>(t)] == 0) {
                queue.push_back(t);
            }
        }
    }
    return remaining > 0;
}

WordCounts count_words(const ReducednessAutomaton& a, std::size_t length, const std::vector<ExtNat>& weights,
                       ExecutionPolicy policy) {
    if (weights.size() != static_cast<std::size_t>(a.graph().size())) {
        throw Error(ErrorKind::invalid_argument, "one weight per vertex is required");
    }
    for (const auto& w : weights) {
        if (w.is_zero()) throw Error(ErrorKind::weight_zero, "vertex weight must be at least 1");
    }
    WordCounts out;
    out.language_finite = !language_infinite(a);
    // A finite language has no accepted word longer than the number of states.
    const std::size_t horizon =
        out.language_finite ? std::max(length, static_cast<std::size_t>(a.state_count())) : length;

    kernels::ReverseTransfer reverse;
    if (policy == ExecutionPolicy::parallel) reverse = kernels::reverse_of(a.table());
    std::vector<ExtNat> dist(static_cast<std::size_t>(a.state_count()));
    dist[ReducednessAutomaton::initial] = ExtNat(1);
    ExtNat total;
    for (std::size_t len = 0; len <= horizon; ++len) {
        ExtNat here;
        bool any = false;
        for (int s = 0; s < a.state_count(); ++s) {
            const auto& d = dist[static_cast<std::size_t>(s)];
            if (d.is_zero()) continue;
            any = true;
            if (a.accepting(s)) here += d;
        }
        if (len <= length) out.per_length.push_back(here);
        total += here;
        if (!any) {
            out.per_length.resize(length + 1);
            break;
        }
        if (len == horizon) break;
        dist = policy == ExecutionPolicy::parallel ? kernels::transfer_step_parallel(reverse, dist, weights)
                                                   : kernels::transfer_step_serial(a.table(), dist, weights);
    }
    out.total = out.language_finite ? total : ExtNat::infinity();
    return out;
}

}  // namespace gpcalc
