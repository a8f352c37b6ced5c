#include <doctest.h>

#include <random>

#include "gpcalc/automaton.hpp"
#include "gpcalc/errors.hpp"
#include "oracles.hpp"

using namespace gpcalc;

namespace {

std::vector<ExtNat> unit(int n) { return std::vector<ExtNat>(static_cast<std::size_t>(n), ExtNat(1)); }

Graph complete(int n) {
    std::vector<std::pair<Vertex, Vertex>> e;
    for (int a = 0; a < n; ++a) {
        for (int b = a + 1; b < n; ++b) e.emplace_back(a, b);
    }
    return Graph::from_indices(n, e);
}

mpz_class falling(int n, int k) {
    mpz_class r = 1;
    for (int i = 0; i < k; ++i) r *= n - i;
    return r;
}

}  // namespace

TEST_SUITE("automaton") {

TEST_CASE("edgeless pair with opposite sides accepts alternating words") {
    const Graph g({"v", "w"}, {});
    const auto a = build_automaton(g, VertexSet::single(0), VertexSet::single(1));
    std::vector<Word> accepted;
    for (const auto& x : oracle::all_words(2, 3)) {
        if (a.accepts(x)) accepted.push_back(x);
    }
    CHECK(accepted == std::vector<Word>{{}, {1, 0}});
    const auto c = count_words(a, 10, unit(2));
    for (std::size_t l = 0; l <= 10; ++l) CHECK(c.per_length[l] == ExtNat(l % 2 == 0 ? 1 : 0));
    CHECK_FALSE(c.language_finite);
    CHECK(c.total.is_infinite());
}

TEST_CASE("full sides accept only the empty word") {
    for (const auto& g : oracle::graph_classes(4)) {
        const auto a = build_automaton(g, g.vertices(), g.vertices());
        for (const auto& x : oracle::all_words(4, 3)) CHECK(a.accepts(x) == x.empty());
        CHECK(count_words(a, 5, unit(4)).total == ExtNat(1));
    }
}

TEST_CASE("complete graph with empty sides: repetition-free words") {
    for (int n = 1; n <= 5; ++n) {
        const Graph g = complete(n);
        const auto a = build_automaton(g, {}, {});
        for (const auto& x : oracle::all_words(n, std::min(n + 1, 5))) {
            bool distinct = true;
            for (std::size_t i = 0; i < x.size(); ++i) {
                for (std::size_t j = i + 1; j < x.size(); ++j) distinct = distinct && x[i] != x[j];
            }
            CHECK(a.accepts(x) == distinct);
        }
        const auto c = count_words(a, static_cast<std::size_t>(n + 2), unit(n));
        for (int l = 0; l <= n + 2; ++l) {
            CHECK(c.per_length[static_cast<std::size_t>(l)] == ExtNat(l <= n ? falling(n, l) : mpz_class(0)));
        }
        CHECK(c.language_finite);
    }
}

TEST_CASE("edgeless graph counts") {
    for (int n = 2; n <= 5; ++n) {
        const Graph g = Graph::from_indices(n, {});
        const auto c = count_words(build_automaton(g, {}, {}), 8, unit(n));
        CHECK(c.per_length[0] == ExtNat(1));
        mpz_class expect = n;
        for (std::size_t l = 1; l <= 8; ++l) {
            CHECK(c.per_length[l] == ExtNat(expect));
            expect *= n - 1;
        }
    }
}

TEST_CASE("target outside the shared set is rejected") {
    const Graph g({"a", "b", "c"}, {{"a", "b"}});
    try {
        build_automaton(g, VertexSet(0b011), VertexSet(0b110), VertexSet(0b001));
        FAIL("bad target accepted");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::invalid_target);
    }
}

TEST_CASE("zero weight is rejected") {
    const Graph g({"a", "b"}, {});
    const auto a = build_automaton(g, {}, {});
    try {
        count_words(a, 3, {ExtNat(1), ExtNat(0)});
        FAIL("zero weight accepted");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::weight_zero);
    }
}

TEST_CASE("acceptance matches the definition on graphs up to 4 vertices") {
    for (const auto& g : [] {
             std::vector<Graph> gs;
             for (int n = 1; n <= 4; ++n) {
                 for (auto& g : oracle::graph_classes(n)) gs.push_back(std::move(g));
             }
             return gs;
         }()) {
        const std::uint64_t all = g.vertices().bits();
        const auto words = oracle::all_words(g.size(), 5);
        for (std::uint64_t s = 0; s <= all; ++s) {
            for (std::uint64_t t = 0; t <= all; ++t) {
                const VertexSet v1(s), v2(t);
                const auto plain = build_automaton(g, v1, v2);
                const std::uint64_t pool = s & t;
                std::uint64_t u = 0;
                std::vector<ReducednessAutomaton> targeted;
                std::vector<VertexSet> targets;
                do {
                    targets.emplace_back(u);
                    targeted.push_back(build_automaton(g, v1, v2, VertexSet(u)));
                    u = (u - pool) & pool;
                } while (u != 0);
                const std::size_t bound = std::size_t{1} << (g.size() + VertexSet(pool).size());
                CHECK(static_cast<std::size_t>(plain.state_count()) <= bound);
                for (const auto& x : words) {
                    const bool rr = oracle::relatively_reduced(g, x, v1, v2);
                    CHECK(plain.accepts(x) == rr);
                    const VertexSet link = oracle::linkset(g, x, v1 & v2);
                    for (std::size_t k = 0; k < targets.size(); ++k) {
                        CHECK(targeted[k].accepts(x) == (rr && link == targets[k]));
                    }
                }
            }
        }
    }
}

TEST_CASE("normal-form automaton accepts one word per class") {
    for (int n = 1; n <= 4; ++n) {
        for (const auto& g : oracle::graph_classes(n)) {
            const std::uint64_t all = g.vertices().bits();
            const auto words = oracle::all_words(n, 5);
            for (std::uint64_t s = 0; s <= all; s += 1 + all / 5) {
                for (std::uint64_t t = 0; t <= all; t += 1 + all / 5) {
                    const auto a = build_automaton(g, VertexSet(s), VertexSet(t), std::nullopt,
                                                   Representatives::normal_forms);
                    for (const auto& x : words) {
                        const bool expected = oracle::relatively_reduced(g, x, VertexSet(s), VertexSet(t)) &&
                                              normal_form(g, x) == x;
                        CHECK(a.accepts(x) == expected);
                    }
                }
            }
        }
    }
}

TEST_CASE("weighted counts match enumeration and serial equals parallel") {
    std::mt19937_64 rng(23);
    for (int t = 0; t < 60; ++t) {
        const int n = 2 + t % 4;
        const Graph g = oracle::random_graph(n, 0.5, rng);
        std::uniform_int_distribution<std::uint64_t> sub(0, g.vertices().bits());
        const VertexSet v1(sub(rng)), v2(sub(rng));
        std::vector<ExtNat> w;
        for (int v = 0; v < n; ++v) w.emplace_back(1 + static_cast<int>(rng() % 3));
        const auto a = build_automaton(g, v1, v2);
        const auto serial = count_words(a, 5, w, ExecutionPolicy::serial);
        const auto parallel = count_words(a, 5, w, ExecutionPolicy::parallel);
        CHECK(serial.per_length == parallel.per_length);
        CHECK(serial.total == parallel.total);
        std::vector<ExtNat> brute(6, ExtNat(0));
        for (const auto& x : oracle::all_words(n, 5)) {
            if (!oracle::relatively_reduced(g, x, v1, v2)) continue;
            ExtNat p(1);
            for (Vertex v : x) p *= w[static_cast<std::size_t>(v)];
            brute[x.size()] += p;
        }
        CHECK(serial.per_length == brute);
    }
}

TEST_CASE("infinite weights are symbolic") {
    const Graph g({"a", "b"}, {{"a", "b"}});
    const auto a = build_automaton(g, {}, {});
    const auto c = count_words(a, 3, {ExtNat::infinity(), ExtNat(2)});
    CHECK(c.per_length[0] == ExtNat(1));
    CHECK(c.per_length[1].is_infinite());
    CHECK(c.per_length[3] == ExtNat(0));
    CHECK(c.language_finite);
    CHECK(c.total.is_infinite());
    const auto f = count_words(a, 3, {ExtNat(3), ExtNat(2)});
    CHECK(f.total == ExtNat(1 + 5 + 12));
}

TEST_CASE("finiteness matches growth") {
    std::mt19937_64 rng(41);
    for (int t = 0; t < 80; ++t) {
        const int n = 1 + t % 5;
        const Graph g = oracle::random_graph(n, 0.5, rng);
        std::uniform_int_distribution<std::uint64_t> sub(0, g.vertices().bits());
        const auto a = build_automaton(g, VertexSet(sub(rng)), VertexSet(sub(rng)));
        // A finite language over n letters has no accepted word longer than the state count.
        const std::size_t far = static_cast<std::size_t>(a.state_count()) + 1;
        const auto c = count_words(a, 2 * far, unit(n));
        bool late = false;
        for (std::size_t l = far; l <= 2 * far; ++l) late = late || !c.per_length[l].is_zero();
        CHECK(c.language_finite == !late);
        CHECK(language_infinite(a) == late);
    }
}

}  // TEST_SUITE
