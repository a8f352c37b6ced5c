#include <doctest.h>

#include <map>
#include <random>
#include <set>

#include "gpcalc/bimodule.hpp"
#include "gpcalc/errors.hpp"
#include "oracles.hpp"

using namespace gpcalc;

namespace {

Graph p3() { return Graph({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}}); }

std::vector<ExtNat> dims_of(int n, int d) { return std::vector<ExtNat>(static_cast<std::size_t>(n), ExtNat(d)); }

FormalBimodule random_bimodule(std::mt19937_64& rng, VertexSet left, VertexSet right) {
    FormalBimodule b(left, right);
    const std::uint64_t pool = (left & right).bits();
    std::uint64_t u = 0;
    do {
        if (rng() % 2 == 0) b.set(VertexSet(u), ExtNat(static_cast<int>(1 + rng() % 3)));
        u = (u - pool) & pool;
    } while (u != 0);
    if (b.entries().empty()) b.set(VertexSet(), ExtNat(1));
    return b;
}

// Series agree up to the shorter truncation and finite values compare termwise.
bool dominated(const GradedSeries& small, const GradedSeries& big) {
    for (std::size_t l = 0; l < small.coefficients.size() && l < big.coefficients.size(); ++l) {
        if (big.coefficients[l] < small.coefficients[l]) return false;
    }
    return true;
}

}  // namespace

TEST_SUITE("bimodule") {

TEST_CASE("extended naturals") {
    const ExtNat inf = ExtNat::infinity();
    CHECK((inf + ExtNat(3)).is_infinite());
    CHECK((inf * ExtNat(2)).is_infinite());
    CHECK((inf * ExtNat(0)).is_zero());
    CHECK(ExtNat(2) * ExtNat(3) == ExtNat(6));
    CHECK(ExtNat(7) < inf);
    CHECK(ExtNat::parse("inf") == inf);
    CHECK(ExtNat::parse("∞") == inf);
    CHECK(ExtNat::parse("42").to_string() == "42");
    CHECK(inf.predecessor().is_infinite());
    CHECK(ExtNat(5).predecessor() == ExtNat(4));
}

TEST_CASE("multiplicity examples") {
    for (const auto& g : oracle::graph_classes(3)) {
        const VertexSet all = g.vertices();
        for (std::uint64_t u = 0; u <= all.bits(); ++u) {
            const auto m = multiplicity(g, all, all, VertexSet(u), dims_of(3, 3), 6);
            CHECK(m.k == ExtNat(u == all.bits() ? 1 : 0));
        }
    }
    const Graph edge({"v", "w"}, {{"v", "w"}});
    const auto t = multiplicity(edge, VertexSet(1), VertexSet(2), {}, dims_of(2, 3), 6);
    CHECK(t.k == ExtNat(1));
    CHECK(t.language_finite);
    const Graph free2({"v", "w"}, {});
    const auto f = multiplicity(free2, VertexSet(1), VertexSet(2), {}, dims_of(2, 2), 8);
    CHECK(f.k.is_infinite());
    CHECK_FALSE(f.language_finite);
    CHECK(f.series.coefficients == std::vector<ExtNat>{1, 0, 1, 0, 1, 0, 1, 0, 1});
    try {
        multiplicity(free2, VertexSet(1), VertexSet(2), VertexSet(1), dims_of(2, 2));
        FAIL("linkset outside the shared set accepted");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::invalid_linkset);
    }
}

TEST_CASE("decompose examples") {
    const Graph g = p3();
    const auto full = decompose(g, g.vertices(), g.vertices(), dims_of(3, 2), 6);
    CHECK(full.bimodule == FormalBimodule::identity(g.vertices()));
    const Graph free2({"v", "w"}, {});
    const auto d = decompose(free2, VertexSet(0b11), VertexSet(0b01), dims_of(2, 2), 6);
    CHECK(d.bimodule.entries() == std::vector<std::pair<VertexSet, ExtNat>>{{VertexSet(1), ExtNat(1)}});
    CHECK(d.bimodule.get({}).is_zero());
    REQUIRE(d.parts.size() == 2);
    const auto ac = decompose(g, VertexSet(0b001), VertexSet(0b100), dims_of(3, 2), 8);
    REQUIRE(ac.parts.size() == 1);
    const auto& series = ac.parts[0].second.series.coefficients;
    CHECK(series[0] == ExtNat(1));
    CHECK(series[1] == ExtNat(1));
    // Brute force: ({a},{c})-relatively reduced words, one per class.
    const auto words = oracle::all_words(3, 8);
    const auto cls = oracle::closure_classes(g, words, 8);
    std::vector<std::set<int>> seen(9);
    for (std::size_t i = 0; i < words.size(); ++i) {
        if (oracle::relatively_reduced(g, words[i], VertexSet(1), VertexSet(4))) seen[words[i].size()].insert(cls[i]);
    }
    for (std::size_t l = 0; l <= 8; ++l) CHECK(series[l] == ExtNat(static_cast<unsigned long>(seen[l].size())));
}

TEST_CASE("graded identity with empty sides") {
    std::mt19937_64 rng(3);
    for (int n = 1; n <= 4; ++n) {
        for (const auto& g : oracle::graph_classes(n)) {
            std::vector<ExtNat> dims;
            for (int v = 0; v < n; ++v) dims.emplace_back(2 + static_cast<int>(rng() % 3));
            const std::size_t len = n <= 3 ? 7 : 6;
            const auto d = decompose(g, {}, {}, dims, len);
            REQUIRE(d.parts.size() == 1);
            const auto& series = d.parts[0].second.series.coefficients;
            const auto words = oracle::all_words(n, static_cast<int>(len));
            const auto cls = oracle::closure_classes(g, words, len);
            std::vector<ExtNat> brute(len + 1, ExtNat(0));
            std::set<int> counted;
            for (std::size_t i = 0; i < words.size(); ++i) {
                if (!oracle::reduced(g, words[i]) || !counted.insert(cls[i]).second) continue;
                ExtNat p(1);
                for (Vertex v : words[i]) p *= dims[static_cast<std::size_t>(v)].predecessor();
                brute[words[i].size()] += p;
            }
            CHECK(series == brute);
        }
    }
}

TEST_CASE("per-word counting matches the definition") {
    const Graph g = p3();
    BimoduleOptions opt;
    opt.counting = WordCounting::words;
    const auto d = decompose(g, {}, {}, dims_of(3, 3), 6, opt);
    std::vector<ExtNat> brute(7, ExtNat(0));
    for (const auto& w : oracle::all_words(3, 6)) {
        if (!oracle::reduced(g, w)) continue;
        ExtNat p(1);
        for (std::size_t i = 0; i < w.size(); ++i) p *= ExtNat(2);
        brute[w.size()] += p;
    }
    CHECK(d.parts[0].second.series.coefficients == brute);
}

TEST_CASE("antitone in the left set with empty right set") {
    for (int n = 2; n <= 4; ++n) {
        for (const auto& g : oracle::graph_classes(n)) {
            const std::uint64_t all = g.vertices().bits();
            std::map<std::uint64_t, GradedSeries> series;
            for (std::uint64_t s = 0; s <= all; ++s) {
                const auto d = decompose(g, VertexSet(s), {}, dims_of(n, 2), 6);
                REQUIRE(d.parts.size() == 1);
                CHECK(d.parts[0].first.empty());
                series[s] = d.parts[0].second.series;
            }
            for (std::uint64_t s = 0; s <= all; ++s) {
                for (std::uint64_t t = 0; t <= all; ++t) {
                    if ((s & t) == s) CHECK(dominated(series[t], series[s]));
                }
            }
        }
    }
}

TEST_CASE("monotone under dimension increase") {
    std::mt19937_64 rng(7);
    for (int t = 0; t < 60; ++t) {
        const int n = 2 + t % 3;
        const Graph g = oracle::random_graph(n, 0.5, rng);
        const std::uint64_t all = g.vertices().bits();
        const VertexSet v1(rng() % (all + 1)), v2(rng() % (all + 1));
        std::vector<ExtNat> dims;
        for (int v = 0; v < n; ++v) dims.emplace_back(2 + static_cast<int>(rng() % 2));
        auto bigger = dims;
        bigger[rng() % static_cast<std::size_t>(n)] += ExtNat(1 + static_cast<int>(rng() % 2));
        const auto a = decompose(g, v1, v2, dims, 6);
        const auto b = decompose(g, v1, v2, bigger, 6);
        for (std::size_t i = 0; i < a.parts.size(); ++i) {
            CHECK(a.parts[i].first == b.parts[i].first);
            CHECK(a.parts[i].second.k <= b.parts[i].second.k);
            CHECK(dominated(a.parts[i].second.series, b.parts[i].second.series));
        }
    }
}

TEST_CASE("fusion examples") {
    const Graph free2({"v", "w"}, {});
    FormalBimodule vw(VertexSet(1), VertexSet(2)), wv(VertexSet(2), VertexSet(1));
    vw.set({}, ExtNat(1));
    wv.set({}, ExtNat(1));
    for (int dw = 2; dw <= 5; ++dw) {
        const std::vector<ExtNat> dims{ExtNat(2), ExtNat(dw)};
        FormalBimodule expect(VertexSet(1), VertexSet(1));
        expect.set({}, ExtNat(dw));
        CHECK(fuse(free2, vw, wv, dims) == expect);
    }
    try {
        fuse(free2, vw, vw, dims_of(2, 2));
        FAIL("mismatched middle accepted");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::mismatched_middle);
    }
}

TEST_CASE("fusion unit laws and associativity") {
    std::mt19937_64 rng(101);
    for (int t = 0; t < 40; ++t) {
        const int n = 2 + t % 3;
        const Graph g = oracle::random_graph(n, 0.5, rng);
        const std::uint64_t all = g.vertices().bits();
        std::vector<ExtNat> dims;
        for (int v = 0; v < n; ++v) dims.emplace_back(2 + static_cast<int>(rng() % 2));
        const VertexSet s1(rng() % (all + 1)), s2(rng() % (all + 1)), s3(rng() % (all + 1)), s4(rng() % (all + 1));
        const auto b1 = random_bimodule(rng, s1, s2);
        const auto b2 = random_bimodule(rng, s2, s3);
        const auto b3 = random_bimodule(rng, s3, s4);
        CHECK(fuse(g, b1, FormalBimodule::identity(s2), dims) == b1);
        CHECK(fuse(g, FormalBimodule::identity(s1), b1, dims) == b1);
        CHECK(fuse(g, fuse(g, b1, b2, dims), b3, dims) == fuse(g, b1, fuse(g, b2, b3, dims), dims));
    }
}

TEST_CASE("fusing decompositions recovers the decomposition") {
    // L2 over (V1, V2) is the fusion of L2 over (V1, V) and L2 over (V, V2).
    std::mt19937_64 rng(55);
    for (int t = 0; t < 20; ++t) {
        const int n = 2 + t % 2;
        const Graph g = oracle::random_graph(n, 0.5, rng);
        const std::uint64_t all = g.vertices().bits();
        const auto dims = dims_of(n, 2);
        const VertexSet v1(rng() % (all + 1)), v2(rng() % (all + 1));
        const auto a = decompose(g, v1, g.vertices(), dims).bimodule;
        const auto b = decompose(g, g.vertices(), v2, dims).bimodule;
        CHECK(fuse(g, a, b, dims) == decompose(g, v1, v2, dims).bimodule);
    }
}

TEST_CASE("weak coarseness examples") {
    const Graph g = p3();
    Descriptors d{presets::free_group(2), presets::hyperfinite_ii1(), presets::free_group(2)};
    CHECK(weakly_coarse_complement(g, g.vertices(), d).value == Truth::yes);
    const auto no = weakly_coarse_complement(g, VertexSet(0b101), d);
    CHECK(no.value == Truth::no);
    CHECK(no.reasons(g).size() >= 1);
    d[0] = descriptor_of(presets::cyclic_group_algebra(2));
    d[2] = descriptor_of(presets::cyclic_group_algebra(2));
    CHECK(weakly_coarse_complement(g, VertexSet(0b101), d).value == Truth::yes);
    try {
        weakly_coarse_complement(g, {}, Descriptors{presets::integers()});
        FAIL("missing descriptor accepted");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::missing_descriptor);
    }
}

}  // TEST_SUITE
