#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "gpcalc/automaton.hpp"
#include "gpcalc/decider.hpp"
#include "gpcalc/ext_nat.hpp"
#include "gpcalc/graph.hpp"
#include "gpcalc/kernels.hpp"

namespace gpcalc {

// words: every relatively reduced word contributes its weight.
// classes: one representative per equivalence class (its normal form).
enum class WordCounting { words, classes };

const char* to_string(WordCounting c);
WordCounting parse_word_counting(const std::string& s);

struct BimoduleOptions {
    WordCounting counting = WordCounting::classes;
    ExecutionPolicy execution = ExecutionPolicy::parallel;
};

inline constexpr std::size_t default_max_length = 12;

// coefficients[l] is the weighted count of contributing words of length l, l <= max_length.
struct GradedSeries {
    std::size_t max_length = 0;
    std::vector<ExtNat> coefficients;

    bool operator==(const GradedSeries&) const = default;
};

struct Multiplicity {
    ExtNat k;
    GradedSeries series;
    bool language_finite = true;
};

// k = sum over relatively reduced words with linkset exactly u of prod (dims(w_j) - 1).
// dims is indexed by vertex, each >= 2. Throws Error(invalid_linkset) unless u is inside v1 & v2.
Multiplicity multiplicity(const Graph& g, VertexSet v1, VertexSet v2, VertexSet u, const std::vector<ExtNat>& dims,
                          std::size_t max_length = default_max_length, const BimoduleOptions& options = {});

// Absent keys have multiplicity zero; zero entries are never stored.
class FormalBimodule {
public:
    FormalBimodule() = default;
    FormalBimodule(VertexSet left, VertexSet right) : left_(left), right_(right) {}

    VertexSet left_set() const noexcept { return left_; }
    VertexSet right_set() const noexcept { return right_; }
    ExtNat get(VertexSet u) const;
    // Throws Error(invalid_linkset) unless u is inside left & right.
    void set(VertexSet u, const ExtNat& k);
    void add(VertexSet u, const ExtNat& k);
    // Sorted by the bitmask of u.
    std::vector<std::pair<VertexSet, ExtNat>> entries() const;

    // The identity bimodule L2 over (v, v): {v -> 1}.
    static FormalBimodule identity(VertexSet v);

    bool operator==(const FormalBimodule&) const = default;

private:
    VertexSet left_, right_;
    std::map<std::uint64_t, ExtNat> mult_;
};

struct Decomposition {
    FormalBimodule bimodule;
    std::vector<std::pair<VertexSet, Multiplicity>> parts;  // every u inside v1 & v2, by bitmask
};

Decomposition decompose(const Graph& g, VertexSet v1, VertexSet v2, const std::vector<ExtNat>& dims,
                        std::size_t max_length = default_max_length, const BimoduleOptions& options = {});

// Relative tensor product over the middle set, with multiplicities computed on the subgraph
// it induces. Throws Error(mismatched_middle).
FormalBimodule fuse(const Graph& g, const FormalBimodule& first, const FormalBimodule& second,
                    const std::vector<ExtNat>& dims, std::size_t max_length = default_max_length,
                    const BimoduleOptions& options = {});

// Yes iff the algebra over link(v) & v0 is amenable for every v outside v0.
// Throws Error(missing_descriptor).
Verdict weakly_coarse_complement(const Graph& g, VertexSet v0, const Descriptors& d);

}  // namespace gpcalc
