#include "gpcalc/vertex_algebra.hpp"

#include <algorithm>

#include "gpcalc/errors.hpp"

namespace gpcalc {

ConcreteAlgebra::ConcreteAlgebra(std::vector<Block> blocks) : blocks_(std::move(blocks)) {
    if (blocks_.empty()) throw Error(ErrorKind::invalid_state, "algebra needs at least one block");
    mpq_class total = 0;
    for (auto& b : blocks_) {
        for (auto& e : b.spectrum) e.eigenvalue.canonicalize();
        if (b.size < 1) throw Error(ErrorKind::invalid_state, "block size must be positive");
        int count = 0;
        for (const auto& e : b.spectrum) {
            if (e.eigenvalue <= 0) throw Error(ErrorKind::invalid_state, "state is not faithful: eigenvalue <= 0");
            if (e.multiplicity < 1) throw Error(ErrorKind::invalid_state, "multiplicity must be positive");
            count += e.multiplicity;
            total += e.eigenvalue * e.multiplicity;
        }
        if (count != b.size) {
            throw Error(ErrorKind::invalid_state, "multiplicities do not add up to the block size");
        }
    }
    if (total != 1) throw Error(ErrorKind::invalid_state, "state is not normalized: weights sum to " + total.get_str());
}

bool ConcreteAlgebra::is_tracial() const {
    for (const auto& b : blocks_) {
        for (const auto& e : b.spectrum) {
            if (e.eigenvalue != b.spectrum.front().eigenvalue) return false;
        }
    }
    return true;
}

int ConcreteAlgebra::l2dim() const {
    int d = 0;
    for (const auto& b : blocks_) d += b.size * b.size;
    return d;
}

int ConcreteAlgebra::matrix_size() const {
    int d = 0;
    for (const auto& b : blocks_) d += b.size;
    return d;
}

std::vector<mpq_class> ConcreteAlgebra::density_diagonal(std::size_t block) const {
    std::vector<mpq_class> out;
    for (const auto& e : blocks_.at(block).spectrum) {
        for (int k = 0; k < e.multiplicity; ++k) out.push_back(e.eigenvalue);
    }
    return out;
}

mpq_class ConcreteAlgebra::block_weight(std::size_t block) const {
    mpq_class w = 0;
    for (const auto& e : blocks_.at(block).spectrum) w += e.eigenvalue * e.multiplicity;
    return w;
}

void validate(const AlgebraDescriptor& d) {
    if (d.l2dim < ExtNat(2)) throw Error(ErrorKind::invalid_state, "descriptor needs l2dim >= 2");
    if (!d.l2dim.is_infinite() && (!d.amenable || d.diffuse)) {
        throw Error(ErrorKind::invalid_state, "finite-dimensional algebras are amenable and not diffuse");
    }
    if (d.diffuse && d.tracial && !d.state_zero_unitary) {
        throw Error(ErrorKind::invalid_state, "a diffuse tracial algebra has a state-zero unitary");
    }
}

ConcreteAlgebra centralizer(const ConcreteAlgebra& c) {
    std::vector<Block> out;
    for (const auto& b : c.blocks()) {
        std::vector<SpectrumEntry> merged;
        for (const auto& e : b.spectrum) {
            auto it = std::find_if(merged.begin(), merged.end(),
                                   [&](const SpectrumEntry& m) { return m.eigenvalue == e.eigenvalue; });
            if (it == merged.end()) {
                merged.push_back(e);
            } else {
                it->multiplicity += e.multiplicity;
            }
        }
        for (const auto& m : merged) out.push_back(Block{m.multiplicity, {m}});
    }
    return ConcreteAlgebra(std::move(out));
}

bool has_state_zero_unitary(const ConcreteAlgebra& c) {
    // A minimal projection of the (j, lambda) block of the centralizer has state lambda.
    const ConcreteAlgebra cent = centralizer(c);
    for (const auto& b : cent.blocks()) {
        if (b.spectrum.front().eigenvalue * 2 > 1) return false;
    }
    return true;
}

Interval unitary_trace_abs_range(const ConcreteAlgebra& c) {
    if (!c.is_tracial()) throw Error(ErrorKind::non_tracial_input, "unitary trace range needs a tracial state");
    std::size_t heaviest = 0;
    for (std::size_t j = 1; j < c.block_count(); ++j) {
        if (c.block_weight(j) > c.block_weight(heaviest)) heaviest = j;
    }
    const mpq_class alpha = c.block_weight(heaviest);
    const int s = c.blocks()[heaviest].size == 1 ? 1 : 0;
    mpq_class lo = alpha * (1 + s) - 1;
    if (lo < 0) lo = 0;
    return {lo, mpq_class(1)};
}

AlgebraDescriptor descriptor_of(const ConcreteAlgebra& c) {
    AlgebraDescriptor d;
    d.l2dim = ExtNat(c.l2dim());
    d.amenable = true;
    d.diffuse = false;
    d.factor = c.block_count() == 1;
    d.full = d.factor;
    d.tracial = c.is_tracial();
    d.state_zero_unitary = has_state_zero_unitary(c);
    validate(d);
    return d;
}

namespace presets {

ConcreteAlgebra cyclic_group_algebra(int n) {
    if (n < 1) throw Error(ErrorKind::invalid_argument, "cyclic group order must be positive");
    return diagonal_algebra(std::vector<mpq_class>(static_cast<std::size_t>(n), mpq_class(1, n)));
}

ConcreteAlgebra matrix_algebra(int n) {
    if (n < 1) throw Error(ErrorKind::invalid_argument, "matrix size must be positive");
    return ConcreteAlgebra({Block{n, {SpectrumEntry{mpq_class(1, n), n}}}});
}

ConcreteAlgebra diagonal_algebra(const std::vector<mpq_class>& weights) {
    std::vector<Block> blocks;
    for (const auto& w : weights) blocks.push_back(Block{1, {SpectrumEntry{w, 1}}});
    return ConcreteAlgebra(std::move(blocks));
}

AlgebraDescriptor cyclic_group(int n) {
    if (n < 2) throw Error(ErrorKind::invalid_argument, "cyclic group preset needs order >= 2");
    return descriptor_of(cyclic_group_algebra(n));
}

AlgebraDescriptor integers() {
    AlgebraDescriptor d;
    d.l2dim = ExtNat::infinity();
    d.amenable = true;
    d.diffuse = true;
    d.factor = false;
    d.full = false;
    return d;
}

AlgebraDescriptor free_group(int k) {
    if (k < 2) throw Error(ErrorKind::invalid_argument, "free group preset needs rank >= 2");
    AlgebraDescriptor d;
    d.l2dim = ExtNat::infinity();
    d.amenable = false;
    d.diffuse = true;
    d.factor = true;
    d.full = true;
    return d;
}

AlgebraDescriptor hyperfinite_ii1() {
    AlgebraDescriptor d;
    d.l2dim = ExtNat::infinity();
    d.amenable = true;
    d.diffuse = true;
    d.factor = true;
    d.full = false;
    return d;
}

}  // namespace presets

}  // namespace gpcalc
