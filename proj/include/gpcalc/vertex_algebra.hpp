#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

#include "gpcalc/ext_nat.hpp"

namespace gpcalc {

struct SpectrumEntry {
    mpq_class eigenvalue;
    int multiplicity = 1;

    bool operator==(const SpectrumEntry& o) const {
        return eigenvalue == o.eigenvalue && multiplicity == o.multiplicity;
    }
};

// A matrix block M_n whose density is diagonal with the listed eigenvalues,
// each repeated by its multiplicity, in order.
struct Block {
    int size = 1;
    std::vector<SpectrumEntry> spectrum;

    bool operator==(const Block&) const = default;
};

// Direct sum of matrix blocks with the faithful state x -> sum_j Tr(x_j a_j),
// Tr the unnormalized trace and a_j the block density.
class ConcreteAlgebra {
public:
    ConcreteAlgebra() = default;
    // Throws Error(invalid_state) unless every eigenvalue is positive, multiplicities
    // add up to the block size, and the weighted eigenvalues sum to 1.
    explicit ConcreteAlgebra(std::vector<Block> blocks);

    const std::vector<Block>& blocks() const noexcept { return blocks_; }
    std::size_t block_count() const noexcept { return blocks_.size(); }
    bool is_tracial() const;
    int l2dim() const;
    // Sum of block sizes.
    int matrix_size() const;
    std::vector<mpq_class> density_diagonal(std::size_t block) const;
    mpq_class block_weight(std::size_t block) const;

    bool operator==(const ConcreteAlgebra&) const = default;

private:
    std::vector<Block> blocks_;
};

struct Interval {
    mpq_class lo;
    mpq_class hi;
};

struct AlgebraDescriptor {
    ExtNat l2dim = ExtNat(2);
    bool amenable = true;
    bool diffuse = false;
    bool factor = false;
    bool full = false;
    bool state_zero_unitary = true;  // the centralizer contains a unitary of state zero
    bool tracial = true;

    bool operator==(const AlgebraDescriptor&) const = default;
};

// Throws Error(invalid_state) on l2dim < 2, a finite algebra flagged non-amenable or
// diffuse, or a diffuse tracial algebra without a state-zero unitary.
void validate(const AlgebraDescriptor& d);

// One block of size m per (block, distinct eigenvalue of multiplicity m), with the
// restricted state; equal eigenvalues inside a block are merged.
ConcreteAlgebra centralizer(const ConcreteAlgebra& c);

// Every minimal projection of the centralizer has state at most 1/2.
bool has_state_zero_unitary(const ConcreteAlgebra& c);

// Range of |tau(u)| over unitaries u. Throws Error(non_tracial_input).
Interval unitary_trace_abs_range(const ConcreteAlgebra& c);

AlgebraDescriptor descriptor_of(const ConcreteAlgebra& c);

namespace presets {

// C^n with the uniform trace, i.e. the group algebra of Z/nZ.
ConcreteAlgebra cyclic_group_algebra(int n);
// M_n with the tracial state.
ConcreteAlgebra matrix_algebra(int n);
// Diagonal algebra with the given weights.
ConcreteAlgebra diagonal_algebra(const std::vector<mpq_class>& weights);

AlgebraDescriptor cyclic_group(int n);
AlgebraDescriptor integers();
AlgebraDescriptor free_group(int k);
AlgebraDescriptor hyperfinite_ii1();

}  // namespace presets

}  // namespace gpcalc
