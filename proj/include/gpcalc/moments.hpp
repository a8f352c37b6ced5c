#pragma once

#include <cstdint>
#include <vector>

#include "gpcalc/gauss.hpp"
#include "gpcalc/graph.hpp"
#include "gpcalc/kernels.hpp"
#include "gpcalc/vertex_algebra.hpp"
#include "gpcalc/words.hpp"

namespace gpcalc {

// Block-diagonal matrix over the Gaussian rationals.
class Matrix {
public:
    Matrix() = default;
    // Row-major entries per block; throws unless each block has size*size entries.
    Matrix(std::vector<int> sizes, std::vector<std::vector<Gauss>> blocks);

    static Matrix zero(const ConcreteAlgebra& a);
    static Matrix identity(const ConcreteAlgebra& a);
    static Matrix unit(const ConcreteAlgebra& a, std::size_t block, int row, int col);

    std::size_t block_count() const noexcept { return sizes_.size(); }
    int block_size(std::size_t j) const { return sizes_.at(j); }
    const std::vector<int>& sizes() const noexcept { return sizes_; }
    const std::vector<std::vector<Gauss>>& blocks() const noexcept { return blocks_; }
    const Gauss& at(std::size_t j, int r, int c) const {
        return blocks_[j][static_cast<std::size_t>(r * sizes_[j] + c)];
    }
    Gauss& at(std::size_t j, int r, int c) { return blocks_[j][static_cast<std::size_t>(r * sizes_[j] + c)]; }

    bool conforms_to(const ConcreteAlgebra& a) const;
    bool is_zero() const;

    Matrix& operator+=(const Matrix& o);
    Matrix& operator-=(const Matrix& o);
    Matrix& operator*=(const Gauss& s);
    friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
    friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
    friend Matrix operator*(Matrix a, const Gauss& s) { return a *= s; }
    friend Matrix operator*(const Gauss& s, Matrix a) { return a *= s; }
    friend Matrix operator*(const Matrix& a, const Matrix& b);
    // Conjugate transpose.
    Matrix adjoint() const;

    bool operator==(const Matrix&) const = default;

private:
    std::vector<int> sizes_;
    std::vector<std::vector<Gauss>> blocks_;
};

// sum_j Tr(x_j a_j).
Gauss vertex_state(const ConcreteAlgebra& a, const Matrix& x);

struct Letter {
    Vertex vertex = 0;
    Matrix matrix;

    bool operator==(const Letter&) const = default;
};

struct Term {
    Gauss coefficient;
    std::vector<Letter> letters;  // empty: the identity

    bool operator==(const Term&) const = default;
};

// Finite linear combination of words of vertex matrices.
class Element {
public:
    Element() = default;
    explicit Element(std::vector<Term> terms) : terms_(std::move(terms)) {}

    static Element scalar(const Gauss& c);
    static Element letter(Vertex v, Matrix m);
    static Element word(std::vector<Letter> letters, const Gauss& c = Gauss(1));

    const std::vector<Term>& terms() const noexcept { return terms_; }
    bool empty() const noexcept { return terms_.empty(); }

    Element& operator+=(const Element& o);
    Element& operator*=(const Gauss& s);
    friend Element operator+(Element a, const Element& b) { return a += b; }
    friend Element operator-(Element a, const Element& b) {
        Element nb = b;
        nb *= Gauss(-1);
        return a += nb;
    }
    friend Element operator*(Element a, const Gauss& s) { return a *= s; }
    friend Element operator*(const Gauss& s, Element a) { return a *= s; }
    // Words concatenate, coefficients multiply.
    friend Element operator*(const Element& a, const Element& b);
    // Reverses every word, conjugates coefficients and adjoints matrices.
    Element adjoint() const;

    bool operator==(const Element&) const = default;

private:
    std::vector<Term> terms_;
};

// Graph together with one concrete algebra per vertex and the fixed centered bases.
class GraphProduct {
public:
    // Throws Error(invalid_argument) unless there is one algebra per vertex.
    GraphProduct(Graph g, std::vector<ConcreteAlgebra> algebras);

    const Graph& graph() const noexcept { return graph_; }
    const ConcreteAlgebra& algebra(Vertex v) const { return algebras_.at(static_cast<std::size_t>(v)); }
    const std::vector<ConcreteAlgebra>& algebras() const noexcept { return algebras_; }

    // Basis of the kernel of the vertex state: off-diagonal matrix units, and
    // E_kk - (lambda_k / lambda_0) E_00 for each diagonal unit after the first.
    const std::vector<Matrix>& centered_basis(Vertex v) const { return bases_.at(static_cast<std::size_t>(v)); }
    // Nonzero coordinates of a centered matrix in centered_basis(v).
    std::vector<std::pair<std::size_t, Gauss>> coordinates(Vertex v, const Matrix& centered) const;

    // Throws Error(nonconforming_matrix).
    void check(const Element& x) const;

private:
    Graph graph_;
    std::vector<ConcreteAlgebra> algebras_;
    std::vector<std::vector<Matrix>> bases_;
};

enum class MergePolicy { innermost, random };

struct EvalOptions {
    MergePolicy merge = MergePolicy::innermost;
    std::uint64_t seed = 0;  // used by MergePolicy::random
    ExecutionPolicy execution = ExecutionPolicy::serial;
};

Gauss state(const GraphProduct& gp, const Element& x, const EvalOptions& options = {});

// state(y* x).
Gauss inner_product(const GraphProduct& gp, const Element& x, const Element& y, const EvalOptions& options = {});

// Identity coefficient first, then reduced words in normal form over centered basis letters,
// sorted by (word, basis indices); zero coefficients dropped.
Element canonicalize(const GraphProduct& gp, const Element& x, const EvalOptions& options = {});

// Canonical form restricted to words inside v0.
Element conditional_expectation(const GraphProduct& gp, const Element& x, VertexSet v0,
                                const EvalOptions& options = {});

// Every word of x lies inside s.
bool supported_in(const Element& x, VertexSet s);

}  // namespace gpcalc
