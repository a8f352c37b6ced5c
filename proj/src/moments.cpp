#include "gpcalc/moments.hpp"

#include <map>
#include <optional>
#include <random>

#include "gpcalc/errors.hpp"

namespace gpcalc {

Matrix::Matrix(std::vector<int> sizes, std::vector<std::vector<Gauss>> blocks)
    : sizes_(std::move(sizes)), blocks_(std::move(blocks)) {
    if (sizes_.size() != blocks_.size()) throw Error(ErrorKind::nonconforming_matrix, "block count mismatch");
    for (std::size_t j = 0; j < sizes_.size(); ++j) {
        if (blocks_[j].size() != static_cast<std::size_t>(sizes_[j] * sizes_[j])) {
            throw Error(ErrorKind::nonconforming_matrix, "block entry count does not match its size");
        }
    }
}

Matrix Matrix::zero(const ConcreteAlgebra& a) {
    std::vector<int> sizes;
    std::vector<std::vector<Gauss>> blocks;
    for (const auto& b : a.blocks()) {
        sizes.push_back(b.size);
        blocks.emplace_back(static_cast<std::size_t>(b.size * b.size));
    }
    return Matrix(std::move(sizes), std::move(blocks));
}

Matrix Matrix::identity(const ConcreteAlgebra& a) {
    Matrix m = zero(a);
    for (std::size_t j = 0; j < m.block_count(); ++j) {
        for (int r = 0; r < m.block_size(j); ++r) m.at(j, r, r) = Gauss(1);
    }
    return m;
}

Matrix Matrix::unit(const ConcreteAlgebra& a, std::size_t block, int row, int col) {
    Matrix m = zero(a);
    m.at(block, row, col) = Gauss(1);
    return m;
}

bool Matrix::conforms_to(const ConcreteAlgebra& a) const {
    if (sizes_.size() != a.block_count()) return false;
    for (std::size_t j = 0; j < sizes_.size(); ++j) {
        if (sizes_[j] != a.blocks()[j].size) return false;
    }
    return true;
}

bool Matrix::is_zero() const {
    for (const auto& b : blocks_) {
        for (const auto& e : b) {
            if (!e.is_zero()) return false;
        }
    }
    return true;
}

Matrix& Matrix::operator+=(const Matrix& o) {
    if (sizes_ != o.sizes_) throw Error(ErrorKind::nonconforming_matrix, "adding matrices of different shapes");
    for (std::size_t j = 0; j < blocks_.size(); ++j) {
        for (std::size_t k = 0; k < blocks_[j].size(); ++k) blocks_[j][k] += o.blocks_[j][k];
    }
    return *this;
}

Matrix& Matrix::operator-=(const Matrix& o) {
    if (sizes_ != o.sizes_) throw Error(ErrorKind::nonconforming_matrix, "subtracting matrices of different shapes");
    for (std::size_t j = 0; j < blocks_.size(); ++j) {
        for (std::size_t k = 0; k < blocks_[j].size(); ++k) blocks_[j][k] -= o.blocks_[j][k];
    }
    return *this;
}

Matrix& Matrix::operator*=(const Gauss& s) {
    for (auto& b : blocks_) {
        for (auto& e : b) e *= s;
    }
    return *this;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.sizes_ != b.sizes_) throw Error(ErrorKind::nonconforming_matrix, "multiplying matrices of different shapes");
    Matrix out = a;
    for (std::size_t j = 0; j < a.sizes_.size(); ++j) {
        const int n = a.sizes_[j];
        for (int r = 0; r < n; ++r) {
            for (int c = 0; c < n; ++c) {
                Gauss acc;
                for (int k = 0; k < n; ++k) {
                    const Gauss& x = a.at(j, r, k);
                    const Gauss& y = b.at(j, k, c);
                    if (!x.is_zero() && !y.is_zero()) acc += x * y;
                }
                out.at(j, r, c) = std::move(acc);
            }
        }
    }
    return out;
}

Matrix Matrix::adjoint() const {
    Matrix out = *this;
    for (std::size_t j = 0; j < sizes_.size(); ++j) {
        for (int r = 0; r < sizes_[j]; ++r) {
            for (int c = 0; c < sizes_[j]; ++c) out.at(j, r, c) = at(j, c, r).conj();
        }
    }
    return out;
}

Gauss vertex_state(const ConcreteAlgebra& a, const Matrix& x) {
    if (!x.conforms_to(a)) throw Error(ErrorKind::nonconforming_matrix, "matrix does not match the vertex blocks");
    Gauss s;
    for (std::size_t j = 0; j < a.block_count(); ++j) {
        auto diag = a.density_diagonal(j);
        for (int r = 0; r < x.block_size(j); ++r) s += x.at(j, r, r) * Gauss(diag[static_cast<std::size_t>(r)]);
    }
    return s;
}

Element Element::scalar(const Gauss& c) { return Element({Term{c, {}}}); }

Element Element::letter(Vertex v, Matrix m) { return Element({Term{Gauss(1), {Letter{v, std::move(m)}}}}); }

Element Element::word(std::vector<Letter> letters, const Gauss& c) { return Element({Term{c, std::move(letters)}}); }

Element& Element::operator+=(const Element& o) {
    terms_.insert(terms_.end(), o.terms_.begin(), o.terms_.end());
    return *this;
}

Element& Element::operator*=(const Gauss& s) {
    for (auto& t : terms_) t.coefficient *= s;
    return *this;
}

Element operator*(const Element& a, const Element& b) {
    std::vector<Term> out;
    out.reserve(a.terms_.size() * b.terms_.size());
    for (const auto& x : a.terms_) {
        for (const auto& y : b.terms_) {
            Term t{x.coefficient * y.coefficient, x.letters};
            t.letters.insert(t.letters.end(), y.letters.begin(), y.letters.end());
            out.push_back(std::move(t));
        }
    }
    return Element(std::move(out));
}

Element Element::adjoint() const {
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (const auto& t : terms_) {
        Term r{t.coefficient.conj(), {}};
        for (auto it = t.letters.rbegin(); it != t.letters.rend(); ++it) {
            r.letters.push_back(Letter{it->vertex, it->matrix.adjoint()});
        }
        out.push_back(std::move(r));
    }
    return Element(std::move(out));
}

GraphProduct::GraphProduct(Graph g, std::vector<ConcreteAlgebra> algebras)
    : graph_(std::move(g)), algebras_(std::move(algebras)) {
    if (algebras_.size() != static_cast<std::size_t>(graph_.size())) {
        throw Error(ErrorKind::invalid_argument, "one algebra per vertex is required");
    }
    for (const auto& a : algebras_) {
        std::vector<Matrix> basis;
        const mpq_class ref = a.density_diagonal(0).front();
        bool first_diagonal = true;
        for (std::size_t j = 0; j < a.block_count(); ++j) {
            auto diag = a.density_diagonal(j);
            const int n = a.blocks()[j].size;
            for (int r = 0; r < n; ++r) {
                for (int c = 0; c < n; ++c) {
                    if (r != c) {
                        basis.push_back(Matrix::unit(a, j, r, c));
                    } else if (first_diagonal) {
                        first_diagonal = false;
                    } else {
                        Matrix m = Matrix::unit(a, j, r, r);
                        m.at(0, 0, 0) = Gauss(mpq_class(-diag[static_cast<std::size_t>(r)] / ref));
                        basis.push_back(std::move(m));
                    }
                }
            }
        }
        bases_.push_back(std::move(basis));
    }
}

std::vector<std::pair<std::size_t, Gauss>> GraphProduct::coordinates(Vertex v, const Matrix& x) const {
    const auto& a = algebra(v);
    std::vector<std::pair<std::size_t, Gauss>> out;
    std::size_t k = 0;
    bool first_diagonal = true;
    for (std::size_t j = 0; j < a.block_count(); ++j) {
        const int n = a.blocks()[j].size;
        for (int r = 0; r < n; ++r) {
            for (int c = 0; c < n; ++c) {
                if (r == c && first_diagonal) {
                    first_diagonal = false;
                    continue;
                }
                if (!x.at(j, r, c).is_zero()) out.emplace_back(k, x.at(j, r, c));
                ++k;
            }
        }
    }
    return out;
}

void GraphProduct::check(const Element& x) const {
    for (const auto& t : x.terms()) {
        for (const auto& l : t.letters) {
            if (l.vertex < 0 || l.vertex >= graph_.size()) {
                throw Error(ErrorKind::unknown_vertex, "letter outside the graph");
            }
            if (!l.matrix.conforms_to(algebra(l.vertex))) {
                throw Error(ErrorKind::nonconforming_matrix,
                            "matrix does not match the blocks of vertex '" + graph_.name(l.vertex) + "'");
            }
        }
    }
}

namespace {

using CanonicalKey = std::pair<Word, std::vector<std::size_t>>;

class Evaluator {
public:
    Evaluator(const GraphProduct& gp, MergePolicy policy, std::uint64_t seed)
        : gp_(gp), policy_(policy), rng_(seed) {}

    Gauss evaluate(std::vector<Letter> w) {
        if (auto split = first_uncentered(w)) {
            auto [i, c] = std::move(*split);
            std::vector<Letter> without = w;
            without.erase(without.begin() + static_cast<std::ptrdiff_t>(i));
            Gauss out = c.is_zero() ? Gauss() : c * evaluate(std::move(without));
            if (w[i].matrix.is_zero()) return out;
            return out + evaluate(std::move(w));
        }
        auto pair = pick_pair(w);
        if (!pair) return w.empty() ? Gauss(1) : Gauss();
        merge(w, *pair);
        return evaluate(std::move(w));
    }

    void canonical(std::vector<Letter> w, Gauss coef, std::map<CanonicalKey, Gauss>& out) {
        if (coef.is_zero()) return;
        if (auto split = first_uncentered(w)) {
            auto [i, c] = std::move(*split);
            std::vector<Letter> without = w;
            without.erase(without.begin() + static_cast<std::ptrdiff_t>(i));
            if (!c.is_zero()) canonical(std::move(without), coef * c, out);
            if (!w[i].matrix.is_zero()) canonical(std::move(w), std::move(coef), out);
            return;
        }
        if (auto pair = pick_pair(w)) {
            merge(w, *pair);
            canonical(std::move(w), std::move(coef), out);
            return;
        }
        emit(w, coef, out);
    }

private:
    // Centers the first letter with nonzero state in place; returns its index and state.
    std::optional<std::pair<std::size_t, Gauss>> first_uncentered(std::vector<Letter>& w) const {
        for (std::size_t i = 0; i < w.size(); ++i) {
            const auto& a = gp_.algebra(w[i].vertex);
            Gauss c = vertex_state(a, w[i].matrix);
            if (!c.is_zero()) {
                w[i].matrix -= Matrix::identity(a) * c;
                return std::make_pair(i, std::move(c));
            }
        }
        return std::nullopt;
    }

    // Returns a pair i<k of equal letters with every letter in between adjacent to them.
    std::optional<std::pair<std::size_t, std::size_t>> pick_pair(const std::vector<Letter>& w) {
        const Graph& g = gp_.graph();
        std::vector<std::pair<std::size_t, std::size_t>> candidates;
        for (std::size_t i = 0; i < w.size(); ++i) {
            for (std::size_t k = i + 1; k < w.size(); ++k) {
                if (w[k].vertex == w[i].vertex) {
                    candidates.emplace_back(i, k);
                    break;
                }
                if (!g.adjacent(w[k].vertex, w[i].vertex)) break;
            }
        }
        if (candidates.empty()) return std::nullopt;
        if (policy_ == MergePolicy::random) {
            std::uniform_int_distribution<std::size_t> pick(0, candidates.size() - 1);
            return candidates[pick(rng_)];
        }
        auto best = candidates.front();
        for (auto c : candidates) {
            if (c.second - c.first < best.second - best.first) best = c;
        }
        return best;
    }

    // x_k commutes past the letters between, then multiplies into x_i.
    static void merge(std::vector<Letter>& w, std::pair<std::size_t, std::size_t> p) {
        w[p.first].matrix = w[p.first].matrix * w[p.second].matrix;
        w.erase(w.begin() + static_cast<std::ptrdiff_t>(p.second));
    }

    void emit(const std::vector<Letter>& w, const Gauss& coef, std::map<CanonicalKey, Gauss>& out) const {
        Word letters;
        for (const auto& l : w) letters.push_back(l.vertex);
        auto order = lex_normal_order(gp_.graph(), letters);
        Word nf;
        std::vector<std::vector<std::pair<std::size_t, Gauss>>> coords;
        for (std::size_t p : order) {
            nf.push_back(w[p].vertex);
            coords.push_back(gp_.coordinates(w[p].vertex, w[p].matrix));
            if (coords.back().empty()) return;
        }
        // Multilinear expansion over basis tuples.
        std::vector<std::size_t> pick(coords.size(), 0);
        while (true) {
            Gauss c = coef;
            std::vector<std::size_t> idx(coords.size());
            for (std::size_t s = 0; s < coords.size(); ++s) {
                c *= coords[s][pick[s]].second;
                idx[s] = coords[s][pick[s]].first;
            }
            auto [it, fresh] = out.try_emplace(CanonicalKey{nf, idx}, c);
            if (!fresh) it->second += c;
            std::size_t s = 0;
            while (s < coords.size() && ++pick[s] == coords[s].size()) pick[s++] = 0;
            if (s == coords.size()) break;
        }
    }

    const GraphProduct& gp_;
    MergePolicy policy_;
    std::mt19937_64 rng_;
};

std::uint64_t term_seed(std::uint64_t seed, std::size_t index) {
    return seed ^ (0x9e3779b97f4a7c15ULL * (static_cast<std::uint64_t>(index) + 1));
}

}  // namespace

Gauss state(const GraphProduct& gp, const Element& x, const EvalOptions& options) {
    gp.check(x);
    const auto& terms = x.terms();
    auto values = kernels::map_indexed(
        terms.size(),
        [&](std::size_t i) {
            if (terms[i].coefficient.is_zero()) return Gauss();
            Evaluator ev(gp, options.merge, term_seed(options.seed, i));
            return terms[i].coefficient * ev.evaluate(terms[i].letters);
        },
        options.execution);
    Gauss total;
    for (const auto& v : values) total += v;
    return total;
}

Gauss inner_product(const GraphProduct& gp, const Element& x, const Element& y, const EvalOptions& options) {
    return state(gp, y.adjoint() * x, options);
}

Element canonicalize(const GraphProduct& gp, const Element& x, const EvalOptions& options) {
    gp.check(x);
    const auto& terms = x.terms();
    auto parts = kernels::map_indexed(
        terms.size(),
        [&](std::size_t i) {
            std::map<CanonicalKey, Gauss> part;
            Evaluator ev(gp, options.merge, term_seed(options.seed, i));
            ev.canonical(terms[i].letters, terms[i].coefficient, part);
            return part;
        },
        options.execution);
    std::map<CanonicalKey, Gauss> merged;
    for (auto& part : parts) {
        for (auto& [key, c] : part) {
            auto [it, fresh] = merged.try_emplace(key, c);
            if (!fresh) it->second += c;
        }
    }
    std::vector<Term> out;
    for (const auto& [key, c] : merged) {
        if (c.is_zero()) continue;
        Term t{c, {}};
        for (std::size_t s = 0; s < key.first.size(); ++s) {
            Vertex v = key.first[s];
            t.letters.push_back(Letter{v, gp.centered_basis(v)[key.second[s]]});
        }
        out.push_back(std::move(t));
    }
    return Element(std::move(out));
}

Element conditional_expectation(const GraphProduct& gp, const Element& x, VertexSet v0, const EvalOptions& options) {
    if (!v0.subset_of(gp.graph().vertices())) throw Error(ErrorKind::unknown_vertex, "vertex set outside the graph");
    Element canon = canonicalize(gp, x, options);
    std::vector<Term> kept;
    for (const auto& t : canon.terms()) {
        bool inside = true;
        for (const auto& l : t.letters) inside = inside && v0.contains(l.vertex);
        if (inside) kept.push_back(t);
    }
    return Element(std::move(kept));
}

bool supported_in(const Element& x, VertexSet s) {
    for (const auto& t : x.terms()) {
        for (const auto& l : t.letters) {
            if (!s.contains(l.vertex)) return false;
        }
    }
    return true;
}

}  // namespace gpcalc
