#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <deque>
#include <functional>
#include <numeric>
#include <set>
#include <unordered_map>

namespace oracle {

std::vector<Word> words_of_length(int n, int len) {
    std::vector<Word> out;
    Word w(static_cast<std::size_t>(len), 0);
    if (len == 0) return {Word{}};
    if (n == 0) return {};
    while (true) {
        out.push_back(w);
        int i = len - 1;
        while (i >= 0 && w[static_cast<std::size_t>(i)] == n - 1) w[static_cast<std::size_t>(i--)] = 0;
        if (i < 0) break;
        ++w[static_cast<std::size_t>(i)];
    }
    return out;
}

std::vector<Word> all_words(int n, int max_len) {
    std::vector<Word> out;
    for (int len = 0; len <= max_len; ++len) {
        auto part = words_of_length(n, len);
        out.insert(out.end(), part.begin(), part.end());
    }
    return out;
}

bool reduced(const Graph& g, const Word& w) {
    for (std::size_t i = 0; i < w.size(); ++i) {
        for (std::size_t k = i + 1; k < w.size(); ++k) {
            if (w[i] != w[k]) continue;
            bool separated = false;
            for (std::size_t j = i + 1; j < k && !separated; ++j) separated = w[j] != w[i] && !g.adjacent(w[j], w[i]);
            if (!separated) return false;
        }
    }
    return true;
}

bool relatively_reduced(const Graph& g, const Word& w, VertexSet v1, VertexSet v2) {
    if (!reduced(g, w)) return false;
    for (Vertex v : v1) {
        Word x{v};
        x.insert(x.end(), w.begin(), w.end());
        if (!reduced(g, x)) return false;
    }
    for (Vertex v : v2) {
        Word x = w;
        x.push_back(v);
        if (!reduced(g, x)) return false;
    }
    return true;
}

VertexSet linkset(const Graph& g, const Word& w, VertexSet pool) {
    VertexSet out;
    for (Vertex v : pool) {
        bool all = true;
        for (Vertex x : w) all = all && g.adjacent(v, x);
        if (all) out.insert(v);
    }
    return out;
}

std::vector<Word> moves(const Graph& g, const Word& w, std::size_t cap) {
    std::vector<Word> out;
    for (std::size_t i = 0; i + 1 < w.size(); ++i) {
        if (w[i] != w[i + 1] && g.adjacent(w[i], w[i + 1])) {
            Word x = w;
            std::swap(x[i], x[i + 1]);
            out.push_back(std::move(x));
        }
        if (w[i] == w[i + 1]) {
            Word x = w;
            x.erase(x.begin() + static_cast<std::ptrdiff_t>(i));
            out.push_back(std::move(x));
        }
    }
    if (w.size() < cap) {
        for (std::size_t i = 0; i < w.size(); ++i) {
            Word x = w;
            x.insert(x.begin() + static_cast<std::ptrdiff_t>(i), w[i]);
            out.push_back(std::move(x));
        }
    }
    return out;
}

namespace {

std::uint64_t encode(const Word& w, int n) {
    std::uint64_t code = 0;
    for (auto it = w.rbegin(); it != w.rend(); ++it) code = code * static_cast<std::uint64_t>(n + 1) + static_cast<std::uint64_t>(*it + 1);
    return code;
}

int find(std::vector<int>& parent, int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
        parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
        x = parent[static_cast<std::size_t>(x)];
    }
    return x;
}

}  // namespace

std::vector<int> closure_classes(const Graph& g, const std::vector<Word>& words, std::size_t cap) {
    const int n = g.size();
    std::unordered_map<std::uint64_t, int> index;
    index.reserve(words.size() * 2);
    for (std::size_t i = 0; i < words.size(); ++i) index[encode(words[i], n)] = static_cast<int>(i);
    std::vector<int> parent(words.size());
    std::iota(parent.begin(), parent.end(), 0);
    for (std::size_t i = 0; i < words.size(); ++i) {
        for (const auto& x : moves(g, words[i], cap)) {
            const int j = index.at(encode(x, n));
            const int a = find(parent, static_cast<int>(i));
            const int b = find(parent, j);
            if (a != b) parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
        }
    }
    std::vector<int> out(words.size());
    for (std::size_t i = 0; i < words.size(); ++i) out[i] = find(parent, static_cast<int>(i));
    return out;
}

bool bfs_equivalent(const Graph& g, const Word& w, const Word& w2) {
    const std::size_t cap = std::max(w.size(), w2.size());
    std::set<Word> seen{w};
    std::deque<Word> queue{w};
    while (!queue.empty()) {
        Word cur = std::move(queue.front());
        queue.pop_front();
        if (cur == w2) return true;
        for (auto& x : moves(g, cur, cap)) {
            if (seen.insert(x).second) queue.push_back(std::move(x));
        }
    }
    return false;
}

namespace {

std::vector<std::pair<Vertex, Vertex>> pair_list(int n) {
    std::vector<std::pair<Vertex, Vertex>> out;
    for (int a = 0; a < n; ++a) {
        for (int b = a + 1; b < n; ++b) out.emplace_back(a, b);
    }
    return out;
}

Graph from_mask(int n, std::uint64_t mask, const std::vector<std::pair<Vertex, Vertex>>& pairs) {
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (std::size_t e = 0; e < pairs.size(); ++e) {
        if ((mask >> e) & 1u) edges.push_back(pairs[e]);
    }
    std::vector<std::string> names;
    for (int i = 0; i < n; ++i) names.push_back(std::string(1, static_cast<char>('a' + i)));
    return Graph::from_indices(n, edges, names);
}

}  // namespace

std::vector<Graph> all_graphs(int n) {
    const auto pairs = pair_list(n);
    std::vector<Graph> out;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << pairs.size()); ++mask) out.push_back(from_mask(n, mask, pairs));
    return out;
}

std::vector<Graph> graph_classes(int n) {
    const auto pairs = pair_list(n);
    std::vector<int> perm(static_cast<std::size_t>(n));
    std::vector<std::vector<int>> perms;
    std::iota(perm.begin(), perm.end(), 0);
    do {
        perms.push_back(perm);
    } while (std::next_permutation(perm.begin(), perm.end()));
    std::vector<int> pair_index(static_cast<std::size_t>(n * n), -1);
    for (std::size_t e = 0; e < pairs.size(); ++e) {
        pair_index[static_cast<std::size_t>(pairs[e].first * n + pairs[e].second)] = static_cast<int>(e);
        pair_index[static_cast<std::size_t>(pairs[e].second * n + pairs[e].first)] = static_cast<int>(e);
    }
    std::vector<Graph> out;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << pairs.size()); ++mask) {
        bool minimal = true;
        for (const auto& p : perms) {
            std::uint64_t image = 0;
            for (std::size_t e = 0; e < pairs.size(); ++e) {
                if ((mask >> e) & 1u) {
                    image |= std::uint64_t{1}
                             << pair_index[static_cast<std::size_t>(p[static_cast<std::size_t>(pairs[e].first)] * n +
                                                                    p[static_cast<std::size_t>(pairs[e].second)])];
                }
            }
            if (image < mask) {
                minimal = false;
                break;
            }
        }
        if (minimal) out.push_back(from_mask(n, mask, pairs));
    }
    return out;
}

Graph random_graph(int n, double p, std::mt19937_64& rng) {
    std::bernoulli_distribution coin(p);
    const auto pairs = pair_list(n);
    std::uint64_t mask = 0;
    for (std::size_t e = 0; e < pairs.size(); ++e) {
        if (coin(rng)) mask |= std::uint64_t{1} << e;
    }
    return from_mask(n, mask, pairs);
}

bool splits_as_join(const Graph& g, VertexSet s) {
    const auto members = s.to_vector();
    const std::size_t k = members.size();
    if (k < 2) return false;
    // Fix the first member on side A to skip mirrored splits.
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << (k - 1)); ++m) {
        VertexSet a = VertexSet::single(members[0]);
        for (std::size_t i = 1; i < k; ++i) {
            if ((m >> (i - 1)) & 1u) a.insert(members[i]);
        }
        const VertexSet b = s - a;
        if (b.empty()) continue;
        bool all = true;
        for (Vertex x : a) {
            for (Vertex y : b) all = all && g.adjacent(x, y);
        }
        if (all) return true;
    }
    return false;
}

std::vector<std::vector<std::vector<int>>> noncrossing_partitions(int n) {
    std::vector<std::vector<std::vector<int>>> out;
    std::vector<std::vector<int>> blocks;
    std::function<void(int)> rec = [&](int i) {
        if (i == n) {
            for (std::size_t p = 0; p < blocks.size(); ++p) {
                for (std::size_t q = 0; q < blocks.size(); ++q) {
                    if (p == q) continue;
                    for (int a : blocks[p]) {
                        for (int c : blocks[p]) {
                            for (int b : blocks[q]) {
                                for (int d : blocks[q]) {
                                    if (a < b && b < c && c < d) return;
                                }
                            }
                        }
                    }
                }
            }
            out.push_back(blocks);
            return;
        }
        // Indexed: the recursion appends blocks and may reallocate.
        for (std::size_t b = 0; b < blocks.size(); ++b) {
            blocks[b].push_back(i);
            rec(i + 1);
            blocks[b].pop_back();
        }
        blocks.push_back({i});
        rec(i + 1);
        blocks.pop_back();
    };
    rec(0);
    return out;
}

Gauss vertex_state(const gpcalc::ConcreteAlgebra& a, const gpcalc::Matrix& x) {
    Gauss out;
    for (std::size_t j = 0; j < a.block_count(); ++j) {
        int r = 0;
        for (const auto& e : a.blocks()[j].spectrum) {
            for (int k = 0; k < e.multiplicity; ++k, ++r) out += x.at(j, r, r) * Gauss(e.eigenvalue);
        }
    }
    return out;
}

Gauss tensor_moment(const std::vector<gpcalc::ConcreteAlgebra>& algebras, const std::vector<Letter>& word) {
    Gauss out(1);
    for (std::size_t v = 0; v < algebras.size(); ++v) {
        gpcalc::Matrix prod = gpcalc::Matrix::identity(algebras[v]);
        for (const auto& l : word) {
            if (static_cast<std::size_t>(l.vertex) == v) prod = prod * l.matrix;
        }
        out *= oracle::vertex_state(algebras[v], prod);
    }
    return out;
}

Gauss free_moment(const std::vector<gpcalc::ConcreteAlgebra>& algebras, const std::vector<Letter>& word) {
    const int n = static_cast<int>(word.size());
    std::map<std::uint32_t, Gauss> cumulants;

    auto members = [](std::uint32_t mask) {
        std::vector<int> out;
        for (int i = 0; i < 32; ++i) {
            if ((mask >> i) & 1u) out.push_back(i);
        }
        return out;
    };
    std::function<Gauss(std::uint32_t)> cumulant = [&](std::uint32_t mask) -> Gauss {
        if (auto it = cumulants.find(mask); it != cumulants.end()) return it->second;
        const auto idx = members(mask);
        const Vertex v = word[static_cast<std::size_t>(idx[0])].vertex;
        gpcalc::Matrix prod = gpcalc::Matrix::identity(algebras[static_cast<std::size_t>(v)]);
        for (int i : idx) prod = prod * word[static_cast<std::size_t>(i)].matrix;
        Gauss k = oracle::vertex_state(algebras[static_cast<std::size_t>(v)], prod);
        for (const auto& pi : noncrossing_partitions(static_cast<int>(idx.size()))) {
            if (pi.size() == 1) continue;
            Gauss term(1);
            for (const auto& block : pi) {
                std::uint32_t sub = 0;
                for (int b : block) sub |= 1u << idx[static_cast<std::size_t>(b)];
                term *= cumulant(sub);
            }
            k -= term;
        }
        cumulants[mask] = k;
        return k;
    };

    Gauss out;
    for (const auto& pi : noncrossing_partitions(n)) {
        bool mono = true;
        for (const auto& block : pi) {
            for (int i : block) mono = mono && word[static_cast<std::size_t>(i)].vertex == word[static_cast<std::size_t>(block[0])].vertex;
        }
        if (!mono) continue;
        Gauss term(1);
        for (const auto& block : pi) {
            std::uint32_t mask = 0;
            for (int i : block) mask |= 1u << i;
            term *= cumulant(mask);
        }
        out += term;
    }
    return out;
}

gpcalc::ConcreteAlgebra random_algebra(std::mt19937_64& rng, int max_size, bool tracial) {
    std::uniform_int_distribution<int> weight(1, 4);
    while (true) {
        std::uniform_int_distribution<int> nblocks(1, std::min(3, max_size));
        const int k = nblocks(rng);
        std::vector<int> sizes;
        int total = 0;
        for (int j = 0; j < k; ++j) {
            std::uniform_int_distribution<int> sz(1, std::max(1, std::min(3, max_size - total - (k - j - 1))));
            sizes.push_back(sz(rng));
            total += sizes.back();
        }
        if (k == 1 && sizes[0] == 1) continue;  // C has no centered part
        std::vector<std::vector<int>> raw;
        int sum = 0;
        for (int s : sizes) {
            std::vector<int> r;
            const int common = weight(rng);
            for (int i = 0; i < s; ++i) r.push_back(tracial ? common : weight(rng));
            for (int x : r) sum += x;
            raw.push_back(r);
        }
        std::vector<gpcalc::Block> blocks;
        for (std::size_t j = 0; j < sizes.size(); ++j) {
            gpcalc::Block b;
            b.size = sizes[j];
            for (int x : raw[j]) b.spectrum.push_back({mpq_class(x, sum), 1});
            blocks.push_back(std::move(b));
        }
        return gpcalc::ConcreteAlgebra(std::move(blocks));
    }
}

gpcalc::Matrix random_matrix(std::mt19937_64& rng, const gpcalc::ConcreteAlgebra& a) {
    std::uniform_int_distribution<int> entry(-2, 2);
    std::uniform_int_distribution<int> denom(1, 2);
    std::vector<int> sizes;
    std::vector<std::vector<Gauss>> blocks;
    for (const auto& b : a.blocks()) {
        sizes.push_back(b.size);
        std::vector<Gauss> e;
        for (int i = 0; i < b.size * b.size; ++i) e.emplace_back(mpq_class(entry(rng), denom(rng)), mpq_class(entry(rng), denom(rng)));
        blocks.push_back(std::move(e));
    }
    return gpcalc::Matrix(std::move(sizes), std::move(blocks));
}

gpcalc::Matrix random_centered(std::mt19937_64& rng, const gpcalc::ConcreteAlgebra& a) {
    gpcalc::Matrix x = random_matrix(rng, a);
    return x - gpcalc::Matrix::identity(a) * oracle::vertex_state(a, x);
}

double min_abs_weighted_phase_sum(const std::vector<double>& weights, const std::vector<int>& sizes,
                                  std::mt19937_64& rng, int starts) {
    std::vector<double> coef;
    for (std::size_t b = 0; b < weights.size(); ++b) {
        for (int k = 0; k < sizes[b]; ++k) coef.push_back(weights[b] / sizes[b]);
    }
    std::uniform_real_distribution<double> angle(0, 2 * M_PI);
    double best = 1e300;
    for (int s = 0; s < starts; ++s) {
        std::vector<double> theta(coef.size());
        for (auto& t : theta) t = angle(rng);
        std::complex<double> total;
        for (std::size_t i = 0; i < coef.size(); ++i) total += coef[i] * std::polar(1.0, theta[i]);
        for (int sweep = 0; sweep < 200 && std::abs(total) >= 1e-12; ++sweep) {
            for (std::size_t i = 0; i < coef.size(); ++i) {
                // Optimal single angle points opposite the rest of the sum.
                const std::complex<double> rest = total - coef[i] * std::polar(1.0, theta[i]);
                if (std::abs(rest) > 0) theta[i] = std::arg(rest) + M_PI;
                total = rest + coef[i] * std::polar(1.0, theta[i]);
            }
            // Pairs escape collinear stalls: two terms reach any vector of length
            // between |ci - cj| and ci + cj.
            for (std::size_t i = 0; i < coef.size(); ++i) {
                for (std::size_t j = i + 1; j < coef.size(); ++j) {
                    const double ci = coef[i], cj = coef[j];
                    const std::complex<double> rest =
                        total - ci * std::polar(1.0, theta[i]) - cj * std::polar(1.0, theta[j]);
                    const double m = std::clamp(std::abs(rest), std::abs(ci - cj), ci + cj);
                    const double c = std::clamp((m * m - ci * ci - cj * cj) / (2 * ci * cj), -1.0, 1.0);
                    const double delta = std::acos(c);
                    const std::complex<double> pair = ci * std::polar(1.0, delta) + cj;
                    const double dir = (std::abs(rest) > 0 ? std::arg(rest) + M_PI : 0) - std::arg(pair);
                    theta[i] = delta + dir;
                    theta[j] = dir;
                    total = rest + ci * std::polar(1.0, theta[i]) + cj * std::polar(1.0, theta[j]);
                }
            }
        }
        best = std::min(best, std::abs(total));
    }
    return best;
}

}  // namespace oracle
