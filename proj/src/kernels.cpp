#include "gpcalc/kernels.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace gpcalc::kernels {

int max_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

ReverseTransfer reverse_of(const TransferTable& table) {
    ReverseTransfer rev;
    rev.offsets.assign(static_cast<std::size_t>(table.states) + 1, 0);
    for (int t : table.next) {
        if (t >= 0) ++rev.offsets[static_cast<std::size_t>(t) + 1];
    }
    for (std::size_t s = 1; s < rev.offsets.size(); ++s) rev.offsets[s] += rev.offsets[s - 1];
    rev.sources.resize(rev.offsets.back());
    std::vector<std::size_t> fill(rev.offsets.begin(), rev.offsets.end() - 1);
    for (int s = 0; s < table.states; ++s) {
        for (int u = 0; u < table.letters; ++u) {
            int t = table.next[static_cast<std::size_t>(s * table.letters + u)];
            if (t >= 0) rev.sources[fill[static_cast<std::size_t>(t)]++] = {s, u};
        }
    }
    return rev;
}

std::vector<ExtNat> transfer_step_serial(const TransferTable& table, const std::vector<ExtNat>& cur,
                                         const std::vector<ExtNat>& weights) {
    std::vector<ExtNat> out(static_cast<std::size_t>(table.states));
    for (int s = 0; s < table.states; ++s) {
        const ExtNat& here = cur[static_cast<std::size_t>(s)];
        if (here.is_zero()) continue;
        for (int u = 0; u < table.letters; ++u) {
            int t = table.next[static_cast<std::size_t>(s * table.letters + u)];
            if (t >= 0) out[static_cast<std::size_t>(t)] += here * weights[static_cast<std::size_t>(u)];
        }
    }
    return out;
}

std::vector<ExtNat> transfer_step_parallel(const ReverseTransfer& reverse, const std::vector<ExtNat>& cur,
                                           const std::vector<ExtNat>& weights) {
    const auto states = static_cast<long long>(reverse.offsets.size()) - 1;
    std::vector<ExtNat> out(static_cast<std::size_t>(states));
#pragma omp parallel for schedule(dynamic, 16)
    for (long long t = 0; t < states; ++t) {
        ExtNat acc;
        for (std::size_t k = reverse.offsets[static_cast<std::size_t>(t)];
             k < reverse.offsets[static_cast<std::size_t>(t) + 1]; ++k) {
            auto [s, u] = reverse.sources[k];
            const ExtNat& here = cur[static_cast<std::size_t>(s)];
            if (!here.is_zero()) acc += here * weights[static_cast<std::size_t>(u)];
        }
        out[static_cast<std::size_t>(t)] = std::move(acc);
    }
    return out;
}

}  // namespace gpcalc::kernels
