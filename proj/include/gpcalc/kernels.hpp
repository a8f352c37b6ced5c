#pragma once

#include <cstddef>
#include <exception>
#include <type_traits>
#include <utility>
#include <vector>

#include "gpcalc/ext_nat.hpp"

namespace gpcalc {

enum class ExecutionPolicy { serial, parallel };

namespace kernels {

// Dense transition table: next[s * letters + u] is the successor or -1.
struct TransferTable {
    int states = 0;
    int letters = 0;
    std::vector<int> next;
};

// Predecessor lists grouped by target state (CSR layout).
struct ReverseTransfer {
    std::vector<std::size_t> offsets;            // size states + 1
    std::vector<std::pair<int, int>> sources;     // (state, letter)
};

ReverseTransfer reverse_of(const TransferTable& table);

// out[t] = sum over (s,u) with next(s,u) = t of cur[s] * weights[u].
// Push formulation, single thread; the reference for the parallel kernel.
std::vector<ExtNat> transfer_step_serial(const TransferTable& table, const std::vector<ExtNat>& cur,
                                         const std::vector<ExtNat>& weights);
// Pull formulation over target states; each output is owned by one thread.
std::vector<ExtNat> transfer_step_parallel(const ReverseTransfer& reverse, const std::vector<ExtNat>& cur,
                                           const std::vector<ExtNat>& weights);

int max_threads();

// result[i] = f(i). Results are stored by index, so the output does not depend on scheduling.
// The first exception by index is rethrown after the loop.
template <class F>
auto map_indexed(std::size_t n, F&& f, ExecutionPolicy policy) -> std::vector<std::invoke_result_t<F&, std::size_t>> {
    using R = std::invoke_result_t<F&, std::size_t>;
    std::vector<R> out(n);
    if (policy == ExecutionPolicy::serial || n < 2) {
        for (std::size_t i = 0; i < n; ++i) out[i] = f(i);
        return out;
    }
    std::vector<std::exception_ptr> errors(n);
    const auto count = static_cast<long long>(n);
#pragma omp parallel for schedule(dynamic)
    for (long long i = 0; i < count; ++i) {
        try {
            out[static_cast<std::size_t>(i)] = f(static_cast<std::size_t>(i));
        } catch (...) {
            errors[static_cast<std::size_t>(i)] = std::current_exception();
        }
    }
    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
    return out;
}

}  // namespace kernels
}  // namespace gpcalc
