#pragma once

// Deterministic parallel helpers.  parallel_for computes independent index
// slots on a fixed worker count; reductions always go through tree_sum,
// whose pairwise shape depends only on the element count, so results are
// bit-identical for any worker count.

#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace smoothsums {

void parallel_for(std::size_t n, int degree, const std::function<void(std::size_t)>& body);

int default_parallelism();

// Fixed-shape pairwise summation.
template <typename T>
T tree_sum(std::vector<T> v) {
    if (v.empty()) return T{};
    std::size_t n = v.size();
    while (n > 1) {
        std::size_t half = n / 2;
        for (std::size_t i = 0; i < half; ++i) v[i] = v[2 * i] + v[2 * i + 1];
        if (n & 1) { v[half] = v[n - 1]; ++half; }
        n = half;
    }
    return v[0];
}

} // namespace smoothsums
