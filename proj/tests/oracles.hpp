#pragma once

// Naive reference implementations used as independent oracles.  Everything
// here is written the slow, obvious way (std::polar, direct summation,
// brute-force filters) so that it shares no code path with the library.

#include <cmath>
#include <complex>
#include <cstdint>
#include <numeric>
#include <vector>

#include "smoothsums/characters.hpp"

namespace oracle {

using Complex = std::complex<double>;

inline Complex e(double x) { return std::polar(1.0, 2.0 * M_PI * x); }

inline Complex naive_k_chi(const smoothsums::DirichletCharacter& chi, int64_t k, int64_t l) {
    const int64_t q = chi.q();
    Complex sum{0.0, 0.0};
    for (int64_t u = 0; u < q; ++u) {
        if (std::gcd(u, q) != 1) continue;
        sum += chi(l + u) * std::conj(chi(u)) *
               e(static_cast<double>(k % q) * static_cast<double>(u) / static_cast<double>(q));
    }
    return sum / std::sqrt(static_cast<double>(q));
}

inline double naive_ramanujan(int64_t d, int64_t k) {
    Complex sum{0.0, 0.0};
    for (int64_t x = 1; x <= d; ++x) {
        if (std::gcd(x, d) != 1) continue;
        sum += e(static_cast<double>(k % d) * static_cast<double>(x) / static_cast<double>(d));
    }
    return sum.real();
}

inline Complex naive_gauss_sum(const smoothsums::DirichletCharacter& chi) {
    const int64_t q = chi.q();
    Complex sum{0.0, 0.0};
    for (int64_t a = 1; a <= q; ++a)
        sum += chi(a) * e(static_cast<double>(a) / static_cast<double>(q));
    return sum;
}

// brute-force filter of [2, limit]
inline std::vector<int64_t> naive_smooth_squarefree(int64_t limit, int64_t y, int min_factors) {
    std::vector<int64_t> out;
    for (int64_t n = 2; n <= limit; ++n) {
        int64_t m = n;
        int factors = 0;
        bool ok = true;
        for (int64_t p = 2; p <= m; ++p) {
            if (m % p) continue;
            if (p > y) { ok = false; break; }
            m /= p;
            if (m % p == 0) { ok = false; break; }
            ++factors;
        }
        if (ok && factors >= min_factors) out.push_back(n);
    }
    return out;
}

inline Complex naive_dft_entry(const std::vector<Complex>& a, int64_t k, int sign) {
    const int64_t n = static_cast<int64_t>(a.size());
    Complex sum{0.0, 0.0};
    for (int64_t j = 0; j < n; ++j)
        sum += a[static_cast<std::size_t>(j)] *
               e(static_cast<double>(sign) * static_cast<double>((j * k) % n) / static_cast<double>(n));
    return sum;
}

// extended Euclid (recursive), structured differently from the library's loop
inline std::pair<int64_t, int64_t> naive_exgcd(int64_t x, int64_t y) {
    if (y == 0) return {1, 0};
    auto [u, v] = naive_exgcd(y, x % y);
    return {v, u - (x / y) * v};
}

inline int64_t naive_inverse(int64_t a, int64_t m) {
    auto [u, v] = naive_exgcd(a % m, m);
    (void)v;
    int64_t r = u % m;
    return r < 0 ? r + m : r;
}

} // namespace oracle
