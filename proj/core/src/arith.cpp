#include "smoothsums/arith.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace smoothsums {

int64_t powmod(int64_t base, int64_t exp, int64_t m) {
    int64_t r = 1 % m;
    base = posmod(base, m);
    while (exp > 0) {
        if (exp & 1) r = mulmod(r, base, m);
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    return r;
}

int64_t checked_mul(int64_t a, int64_t b) {
    __int128 p = static_cast<__int128>(a) * b;
    if (p > std::numeric_limits<int64_t>::max() ||
        p < std::numeric_limits<int64_t>::min())
        throw OverflowError("integer product overflows 64 bits");
    return static_cast<int64_t>(p);
}

bool is_prime(int64_t n) {
    if (n < 2) return false;
    for (int64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (n % p == 0) return n == p;
    }
    // deterministic Miller-Rabin for 64-bit inputs
    int64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) { d >>= 1; ++s; }
    for (int64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        int64_t x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (int r = 1; r < s; ++r) {
            x = mulmod(x, x, n);
            if (x == n - 1) { witness = false; break; }
        }
        if (witness) return false;
    }
    return true;
}

std::vector<int64_t> primes_up_to(int64_t n) {
    std::vector<int64_t> out;
    if (n < 2) return out;
    std::vector<bool> composite(static_cast<std::size_t>(n) + 1, false);
    for (int64_t i = 2; i <= n; ++i) {
        if (composite[static_cast<std::size_t>(i)]) continue;
        out.push_back(i);
        for (int64_t j = i * i; j <= n; j += i) composite[static_cast<std::size_t>(j)] = true;
    }
    return out;
}

namespace {

// (prime, exponent) factorization by trial division.
std::vector<std::pair<int64_t, int>> trial_factor(int64_t n) {
    std::vector<std::pair<int64_t, int>> f;
    for (int64_t p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
        if (n % p) continue;
        int e = 0;
        while (n % p == 0) { n /= p; ++e; }
        f.emplace_back(p, e);
    }
    if (n > 1) f.emplace_back(n, 1);
    return f;
}

} // namespace

int64_t euler_phi(int64_t n) {
    int64_t r = 1;
    for (auto [p, e] : trial_factor(n)) {
        r *= p - 1;
        for (int i = 1; i < e; ++i) r *= p;
    }
    return r;
}

int mobius(int64_t n) {
    int sign = 1;
    for (auto [p, e] : trial_factor(n)) {
        if (e > 1) return 0;
        sign = -sign;
        (void)p;
    }
    return sign;
}

int64_t divisor_count(int64_t n) {
    int64_t d = 1;
    for (auto [p, e] : trial_factor(n)) {
        d *= e + 1;
        (void)p;
    }
    return d;
}

int64_t Modulus::phi() const {
    int64_t r = 1;
    for (int64_t p : primes) r *= p - 1;
    return r;
}

int64_t Modulus::primitive_character_count() const {
    int64_t r = 1;
    for (int64_t p : primes) r *= p - 2;
    return r;
}

bool Modulus::contains_prime(int64_t p) const {
    return std::binary_search(primes.begin(), primes.end(), p);
}

Modulus factor_squarefree(int64_t n) {
    if (n < 1) throw Error("modulus must be positive");
    Modulus m;
    m.q = n;
    for (auto [p, e] : trial_factor(n)) {
        if (e > 1)
            throw NotSquarefreeError("not squarefree: " + std::to_string(p) +
                                     "^2 divides " + std::to_string(n));
        m.primes.push_back(p);
    }
    m.smooth_bound = m.primes.empty() ? 1 : m.primes.back();
    return m;
}

int64_t mod_inverse(int64_t a, int64_t m) {
    if (m < 1) throw Error("modulus must be positive");
    // extended Euclid: old_r = gcd, old_s solves a*old_s == gcd (mod m)
    int64_t old_r = posmod(a, m), r = m;
    int64_t old_s = 1, s = 0;
    while (r != 0) {
        int64_t quot = old_r / r;
        int64_t t = old_r - quot * r; old_r = r; r = t;
        t = old_s - quot * s; old_s = s; s = t;
    }
    if (old_r != 1)
        throw NotCoprimeError("gcd(" + std::to_string(a) + ", " + std::to_string(m) +
                              ") = " + std::to_string(old_r));
    return posmod(old_s, m);
}

std::vector<Modulus> enumerate_smooth_squarefree(int64_t limit, int64_t y,
                                                 int min_prime_factors) {
    if (limit < 2 || y < 2) throw Error("enumerate_smooth_squarefree: limit and y must be >= 2");
    std::vector<int64_t> ps = primes_up_to(y);
    std::vector<int64_t> found;
    // depth-first over products of distinct primes <= y
    struct Node { int64_t prod; std::size_t next; int count; };
    std::vector<Node> dfs{{1, 0, 0}};
    while (!dfs.empty()) {
        Node n = dfs.back();
        dfs.pop_back();
        if (n.count >= min_prime_factors && n.prod >= 2) found.push_back(n.prod);
        for (std::size_t i = n.next; i < ps.size(); ++i) {
            if (ps[i] > limit / n.prod) break;
            dfs.push_back({n.prod * ps[i], i + 1, n.count + 1});
        }
    }
    std::sort(found.begin(), found.end());
    std::vector<Modulus> out;
    out.reserve(found.size());
    for (int64_t q : found) out.push_back(factor_squarefree(q));
    return out;
}

// ---------------------------------------------------------------------------
// Subset-product window search, meet-in-the-middle over the prime list.
// ---------------------------------------------------------------------------

std::vector<uint32_t> subset_products_in_window(const std::vector<int64_t>& primes,
                                                double log_lo, double log_hi,
                                                std::size_t max_results) {
    const std::size_t n = primes.size();
    if (n > 30) throw Error("subset search limited to 30 primes");
    const std::size_t nl = n / 2, nr = n - nl;

    struct Entry { double lg; uint32_t mask; };
    auto build = [&](std::size_t offset, std::size_t count) {
        std::vector<Entry> v(std::size_t{1} << count);
        for (uint32_t mask = 0; mask < v.size(); ++mask) {
            double lg = 0;
            for (std::size_t i = 0; i < count; ++i)
                if (mask >> i & 1) lg += std::log(static_cast<double>(primes[offset + i]));
            v[mask] = {lg, mask};
        }
        std::sort(v.begin(), v.end(), [](const Entry& a, const Entry& b) { return a.lg < b.lg; });
        return v;
    };
    std::vector<Entry> left = build(0, nl), right = build(nl, nr);

    const double mid = 0.5 * (log_lo + log_hi);
    const double eps = 1e-9; // boundary slack for log comparisons
    struct Hit { double dist; uint32_t mask; };
    std::vector<Hit> hits;
    for (const Entry& l : left) {
        auto lo = std::lower_bound(right.begin(), right.end(), log_lo - l.lg - eps,
                                   [](const Entry& e, double v) { return e.lg < v; });
        for (auto it = lo; it != right.end() && l.lg + it->lg <= log_hi + eps; ++it) {
            uint32_t mask = l.mask | (it->mask << nl);
            hits.push_back({std::abs(l.lg + it->lg - mid), mask});
        }
    }
    std::sort(hits.begin(), hits.end(), [](const Hit& a, const Hit& b) {
        return a.dist != b.dist ? a.dist < b.dist : a.mask < b.mask;
    });
    if (hits.size() > max_results) hits.resize(max_results);
    std::vector<uint32_t> out;
    out.reserve(hits.size());
    for (const Hit& h : hits) out.push_back(h.mask);
    return out;
}

namespace {

int64_t mask_product(const std::vector<int64_t>& primes, uint32_t mask) {
    int64_t prod = 1;
    for (std::size_t i = 0; i < primes.size(); ++i)
        if (mask >> i & 1) prod = checked_mul(prod, primes[i]);
    return prod;
}

// Nearest achievable subset product to a window, for error reporting.
int64_t nearest_product(const std::vector<int64_t>& primes, double log_lo, double log_hi) {
    double best = std::numeric_limits<double>::infinity();
    int64_t best_prod = 1;
    const double mid = 0.5 * (log_lo + log_hi);
    uint32_t full = (primes.size() >= 31) ? 0x7fffffffu
                                          : ((uint32_t{1} << primes.size()) - 1);
    for (uint32_t mask = 0; mask <= full; ++mask) {
        double lg = 0;
        for (std::size_t i = 0; i < primes.size(); ++i)
            if (mask >> i & 1) lg += std::log(static_cast<double>(primes[i]));
        if (std::abs(lg - mid) < best) {
            best = std::abs(lg - mid);
            best_prod = mask_product(primes, mask);
        }
    }
    return best_prod;
}

} // namespace

Factorization choose_factorization(const Modulus& m, double V, double delta,
                                   FactorizationMode mode) {
    if (V <= 0 || delta <= 0) throw Error("choose_factorization: V and delta must be positive");
    const double logq = std::log(static_cast<double>(m.q));
    if (static_cast<double>(m.smooth_bound) > std::exp(delta * logq) * (1 + 1e-12))
        throw Error("modulus is not q^delta-smooth for delta = " + std::to_string(delta));
    const double logV = std::log(V);

    const double q1_lo = 2 * logV - 2 * delta * logq;
    const double q1_hi = 2 * logV - delta * logq;

    auto q2_window = [&](int64_t q1) -> std::pair<double, double> {
        if (mode == FactorizationMode::twelfth)
            return {4 * logV - 2 * delta * logq, 4 * logV - delta * logq};
        double logW = std::min(24 * logV - (3 + 12 * delta) * logq,
                               logq - std::log(static_cast<double>(q1)));
        return {logW - delta * logq, logW};
    };

    auto q1_masks = subset_products_in_window(m.primes, q1_lo, q1_hi);
    for (uint32_t mask1 : q1_masks) {
        int64_t q1 = mask_product(m.primes, mask1);
        std::vector<int64_t> rest;
        std::vector<std::size_t> rest_idx;
        for (std::size_t i = 0; i < m.primes.size(); ++i)
            if (!(mask1 >> i & 1)) { rest.push_back(m.primes[i]); rest_idx.push_back(i); }
        auto [q2_lo, q2_hi] = q2_window(q1);
        auto q2_masks = subset_products_in_window(rest, q2_lo, q2_hi, 1);
        if (q2_masks.empty()) continue;
        int64_t q2 = mask_product(rest, q2_masks[0]);
        Factorization f;
        f.parent = m;
        f.q1 = q1;
        f.q2 = q2;
        f.q3 = m.q / q1 / q2;
        return f;
    }

    auto [q2_lo, q2_hi] = q2_window(std::max<int64_t>(
        1, static_cast<int64_t>(std::llround(std::exp(0.5 * (q1_lo + q1_hi))))));
    throw NoFactorizationError(
        "no coprime split of q = " + std::to_string(m.q) +
        " hits the windows; nearest products q1 ~ " +
        std::to_string(nearest_product(m.primes, q1_lo, q1_hi)) + ", q2 ~ " +
        std::to_string(nearest_product(m.primes, q2_lo, q2_hi)));
}

} // namespace smoothsums
