#pragma once

// Squarefree smooth modulus arithmetic: factorization, modular inverses,
// enumeration of smooth squarefree moduli, and the subset-product
// factorization chooser used by the bound audits.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "smoothsums/errors.hpp"

namespace smoothsums {

using std::int64_t;

// ---------------------------------------------------------------------------
// Small integer utilities (64-bit everywhere, overflow-checked where products
// can exceed the inputs).
// ---------------------------------------------------------------------------

inline int64_t mulmod(int64_t a, int64_t b, int64_t m) {
    return static_cast<int64_t>((static_cast<__int128>(a) * b) % m);
}

// Reduce into [0, m).
inline int64_t posmod(int64_t a, int64_t m) {
    int64_t r = a % m;
    return r < 0 ? r + m : r;
}

int64_t powmod(int64_t base, int64_t exp, int64_t m);

// a*b with overflow check.
int64_t checked_mul(int64_t a, int64_t b);

bool is_prime(int64_t n);

std::vector<int64_t> primes_up_to(int64_t n);

// Euler phi and Mobius mu of an arbitrary positive integer (trial division;
// desk-scale arguments).
int64_t euler_phi(int64_t n);
int mobius(int64_t n);

// Number of divisors; for squarefree n this is 2^omega(n).
int64_t divisor_count(int64_t n);

// ---------------------------------------------------------------------------
// Modulus: a squarefree integer with its full prime factorization.
// ---------------------------------------------------------------------------

struct Modulus {
    int64_t q = 1;
    std::vector<int64_t> primes; // strictly increasing, product == q
    int64_t smooth_bound = 1;    // max(primes), 1 for q == 1

    int omega() const { return static_cast<int>(primes.size()); }
    int64_t divisor_count() const { return int64_t{1} << primes.size(); }
    bool is_prime_modulus() const { return primes.size() == 1; }
    // phi(q) and the number of primitive characters prod (p-2).
    int64_t phi() const;
    int64_t primitive_character_count() const;
    bool contains_prime(int64_t p) const;

    bool operator==(const Modulus& o) const { return q == o.q; }
};

// Factor n, rejecting inputs with a square factor.
Modulus factor_squarefree(int64_t n);

// Modular inverse of a mod m, in [0, m).
int64_t mod_inverse(int64_t a, int64_t m);

// All squarefree y-smooth q <= limit with at least min_prime_factors prime
// factors, ascending.
std::vector<Modulus> enumerate_smooth_squarefree(int64_t limit, int64_t y,
                                                 int min_prime_factors);

// ---------------------------------------------------------------------------
// Factorization chooser.  Splits the prime list of q into three pairwise
// coprime parts q1*q2*q3 = q with q1 and q2 falling into windows derived from
// a threshold V and the smoothness exponent delta:
//
//   q1 in [V^2 q^{-2d}, V^2 q^{-d}]                                (always)
//   q2 in [V^4 q^{-2d}, V^4 q^{-d}]                                (twelfth)
//   q2 in [W q^{-d}, W],  W = min(V^24 q^{-3-12d}, q/q1)           (sixth)
// ---------------------------------------------------------------------------

enum class FactorizationMode { twelfth, sixth };

struct Factorization {
    int64_t q1 = 1, q2 = 1, q3 = 1;
    Modulus parent;
};

Factorization choose_factorization(const Modulus& m, double V, double delta,
                                   FactorizationMode mode);

// Subset-product search helper (exposed for tests): all subsets of the given
// primes whose product lies in [lo, hi] on a log scale, as bitmasks ordered
// by distance from the geometric midpoint of the window.  Meet-in-the-middle
// over the two halves of the prime list.
std::vector<uint32_t> subset_products_in_window(const std::vector<int64_t>& primes,
                                                double log_lo, double log_hi,
                                                std::size_t max_results = 128);

} // namespace smoothsums
