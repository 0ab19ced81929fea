#pragma once

// Dirichlet characters mod squarefree q, stored as per-prime discrete-log
// exponents: the local component at p sends a fixed primitive root g_p to
// e(e_p/(p-1)).  Evaluation walks the prime factorization and multiplies
// local roots of unity looked up from per-prime tables.

#include <complex>
#include <cstdint>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "smoothsums/arith.hpp"

namespace smoothsums {

using Complex = std::complex<double>;

// Per-prime evaluation tables: smallest primitive root, a full discrete-log
// table, and the (p-1)-st roots of unity.  Cached globally per prime; the
// cache is safe (and idempotent) under concurrent initialization.
struct PrimeCharTable {
    int64_t p = 0;
    int64_t root = 0;                 // smallest primitive root mod p
    std::vector<int32_t> dlog;        // dlog[x] with root^dlog[x] == x, x in [1, p)
    std::vector<Complex> unit;        // unit[j] = e(j/(p-1)), j in [0, p-1)

    static std::shared_ptr<const PrimeCharTable> get(int64_t p);
};

int64_t smallest_primitive_root(int64_t p);

class DirichletCharacter {
public:
    DirichletCharacter() = default; // trivial character mod 1
    DirichletCharacter(Modulus m, std::vector<int32_t> exponents);

    const Modulus& modulus() const { return mod_; }
    int64_t q() const { return mod_.q; }
    const std::vector<int32_t>& exponents() const { return exps_; }
    int32_t exponent_at(std::size_t i) const { return exps_[i]; }

    // chi(n); zero when gcd(n, q) > 1, otherwise a root of unity.
    Complex operator()(int64_t n) const;

    // Local component chi_p(n) for the i-th prime of the modulus.
    Complex local(std::size_t i, int64_t n) const;

    bool is_primitive() const;
    bool is_principal() const;

    DirichletCharacter conjugate() const;

    bool operator==(const DirichletCharacter& o) const {
        return mod_.q == o.mod_.q && exps_ == o.exps_;
    }

private:
    Modulus mod_;
    std::vector<int32_t> exps_;
    std::vector<std::shared_ptr<const PrimeCharTable>> tables_;
};

inline Complex evaluate(const DirichletCharacter& chi, int64_t n) { return chi(n); }

// chi(-1), as +1 or -1 (exact integer computation from the exponents).
int parity(const DirichletCharacter& chi);

// Product of the primes where the local components differ; 1 iff chi == chi'.
int64_t distance(const DirichletCharacter& chi, const DirichletCharacter& chi_prime);

// Restriction to a squarefree divisor r | q (keeps local exponents at p | r).
DirichletCharacter restrict_character(const DirichletCharacter& chi, int64_t r);

// chi1 * chi2 for coprime moduli: the character mod q1*q2 whose local
// components are those of the factors.
DirichletCharacter combine(const DirichletCharacter& chi1, const DirichletCharacter& chi2);

// All phi(q) characters mod q in lexicographic exponent order; with
// primitive_only, the prod(p-2) characters with every local exponent nonzero.
std::vector<DirichletCharacter> character_group(const Modulus& m, bool primitive_only = false);

// Uniform random primitive character (empty for even q > 1 is impossible:
// throws NotPrimitiveError when none exists).
DirichletCharacter random_primitive_character(const Modulus& m, std::mt19937_64& rng);

// Text form "q:e1,e2,..." used by the CLI round-trips.
std::string to_string(const DirichletCharacter& chi);
DirichletCharacter parse_character(const std::string& text);

// CharacterPair: two characters of equal modulus with their distance Delta.
struct CharacterPair {
    DirichletCharacter chi, chi_prime;
    int64_t delta = 1;
};

CharacterPair make_pair(DirichletCharacter chi, DirichletCharacter chi_prime);

} // namespace smoothsums
