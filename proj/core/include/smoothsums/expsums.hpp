#pragma once

// Complete exponential sums attached to Dirichlet characters mod squarefree q:
//
//   K_chi(k,l) = q^{-1/2} sum_{u mod q, (u,q)=1} chi(l+u) conj(chi)(u) e(ku/q)
//   K_chi(m)   = K_chi(m,1)
//
// together with the mean-corrected products
//
//   Kcirc_{chi,chi'}(m) = prod_{p|q} Kcirc_p(Qbar_p m),   Q_p = q/p,
//
// where at prime level Kcirc = K_chi conj(K_chi') - [chi == chi'], their
// Fourier transforms and shifted autocorrelations.  Every table has both an
// FFT bulk path and a brute-force path.

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include "smoothsums/characters.hpp"

namespace smoothsums {

enum class TableKind { K, Kcirc, Fourier, Correlation };

struct ExpSumTable {
    int64_t modulus = 1;
    TableKind kind = TableKind::K;
    std::vector<Complex> values; // indexed by residue, length == modulus

    Complex at(int64_t m) const { return values[static_cast<std::size_t>(posmod(m, modulus))]; }
};

// Additive character table e(j/q) with exact integer index reduction.
struct RootTable {
    int64_t q = 1;
    std::vector<Complex> w;

    explicit RootTable(int64_t q);
    // e(num/q) for any integer num
    Complex e(int64_t num) const { return w[static_cast<std::size_t>(posmod(num, q))]; }
};

// Ramanujan sum R_d(k); always an integer, returned as double.
double ramanujan_sum(int64_t d, int64_t k);

Complex k_chi(const DirichletCharacter& chi, int64_t k, int64_t l);
Complex k_chi_point(const DirichletCharacter& chi, int64_t m);

// |K_chi(k,l) - mu(d) R_d(k) K_chi(kl)| with d = (l,q); zero up to rounding.
double k_product_residual(const DirichletCharacter& chi, int64_t k, int64_t l);

Complex k_circ(const DirichletCharacter& chi, const DirichletCharacter& chi_prime, int64_t m);

// K_chi(m) for all m mod q: per-prime length-p DFTs assembled by twisted
// multiplicativity.  k_bulk_direct is the quadratic reference path.
ExpSumTable k_bulk(const DirichletCharacter& chi);
ExpSumTable k_bulk_direct(const DirichletCharacter& chi);

ExpSumTable k_circ_bulk(const DirichletCharacter& chi, const DirichletCharacter& chi_prime);

// T[t] = sum_u Kcirc(u) e(-tu/p), prime modulus only.
ExpSumTable fourier_complete(const DirichletCharacter& chi, const DirichletCharacter& chi_prime);
ExpSumTable fourier_complete(const ExpSumTable& kcirc);
ExpSumTable fourier_complete_direct(const ExpSumTable& kcirc);

// sum_u Kcirc(s+u) conj(Kcirc(u)) e(-tu/p), prime modulus only.
Complex correlation_sum(const DirichletCharacter& chi, const DirichletCharacter& chi_prime,
                        int64_t s, int64_t t);
Complex correlation_sum(const ExpSumTable& kcirc, int64_t s, int64_t t);
ExpSumTable correlation_table(const ExpSumTable& kcirc, int64_t s);
ExpSumTable correlation_table_direct(const ExpSumTable& kcirc, int64_t s);

// CSV dump, columns (index, re, im).
void write_csv(const ExpSumTable& table, std::ostream& os);

} // namespace smoothsums
