#include "smoothsums/expsums.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <ostream>

#include "smoothsums/csvio.hpp"
#include "smoothsums/fft.hpp"

namespace smoothsums {

RootTable::RootTable(int64_t modulus) : q(modulus), w(static_cast<std::size_t>(modulus)) {
    const double step = 2.0 * std::numbers::pi / static_cast<double>(q);
    for (int64_t j = 0; j < q; ++j)
        w[static_cast<std::size_t>(j)] = Complex(std::cos(step * static_cast<double>(j)),
                                                 std::sin(step * static_cast<double>(j)));
}

double ramanujan_sum(int64_t d, int64_t k) {
    if (d < 1) throw Error("ramanujan_sum: d must be positive");
    int64_t kr = posmod(k, d);
    int64_t g = kr == 0 ? d : std::gcd(kr, d);
    int64_t d1 = d / g;
    // R_d(k) = mu(d/(d,k)) phi(d) / phi(d/(d,k))
    return static_cast<double>(mobius(d1)) * static_cast<double>(euler_phi(d)) /
           static_cast<double>(euler_phi(d1));
}

namespace {

void require_primitive(const DirichletCharacter& chi) {
    if (!chi.is_primitive())
        throw NotPrimitiveError("character " + to_string(chi) + " is not primitive");
}

void require_prime(const Modulus& m) {
    if (!m.is_prime_modulus())
        throw NotPrimeError("operation requires a prime modulus, got q = " + std::to_string(m.q));
}

// Length-p table of K_{chi_p}(m) for the i-th local component, via one DFT
// of u -> chi_p(1+u) conj(chi_p)(u).
std::vector<Complex> local_k_table(const DirichletCharacter& chi, std::size_t i) {
    const int64_t p = chi.modulus().primes[i];
    std::vector<Complex> f(static_cast<std::size_t>(p), Complex{0.0, 0.0});
    for (int64_t u = 1; u < p - 1; ++u)
        f[static_cast<std::size_t>(u)] = chi.local(i, 1 + u) * std::conj(chi.local(i, u));
    std::vector<Complex> t = dft(f, +1);
    const double scale = 1.0 / std::sqrt(static_cast<double>(p));
    for (auto& v : t) v *= scale;
    return t;
}

// Per-prime strides Qbar_p = (q/p)^{-1} mod p for the CRT gather.
std::vector<int64_t> crt_strides(const Modulus& m) {
    std::vector<int64_t> s(m.primes.size());
    for (std::size_t i = 0; i < m.primes.size(); ++i) {
        int64_t p = m.primes[i];
        s[i] = mod_inverse(posmod(m.q / p, p), p);
    }
    return s;
}

} // namespace

Complex k_chi(const DirichletCharacter& chi, int64_t k, int64_t l) {
    require_primitive(chi);
    const int64_t q = chi.q();
    if (q == 1) return {1.0, 0.0}; // empty product convention
    RootTable roots(q);
    Complex sum{0.0, 0.0};
    int64_t kidx = 0;
    const int64_t kr = posmod(k, q);
    for (int64_t u = 0; u < q; ++u) {
        Complex a = chi(l + u);
        if (a != Complex{0.0, 0.0}) {
            Complex b = std::conj(chi(u));
            if (b != Complex{0.0, 0.0}) sum += a * b * roots.w[static_cast<std::size_t>(kidx)];
        }
        kidx += kr;
        if (kidx >= q) kidx -= q;
    }
    return sum / std::sqrt(static_cast<double>(q));
}

Complex k_chi_point(const DirichletCharacter& chi, int64_t m) { return k_chi(chi, m, 1); }

double k_product_residual(const DirichletCharacter& chi, int64_t k, int64_t l) {
    const int64_t q = chi.q();
    const int64_t lr = posmod(l, q);
    const int64_t d = lr == 0 ? q : std::gcd(lr, q);
    Complex lhs = k_chi(chi, k, l);
    Complex rhs = static_cast<double>(mobius(d)) * ramanujan_sum(d, k) *
                  k_chi_point(chi, mulmod(posmod(k, q), lr, q));
    return std::abs(lhs - rhs);
}

Complex k_circ(const DirichletCharacter& chi, const DirichletCharacter& chi_prime, int64_t m) {
    if (chi.q() != chi_prime.q())
        throw ModulusMismatchError("k_circ requires equal moduli");
    require_primitive(chi);
    require_primitive(chi_prime);
    const Modulus& mod = chi.modulus();
    Complex prod{1.0, 0.0};
    for (std::size_t i = 0; i < mod.primes.size(); ++i) {
        const int64_t p = mod.primes[i];
        const int64_t qp = mod.q / p;
        const int64_t arg = mulmod(mod_inverse(posmod(qp, p), p), posmod(m, p), p);
        DirichletCharacter lp = restrict_character(chi, p);
        DirichletCharacter lp2 = restrict_character(chi_prime, p);
        Complex v = k_chi_point(lp, arg) * std::conj(k_chi_point(lp2, arg));
        if (chi.exponent_at(i) == chi_prime.exponent_at(i)) v -= 1.0;
        prod *= v;
    }
    return prod;
}

ExpSumTable k_bulk(const DirichletCharacter& chi) {
    require_primitive(chi);
    const Modulus& m = chi.modulus();
    ExpSumTable out{m.q, TableKind::K, {}};
    out.values.assign(static_cast<std::size_t>(m.q), Complex{1.0, 0.0});
    if (m.q == 1) return out;
    std::vector<int64_t> stride = crt_strides(m);
    for (std::size_t i = 0; i < m.primes.size(); ++i) {
        const int64_t p = m.primes[i];
        std::vector<Complex> local = local_k_table(chi, i);
        int64_t idx = 0;
        for (int64_t x = 0; x < m.q; ++x) {
            out.values[static_cast<std::size_t>(x)] *= local[static_cast<std::size_t>(idx)];
            idx += stride[i];
            if (idx >= p) idx -= p;
        }
    }
    return out;
}

ExpSumTable k_bulk_direct(const DirichletCharacter& chi) {
    require_primitive(chi);
    const int64_t q = chi.q();
    ExpSumTable out{q, TableKind::K, {}};
    out.values.assign(static_cast<std::size_t>(q), Complex{1.0, 0.0});
    if (q == 1) return out;
    RootTable roots(q);
    std::vector<Complex> f(static_cast<std::size_t>(q));
    for (int64_t u = 0; u < q; ++u)
        f[static_cast<std::size_t>(u)] = chi(1 + u) * std::conj(chi(u));
    const double scale = 1.0 / std::sqrt(static_cast<double>(q));
    for (int64_t m = 0; m < q; ++m) {
        Complex sum{0.0, 0.0};
        int64_t idx = 0;
        for (int64_t u = 0; u < q; ++u) {
            sum += f[static_cast<std::size_t>(u)] * roots.w[static_cast<std::size_t>(idx)];
            idx += m;
            if (idx >= q) idx -= q;
        }
        out.values[static_cast<std::size_t>(m)] = sum * scale;
    }
    return out;
}

ExpSumTable k_circ_bulk(const DirichletCharacter& chi, const DirichletCharacter& chi_prime) {
    if (chi.q() != chi_prime.q())
        throw ModulusMismatchError("k_circ_bulk requires equal moduli");
    require_primitive(chi);
    require_primitive(chi_prime);
    const Modulus& m = chi.modulus();
    ExpSumTable out{m.q, TableKind::Kcirc, {}};
    out.values.assign(static_cast<std::size_t>(m.q), Complex{1.0, 0.0});
    if (m.q == 1) return out;
    std::vector<int64_t> stride = crt_strides(m);
    for (std::size_t i = 0; i < m.primes.size(); ++i) {
        const int64_t p = m.primes[i];
        std::vector<Complex> a = local_k_table(chi, i);
        std::vector<Complex> b = local_k_table(chi_prime, i);
        const bool diag = chi.exponent_at(i) == chi_prime.exponent_at(i);
        std::vector<Complex> local(static_cast<std::size_t>(p));
        for (int64_t x = 0; x < p; ++x) {
            Complex v = a[static_cast<std::size_t>(x)] * std::conj(b[static_cast<std::size_t>(x)]);
            if (diag) v -= 1.0;
            local[static_cast<std::size_t>(x)] = v;
        }
        int64_t idx = 0;
        for (int64_t x = 0; x < m.q; ++x) {
            out.values[static_cast<std::size_t>(x)] *= local[static_cast<std::size_t>(idx)];
            idx += stride[i];
            if (idx >= p) idx -= p;
        }
    }
    return out;
}

ExpSumTable fourier_complete(const DirichletCharacter& chi, const DirichletCharacter& chi_prime) {
    require_prime(chi.modulus());
    return fourier_complete(k_circ_bulk(chi, chi_prime));
}

ExpSumTable fourier_complete(const ExpSumTable& kcirc) {
    ExpSumTable out{kcirc.modulus, TableKind::Fourier, dft(kcirc.values, -1)};
    return out;
}

ExpSumTable fourier_complete_direct(const ExpSumTable& kcirc) {
    const int64_t p = kcirc.modulus;
    RootTable roots(p);
    ExpSumTable out{p, TableKind::Fourier, std::vector<Complex>(static_cast<std::size_t>(p))};
    for (int64_t t = 0; t < p; ++t) {
        Complex sum{0.0, 0.0};
        int64_t idx = 0;
        for (int64_t u = 0; u < p; ++u) {
            sum += kcirc.values[static_cast<std::size_t>(u)] *
                   std::conj(roots.w[static_cast<std::size_t>(idx)]);
            idx += t;
            if (idx >= p) idx -= p;
        }
        out.values[static_cast<std::size_t>(t)] = sum;
    }
    return out;
}

Complex correlation_sum(const DirichletCharacter& chi, const DirichletCharacter& chi_prime,
                        int64_t s, int64_t t) {
    require_prime(chi.modulus());
    return correlation_sum(k_circ_bulk(chi, chi_prime), s, t);
}

Complex correlation_sum(const ExpSumTable& kcirc, int64_t s, int64_t t) {
    const int64_t p = kcirc.modulus;
    RootTable roots(p);
    Complex sum{0.0, 0.0};
    int64_t idx = 0;
    const int64_t tr = posmod(-t, p);
    for (int64_t u = 0; u < p; ++u) {
        sum += kcirc.at(s + u) * std::conj(kcirc.values[static_cast<std::size_t>(u)]) *
               roots.w[static_cast<std::size_t>(idx)];
        idx += tr;
        if (idx >= p) idx -= p;
    }
    return sum;
}

ExpSumTable correlation_table(const ExpSumTable& kcirc, int64_t s) {
    const int64_t p = kcirc.modulus;
    std::vector<Complex> g(static_cast<std::size_t>(p));
    for (int64_t u = 0; u < p; ++u)
        g[static_cast<std::size_t>(u)] =
            kcirc.at(s + u) * std::conj(kcirc.values[static_cast<std::size_t>(u)]);
    return ExpSumTable{p, TableKind::Correlation, dft(g, -1)};
}

ExpSumTable correlation_table_direct(const ExpSumTable& kcirc, int64_t s) {
    const int64_t p = kcirc.modulus;
    ExpSumTable out{p, TableKind::Correlation, std::vector<Complex>(static_cast<std::size_t>(p))};
    for (int64_t t = 0; t < p; ++t)
        out.values[static_cast<std::size_t>(t)] = correlation_sum(kcirc, s, t);
    return out;
}

void write_csv(const ExpSumTable& table, std::ostream& os) {
    os << "index,re,im\n";
    for (int64_t i = 0; i < table.modulus; ++i) {
        const Complex& v = table.values[static_cast<std::size_t>(i)];
        os << i << ',' << format_double(v.real()) << ',' << format_double(v.imag()) << '\n';
    }
}

} // namespace smoothsums
