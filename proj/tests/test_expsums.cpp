#include <random>
#include <sstream>

#include "doctest.h"
#include "oracles.hpp"
#include "smoothsums/expsums.hpp"
#include "smoothsums/fft.hpp"

using namespace smoothsums;

TEST_CASE("dft matches the naive transform") {
    std::mt19937_64 rng(2);
    for (std::size_t n : {2u, 3u, 8u, 12u, 97u, 101u}) {
        std::vector<Complex> a(n);
        for (auto& v : a)
            v = Complex(static_cast<double>(rng() % 1000) / 500.0 - 1.0,
                        static_cast<double>(rng() % 1000) / 500.0 - 1.0);
        for (int sign : {-1, +1}) {
            auto got = dft(a, sign);
            for (int64_t k = 0; k < static_cast<int64_t>(n); ++k) {
                Complex want = oracle::naive_dft_entry(a, k, sign);
                CHECK(std::abs(got[static_cast<std::size_t>(k)] - want) <
                      1e-10 * static_cast<double>(n));
            }
        }
    }
}

TEST_CASE("ramanujan sums") {
    // R_1(k) = 1, R_d(0) = phi(d)
    for (int64_t k : {0, 1, 5, -3}) CHECK(ramanujan_sum(1, k) == doctest::Approx(1.0));
    for (int64_t d : {2, 6, 30, 36}) CHECK(ramanujan_sum(d, 0) == doctest::Approx(euler_phi(d)));
    CHECK(ramanujan_sum(6, 2) == doctest::Approx(oracle::naive_ramanujan(6, 2)));
    std::mt19937_64 rng(4);
    for (int i = 0; i < 100; ++i) {
        int64_t d = 1 + static_cast<int64_t>(rng() % 120);
        int64_t k = static_cast<int64_t>(rng() % 400) - 200;
        CHECK(ramanujan_sum(d, k) == doctest::Approx(oracle::naive_ramanujan(d, k)).epsilon(1e-9));
    }
}

TEST_CASE("k_chi against direct-summation oracle") {
    std::mt19937_64 rng(6);
    for (int64_t q : {5, 7, 15, 105}) {
        Modulus m = factor_squarefree(q);
        for (int i = 0; i < 8; ++i) {
            auto chi = random_primitive_character(m, rng);
            int64_t k = static_cast<int64_t>(rng() % q);
            int64_t l = static_cast<int64_t>(rng() % q);
            CHECK(std::abs(k_chi(chi, k, l) - oracle::naive_k_chi(chi, k, l)) <
                  1e-10 * static_cast<double>(q));
        }
    }
}

TEST_CASE("K(0, l) collapses to -1/sqrt(p) at prime modulus") {
    std::mt19937_64 rng(8);
    for (int64_t p : {5, 13, 101}) {
        Modulus m = factor_squarefree(p);
        auto chi = random_primitive_character(m, rng);
        for (int64_t l : {1, 2, 3}) {
            Complex v = k_chi(chi, 0, l);
            CHECK(std::abs(v - Complex{-1.0 / std::sqrt(static_cast<double>(p)), 0.0}) < 1e-12);
        }
    }
}

TEST_CASE("|K(0,l)| <= (l,q)/sqrt(q)") {
    std::mt19937_64 rng(10);
    for (int64_t q : {15, 105, 1155}) {
        Modulus m = factor_squarefree(q);
        for (int i = 0; i < 10; ++i) {
            auto chi = random_primitive_character(m, rng);
            int64_t l = static_cast<int64_t>(rng() % q);
            double bound = static_cast<double>(std::gcd(l == 0 ? q : l, q)) /
                           std::sqrt(static_cast<double>(q));
            CHECK(std::abs(k_chi(chi, 0, l)) <= bound + 1e-9);
        }
    }
}

TEST_CASE("k_product_residual vanishes") {
    // coprime l reduces to a change of variables; gcd > 1 exercises the
    // Ramanujan factor
    std::mt19937_64 rng(12);
    Modulus m15 = factor_squarefree(15);
    auto chi = random_primitive_character(m15, rng);
    CHECK(k_product_residual(chi, 2, 3) < 1e-12 * std::sqrt(15.0));
    for (int64_t q : {105, 1155, 2145}) {
        Modulus m = factor_squarefree(q);
        for (int i = 0; i < 25; ++i) {
            auto c = random_primitive_character(m, rng);
            int64_t k = static_cast<int64_t>(rng() % q);
            int64_t l = static_cast<int64_t>(rng() % q);
            CHECK(k_product_residual(c, k, l) < 1e-9 * std::sqrt(static_cast<double>(q)));
        }
    }
}

TEST_CASE("k_bulk equals pointwise k_chi and the direct table") {
    std::mt19937_64 rng(14);
    for (int64_t q : {5, 15, 105}) {
        Modulus m = factor_squarefree(q);
        auto chi = random_primitive_character(m, rng);
        ExpSumTable bulk = k_bulk(chi);
        ExpSumTable direct = k_bulk_direct(chi);
        REQUIRE(bulk.values.size() == static_cast<std::size_t>(q));
        for (int64_t mm = 0; mm < q; ++mm) {
            CHECK(std::abs(bulk.at(mm) - k_chi_point(chi, mm)) < 1e-9);
            CHECK(std::abs(bulk.at(mm) - direct.at(mm)) < 1e-10 * static_cast<double>(q));
        }
    }
}

TEST_CASE("Weil bound over random squarefree moduli") {
    std::mt19937_64 rng(16);
    std::vector<int64_t> pool;
    for (int64_t q = 3; q <= 3000; q += 2) {
        try {
            factor_squarefree(q);
            pool.push_back(q);
        } catch (const NotSquarefreeError&) {}
    }
    for (int i = 0; i < 25; ++i) {
        Modulus m = factor_squarefree(pool[rng() % pool.size()]);
        auto chi = random_primitive_character(m, rng);
        ExpSumTable t = k_bulk(chi);
        const double bound = std::pow(2.0, m.omega());
        for (const Complex& v : t.values) CHECK(std::abs(v) <= bound + 1e-6);
    }
}

TEST_CASE("twisted multiplicativity") {
    std::mt19937_64 rng(18);
    for (int64_t q : {15, 21, 105, 1155}) {
        Modulus m = factor_squarefree(q);
        auto chi = random_primitive_character(m, rng);
        int64_t q1 = m.primes[0];
        int64_t q2 = q / q1;
        auto c1 = restrict_character(chi, q1);
        auto c2 = restrict_character(chi, q2);
        int64_t q2bar = mod_inverse(posmod(q2, q1), q1);
        int64_t q1bar = mod_inverse(posmod(q1, q2), q2);
        for (int64_t mm = 0; mm < q; ++mm) {
            Complex lhs = k_chi_point(chi, mm);
            Complex rhs = k_chi_point(c1, mulmod(q2bar, posmod(mm, q1), q1)) *
                          k_chi_point(c2, mulmod(q1bar, posmod(mm, q2), q2));
            CHECK(std::abs(lhs - rhs) < 1e-9);
        }
    }
}

TEST_CASE("k_circ at prime modulus") {
    std::mt19937_64 rng(20);
    Modulus m = factor_squarefree(13);
    auto prims = character_group(m, true);
    const auto& chi = prims[2];
    const auto& chi2 = prims[5];
    for (int64_t mm = 0; mm < 13; ++mm) {
        // distinct: product of the two K values
        Complex want = k_chi_point(chi, mm) * std::conj(k_chi_point(chi2, mm));
        CHECK(std::abs(k_circ(chi, chi2, mm) - want) < 1e-10);
        // equal: |K|^2 - 1
        Complex diag = std::norm(k_chi_point(chi, mm)) - 1.0;
        CHECK(std::abs(k_circ(chi, chi, mm) - diag) < 1e-10);
    }
}

TEST_CASE("k_circ_bulk matches pointwise k_circ on composite q") {
    std::mt19937_64 rng(22);
    Modulus m = factor_squarefree(15);
    auto prims = character_group(m, true);
    for (const auto& a : prims) {
        for (const auto& b : prims) {
            ExpSumTable t = k_circ_bulk(a, b);
            for (int64_t mm = 0; mm < 15; ++mm)
                CHECK(std::abs(t.at(mm) - k_circ(a, b, mm)) < 1e-9);
        }
    }
}

TEST_CASE("fourier_complete: T[0] and the FFT path") {
    Modulus m = factor_squarefree(7);
    auto prims = character_group(m, true);
    for (const auto& a : prims) {
        for (const auto& b : prims) {
            ExpSumTable kc = k_circ_bulk(a, b);
            ExpSumTable fast = fourier_complete(kc);
            ExpSumTable slow = fourier_complete_direct(kc);
            const double target = a == b ? -2.0 : -1.0;
            CHECK(std::abs(fast.values[0] - Complex{target, 0.0}) < 1e-9);
            for (int64_t t = 0; t < 7; ++t)
                CHECK(std::abs(fast.at(t) - slow.at(t)) < 1e-10 * 7);
            // square-root cancellation for t != 0
            for (int64_t t = 1; t < 7; ++t)
                CHECK(std::abs(fast.at(t)) <= 8.0 * std::sqrt(7.0));
        }
    }
    CHECK_THROWS_AS(fourier_complete(DirichletCharacter(factor_squarefree(15), {1, 1}),
                                     DirichletCharacter(factor_squarefree(15), {1, 2})),
                    NotPrimeError);
}

TEST_CASE("correlation sums: diagonal and shifted") {
    Modulus m = factor_squarefree(11);
    auto prims = character_group(m, true);
    const auto& chi = prims[3];
    ExpSumTable kc = k_circ_bulk(chi, chi);
    // s = t = 0 equals sum |K|^4 - p + 4 (open the square)
    ExpSumTable kt = k_bulk(chi);
    double fourth = 0.0;
    for (const Complex& v : kt.values) fourth += std::norm(v) * std::norm(v);
    Complex diag = correlation_sum(kc, 0, 0);
    CHECK(std::abs(diag - Complex{fourth - 11.0 + 4.0, 0.0}) < 1e-8);

    // all (s,t) != (0,0) stay O(sqrt p); table paths agree
    for (int64_t s = 0; s < 11; ++s) {
        ExpSumTable fast = correlation_table(kc, s);
        ExpSumTable slow = correlation_table_direct(kc, s);
        for (int64_t t = 0; t < 11; ++t) {
            CHECK(std::abs(fast.at(t) - slow.at(t)) < 1e-9 * 11);
            if (s != 0 || t != 0)
                CHECK(std::abs(fast.at(t)) <= 8.0 * std::sqrt(11.0));
        }
    }
}

TEST_CASE("csv dump of a table") {
    Modulus m = factor_squarefree(5);
    auto chi = character_group(m, true).front();
    ExpSumTable t = k_bulk(chi);
    std::ostringstream os;
    write_csv(t, os);
    std::istringstream is(os.str());
    std::string header;
    std::getline(is, header);
    CHECK(header == "index,re,im");
    int rows = 0;
    std::string line;
    while (std::getline(is, line)) ++rows;
    CHECK(rows == 5);
}

TEST_CASE("errors: non-primitive input is rejected") {
    Modulus m = factor_squarefree(15);
    DirichletCharacter principal(m, {0, 0});
    CHECK_THROWS_AS(k_chi(principal, 1, 1), NotPrimitiveError);
    CHECK_THROWS_AS(k_bulk(principal), NotPrimitiveError);
}
