#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "smoothsums/arith.hpp"

using namespace smoothsums;

TEST_CASE("factor_squarefree basic") {
    Modulus m = factor_squarefree(15);
    CHECK(m.primes == std::vector<int64_t>{3, 5});
    CHECK(m.smooth_bound == 5);

    CHECK_THROWS_AS(factor_squarefree(12), NotSquarefreeError);
    CHECK_THROWS_AS(factor_squarefree(49), NotSquarefreeError);

    Modulus big = factor_squarefree(30030);
    CHECK(big.primes == std::vector<int64_t>{2, 3, 5, 7, 11, 13});

    Modulus one = factor_squarefree(1);
    CHECK(one.primes.empty());
    CHECK(one.smooth_bound == 1);
    CHECK(one.phi() == 1);
}

TEST_CASE("factor_squarefree reproduces input on re-multiplication") {
    for (int64_t n = 1; n <= 2000; ++n) {
        try {
            Modulus m = factor_squarefree(n);
            int64_t prod = 1;
            for (int64_t p : m.primes) {
                CHECK(is_prime(p));
                prod *= p;
            }
            CHECK(prod == n);
        } catch (const NotSquarefreeError&) {
            // some square must actually divide n
            bool has_square = false;
            for (int64_t d = 2; d * d <= n; ++d)
                if (n % (d * d) == 0) has_square = true;
            CHECK(has_square);
        }
    }
}

TEST_CASE("mod_inverse") {
    CHECK(mod_inverse(1, 7) == 1);
    CHECK(mod_inverse(3, 10) == 7);
    CHECK(mod_inverse(17, 3001) == 2648);
    CHECK(mod_inverse(17, 3001) == oracle::naive_inverse(17, 3001));
    CHECK_THROWS_AS(mod_inverse(6, 9), NotCoprimeError);
    CHECK_THROWS_AS(mod_inverse(0, 5), NotCoprimeError);

    std::mt19937_64 rng(1);
    for (int i = 0; i < 200; ++i) {
        int64_t m = 2 + static_cast<int64_t>(rng() % 99998);
        int64_t a = 1 + static_cast<int64_t>(rng() % (m - 1));
        if (std::gcd(a, m) != 1) continue;
        int64_t b = mod_inverse(a, m);
        CHECK(mulmod(a, b, m) == 1);
        CHECK(b == oracle::naive_inverse(a, m));
    }
}

TEST_CASE("enumerate_smooth_squarefree examples") {
    auto qs = [](const std::vector<Modulus>& v) {
        std::vector<int64_t> out;
        for (const auto& m : v) out.push_back(m.q);
        return out;
    };
    CHECK(qs(enumerate_smooth_squarefree(30, 5, 2)) == std::vector<int64_t>{6, 10, 15, 30});
    CHECK(qs(enumerate_smooth_squarefree(10, 2, 1)) == std::vector<int64_t>{2});

    auto list = qs(enumerate_smooth_squarefree(100, 7, 3));
    CHECK(list == std::vector<int64_t>{30, 42, 70});
}

TEST_CASE("enumerate_smooth_squarefree equals brute-force filter") {
    for (auto [limit, y, k] : {std::tuple<int64_t, int64_t, int>{10000, 13, 1},
                               {10000, 97, 2},
                               {500, 3, 1}}) {
        auto got = enumerate_smooth_squarefree(limit, y, k);
        auto want = oracle::naive_smooth_squarefree(limit, y, k);
        REQUIRE(got.size() == want.size());
        for (std::size_t i = 0; i < got.size(); ++i) CHECK(got[i].q == want[i]);
    }
}

TEST_CASE("subset_products_in_window finds windowed masks ordered by midpoint distance") {
    std::vector<int64_t> primes{2, 3, 5, 7, 11};
    // window [10, 40]: products 10,14,15,21,22,30,33,35,55? 55>40; 2*3*5=30, 2*3*7=42>40
    auto masks = subset_products_in_window(primes, std::log(10.0), std::log(40.0), 100);
    std::vector<int64_t> prods;
    for (uint32_t mask : masks) {
        int64_t prod = 1;
        for (std::size_t i = 0; i < primes.size(); ++i)
            if (mask >> i & 1) prod *= primes[i];
        CHECK(prod >= 10);
        CHECK(prod <= 40);
        prods.push_back(prod);
    }
    // every windowed subset product appears
    std::sort(prods.begin(), prods.end());
    CHECK(prods == std::vector<int64_t>{10, 11, 14, 15, 21, 22, 30, 33, 35});
}

TEST_CASE("choose_factorization twelfth mode hits its windows") {
    Modulus m = factor_squarefree(9699690); // 2*3*5*7*11*13*17*19
    const double V = std::pow(9699690.0, 0.16);
    const double delta = 0.2;
    Factorization f = choose_factorization(m, V, delta, FactorizationMode::twelfth);
    CHECK(f.q1 * f.q2 * f.q3 == m.q);
    CHECK(std::gcd(f.q1, f.q2) == 1);
    CHECK(std::gcd(f.q1, f.q3) == 1);
    CHECK(std::gcd(f.q2, f.q3) == 1);

    const double lq = std::log(9699690.0), lV = std::log(V);
    const double eps = 1e-9;
    CHECK(std::log((double)f.q1) >= 2 * lV - 2 * delta * lq - eps);
    CHECK(std::log((double)f.q1) <= 2 * lV - delta * lq + eps);
    CHECK(std::log((double)f.q2) >= 4 * lV - 2 * delta * lq - eps);
    CHECK(std::log((double)f.q2) <= 4 * lV - delta * lq + eps);
}

TEST_CASE("choose_factorization sixth mode") {
    // W = min(V^24 q^{-3-12 delta}, q/q1) must reach above 1, which needs a
    // large modulus; the chooser itself is pure arithmetic.
    Modulus m = factor_squarefree(6469693230); // primorial of 29
    const double theta = 0.21, delta = 0.152;
    const double V = std::pow(static_cast<double>(m.q), theta);
    Factorization f = choose_factorization(m, V, delta, FactorizationMode::sixth);
    CHECK(f.q1 * f.q2 * f.q3 == m.q);
    const double lq = std::log(static_cast<double>(m.q)), lV = std::log(V);
    const double logW =
        std::min(24 * lV - (3 + 12 * delta) * lq, lq - std::log((double)f.q1));
    const double eps = 1e-9;
    CHECK(std::log((double)f.q2) >= logW - delta * lq - eps);
    CHECK(std::log((double)f.q2) <= logW + eps);
}

TEST_CASE("choose_factorization failure reports nearest products") {
    // prime q: only subset products are 1 and q, the q2 stage cannot land
    Modulus m = factor_squarefree(101);
    const double V = std::pow(101.0, 1.2), delta = 1.0;
    CHECK_THROWS_AS(choose_factorization(m, V, delta, FactorizationMode::twelfth),
                    NoFactorizationError);
    // non-smooth modulus rejected up front
    CHECK_THROWS_AS(choose_factorization(m, 10.0, 0.25, FactorizationMode::twelfth), Error);
}

TEST_CASE("helpers: phi, mobius, divisor count, powmod") {
    CHECK(euler_phi(1) == 1);
    CHECK(euler_phi(30) == 8);
    CHECK(mobius(30) == -1);
    CHECK(mobius(12) == 0);
    CHECK(mobius(35) == 1);
    CHECK(divisor_count(30) == 8);
    CHECK(powmod(2, 10, 1000) == 24);
    CHECK(factor_squarefree(105).primitive_character_count() == 1 * 3 * 5);
    CHECK_THROWS_AS(checked_mul(int64_t{1} << 62, 4), OverflowError);
}
