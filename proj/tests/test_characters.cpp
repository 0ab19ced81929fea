#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "smoothsums/characters.hpp"

using namespace smoothsums;

namespace {

int legendre(int64_t a, int64_t p) {
    int64_t r = powmod(a, (p - 1) / 2, p);
    return r == 1 ? 1 : (r == 0 ? 0 : -1);
}

} // namespace

TEST_CASE("group sizes and primitive counts") {
    CHECK(character_group(factor_squarefree(3)).size() == 2);
    CHECK(character_group(factor_squarefree(3), true).size() == 1);
    CHECK(character_group(factor_squarefree(15)).size() == 8);
    CHECK(character_group(factor_squarefree(15), true).size() == 3);
    CHECK(character_group(factor_squarefree(1)).size() == 1);
    CHECK(character_group(factor_squarefree(1), true).size() == 1);
    // even q > 1: no primitive characters
    CHECK(character_group(factor_squarefree(6), true).empty());
    for (int64_t q : {2, 5, 21, 30, 105}) {
        Modulus m = factor_squarefree(q);
        CHECK(character_group(m).size() == static_cast<std::size_t>(m.phi()));
        CHECK(character_group(m, true).size() ==
              static_cast<std::size_t>(m.primitive_character_count()));
    }
}

TEST_CASE("evaluation basics") {
    Modulus m15 = factor_squarefree(15);
    for (const auto& chi : character_group(m15)) {
        CHECK(chi(1) == Complex{1.0, 0.0});
        CHECK(chi(5) == Complex{0.0, 0.0});
        CHECK(chi(3) == Complex{0.0, 0.0});
        CHECK(chi(16) == chi(1)); // periodicity
    }
    // quadratic character mod 5 is the Legendre symbol
    Modulus m5 = factor_squarefree(5);
    DirichletCharacter quad(m5, {2}); // e_5 = (5-1)/2
    for (int64_t a = 1; a < 5; ++a)
        CHECK(quad(a).real() == doctest::Approx(legendre(a, 5)).epsilon(1e-12));
    CHECK(quad(2).real() == doctest::Approx(-1.0));
}

TEST_CASE("complete multiplicativity on random triples") {
    std::mt19937_64 rng(5);
    for (int64_t q : {7, 15, 105, 1155}) {
        Modulus m = factor_squarefree(q);
        auto group = character_group(m);
        for (int i = 0; i < 50; ++i) {
            const auto& chi = group[rng() % group.size()];
            int64_t a = static_cast<int64_t>(rng() % (2 * q)) - q / 2;
            int64_t b = static_cast<int64_t>(rng() % (2 * q)) - q / 2;
            Complex lhs = chi(a * b);
            Complex rhs = chi(a) * chi(b);
            CHECK(std::abs(lhs - rhs) < 1e-12);
        }
    }
}

TEST_CASE("orthogonality over the full group") {
    for (int64_t q : {3, 5, 15, 21, 35, 143, 231, 286}) {
        Modulus m = factor_squarefree(q);
        auto group = character_group(m);
        std::mt19937_64 rng(static_cast<uint64_t>(q));
        for (int rep = 0; rep < 12; ++rep) {
            int64_t a = static_cast<int64_t>(rng() % q);
            int64_t b = static_cast<int64_t>(rng() % q);
            Complex acc{0.0, 0.0};
            for (const auto& chi : group) acc += chi(a) * std::conj(chi(b));
            const bool unit = std::gcd(a, q) == 1 && std::gcd(b, q) == 1;
            double expect = unit && a % q == b % q ? static_cast<double>(m.phi()) : 0.0;
            CHECK(std::abs(acc - Complex{expect, 0.0}) < 1e-9 * static_cast<double>(m.phi()));
        }
    }
}

TEST_CASE("CRT consistency of evaluation") {
    Modulus m = factor_squarefree(105);
    auto group = character_group(m);
    std::mt19937_64 rng(7);
    for (int i = 0; i < 30; ++i) {
        const auto& chi = group[rng() % group.size()];
        int64_t n = static_cast<int64_t>(rng() % 210);
        Complex prod{1.0, 0.0};
        for (std::size_t j = 0; j < m.primes.size(); ++j) prod *= chi.local(j, n);
        CHECK(std::abs(chi(n) - prod) < 1e-12);
    }
}

TEST_CASE("parity") {
    Modulus m3 = factor_squarefree(3);
    DirichletCharacter quad3(m3, {1});
    CHECK(parity(quad3) == -1);
    CHECK(quad3(2).real() == doctest::Approx(-1.0));

    for (int64_t q : {5, 15, 105}) {
        Modulus m = factor_squarefree(q);
        for (const auto& chi : character_group(m)) {
            // parity equals evaluate(chi, q-1)
            CHECK(std::abs(chi(q - 1) - Complex{static_cast<double>(parity(chi)), 0.0}) < 1e-12);
        }
        // product rule on a fixed pair
        auto group = character_group(m);
        for (std::size_t i = 0; i + 1 < group.size(); i += 2) {
            std::vector<int32_t> e(m.primes.size());
            for (std::size_t j = 0; j < e.size(); ++j)
                e[j] = static_cast<int32_t>((group[i].exponent_at(j) + group[i + 1].exponent_at(j)) %
                                            (m.primes[j] - 1));
            DirichletCharacter prod(m, e);
            CHECK(parity(prod) == parity(group[i]) * parity(group[i + 1]));
        }
    }
    CHECK(parity(DirichletCharacter{}) == 1); // principal mod 1
}

TEST_CASE("distance") {
    Modulus m = factor_squarefree(15);
    auto prims = character_group(m, true);
    for (const auto& chi : prims) CHECK(distance(chi, chi) == 1);
    DirichletCharacter a(m, {1, 1});
    DirichletCharacter b(m, {1, 2}); // differs only at 5
    DirichletCharacter c(m, {1, 3});
    CHECK(distance(a, b) == 5);
    CHECK(distance(b, c) == 5);
    DirichletCharacter d(m, {0, 1}); // differs from a only at 3
    CHECK(distance(a, d) == 3);
    std::mt19937_64 rng(9);
    for (int64_t q : {15, 105, 1155}) {
        Modulus mm = factor_squarefree(q);
        for (int i = 0; i < 20; ++i) {
            auto x = random_primitive_character(mm, rng);
            auto y = random_primitive_character(mm, rng);
            int64_t delta = distance(x, y);
            CHECK(q % delta == 0);
            CHECK((delta == 1) == (x == y));
        }
    }
    CHECK_THROWS_AS(distance(a, DirichletCharacter(factor_squarefree(21), {1, 1})),
                    ModulusMismatchError);
}

TEST_CASE("restriction") {
    Modulus m = factor_squarefree(15);
    DirichletCharacter chi(m, {1, 2});
    // restrict to the full modulus and to 1
    CHECK(restrict_character(chi, 15) == chi);
    CHECK(restrict_character(chi, 1).q() == 1);
    CHECK_THROWS_AS(restrict_character(chi, 4), NotADivisorError);

    DirichletCharacter chi3 = restrict_character(chi, 3);
    for (int64_t n = 0; n < 15; ++n) {
        if (std::gcd(n, int64_t{3}) != 1) continue;
        CHECK(std::abs(chi3(n) - chi.local(0, n)) < 1e-12);
    }
}

TEST_CASE("combine is inverse to restriction") {
    Modulus m21 = factor_squarefree(21);
    std::mt19937_64 rng(3);
    auto chi = random_primitive_character(m21, rng);
    auto c3 = restrict_character(chi, 3);
    auto c7 = restrict_character(chi, 7);
    CHECK(combine(c3, c7) == chi);
    CHECK(combine(c7, c3) == chi);
    CHECK_THROWS_AS(combine(chi, c3), NotCoprimeError);
    for (int64_t n = 0; n < 21; ++n)
        CHECK(std::abs(chi(n) - c3(n) * c7(n)) < 1e-12);
}

TEST_CASE("serialization round trip") {
    Modulus m = factor_squarefree(1155);
    std::mt19937_64 rng(11);
    for (int i = 0; i < 10; ++i) {
        auto chi = random_primitive_character(m, rng);
        CHECK(parse_character(to_string(chi)) == chi);
    }
    CHECK(to_string(DirichletCharacter(factor_squarefree(15), {1, 2})) == "15:1,2");
    CHECK_THROWS_AS(parse_character("15:1"), ParseError);
    CHECK_THROWS_AS(parse_character("nonsense"), ParseError);
}

TEST_CASE("character pair carries its distance") {
    Modulus m = factor_squarefree(15);
    auto pr = make_pair(DirichletCharacter(m, {1, 1}), DirichletCharacter(m, {1, 3}));
    CHECK(pr.delta == 5);
}
