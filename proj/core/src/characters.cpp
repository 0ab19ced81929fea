#include "smoothsums/characters.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>
#include <sstream>
#include <unordered_map>

namespace smoothsums {

int64_t smallest_primitive_root(int64_t p) {
    if (p == 2) return 1;
    // factor p-1, then test candidates g by g^((p-1)/f) != 1 for all prime f
    std::vector<int64_t> fact;
    int64_t m = p - 1;
    for (int64_t f = 2; f * f <= m; ++f) {
        if (m % f) continue;
        fact.push_back(f);
        while (m % f == 0) m /= f;
    }
    if (m > 1) fact.push_back(m);
    for (int64_t g = 2; g < p; ++g) {
        bool ok = true;
        for (int64_t f : fact) {
            if (powmod(g, (p - 1) / f, p) == 1) { ok = false; break; }
        }
        if (ok) return g;
    }
    throw Error("no primitive root found (modulus not prime?)");
}

std::shared_ptr<const PrimeCharTable> PrimeCharTable::get(int64_t p) {
    static std::mutex mu;
    static std::unordered_map<int64_t, std::shared_ptr<const PrimeCharTable>> cache;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(p);
        if (it != cache.end()) return it->second;
    }
    if (!is_prime(p)) throw NotPrimeError(std::to_string(p) + " is not prime");
    auto t = std::make_shared<PrimeCharTable>();
    t->p = p;
    t->root = smallest_primitive_root(p);
    t->dlog.assign(static_cast<std::size_t>(p), -1);
    int64_t x = 1;
    for (int64_t k = 0; k < p - 1; ++k) {
        t->dlog[static_cast<std::size_t>(x)] = static_cast<int32_t>(k);
        x = mulmod(x, t->root, p);
    }
    t->unit.resize(static_cast<std::size_t>(p - 1));
    const double step = 2.0 * std::numbers::pi / static_cast<double>(p - 1);
    for (int64_t j = 0; j < p - 1; ++j)
        t->unit[static_cast<std::size_t>(j)] =
            Complex(std::cos(step * static_cast<double>(j)), std::sin(step * static_cast<double>(j)));
    std::lock_guard<std::mutex> lock(mu);
    auto [it, inserted] = cache.emplace(p, std::move(t));
    return it->second;
}

DirichletCharacter::DirichletCharacter(Modulus m, std::vector<int32_t> exponents)
    : mod_(std::move(m)), exps_(std::move(exponents)) {
    if (exps_.size() != mod_.primes.size())
        throw Error("exponent list does not match prime list");
    tables_.reserve(mod_.primes.size());
    for (std::size_t i = 0; i < mod_.primes.size(); ++i) {
        int64_t p = mod_.primes[i];
        if (exps_[i] < 0 || exps_[i] >= p - 1)
            throw Error("character exponent out of range at p = " + std::to_string(p));
        tables_.push_back(PrimeCharTable::get(p));
    }
}

Complex DirichletCharacter::local(std::size_t i, int64_t n) const {
    const PrimeCharTable& t = *tables_[i];
    int64_t r = posmod(n, t.p);
    if (r == 0) return {0.0, 0.0};
    int64_t idx = (static_cast<int64_t>(exps_[i]) * t.dlog[static_cast<std::size_t>(r)]) % (t.p - 1);
    return t.unit[static_cast<std::size_t>(idx)];
}

Complex DirichletCharacter::operator()(int64_t n) const {
    Complex v{1.0, 0.0};
    for (std::size_t i = 0; i < tables_.size(); ++i) {
        const PrimeCharTable& t = *tables_[i];
        int64_t r = posmod(n, t.p);
        if (r == 0) return {0.0, 0.0};
        int64_t idx = (static_cast<int64_t>(exps_[i]) * t.dlog[static_cast<std::size_t>(r)]) % (t.p - 1);
        v *= t.unit[static_cast<std::size_t>(idx)];
    }
    return v;
}

bool DirichletCharacter::is_primitive() const {
    for (std::size_t i = 0; i < exps_.size(); ++i)
        if (exps_[i] == 0) return false;
    return true;
}

bool DirichletCharacter::is_principal() const {
    for (int32_t e : exps_)
        if (e != 0) return false;
    return true;
}

DirichletCharacter DirichletCharacter::conjugate() const {
    std::vector<int32_t> e(exps_.size());
    for (std::size_t i = 0; i < exps_.size(); ++i) {
        int64_t order = mod_.primes[i] - 1;
        e[i] = static_cast<int32_t>(exps_[i] == 0 ? 0 : order - exps_[i]);
    }
    return DirichletCharacter(mod_, std::move(e));
}

int parity(const DirichletCharacter& chi) {
    // chi_p(-1) = (-1)^{e_p} for odd p (dlog(-1) = (p-1)/2); trivial at p = 2.
    int64_t s = 0;
    const auto& primes = chi.modulus().primes;
    for (std::size_t i = 0; i < primes.size(); ++i)
        if (primes[i] != 2) s += chi.exponent_at(i);
    return (s % 2 == 0) ? 1 : -1;
}

int64_t distance(const DirichletCharacter& chi, const DirichletCharacter& chi_prime) {
    if (chi.q() != chi_prime.q())
        throw ModulusMismatchError("distance requires equal moduli");
    int64_t d = 1;
    const auto& primes = chi.modulus().primes;
    for (std::size_t i = 0; i < primes.size(); ++i)
        if (chi.exponent_at(i) != chi_prime.exponent_at(i)) d *= primes[i];
    return d;
}

DirichletCharacter restrict_character(const DirichletCharacter& chi, int64_t r) {
    if (r < 1 || chi.q() % r != 0)
        throw NotADivisorError(std::to_string(r) + " does not divide " + std::to_string(chi.q()));
    Modulus mr = factor_squarefree(r);
    std::vector<int32_t> e;
    e.reserve(mr.primes.size());
    const auto& primes = chi.modulus().primes;
    for (int64_t p : mr.primes) {
        auto it = std::lower_bound(primes.begin(), primes.end(), p);
        e.push_back(chi.exponent_at(static_cast<std::size_t>(it - primes.begin())));
    }
    return DirichletCharacter(std::move(mr), std::move(e));
}

DirichletCharacter combine(const DirichletCharacter& chi1, const DirichletCharacter& chi2) {
    const Modulus& m1 = chi1.modulus();
    const Modulus& m2 = chi2.modulus();
    for (int64_t p : m1.primes)
        if (m2.contains_prime(p))
            throw NotCoprimeError("combine requires coprime moduli");
    Modulus m;
    m.q = checked_mul(m1.q, m2.q);
    std::vector<int32_t> e;
    std::size_t i = 0, j = 0;
    while (i < m1.primes.size() || j < m2.primes.size()) {
        if (j == m2.primes.size() || (i < m1.primes.size() && m1.primes[i] < m2.primes[j])) {
            m.primes.push_back(m1.primes[i]);
            e.push_back(chi1.exponent_at(i));
            ++i;
        } else {
            m.primes.push_back(m2.primes[j]);
            e.push_back(chi2.exponent_at(j));
            ++j;
        }
    }
    m.smooth_bound = m.primes.empty() ? 1 : m.primes.back();
    return DirichletCharacter(std::move(m), std::move(e));
}

std::vector<DirichletCharacter> character_group(const Modulus& m, bool primitive_only) {
    std::vector<DirichletCharacter> out;
    const std::size_t k = m.primes.size();
    if (primitive_only)
        for (int64_t p : m.primes)
            if (p == 2) return out; // no primitive characters for even q > 1
    const int32_t lo = primitive_only ? 1 : 0;
    auto digit_lo = [&](std::size_t i) -> int32_t { return m.primes[i] == 2 ? 0 : lo; };
    std::vector<int32_t> e(k);
    for (std::size_t i = 0; i < k; ++i) e[i] = digit_lo(i);
    // odometer over exponent lists, last digit fastest (lexicographic order)
    while (true) {
        out.emplace_back(m, e);
        std::size_t i = k;
        bool carried = false;
        while (i > 0) {
            --i;
            if (e[i] < m.primes[i] - 2) {
                ++e[i];
                for (std::size_t j = i + 1; j < k; ++j) e[j] = digit_lo(j);
                carried = true;
                break;
            }
        }
        if (!carried) break;
    }
    return out;
}

DirichletCharacter random_primitive_character(const Modulus& m, std::mt19937_64& rng) {
    std::vector<int32_t> e(m.primes.size());
    for (std::size_t i = 0; i < m.primes.size(); ++i) {
        int64_t p = m.primes[i];
        if (p == 2) throw NotPrimitiveError("no primitive characters mod even q > 1");
        e[i] = static_cast<int32_t>(1 + rng() % static_cast<uint64_t>(p - 2));
    }
    return DirichletCharacter(m, std::move(e));
}

std::string to_string(const DirichletCharacter& chi) {
    std::ostringstream os;
    os << chi.q() << ':';
    for (std::size_t i = 0; i < chi.exponents().size(); ++i) {
        if (i) os << ',';
        os << chi.exponents()[i];
    }
    return os.str();
}

DirichletCharacter parse_character(const std::string& text) {
    auto colon = text.find(':');
    if (colon == std::string::npos) throw ParseError("character text must be q:e1,e2,...");
    int64_t q = 0;
    try {
        q = std::stoll(text.substr(0, colon));
    } catch (const std::exception&) {
        throw ParseError("bad modulus in character text: " + text);
    }
    Modulus m = factor_squarefree(q);
    std::vector<int32_t> e;
    std::string rest = text.substr(colon + 1);
    if (!rest.empty()) {
        std::istringstream is(rest);
        std::string tok;
        while (std::getline(is, tok, ','))
            e.push_back(static_cast<int32_t>(std::stol(tok)));
    }
    if (e.size() != m.primes.size())
        throw ParseError("expected " + std::to_string(m.primes.size()) +
                         " exponents for q = " + std::to_string(q));
    return DirichletCharacter(std::move(m), std::move(e));
}

CharacterPair make_pair(DirichletCharacter chi, DirichletCharacter chi_prime) {
    CharacterPair pr{std::move(chi), std::move(chi_prime), 1};
    pr.delta = distance(pr.chi, pr.chi_prime);
    return pr;
}

} // namespace smoothsums
