#include "smoothsums/lfunc.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "smoothsums/expsums.hpp"
#include "smoothsums/incomplete.hpp"
#include "smoothsums/parallel.hpp"

namespace smoothsums {

namespace {

// B_{2j} / (2j)! for the Euler-Maclaurin tail, j = 1..15
constexpr double kBernoulliOverFact[] = {
    8.3333333333333333333e-02,  -1.3888888888888888889e-03,
    3.3068783068783068783e-05,  -8.2671957671957671958e-07,
    2.0876756987868098979e-08,  -5.2841901386874931848e-10,
    1.3382536530684678833e-11,  -3.3896802963225828668e-13,
    8.5860620562778445641e-15,  -2.1748686985580618730e-16,
    5.5090028283602295152e-18,  -1.3954464685812523341e-19,
    3.5347070396294674717e-21,  -8.9535174270375468504e-23,
    2.2679524523376830603e-24,
};

constexpr double kPi = std::numbers::pi;

} // namespace

Complex hurwitz_zeta(Complex s, double a) {
    if (a <= 0.0) throw Error("hurwitz_zeta requires a > 0");
    if (s == Complex{1.0, 0.0}) throw PoleAtOneError("zeta(s, a) has a pole at s = 1");
    const int J = 15;
    const int N = std::max<int>(24, static_cast<int>(std::ceil(1.5 * std::abs(s))) + 8);

    Complex sum{0.0, 0.0};
    for (int n = 0; n < N; ++n)
        sum += std::exp(-s * std::log(static_cast<double>(n) + a));
    const double x = static_cast<double>(N) + a;
    const double lx = std::log(x);
    sum += std::exp((1.0 - s) * lx) / (s - 1.0);
    const Complex xs = std::exp(-s * lx); // x^{-s}
    sum += 0.5 * xs;

    // sum_j B_{2j}/(2j)! * (s)(s+1)...(s+2j-2) * x^{-s-2j+1}
    Complex poch = s;
    Complex xpow = xs * x; // x^{-s+1}
    const double inv_x2 = 1.0 / (x * x);
    for (int j = 1; j <= J; ++j) {
        xpow *= inv_x2; // x^{-s-2j+1}
        sum += kBernoulliOverFact[j - 1] * poch * xpow;
        poch *= (s + static_cast<double>(2 * j - 1)) * (s + static_cast<double>(2 * j));
    }
    return sum;
}

double upper_incomplete_gamma(double a, double x) {
    if (a <= 0.0 || x < 0.0) throw Error("upper_incomplete_gamma requires a > 0, x >= 0");
    if (x == 0.0) return std::tgamma(a);
    const double lead_log = -x + a * std::log(x);
    if (lead_log < -745.0) return 0.0;
    const double lead = std::exp(lead_log);
    if (x < a + 1.0) {
        // lower-gamma series, then complement
        double term = 1.0 / a, sum = term;
        for (int k = 1; k < 400; ++k) {
            term *= x / (a + static_cast<double>(k));
            sum += term;
            if (std::abs(term) < std::abs(sum) * 1e-17) break;
        }
        return std::tgamma(a) - lead * sum;
    }
    // Lentz continued fraction for the upper tail
    const double tiny = 1e-300;
    double b = x + 1.0 - a, c = 1.0 / tiny, d = 1.0 / b, h = d;
    for (int i = 1; i < 400; ++i) {
        const double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double mult = d * c;
        h *= mult;
        if (std::abs(mult - 1.0) < 1e-16) break;
    }
    return lead * h;
}

Complex gauss_sum_direct(const DirichletCharacter& chi) {
    const int64_t q = chi.q();
    if (q == 1) return {1.0, 0.0};
    RootTable roots(q);
    Complex sum{0.0, 0.0};
    for (int64_t a = 1; a < q; ++a) {
        Complex c = chi(a);
        if (c != Complex{0.0, 0.0}) sum += c * roots.w[static_cast<std::size_t>(a)];
    }
    return sum;
}

Complex gauss_sum(const DirichletCharacter& chi) {
    // tau(prod chi_p) = prod_p chi_p(q/p) tau(chi_p)
    const Modulus& m = chi.modulus();
    Complex out{1.0, 0.0};
    for (std::size_t i = 0; i < m.primes.size(); ++i) {
        const int64_t p = m.primes[i];
        out *= chi.local(i, m.q / p);
        RootTable roots(p);
        Complex tau{0.0, 0.0};
        for (int64_t a = 1; a < p; ++a)
            tau += chi.local(i, a) * roots.w[static_cast<std::size_t>(a)];
        out *= tau;
    }
    return out;
}

Complex root_number(const DirichletCharacter& chi) {
    if (!chi.is_primitive())
        throw NotPrimitiveError("root number defined for primitive characters");
    Complex tau = gauss_sum(chi);
    const double sq = std::sqrt(static_cast<double>(chi.q()));
    if (parity(chi) == 1) return tau / sq;
    return tau / (Complex{0.0, 1.0} * sq);
}

namespace {

// Central-point decay profile F(x) = Gamma(a, pi x^2 / q) / Gamma(a).
struct CentralWeight {
    double a;       // 1/4 even, 3/4 odd
    double inv_ga;  // 1/Gamma(a)
    double pi_over_q;

    CentralWeight(int64_t q, int chi_parity)
        : a(chi_parity == 1 ? 0.25 : 0.75),
          inv_ga(1.0 / std::tgamma(chi_parity == 1 ? 0.25 : 0.75)),
          pi_over_q(kPi / static_cast<double>(q)) {}

    double operator()(double x) const {
        return upper_incomplete_gamma(a, pi_over_q * x * x) * inv_ga;
    }
};

// Truncation index: pi n^2 / q > 45 makes the weight < 3e-20.
int64_t afe_cutoff(int64_t q) {
    return static_cast<int64_t>(std::ceil(std::sqrt(45.0 * static_cast<double>(q) / kPi))) + 1;
}

Complex l_half_afe(const DirichletCharacter& chi, double* err_out) {
    const int64_t q = chi.q();
    if (q == 1) {
        // completed zeta has poles at s = 0, 1: xi(1/2) = -4 + 2 sum_n (pi n^2)^{-1/4} Gamma(1/4, pi n^2)
        double acc = 0.0;
        for (int64_t n = 1; n <= 16; ++n) {
            const double x = kPi * static_cast<double>(n * n);
            acc += 2.0 * std::pow(x, -0.25) * upper_incomplete_gamma(0.25, x);
        }
        const double xi_half = -4.0 + acc;
        if (err_out) *err_out = 1e-14;
        return {xi_half * std::pow(kPi, 0.25) / std::tgamma(0.25), 0.0};
    }
    const CentralWeight w(q, parity(chi));
    const int64_t nmax = afe_cutoff(q);
    Complex s{0.0, 0.0};
    for (int64_t n = 1; n <= nmax; ++n) {
        Complex c = chi(n);
        if (c == Complex{0.0, 0.0}) continue;
        s += c * (w(static_cast<double>(n)) / std::sqrt(static_cast<double>(n)));
    }
    Complex eps = root_number(chi);
    if (err_out)
        *err_out = 4e-16 * static_cast<double>(nmax) + 4.0 * std::exp(-45.0) * static_cast<double>(nmax);
    return s + eps * std::conj(s);
}

Complex l_half_hurwitz(const DirichletCharacter& chi, double* err_out) {
    const int64_t q = chi.q();
    const Complex s{0.5, 0.0};
    Complex sum{0.0, 0.0};
    for (int64_t a = 1; a <= q; ++a) {
        Complex c = chi(a);
        if (c == Complex{0.0, 0.0}) continue;
        sum += c * hurwitz_zeta(s, static_cast<double>(a) / static_cast<double>(q));
    }
    if (err_out)
        *err_out = (1e-12 + 4e-16 * std::sqrt(static_cast<double>(q))) *
                       std::sqrt(static_cast<double>(q)) +
                   1e-13;
    return sum / std::sqrt(static_cast<double>(q));
}

} // namespace

std::vector<double> hurwitz_half_profile(int64_t q) {
    std::vector<double> out(static_cast<std::size_t>(q) + 1, 0.0);
    const Complex s{0.5, 0.0};
    for (int64_t a = 1; a <= q; ++a)
        out[static_cast<std::size_t>(a)] =
            hurwitz_zeta(s, static_cast<double>(a) / static_cast<double>(q)).real();
    return out;
}

Complex l_half_hurwitz_with_profile(const DirichletCharacter& chi,
                                    const std::vector<double>& profile) {
    const int64_t q = chi.q();
    Complex sum{0.0, 0.0};
    for (int64_t a = 1; a <= q; ++a) {
        Complex c = chi(a);
        if (c != Complex{0.0, 0.0}) sum += c * profile[static_cast<std::size_t>(a)];
    }
    return sum / std::sqrt(static_cast<double>(q));
}

CentralValue l_half(const DirichletCharacter& chi, LMethod method) {
    if (!chi.is_primitive())
        throw NotPrimitiveError("l_half requires a primitive character");
    CentralValue cv;
    cv.chi = chi;
    cv.method = method;
    cv.value = method == LMethod::afe ? l_half_afe(chi, &cv.abs_error_estimate)
                                      : l_half_hurwitz(chi, &cv.abs_error_estimate);
    return cv;
}

// ---------------------------------------------------------------------------
// Smooth dyadic partition of unity built from the standard bump
// exp(-1/(1-u^2)); H is its normalized primitive.
// ---------------------------------------------------------------------------

namespace {

struct GaussLegendre {
    std::vector<double> node, weight; // on [-1, 1]
    explicit GaussLegendre(int n) : node(n), weight(n) {
        for (int i = 0; i < (n + 1) / 2; ++i) {
            double x = std::cos(kPi * (static_cast<double>(i) + 0.75) / (static_cast<double>(n) + 0.5));
            double pp = 0.0;
            for (int it = 0; it < 100; ++it) {
                double p0 = 1.0, p1 = 0.0;
                for (int j = 0; j < n; ++j) {
                    double p2 = p1;
                    p1 = p0;
                    p0 = ((2.0 * j + 1.0) * x * p1 - static_cast<double>(j) * p2) /
                         (static_cast<double>(j) + 1.0);
                }
                pp = static_cast<double>(n) * (x * p0 - p1) / (x * x - 1.0);
                double x1 = x;
                x = x1 - p0 / pp;
                if (std::abs(x - x1) < 1e-15) break;
            }
            node[static_cast<std::size_t>(i)] = -x;
            node[static_cast<std::size_t>(n - 1 - i)] = x;
            weight[static_cast<std::size_t>(i)] = 2.0 / ((1.0 - x * x) * pp * pp);
            weight[static_cast<std::size_t>(n - 1 - i)] = weight[static_cast<std::size_t>(i)];
        }
    }
};

double bump(double u) {
    const double d = 1.0 - u * u;
    if (d <= 0.0) return 0.0;
    return std::exp(-1.0 / d);
}

const GaussLegendre& gl64() {
    static GaussLegendre g(64);
    return g;
}

double bump_integral(double lo, double hi) {
    const GaussLegendre& g = gl64();
    const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
    double acc = 0.0;
    for (std::size_t i = 0; i < g.node.size(); ++i)
        acc += g.weight[i] * bump(mid + half * g.node[i]);
    return acc * half;
}

double bump_total() {
    static const double total = bump_integral(-1.0, 1.0);
    return total;
}

} // namespace

double smooth_step(double v) {
    if (v <= -1.0) return 0.0;
    if (v >= 1.0) return 1.0;
    return bump_integral(-1.0, v) / bump_total();
}

namespace {

// Partition-of-unity window on the log2 scale: sum_j window(t - j) = 1,
// support (-1, 1).
double dyadic_window(double t) {
    return smooth_step(2.0 * t + 1.0) - smooth_step(2.0 * t - 1.0);
}

} // namespace

double WeightFunction::operator()(double x) const {
    if (x <= block_length / 4.0 || x >= block_length || x <= 0.0) return 0.0;
    const CentralWeight w(q, parity);
    const double t = std::log2(x / block_length) + 1.0;
    return std::sqrt(block_length / x) * w(x) * dyadic_window(t);
}

double afe_block_limit(int64_t q) {
    const double qd = static_cast<double>(q);
    return 4.0 * qd * std::max(std::log(qd), 1.0);
}

std::vector<AfeBlock> afe_blocks(const DirichletCharacter& chi) {
    if (!chi.is_primitive())
        throw NotPrimitiveError("afe_blocks requires a primitive character");
    const int64_t q = chi.q();
    const int par = parity(chi);
    const CentralWeight w(q, par);
    const double limit = afe_block_limit(q);

    std::vector<AfeBlock> out;
    for (double N = 1.0; N <= limit; N *= 2.0) {
        Complex b{0.0, 0.0};
        const int64_t n_lo = static_cast<int64_t>(std::floor(N / 4.0)) + 1;
        const int64_t n_hi = static_cast<int64_t>(std::ceil(N));
        for (int64_t n = std::max<int64_t>(1, n_lo); n <= n_hi; ++n) {
            const double x = static_cast<double>(n);
            if (x >= N) break;
            const double t = std::log2(x / N) + 1.0;
            const double win = dyadic_window(t);
            if (win == 0.0) continue;
            Complex c = chi(n);
            if (c == Complex{0.0, 0.0}) continue;
            b += c * (std::sqrt(N / x) * w(x) * win);
        }
        out.push_back({N, par, std::norm(b / std::sqrt(N))});
    }
    return out;
}

ShortMomentReport short_second_moment(int64_t q1, const DirichletCharacter& psi1,
                                      bool parity_split, LMethod method) {
    if (!psi1.is_primitive())
        throw NotPrimitiveError("short_second_moment requires primitive psi1");
    Modulus m1 = factor_squarefree(q1);
    if (std::gcd(q1, psi1.q()) != 1)
        throw BadSplitError("short_second_moment: q1 must be coprime to the modulus of psi1");
    const int psi_parity = parity(psi1);
    std::vector<DirichletCharacter> chars1 = character_group(m1, /*primitive_only=*/true);

    std::vector<double> plus_terms, minus_terms;
    ShortMomentReport rep;
    for (const DirichletCharacter& chi1 : chars1) {
        DirichletCharacter chi = combine(chi1, psi1);
        const double v = std::norm(l_half(chi, method).value);
        const int par = parity_split ? parity(chi1) * psi_parity : 1;
        if (par == 1) {
            plus_terms.push_back(v);
            ++rep.count_plus;
        } else {
            minus_terms.push_back(v);
            ++rep.count_minus;
        }
    }
    rep.plus = tree_sum(std::move(plus_terms));
    rep.minus = tree_sum(std::move(minus_terms));
    return rep;
}

double short_moment_shape_ratio(const ShortMomentReport& rep, int64_t q1, int64_t Q1) {
    const int64_t q = checked_mul(q1, Q1);
    const double shape = static_cast<double>(q1) + std::sqrt(static_cast<double>(q));
    return rep.combined() / (audit_epsilon(q) * shape);
}

} // namespace smoothsums
