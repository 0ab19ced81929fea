#include "smoothsums/incomplete.hpp"

#include <cmath>
#include <numbers>
#include <numeric>

#include "smoothsums/fft.hpp"

namespace smoothsums {

double audit_epsilon(int64_t q) {
    return static_cast<double>(divisor_count(q)) * std::log(static_cast<double>(q));
}

Complex geometric_partial_sum(int64_t t, int64_t M, int64_t q) {
    if (M <= 0) return {0.0, 0.0};
    const int64_t tr = posmod(t, q);
    if (tr == 0) return {static_cast<double>(M), 0.0};
    // sum = e^{i pi (M+1) t / q} sin(pi M t / q) / sin(pi t / q);
    // arguments reduced mod 2q exactly before any trig call.
    const int64_t two_q = 2 * q;
    const double pi_over_q = std::numbers::pi / static_cast<double>(q);
    const int64_t num_arg = mulmod(posmod(M, two_q), tr, two_q);
    const int64_t phase_arg = mulmod(posmod(M + 1, two_q), tr, two_q);
    const double num = std::sin(pi_over_q * static_cast<double>(num_arg));
    const double den = std::sin(pi_over_q * static_cast<double>(tr));
    const double ph = pi_over_q * static_cast<double>(phase_arg);
    return Complex(std::cos(ph), std::sin(ph)) * (num / den);
}

namespace {

Complex incomplete_direct(const ExpSumTable& kcirc, int64_t r, int64_t M) {
    const int64_t q = kcirc.modulus;
    const int64_t rr = posmod(r, q);
    Complex sum{0.0, 0.0};
    int64_t idx = 0;
    for (int64_t m = 1; m <= M; ++m) {
        idx += rr;
        if (idx >= q) idx -= q;
        sum += kcirc.values[static_cast<std::size_t>(idx)];
    }
    return sum;
}

Complex incomplete_completed(const ExpSumTable& kcirc, int64_t r, int64_t M) {
    const int64_t q = kcirc.modulus;
    if (M <= 0) return {0.0, 0.0};
    const int64_t rbar = mod_inverse(posmod(r, q), q);
    std::vector<Complex> w = dft(kcirc.values, -1); // w[t] = sum_u Kcirc(u) e(-tu/q)
    Complex sum{0.0, 0.0};
    int64_t idx = 0;
    for (int64_t t = 0; t < q; ++t) {
        sum += w[static_cast<std::size_t>(idx)] * geometric_partial_sum(t, M, q);
        idx += rbar;
        if (idx >= q) idx -= q;
    }
    return sum / static_cast<double>(q);
}

} // namespace

IncompleteSumReport incomplete_sum(const ExpSumTable& kcirc, int64_t r, int64_t M,
                                   IncompleteMethod method) {
    const int64_t q = kcirc.modulus;
    if (q > 1 && std::gcd(posmod(r, q), q) != 1)
        throw NotCoprimeError("incomplete_sum requires gcd(r, q) = 1");
    IncompleteSumReport rep;
    rep.M = M;
    rep.method = method;
    rep.value = method == IncompleteMethod::direct ? incomplete_direct(kcirc, r, M)
                                                   : incomplete_completed(kcirc, r, M);
    rep.bound_pv = audit_epsilon(q) *
                   (static_cast<double>(M) / static_cast<double>(q) +
                    std::sqrt(static_cast<double>(q)));
    rep.ratio = std::abs(rep.value) / rep.bound_pv;
    return rep;
}

IncompleteSumReport incomplete_sum(const DirichletCharacter& chi,
                                   const DirichletCharacter& chi_prime,
                                   int64_t r, int64_t M, IncompleteMethod method) {
    return incomplete_sum(k_circ_bulk(chi, chi_prime), r, M, method);
}

VdcAuditReport vdc_audit(int64_t q1, int64_t q2, const DirichletCharacter& chi,
                         const DirichletCharacter& chi_prime, int64_t r, int64_t M,
                         int64_t y) {
    const int64_t q = chi.q();
    if (q1 < 1 || q2 < 1 || checked_mul(q1, q2) != q || std::gcd(q1, q2) != 1)
        throw BadSplitError("vdc_audit: q1*q2 must equal q with coprime parts");
    IncompleteSumReport direct =
        incomplete_sum(k_circ_bulk(chi, chi_prime), r, M, IncompleteMethod::direct);

    VdcAuditReport rep;
    rep.q = q;
    rep.q1 = q1;
    rep.q2 = q2;
    rep.M = M;
    rep.true_abs = std::abs(direct.value);

    const double eps = audit_epsilon(q);
    const double Md = static_cast<double>(M);
    const double d1 = static_cast<double>(q1), d2 = static_cast<double>(q2);
    rep.bound_vdc = eps * (Md * std::pow(d1, -0.25) +
                           std::sqrt(Md) * std::sqrt(d2) +
                           std::sqrt(Md) * std::pow(d1, 0.25));
    rep.ratio_vdc = rep.true_abs / rep.bound_vdc;

    const double dq = static_cast<double>(q), dy = static_cast<double>(y);
    const double lo = std::pow(dq, 2.0 / 3.0) * std::pow(dy, -1.0 / 3.0);
    const double hi = std::pow(dq, 2.0 / 3.0) * std::pow(dy, 1.0 / 3.0);
    rep.corollary_engaged = lo < d1 && d1 <= hi;
    if (rep.corollary_engaged) {
        rep.bound_corollary = eps * (Md * std::pow(dq, -1.0 / 6.0) * std::pow(dy, 1.0 / 12.0) +
                                     std::sqrt(Md) * std::pow(dq, 1.0 / 6.0) * std::pow(dy, 1.0 / 6.0));
        rep.ratio_corollary = rep.true_abs / rep.bound_corollary;
    }
    return rep;
}

} // namespace smoothsums
