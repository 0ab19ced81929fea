#pragma once

// Incomplete sums sum_{1<=m<=M} Kcirc_{chi,chi'}(mr), by direct summation of
// the bulk table and by completion against additive characters (complete
// Fourier table + closed-form geometric partial sums), with the
// Polya-Vinogradov and q-van der Corput bound shapes.  The q^eps factors of
// the bounds are operationalized as d(q) * log(q) throughout.

#include <cstdint>
#include <optional>

#include "smoothsums/expsums.hpp"

namespace smoothsums {

// The audit stand-in for q^eps: d(q) * log(q).
double audit_epsilon(int64_t q);

enum class IncompleteMethod { direct, completed };

struct IncompleteSumReport {
    Complex value{0.0, 0.0};
    int64_t M = 0;
    IncompleteMethod method = IncompleteMethod::direct;
    double bound_pv = 0.0;                 // eps(q) * (M/q + sqrt(q))
    std::optional<double> bound_vdc;       // filled by vdc_audit paths
    double ratio = 0.0;                    // |value| / min(available bounds)
};

IncompleteSumReport incomplete_sum(const DirichletCharacter& chi,
                                   const DirichletCharacter& chi_prime,
                                   int64_t r, int64_t M, IncompleteMethod method);

// Same, reusing a precomputed Kcirc table mod q.
IncompleteSumReport incomplete_sum(const ExpSumTable& kcirc, int64_t r, int64_t M,
                                   IncompleteMethod method);

// Closed-form sum_{m=1}^{M} e(mt/q) with exact integer index reduction.
Complex geometric_partial_sum(int64_t t, int64_t M, int64_t q);

struct VdcAuditReport {
    int64_t q = 1, q1 = 1, q2 = 1, M = 0;
    double true_abs = 0.0;
    double bound_vdc = 0.0;        // eps * (M q1^{-1/4} + M^{1/2} q2^{1/2} + M^{1/2} q1^{1/4})
    double ratio_vdc = 0.0;
    bool corollary_engaged = false; // q^{2/3} y^{-1/3} < q1 <= q^{2/3} y^{1/3}
    double bound_corollary = 0.0;   // eps * (M q^{-1/6} y^{1/12} + M^{1/2} q^{1/6} y^{1/6})
    double ratio_corollary = 0.0;
};

VdcAuditReport vdc_audit(int64_t q1, int64_t q2, const DirichletCharacter& chi,
                         const DirichletCharacter& chi_prime, int64_t r, int64_t M,
                         int64_t y);

} // namespace smoothsums
