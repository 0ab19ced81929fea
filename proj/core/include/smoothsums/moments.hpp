#pragma once

// Moment scans over the primitive characters mod q, large-value sets
// R(V;q) = {chi primitive : |L(1/2,chi)| > V}, and log-log exponent audits
// of the counting bounds
//
//   #R(V;q) << q^eps * { q V^-4, q^2 V^-12, q V^-6 (V > q^{2/13}),
//                        q^5 V^-32 (q^{3/20} < V <= q^{2/13}) }
//
// the twelfth-moment bound sum |L|^12 << q^{2+eps}, and the averaged short
// second moment with its Cauchy-Schwarz shape.  Audits report fitted
// exponents and ratios against the d(q) log q epsilon convention; they never
// assert the asymptotics themselves.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "smoothsums/arith.hpp"
#include "smoothsums/lfunc.hpp"

namespace smoothsums {

struct MomentReport {
    Modulus q;
    std::map<int, double> moments; // 2k -> sum over primitive chi of |L|^{2k}
    int64_t char_count = 0;
};

// |L(1/2, chi)| for every primitive chi mod q, in group enumeration order.
std::vector<double> central_abs_values(const Modulus& m, LMethod method = LMethod::afe,
                                       int jobs = 1);

MomentReport moment_scan(const Modulus& m, const std::vector<int>& exponents,
                         LMethod method = LMethod::afe, int jobs = 1);
MomentReport moment_scan_from_values(const Modulus& m, const std::vector<double>& abs_values,
                                     const std::vector<int>& exponents);

struct LargeValueSet {
    Modulus q;
    std::vector<double> v_grid;   // ascending thresholds
    std::vector<int64_t> counts;  // #R(V;q) per grid point
    std::vector<std::string> members; // character ids, only when requested
};

LargeValueSet large_value_set(const Modulus& m, std::vector<double> v_grid,
                              bool with_members = false, LMethod method = LMethod::afe,
                              int jobs = 1);
LargeValueSet large_value_set_from_values(const Modulus& m,
                                          const std::vector<double>& abs_values,
                                          std::vector<double> v_grid);

// Riemann bracket for moment(2k) = 2k Int V^{2k-1} #R(V) dV on a grid whose
// top point dominates max |L|; the lower/upper step sums always enclose the
// true moment.
struct MomentBracket {
    double lower = 0.0, upper = 0.0, moment = 0.0;
    bool consistent = false;
};

MomentBracket moment_bracket(const std::vector<double>& abs_values, int two_k,
                             const std::vector<double>& v_grid);

// Least squares on (log q, log value); slope is the fitted exponent.
struct FitResult {
    double slope = 0.0;
    double intercept = 0.0;
    std::vector<double> residuals;
};

FitResult exponent_fit(const std::vector<std::pair<double, double>>& series);

enum class BoundKind { A1, A2, A3, A4, twelfth, aftercauchy };

std::string bound_kind_name(BoundKind k);
BoundKind parse_bound_kind(const std::string& name);

struct AuditRow {
    int64_t q = 0;
    double v_threshold = 0.0;
    double measured = 0.0;
    double predicted = 0.0;
    double ratio = 0.0;
    bool skipped = false;
    std::string note;
};

struct BoundAudit {
    BoundKind kind = BoundKind::twelfth;
    std::vector<AuditRow> rows;
    double predicted_exponent = 0.0;
    double fitted_exponent = 0.0;
    double fit_intercept = 0.0;
    std::vector<double> residuals;
    std::string epsilon_convention = "d(q)*log(q)";
};

struct AuditParams {
    double delta = 0.3;              // smoothness exponent for window math
    double theta = 0.13;             // v_rule: V = q^theta
    FactorizationMode mode = FactorizationMode::twelfth;
    LMethod method = LMethod::afe;
    int jobs = 1;
    // surrogate ceiling for q1 <= q^{1/2-eps} in the short-moment audit
    double q1_exponent_cap = 0.45;
};

BoundAudit audit_bound(const std::vector<Modulus>& family, BoundKind kind,
                       const AuditParams& params);

} // namespace smoothsums
