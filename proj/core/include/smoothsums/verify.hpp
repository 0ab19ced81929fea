#pragma once

// Structured verification suites over the exponential-sum machinery: exact
// identities (product decomposition, twisted multiplicativity, Parseval),
// the complete-sum cancellation properties (Fourier t = 0 values, sup
// ratios, diagonal fourth moments), and FFT-vs-brute-force equivalence.
// The CLI and the acceptance harness both consume these reports.

#include <cstdint>
#include <string>
#include <vector>

namespace smoothsums {

struct CheckResult {
    std::string name;
    bool pass = true;
    bool alert = false;        // soft threshold exceeded (warning only)
    double measured = 0.0;     // worst observed quantity
    double threshold = 0.0;    // hard threshold it was compared against
    std::string detail;
};

struct SuiteReport {
    std::vector<CheckResult> checks;
    bool all_pass() const {
        for (const CheckResult& c : checks)
            if (!c.pass) return false;
        return true;
    }
    int alert_count() const {
        int n = 0;
        for (const CheckResult& c : checks)
            if (c.alert) ++n;
        return n;
    }
};

struct IdentityConfig {
    int64_t q_max = 3000;
    int samples = 200;            // random (q, chi, k, l) tuples
    int composite_samples = 20;   // random composite q for twisted multiplicativity
    std::vector<int64_t> decomposition_moduli = {15, 21, 30, 105};
    int64_t parseval_p_max = 101;
    uint64_t seed = 7;
};

SuiteReport verify_identities(const IdentityConfig& cfg);

struct CompleteSumConfig {
    int64_t t0_p_max = 101;       // exact T[0] values
    int64_t sup_p_max = 211;      // sup_{t != 0} |T[t]| / sqrt(p) recording
    double sup_alert = 8.0;
    double sup_hard = 20.0;
    int64_t fourth_p_min = 11;
    int64_t fourth_p_max = 307;
    double fourth_constant = 6.0; // |sum |K|^4 / p - 2| <= c / sqrt(p)
    int shifted_samples = 50;
    uint64_t seed = 11;
};

SuiteReport verify_complete_sums(const CompleteSumConfig& cfg);

struct FftPathConfig {
    int64_t p_max = 97;           // entrywise equivalence sweep
    double tolerance_scale = 1e-9; // per-entry tolerance 1e-9 * p
    bool run_timing = true;
    int64_t timing_p = 10007;
    double speedup_required = 20.0;
    uint64_t seed = 3;
};

SuiteReport verify_fft_paths(const FftPathConfig& cfg);

} // namespace smoothsums
