#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "smoothsums/moments.hpp"

using namespace smoothsums;

TEST_CASE("moment scan: single character and termwise oracle") {
    Modulus m3 = factor_squarefree(3);
    MomentReport rep = moment_scan(m3, {4});
    REQUIRE(rep.char_count == 1);
    DirichletCharacter quad3(m3, {1});
    double l = std::abs(l_half(quad3, LMethod::afe).value);
    CHECK(rep.moments.at(4) == doctest::Approx(std::pow(l, 4)).epsilon(1e-12));

    Modulus m15 = factor_squarefree(15);
    MomentReport rep15 = moment_scan(m15, {4, 6, 12});
    CHECK(rep15.char_count == 3);
    double want4 = 0, want6 = 0, want12 = 0;
    for (const auto& chi : character_group(m15, true)) {
        double a = std::abs(l_half(chi, LMethod::afe).value);
        want4 += std::pow(a, 4);
        want6 += std::pow(a, 6);
        want12 += std::pow(a, 12);
    }
    CHECK(rep15.moments.at(4) == doctest::Approx(want4).epsilon(1e-12));
    CHECK(rep15.moments.at(6) == doctest::Approx(want6).epsilon(1e-12));
    CHECK(rep15.moments.at(12) == doctest::Approx(want12).epsilon(1e-12));
}

TEST_CASE("power-mean monotonicity on every scan") {
    for (int64_t q : {15, 35, 105, 231}) {
        Modulus m = factor_squarefree(q);
        MomentReport rep = moment_scan(m, {4, 6, 12});
        const double n = static_cast<double>(rep.char_count);
        double prev = 0.0;
        for (int two_k : {4, 6, 12}) {
            double pm = std::pow(rep.moments.at(two_k) / n, 1.0 / two_k);
            CHECK(pm >= prev - 1e-12);
            prev = pm;
        }
    }
}

TEST_CASE("moment scans are deterministic across parallelism degrees") {
    Modulus m = factor_squarefree(105);
    MomentReport a = moment_scan(m, {4, 12}, LMethod::afe, 1);
    MomentReport b = moment_scan(m, {4, 12}, LMethod::afe, 4);
    CHECK(a.moments.at(4) == b.moments.at(4));
    CHECK(a.moments.at(12) == b.moments.at(12));
}

TEST_CASE("large value sets") {
    Modulus m = factor_squarefree(105);
    std::vector<double> vals = central_abs_values(m);
    LargeValueSet set = large_value_set_from_values(m, vals, {0.0, 0.5, 1.0, 2.0, 100.0});
    // counts nonincreasing, count above 0 equals all characters, top empty
    CHECK(set.counts.front() == static_cast<int64_t>(vals.size()));
    CHECK(set.counts.back() == 0);
    for (std::size_t i = 1; i < set.counts.size(); ++i)
        CHECK(set.counts[i] <= set.counts[i - 1]);
    // filter-by-oracle at each grid point
    for (std::size_t j = 0; j < set.v_grid.size(); ++j) {
        int64_t want = 0;
        for (double v : vals)
            if (v > set.v_grid[j]) ++want;
        CHECK(set.counts[j] == want);
    }
    CHECK_THROWS_AS(large_value_set_from_values(m, vals, {1.0, 0.5}), Error);
}

TEST_CASE("integration-by-parts bracket encloses each moment") {
    Modulus m = factor_squarefree(105);
    std::vector<double> vals = central_abs_values(m);
    double vmax = 0.0;
    for (double v : vals) vmax = std::max(vmax, v);
    std::vector<double> grid;
    for (int i = 0; i <= 64; ++i)
        grid.push_back(vmax * 1.01 * static_cast<double>(i) / 64.0);
    for (int two_k : {4, 12}) {
        MomentBracket br = moment_bracket(vals, two_k, grid);
        CHECK(br.consistent);
        CHECK(br.lower <= br.moment + 1e-9);
        CHECK(br.moment <= br.upper + 1e-9);
        CHECK(std::isfinite(br.upper));
    }
}

TEST_CASE("exponent fit") {
    // exact power law
    std::vector<std::pair<double, double>> series;
    for (double q : {100.0, 200.0, 500.0, 1000.0}) series.emplace_back(q, q * q);
    FitResult fit = exponent_fit(series);
    CHECK(fit.slope == doctest::Approx(2.0).epsilon(1e-9));
    for (double r : fit.residuals) CHECK(std::abs(r) < 1e-9);

    // polylog contamination inflates the slope a little from above
    // (3/<log q> ~ 0.34 on this range, so ~1.84)
    series.clear();
    for (double q = 1000.0; q <= 100000.0; q *= 3.0)
        series.emplace_back(q, 2.5 * std::pow(q, 1.5) * std::pow(std::log(q), 3));
    FitResult noisy = exponent_fit(series);
    CHECK(noisy.slope >= 1.5);
    CHECK(noisy.slope <= 1.9);

    // two points: exact interpolation
    FitResult two = exponent_fit({{10.0, 100.0}, {100.0, 10000.0}});
    CHECK(two.slope == doctest::Approx(2.0).epsilon(1e-12));

    CHECK_THROWS_AS(exponent_fit({{10.0, 1.0}}), DegenerateFitError);
    CHECK_THROWS_AS(exponent_fit({{10.0, 1.0}, {10.0, 2.0}}), DegenerateFitError);
    CHECK_THROWS_AS(exponent_fit({{10.0, 1.0}, {20.0, -2.0}}), DegenerateFitError);
}

TEST_CASE("audit: twelfth and A1 shapes") {
    std::vector<Modulus> family;
    for (int64_t q : {105, 165, 195, 231, 255}) family.push_back(factor_squarefree(q));
    AuditParams params;
    params.theta = 0.13;

    BoundAudit tw = audit_bound(family, BoundKind::twelfth, params);
    CHECK(tw.rows.size() == family.size());
    CHECK(tw.predicted_exponent == doctest::Approx(2.0));
    CHECK(std::isfinite(tw.fitted_exponent));
    for (const AuditRow& r : tw.rows) {
        CHECK_FALSE(r.skipped);
        CHECK(r.measured > 0.0);
        CHECK(r.predicted > 0.0);
    }

    BoundAudit a1 = audit_bound(family, BoundKind::A1, params);
    CHECK(a1.predicted_exponent == doctest::Approx(1.0 - 4 * 0.13));
    for (const AuditRow& r : a1.rows) {
        CHECK(r.measured >= 0.0);
        CHECK(r.measured <= static_cast<double>(factor_squarefree(r.q).primitive_character_count()));
    }
}

TEST_CASE("audit: window logic for A3/A4") {
    std::vector<Modulus> family{factor_squarefree(105), factor_squarefree(1155)};
    AuditParams params;
    // theta below 3/20: both A3 and A4 windows reject every modulus
    params.theta = 0.10;
    BoundAudit a3 = audit_bound(family, BoundKind::A3, params);
    for (const AuditRow& r : a3.rows) CHECK(r.skipped);
    BoundAudit a4 = audit_bound(family, BoundKind::A4, params);
    for (const AuditRow& r : a4.rows) CHECK(r.skipped);
    // theta above 2/13: A3 engaged, A4 rejected
    params.theta = 0.16;
    a3 = audit_bound(family, BoundKind::A3, params);
    for (const AuditRow& r : a3.rows) CHECK_FALSE(r.skipped);
    a4 = audit_bound(family, BoundKind::A4, params);
    for (const AuditRow& r : a4.rows) CHECK(r.skipped);
    // theta in (3/20, 2/13]: A4 engaged
    params.theta = 0.152;
    a4 = audit_bound(family, BoundKind::A4, params);
    for (const AuditRow& r : a4.rows) CHECK_FALSE(r.skipped);

    // even q: no primitive characters, row skipped
    BoundAudit even = audit_bound({factor_squarefree(6)}, BoundKind::A1, params);
    CHECK(even.rows.front().skipped);

    CHECK_THROWS_AS(audit_bound({}, BoundKind::A1, params), EmptyFamilyError);
}

TEST_CASE("audit: aftercauchy on a forced split") {
    AuditParams params;
    // windows that actually contain subset products at q = 15015:
    // q1 in [q^{0.04}, q^{0.32}], q2 in [q^{0.64}, q^{0.92}]
    params.theta = 0.3;
    params.delta = 0.28; // 13-smooth: q^0.28 = 14.7 >= 13
    std::vector<Modulus> family{factor_squarefree(3 * 5 * 7 * 11 * 13)};
    BoundAudit audit = audit_bound(family, BoundKind::aftercauchy, params);
    REQUIRE(audit.rows.size() == 1);
    const AuditRow& r = audit.rows.front();
    REQUIRE_FALSE(r.skipped);
    CHECK(r.measured > 0.0);
    CHECK(r.predicted > 0.0);
    CHECK(std::isfinite(r.ratio));
}
