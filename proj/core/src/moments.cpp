#include "smoothsums/moments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "smoothsums/incomplete.hpp"
#include "smoothsums/parallel.hpp"

namespace smoothsums {

std::vector<double> central_abs_values(const Modulus& m, LMethod method, int jobs) {
    std::vector<DirichletCharacter> chars = character_group(m, /*primitive_only=*/true);
    std::vector<double> out(chars.size(), 0.0);
    parallel_for(chars.size(), jobs, [&](std::size_t i) {
        out[i] = std::abs(l_half(chars[i], method).value);
    });
    return out;
}

MomentReport moment_scan_from_values(const Modulus& m, const std::vector<double>& abs_values,
                                     const std::vector<int>& exponents) {
    MomentReport rep;
    rep.q = m;
    rep.char_count = static_cast<int64_t>(abs_values.size());
    for (int two_k : exponents) {
        if (two_k <= 0 || two_k % 2 != 0) throw Error("moment exponents must be positive even integers");
        std::vector<double> terms(abs_values.size());
        for (std::size_t i = 0; i < abs_values.size(); ++i)
            terms[i] = std::pow(abs_values[i], two_k);
        rep.moments[two_k] = tree_sum(std::move(terms));
    }
    return rep;
}

MomentReport moment_scan(const Modulus& m, const std::vector<int>& exponents,
                         LMethod method, int jobs) {
    return moment_scan_from_values(m, central_abs_values(m, method, jobs), exponents);
}

LargeValueSet large_value_set_from_values(const Modulus& m,
                                          const std::vector<double>& abs_values,
                                          std::vector<double> v_grid) {
    if (!std::is_sorted(v_grid.begin(), v_grid.end()))
        throw Error("large_value_set: v_grid must be ascending");
    LargeValueSet set;
    set.q = m;
    set.v_grid = std::move(v_grid);
    set.counts.assign(set.v_grid.size(), 0);
    for (double v : abs_values) {
        // single pass: thresholds ascend, so stop at the first one not exceeded
        for (std::size_t j = 0; j < set.v_grid.size(); ++j) {
            if (v > set.v_grid[j]) ++set.counts[j];
            else break;
        }
    }
    return set;
}

LargeValueSet large_value_set(const Modulus& m, std::vector<double> v_grid,
                              bool with_members, LMethod method, int jobs) {
    std::vector<DirichletCharacter> chars = character_group(m, /*primitive_only=*/true);
    std::vector<double> vals(chars.size(), 0.0);
    parallel_for(chars.size(), jobs, [&](std::size_t i) {
        vals[i] = std::abs(l_half(chars[i], method).value);
    });
    LargeValueSet set = large_value_set_from_values(m, vals, std::move(v_grid));
    if (with_members && !set.v_grid.empty()) {
        for (std::size_t i = 0; i < chars.size(); ++i)
            if (vals[i] > set.v_grid.front()) set.members.push_back(to_string(chars[i]));
    }
    return set;
}

MomentBracket moment_bracket(const std::vector<double>& abs_values, int two_k,
                             const std::vector<double>& v_grid) {
    MomentBracket br;
    std::vector<double> terms(abs_values.size());
    for (std::size_t i = 0; i < abs_values.size(); ++i)
        terms[i] = std::pow(abs_values[i], two_k);
    br.moment = tree_sum(std::move(terms));

    // step counts N(v) = #{|L| > v}; on [v_j, v_{j+1}] the integrand
    // 2k V^{2k-1} N(V) is bracketed by the endpoint counts
    auto count_above = [&](double v) {
        int64_t c = 0;
        for (double x : abs_values)
            if (x > v) ++c;
        return static_cast<double>(c);
    };
    double lower = 0.0, upper = 0.0;
    double prev_v = 0.0;
    double prev_pow = 0.0;
    for (std::size_t j = 0; j < v_grid.size(); ++j) {
        const double v = v_grid[j];
        const double vpow = std::pow(v, two_k);
        const double cell = vpow - prev_pow;
        upper += cell * count_above(prev_v);
        lower += cell * count_above(v);
        prev_v = v;
        prev_pow = vpow;
    }
    // above the top grid point: nonzero only if some |L| exceeds it
    upper += count_above(prev_v) > 0 ? std::numeric_limits<double>::infinity() : 0.0;
    br.lower = lower;
    br.upper = upper;
    const double slack = 1e-9 * std::max(1.0, br.moment);
    br.consistent = br.lower <= br.moment + slack && br.moment <= br.upper + slack;
    return br;
}

FitResult exponent_fit(const std::vector<std::pair<double, double>>& series) {
    if (series.size() < 2) throw DegenerateFitError("exponent fit needs at least two points");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(series.size());
    for (auto [q, v] : series) {
        if (q <= 0.0 || v <= 0.0)
            throw DegenerateFitError("exponent fit requires positive inputs");
        const double x = std::log(q), y = std::log(v);
        sx += x; sy += y; sxx += x * x; sxy += x * y;
    }
    const double det = n * sxx - sx * sx;
    if (std::abs(det) < 1e-12 * std::max(1.0, n * sxx))
        throw DegenerateFitError("exponent fit degenerate: all q equal");
    FitResult fit;
    fit.slope = (n * sxy - sx * sy) / det;
    fit.intercept = (sy - fit.slope * sx) / n;
    fit.residuals.reserve(series.size());
    for (auto [q, v] : series)
        fit.residuals.push_back(std::log(v) - (fit.intercept + fit.slope * std::log(q)));
    return fit;
}

std::string bound_kind_name(BoundKind k) {
    switch (k) {
        case BoundKind::A1: return "a1";
        case BoundKind::A2: return "a2";
        case BoundKind::A3: return "a3";
        case BoundKind::A4: return "a4";
        case BoundKind::twelfth: return "twelfth";
        case BoundKind::aftercauchy: return "aftercauchy";
    }
    return "?";
}

BoundKind parse_bound_kind(const std::string& name) {
    if (name == "a1" || name == "A1") return BoundKind::A1;
    if (name == "a2" || name == "A2") return BoundKind::A2;
    if (name == "a3" || name == "A3") return BoundKind::A3;
    if (name == "a4" || name == "A4") return BoundKind::A4;
    if (name == "twelfth") return BoundKind::twelfth;
    if (name == "aftercauchy") return BoundKind::aftercauchy;
    throw ParseError("unknown bound kind: " + name);
}

namespace {

// Measured and predicted sides of the averaged short-moment bound
// (Cauchy-Schwarz shape) for one modulus under a forced split.
AuditRow aftercauchy_row(const Modulus& m, const AuditParams& params) {
    AuditRow row;
    row.q = m.q;
    const double V = std::pow(static_cast<double>(m.q), params.theta);
    row.v_threshold = V;
    Factorization split = choose_factorization(m, V, params.delta, params.mode);

    if (static_cast<double>(split.q1) >
        std::pow(static_cast<double>(m.q), params.q1_exponent_cap)) {
        row.note = "q1 exceeds q^" + std::to_string(params.q1_exponent_cap);
    }

    Modulus m2 = factor_squarefree(split.q2);
    Modulus m3 = factor_squarefree(split.q3);
    std::vector<DirichletCharacter> x2 = character_group(m2, /*primitive_only=*/true);
    if (x2.empty()) {
        row.skipped = true;
        row.note = "no primitive characters mod q2 = " + std::to_string(split.q2);
        return row;
    }
    std::vector<DirichletCharacter> chi3s = character_group(m3, /*primitive_only=*/true);
    if (chi3s.empty() && m3.q != 1) {
        row.skipped = true;
        row.note = "no primitive characters mod q3 = " + std::to_string(split.q3);
        return row;
    }
    DirichletCharacter chi3 = m3.q == 1 ? DirichletCharacter{} : chi3s.front();

    std::vector<double> terms(x2.size());
    parallel_for(x2.size(), params.jobs, [&](std::size_t i) {
        DirichletCharacter psi1 = combine(x2[i], chi3); // modulus Q1 = q2*q3
        terms[i] = short_second_moment(split.q1, psi1, true, params.method).combined();
    });
    row.measured = tree_sum(std::move(terms));

    const double X = static_cast<double>(x2.size());
    const double q1 = static_cast<double>(split.q1);
    const double q2 = static_cast<double>(split.q2);
    const double qd = static_cast<double>(m.q);
    double xi = std::sqrt(q1) * std::pow(q2, 0.25);
    if (q2 > std::pow(qd, 1.5) / (q1 * q1 * q1)) {
        const double y = static_cast<double>(m2.smooth_bound);
        xi = std::min(xi, std::pow(qd, 0.25) * std::pow(q2, 1.0 / 12.0) * std::pow(y, 1.0 / 12.0));
    }
    row.predicted = audit_epsilon(m.q) *
                    ((q1 + xi) * X + std::sqrt(qd / q1) * std::sqrt(X));
    row.ratio = row.measured / row.predicted;
    return row;
}

} // namespace

BoundAudit audit_bound(const std::vector<Modulus>& family, BoundKind kind,
                       const AuditParams& params) {
    if (family.empty()) throw EmptyFamilyError("audit_bound: empty family");
    BoundAudit audit;
    audit.kind = kind;

    for (const Modulus& m : family) {
        AuditRow row;
        row.q = m.q;
        const double qd = static_cast<double>(m.q);
        const double V = std::pow(qd, params.theta);
        row.v_threshold = V;
        const double eps = audit_epsilon(m.q);

        if (kind == BoundKind::aftercauchy) {
            try {
                row = aftercauchy_row(m, params);
            } catch (const NoFactorizationError& e) {
                row.skipped = true;
                row.note = e.what();
            }
            audit.rows.push_back(std::move(row));
            continue;
        }

        if (m.primitive_character_count() == 0) {
            row.skipped = true;
            row.note = "no primitive characters";
            audit.rows.push_back(std::move(row));
            continue;
        }
        if (kind == BoundKind::A3 && !(V > std::pow(qd, 2.0 / 13.0))) {
            row.skipped = true;
            row.note = "outside window V > q^{2/13}";
            audit.rows.push_back(std::move(row));
            continue;
        }
        if (kind == BoundKind::A4 &&
            !(V <= std::pow(qd, 2.0 / 13.0) && V > std::pow(qd, 3.0 / 20.0))) {
            row.skipped = true;
            row.note = "outside window q^{3/20} < V <= q^{2/13}";
            audit.rows.push_back(std::move(row));
            continue;
        }

        std::vector<double> vals = central_abs_values(m, params.method, params.jobs);
        switch (kind) {
            case BoundKind::twelfth: {
                std::vector<double> terms(vals.size());
                for (std::size_t i = 0; i < vals.size(); ++i) terms[i] = std::pow(vals[i], 12);
                row.measured = tree_sum(std::move(terms));
                row.predicted = eps * qd * qd;
                break;
            }
            case BoundKind::A1:
            case BoundKind::A2:
            case BoundKind::A3:
            case BoundKind::A4: {
                int64_t count = 0;
                for (double x : vals)
                    if (x > V) ++count;
                row.measured = static_cast<double>(count);
                double shape = qd * std::pow(V, -4.0);
                if (kind == BoundKind::A2) shape = qd * qd * std::pow(V, -12.0);
                if (kind == BoundKind::A3) shape = qd * std::pow(V, -6.0);
                if (kind == BoundKind::A4) shape = std::pow(qd, 5.0) * std::pow(V, -32.0);
                row.predicted = eps * shape;
                break;
            }
            case BoundKind::aftercauchy:
                break; // handled above
        }
        row.ratio = row.predicted > 0 ? row.measured / row.predicted : 0.0;
        audit.rows.push_back(std::move(row));
    }

    // predicted exponent in q (V = q^theta substituted into the bound shape)
    switch (kind) {
        case BoundKind::A1: audit.predicted_exponent = 1 - 4 * params.theta; break;
        case BoundKind::A2: audit.predicted_exponent = 2 - 12 * params.theta; break;
        case BoundKind::A3: audit.predicted_exponent = 1 - 6 * params.theta; break;
        case BoundKind::A4: audit.predicted_exponent = 5 - 32 * params.theta; break;
        case BoundKind::twelfth: audit.predicted_exponent = 2.0; break;
        case BoundKind::aftercauchy: {
            std::vector<std::pair<double, double>> pred;
            for (const AuditRow& r : audit.rows)
                if (!r.skipped && r.predicted > 0)
                    pred.emplace_back(static_cast<double>(r.q), r.predicted);
            audit.predicted_exponent =
                pred.size() >= 2 ? exponent_fit(pred).slope
                                 : std::numeric_limits<double>::quiet_NaN();
            break;
        }
    }

    std::vector<std::pair<double, double>> series;
    for (const AuditRow& r : audit.rows)
        if (!r.skipped && r.measured > 0)
            series.emplace_back(static_cast<double>(r.q), r.measured);
    if (series.size() >= 2) {
        FitResult fit = exponent_fit(series);
        audit.fitted_exponent = fit.slope;
        audit.fit_intercept = fit.intercept;
        audit.residuals = std::move(fit.residuals);
    } else {
        audit.fitted_exponent = std::numeric_limits<double>::quiet_NaN();
        audit.fit_intercept = std::numeric_limits<double>::quiet_NaN();
    }
    return audit;
}

} // namespace smoothsums
