#include "cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "smoothsums/csvio.hpp"
#include "smoothsums/incomplete.hpp"
#include "smoothsums/moments.hpp"
#include "smoothsums/parallel.hpp"
#include "smoothsums/verify.hpp"

namespace smoothsums::cli {

namespace {

using nlohmann::ordered_json;

std::vector<double> parse_grid(const std::string& text) {
    std::vector<double> grid;
    std::istringstream is(text);
    std::string tok;
    while (std::getline(is, tok, ',')) {
        if (!tok.empty()) grid.push_back(std::stod(tok));
    }
    return grid;
}

std::vector<Modulus> family_from_config(const RunConfig& cfg) {
    std::vector<Modulus> family;
    if (cfg.q > 0) {
        family.push_back(factor_squarefree(cfg.q));
        return family;
    }
    if (cfg.q_max <= 0)
        throw ParseError("family selection needs --q or --q-max");
    if (cfg.smooth > 0) {
        for (Modulus& m : enumerate_smooth_squarefree(cfg.q_max, cfg.smooth, cfg.min_factors)) {
            if (m.q < cfg.q_min) continue;
            if (cfg.odd_only && m.q % 2 == 0) continue;
            family.push_back(std::move(m));
        }
        return family;
    }
    // delta rule: y = floor(q^delta); delta == 0 means every squarefree q
    for (int64_t q = std::max<int64_t>(2, cfg.q_min); q <= cfg.q_max; ++q) {
        if (cfg.odd_only && q % 2 == 0) continue;
        Modulus m;
        try {
            m = factor_squarefree(q);
        } catch (const NotSquarefreeError&) {
            continue;
        }
        if (m.omega() < cfg.min_factors) continue;
        if (cfg.delta > 0) {
            int64_t y = static_cast<int64_t>(
                std::floor(std::pow(static_cast<double>(q), cfg.delta)));
            if (m.smooth_bound > y) continue;
        }
        family.push_back(std::move(m));
    }
    return family;
}

LMethod parse_method(const std::string& name) {
    if (name == "hurwitz") return LMethod::hurwitz;
    if (name == "afe") return LMethod::afe;
    throw ParseError("unknown method: " + name + " (want hurwitz|afe)");
}

int effective_jobs(const RunConfig& cfg) {
    return cfg.jobs > 0 ? cfg.jobs : default_parallelism();
}

void emit_suite(const SuiteReport& report, const RunConfig& cfg, std::ostream& out,
                std::ostream& err) {
    for (const CheckResult& c : report.checks) {
        err << (c.pass ? (c.alert ? "[warn] " : "[ ok ] ") : "[FAIL] ") << c.name
            << "  measured=" << format_double(c.measured)
            << " threshold=" << format_double(c.threshold);
        if (!c.detail.empty()) err << "  (" << c.detail << ")";
        err << '\n';
    }
    if (cfg.format == "json") {
        ordered_json j;
        j["checks"] = ordered_json::array();
        for (const CheckResult& c : report.checks) {
            j["checks"].push_back({{"name", c.name},
                                   {"pass", c.pass},
                                   {"alert", c.alert},
                                   {"measured", c.measured},
                                   {"threshold", c.threshold},
                                   {"detail", c.detail}});
        }
        j["all_pass"] = report.all_pass();
        j["alerts"] = report.alert_count();
        out << j.dump(2) << '\n';
    } else {
        out << "check,pass,alert,measured,threshold,detail\n";
        for (const CheckResult& c : report.checks) {
            out << c.name << ',' << (c.pass ? 1 : 0) << ',' << (c.alert ? 1 : 0) << ','
                << format_double(c.measured) << ',' << format_double(c.threshold) << ",\""
                << c.detail << "\"\n";
        }
    }
}

int cmd_verify_identities(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    IdentityConfig ic;
    ic.q_max = cfg.vq_max;
    ic.samples = cfg.samples;
    ic.composite_samples = cfg.composite_samples;
    ic.seed = cfg.seed;
    SuiteReport report = verify_identities(ic);
    emit_suite(report, cfg, out, err);
    return report.all_pass() ? 0 : 2;
}

int cmd_verify_complete_sums(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    CompleteSumConfig cc;
    cc.seed = cfg.seed;
    if (cfg.samples > 0) cc.shifted_samples = cfg.samples;
    SuiteReport report = verify_complete_sums(cc);
    FftPathConfig fc;
    fc.seed = cfg.seed;
    fc.run_timing = !cfg.skip_timing;
    SuiteReport paths = verify_fft_paths(fc);
    report.checks.insert(report.checks.end(), paths.checks.begin(), paths.checks.end());
    emit_suite(report, cfg, out, err);
    return report.all_pass() ? 0 : 2;
}

int cmd_lvalue(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    std::vector<DirichletCharacter> chars;
    if (!cfg.character.empty()) {
        chars.push_back(parse_character(cfg.character));
    } else if (cfg.all_primitive) {
        if (cfg.q <= 0) throw ParseError("--all-primitive needs --q");
        chars = character_group(factor_squarefree(cfg.q), /*primitive_only=*/true);
    } else {
        throw ParseError("lvalue needs --char or --q with --all-primitive");
    }
    std::vector<LMethod> methods;
    if (cfg.method == "both") {
        methods = {LMethod::hurwitz, LMethod::afe};
    } else {
        methods = {parse_method(cfg.method)};
    }
    err << "lvalue: " << chars.size() << " character(s)\n";
    out << "q,character,re,im,abs,method,err_est\n";
    const int jobs = effective_jobs(cfg);
    for (LMethod method : methods) {
        std::vector<CentralValue> values(chars.size());
        parallel_for(chars.size(), jobs,
                     [&](std::size_t i) { values[i] = l_half(chars[i], method); });
        for (std::size_t i = 0; i < chars.size(); ++i) {
            const CentralValue& cv = values[i];
            out << chars[i].q() << ',' << to_string(chars[i]) << ','
                << format_double(cv.value.real()) << ',' << format_double(cv.value.imag()) << ','
                << format_double(std::abs(cv.value)) << ','
                << (method == LMethod::hurwitz ? "hurwitz" : "afe") << ','
                << format_double(cv.abs_error_estimate) << '\n';
        }
    }
    return 0;
}

int cmd_moments(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    std::vector<Modulus> family = family_from_config(cfg);
    err << "moments: " << family.size() << " moduli\n";
    LMethod method = cfg.method == "both" ? LMethod::afe : parse_method(cfg.method);
    out << "q,exponent,moment,char_count\n";
    for (const Modulus& m : family) {
        MomentReport rep = moment_scan(m, cfg.exponents, method, effective_jobs(cfg));
        for (int two_k : cfg.exponents)
            out << m.q << ',' << two_k << ',' << format_double(rep.moments.at(two_k)) << ','
                << rep.char_count << '\n';
    }
    return 0;
}

int cmd_large_values(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    std::vector<Modulus> family = family_from_config(cfg);
    std::vector<double> grid = parse_grid(cfg.v_grid);
    if (grid.empty()) throw ParseError("large-values needs --v-grid v1,v2,...");
    err << "large-values: " << family.size() << " moduli, " << grid.size()
        << " grid points\n";
    LMethod method = cfg.method == "both" ? LMethod::afe : parse_method(cfg.method);
    out << "q,v,count\n";
    for (const Modulus& m : family) {
        LargeValueSet set = large_value_set(m, grid, false, method, effective_jobs(cfg));
        for (std::size_t j = 0; j < set.v_grid.size(); ++j)
            out << m.q << ',' << format_double(set.v_grid[j]) << ',' << set.counts[j] << '\n';
    }
    return 0;
}

int cmd_audit(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    std::vector<Modulus> family = family_from_config(cfg);
    err << "audit " << cfg.kind << ": " << family.size() << " moduli\n";
    AuditParams params;
    params.theta = cfg.theta;
    params.delta = cfg.delta > 0 ? cfg.delta : 0.3;
    params.mode = cfg.mode == "sixth" ? FactorizationMode::sixth : FactorizationMode::twelfth;
    params.method = cfg.method == "both" ? LMethod::afe : parse_method(cfg.method);
    params.jobs = effective_jobs(cfg);
    BoundAudit audit = audit_bound(family, parse_bound_kind(cfg.kind), params);

    if (cfg.format == "json") {
        ordered_json j;
        j["kind"] = bound_kind_name(audit.kind);
        j["epsilon_convention"] = audit.epsilon_convention;
        j["theta"] = cfg.theta;
        j["predicted_exponent"] = audit.predicted_exponent;
        j["fitted_exponent"] = audit.fitted_exponent;
        j["fitted_minus_predicted"] = audit.fitted_exponent - audit.predicted_exponent;
        j["fit_intercept"] = audit.fit_intercept;
        j["residuals"] = audit.residuals;
        j["rows"] = ordered_json::array();
        for (const AuditRow& r : audit.rows) {
            j["rows"].push_back({{"q", r.q},
                                 {"v", r.v_threshold},
                                 {"measured", r.measured},
                                 {"predicted", r.predicted},
                                 {"ratio", r.ratio},
                                 {"skipped", r.skipped},
                                 {"note", r.note}});
        }
        out << j.dump(2) << '\n';
    } else {
        out << "q,measured,predicted,ratio,fitted_exponent\n";
        for (const AuditRow& r : audit.rows) {
            if (r.skipped) {
                err << "  skipped q=" << r.q << ": " << r.note << '\n';
                continue;
            }
            out << r.q << ',' << format_double(r.measured) << ','
                << format_double(r.predicted) << ',' << format_double(r.ratio) << ','
                << format_double(audit.fitted_exponent) << '\n';
        }
        err << "fitted_exponent=" << format_double(audit.fitted_exponent)
            << " predicted=" << format_double(audit.predicted_exponent) << '\n';
    }
    return 0;
}

int cmd_factor_plan(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    if (cfg.q <= 0) throw ParseError("factor-plan needs --q");
    Modulus m = factor_squarefree(cfg.q);
    double V = cfg.v_value > 0
                   ? cfg.v_value
                   : std::pow(static_cast<double>(cfg.q), cfg.theta);
    double delta = cfg.delta > 0 ? cfg.delta : 0.3;
    FactorizationMode mode =
        cfg.mode == "sixth" ? FactorizationMode::sixth : FactorizationMode::twelfth;
    Factorization f = choose_factorization(m, V, delta, mode);
    err << "factor-plan: q = " << m.q << " split found\n";
    out << "q,q1,q2,q3,mode,v,delta\n";
    out << m.q << ',' << f.q1 << ',' << f.q2 << ',' << f.q3 << ',' << cfg.mode << ','
        << format_double(V) << ',' << format_double(delta) << '\n';
    return 0;
}

int cmd_incomplete(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    if (cfg.character.empty() || cfg.character2.empty())
        throw ParseError("incomplete needs --char and --char2");
    DirichletCharacter chi = parse_character(cfg.character);
    DirichletCharacter chi2 = parse_character(cfg.character2);
    int64_t M = cfg.range_m > 0 ? cfg.range_m : chi.q();
    err << "incomplete: q=" << chi.q() << " M=" << M << " r=" << cfg.shift_r << '\n';
    ExpSumTable kc = k_circ_bulk(chi, chi2);
    out << "q,q1,q2,M,method,re,im,bound_pv,bound_vdc,ratio\n";
    for (IncompleteMethod method : {IncompleteMethod::direct, IncompleteMethod::completed}) {
        IncompleteSumReport rep = incomplete_sum(kc, cfg.shift_r, M, method);
        out << chi.q() << ",,," << M << ','
            << (method == IncompleteMethod::direct ? "direct" : "completed") << ','
            << format_double(rep.value.real()) << ',' << format_double(rep.value.imag()) << ','
            << format_double(rep.bound_pv) << ','
            << (rep.bound_vdc ? format_double(*rep.bound_vdc) : std::string{}) << ','
            << format_double(rep.ratio) << '\n';
    }
    return 0;
}

int cmd_dump_table(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    if (cfg.character.empty()) throw ParseError("dump-table needs --char");
    DirichletCharacter chi = parse_character(cfg.character);
    ExpSumTable table;
    if (cfg.kind.empty() || cfg.kind == "k") {
        table = k_bulk(chi);
    } else {
        if (cfg.character2.empty())
            throw ParseError("table kind '" + cfg.kind + "' needs --char2");
        DirichletCharacter chi2 = parse_character(cfg.character2);
        if (cfg.kind == "kcirc") {
            table = k_circ_bulk(chi, chi2);
        } else if (cfg.kind == "fourier") {
            table = fourier_complete(k_circ_bulk(chi, chi2));
        } else if (cfg.kind == "correlation") {
            table = correlation_table(k_circ_bulk(chi, chi2), cfg.shift_s);
        } else {
            throw ParseError("unknown table kind: " + cfg.kind);
        }
    }
    err << "dump-table: q=" << table.modulus << '\n';
    write_csv(table, out);
    return 0;
}

} // namespace

RunConfig parse_args(const std::vector<std::string>& args) {
    RunConfig cfg;
    CLI::App app{"complete exponential sums and L-function moment statistics "
                 "for smooth squarefree moduli"};
    app.require_subcommand(1);

    auto add_family = [&](CLI::App* sub) {
        sub->add_option("--q", cfg.q, "single modulus");
        sub->add_option("--q-min", cfg.q_min, "family lower bound");
        sub->add_option("--q-max", cfg.q_max, "family upper bound");
        sub->add_option("--smooth", cfg.smooth, "smoothness bound y");
        sub->add_option("--delta", cfg.delta, "smoothness rule y = floor(q^delta)");
        sub->add_option("--min-factors", cfg.min_factors, "minimum number of prime factors");
        sub->add_flag("--odd", cfg.odd_only, "odd moduli only");
    };
    auto add_io = [&](CLI::App* sub) {
        sub->add_option("--out", cfg.out, "output path (default stdout)");
        sub->add_option("--format", cfg.format, "csv|json")
            ->check(CLI::IsMember({"csv", "json"}));
        sub->add_option("--jobs", cfg.jobs, "worker count (default SMOOTHSUMS_JOBS or 1)");
        sub->add_option("--seed", cfg.seed, "rng seed for sampled suites");
    };

    CLI::App* vi = app.add_subcommand("verify-identities", "exact identity suites");
    vi->add_option("--q-max", cfg.vq_max, "modulus ceiling for sampling");
    vi->add_option("--samples", cfg.samples, "random tuples");
    vi->add_option("--composite-samples", cfg.composite_samples,
                   "random composite moduli for twisted multiplicativity");
    add_io(vi);
    vi->callback([&] { cfg.command = Command::verify_identities; });

    CLI::App* vc = app.add_subcommand("verify-complete-sums",
                                      "complete-sum cancellation and FFT path suites");
    vc->add_option("--samples", cfg.samples, "shifted fourth-moment samples");
    vc->add_flag("--skip-timing", cfg.skip_timing, "skip the bulk-path timing check");
    add_io(vc);
    vc->callback([&] { cfg.command = Command::verify_complete_sums; });

    CLI::App* lv = app.add_subcommand("lvalue", "central L-values");
    lv->add_option("--q", cfg.q, "modulus (with --all-primitive)");
    lv->add_option("--char", cfg.character, "character as q:e1,e2,...");
    lv->add_flag("--all-primitive", cfg.all_primitive, "every primitive character mod q");
    lv->add_option("--method", cfg.method, "hurwitz|afe|both")
        ->check(CLI::IsMember({"hurwitz", "afe", "both"}));
    add_io(lv);
    lv->callback([&] { cfg.command = Command::lvalue; });

    CLI::App* mo = app.add_subcommand("moments", "moment scans over a family");
    add_family(mo);
    mo->add_option("--exponents", cfg.exponents, "even moment exponents")
        ->delimiter(',');
    mo->add_option("--method", cfg.method, "afe|hurwitz");
    add_io(mo);
    mo->callback([&] { cfg.command = Command::moments; });

    CLI::App* lvs = app.add_subcommand("large-values", "large-value sets R(V;q)");
    add_family(lvs);
    lvs->add_option("--v-grid", cfg.v_grid, "comma-separated thresholds")->required();
    lvs->add_option("--method", cfg.method, "afe|hurwitz");
    add_io(lvs);
    lvs->callback([&] { cfg.command = Command::large_values; });

    CLI::App* au = app.add_subcommand("audit", "exponent audits of the counting bounds");
    add_family(au);
    au->add_option("--kind", cfg.kind, "a1|a2|a3|a4|twelfth|aftercauchy")->required();
    au->add_option("--theta", cfg.theta, "v_rule V = q^theta");
    au->add_option("--mode", cfg.mode, "twelfth|sixth")
        ->check(CLI::IsMember({"twelfth", "sixth"}));
    au->add_option("--method", cfg.method, "afe|hurwitz");
    add_io(au);
    au->callback([&] { cfg.command = Command::audit; });

    CLI::App* fp = app.add_subcommand("factor-plan", "dry run of the factorization chooser");
    fp->add_option("--q", cfg.q, "modulus")->required();
    fp->add_option("--v", cfg.v_value, "explicit threshold V");
    fp->add_option("--theta", cfg.theta, "V = q^theta when --v absent");
    fp->add_option("--delta", cfg.delta, "smoothness exponent");
    fp->add_option("--mode", cfg.mode, "twelfth|sixth")
        ->check(CLI::IsMember({"twelfth", "sixth"}));
    add_io(fp);
    fp->callback([&] { cfg.command = Command::factor_plan; });

    CLI::App* inc = app.add_subcommand("incomplete", "incomplete sums by both methods");
    inc->add_option("--char", cfg.character, "first character")->required();
    inc->add_option("--char2", cfg.character2, "second character")->required();
    inc->add_option("--M", cfg.range_m, "range length");
    inc->add_option("--r", cfg.shift_r, "unit multiplier r");
    add_io(inc);
    inc->callback([&] { cfg.command = Command::incomplete; });

    CLI::App* dt = app.add_subcommand("dump-table", "CSV dump of a complete-sum table");
    dt->add_option("--char", cfg.character, "character")->required();
    dt->add_option("--char2", cfg.character2, "second character (kcirc/fourier/correlation)");
    dt->add_option("--kind", cfg.kind, "k|kcirc|fourier|correlation");
    dt->add_option("--s", cfg.shift_s, "shift for correlation tables");
    add_io(dt);
    dt->callback([&] { cfg.command = Command::dump_table; });

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        throw HelpRequested(app.help());
    } catch (const CLI::CallForAllHelp&) {
        throw HelpRequested(app.help("", CLI::AppFormatMode::All));
    } catch (const CLI::ParseError& e) {
        throw ParseError(e.what());
    }
    return cfg;
}

int run(const RunConfig& cfg, std::ostream& out_stream, std::ostream& err) {
    std::ofstream file;
    std::ostream* out = &out_stream;
    if (!cfg.out.empty()) {
        file.open(cfg.out, std::ios::binary);
        if (!file) throw ParseError("cannot open output file: " + cfg.out);
        out = &file;
    }
    switch (cfg.command) {
        case Command::verify_identities: return cmd_verify_identities(cfg, *out, err);
        case Command::verify_complete_sums: return cmd_verify_complete_sums(cfg, *out, err);
        case Command::lvalue: return cmd_lvalue(cfg, *out, err);
        case Command::moments: return cmd_moments(cfg, *out, err);
        case Command::large_values: return cmd_large_values(cfg, *out, err);
        case Command::audit: return cmd_audit(cfg, *out, err);
        case Command::factor_plan: return cmd_factor_plan(cfg, *out, err);
        case Command::incomplete: return cmd_incomplete(cfg, *out, err);
        case Command::dump_table: return cmd_dump_table(cfg, *out, err);
        case Command::none: break;
    }
    throw ParseError("no command selected");
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    RunConfig cfg;
    try {
        cfg = parse_args(args);
    } catch (const HelpRequested& h) {
        out << h.text;
        return 0;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    try {
        return run(cfg, out, err);
    } catch (const ParseError& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    } catch (const Error& e) {
        err << "numeric failure: " << e.what() << '\n';
        return 2;
    }
}

} // namespace smoothsums::cli
