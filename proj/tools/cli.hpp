#pragma once

// Command-line front end. Parsing produces a RunConfig; run() executes it.
// Every run is reproducible from its config: the seed fixes all sampling,
// reductions have a fixed shape, and numbers are formatted with shortest
// round-trip notation, so identical configs give byte-identical output.

#include <cstdint>
#include <utility>
#include <iosfwd>
#include <string>
#include <vector>

namespace smoothsums::cli {

enum class Command {
    none,
    verify_identities,
    verify_complete_sums,
    lvalue,
    moments,
    large_values,
    audit,
    factor_plan,
    incomplete,
    dump_table,
};

struct RunConfig {
    Command command = Command::none;

    // family selection
    int64_t q = 0;
    int64_t q_min = 2;
    int64_t q_max = 0;
    int64_t smooth = 0;     // smoothness bound y
    double delta = 0.0;     // alternative smoothness rule y = floor(q^delta)
    int min_factors = 1;
    bool odd_only = false;

    // characters
    std::string character;   // "q:e1,e2,..."
    std::string character2;  // second character where applicable
    bool all_primitive = false;

    // operation parameters
    std::vector<int> exponents{4, 6, 12};
    std::string v_grid;            // comma-separated thresholds
    std::string method = "both";   // lvalue: hurwitz|afe|both; scans: afe|hurwitz
    std::string kind;              // audit kind / table kind
    std::string mode = "twelfth";  // factorization mode
    double theta = 0.13;
    double v_value = 0.0;          // explicit V for factor-plan
    int64_t range_m = 0;           // M for incomplete sums
    int64_t shift_r = 1;           // r for incomplete sums
    int64_t shift_s = 0;           // s for correlation tables

    // verify suite knobs
    int64_t vq_max = 3000;
    int samples = 200;
    int composite_samples = 20;
    bool skip_timing = false;

    // io
    std::string out;              // empty: stdout
    std::string format = "csv";   // csv|json
    int jobs = 0;                 // 0: SMOOTHSUMS_JOBS env or 1
    uint64_t seed = 7;
};

// Thrown when the user asked for --help; carries the help text.
struct HelpRequested {
    std::string text;
    explicit HelpRequested(std::string t) : text(std::move(t)) {}
};

// Parse argv-style arguments (without the program name). Throws
// smoothsums::ParseError on bad input.
RunConfig parse_args(const std::vector<std::string>& args);

// Execute. Data goes to cfg.out (or `out` when cfg.out is empty); progress
// goes to `err`. Returns the process exit code: 0 ok, 2 hard numeric
// failure.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

// Convenience wrapper used by main() and the tests: parse + run, mapping
// parse failures to exit code 1.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace smoothsums::cli
