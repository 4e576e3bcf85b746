#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "normlab/bounds.hpp"
#include "normlab/montecarlo.hpp"
#include "normlab/profiles.hpp"

namespace normlab {

// One profile family descriptor from a sweep config.
struct ProfileSpec {
    enum class Family { iid, tensor_geom, diag_invsqrt, sparse, file };

    Family family = Family::iid;
    double param = 1.0;  // s (iid), decay ratio (tensor_geom), density (sparse)
    std::string path;    // file family

    std::string label() const;
    bool square_only() const { return family == Family::diag_invsqrt; }
    bool is_tensor() const { return family == Family::tensor_geom; }
    bool is_diagonal() const { return family == Family::diag_invsqrt; }

    VarianceProfile materialize(std::size_t m, std::size_t n, std::uint64_t seed) const;
    // Generating vectors for the tensor family (x has length n, y length m).
    std::pair<std::vector<double>, std::vector<double>> tensor_xy(std::size_t m,
                                                                  std::size_t n) const;
    std::vector<double> diag_vector(std::size_t n) const;
};

struct SweepConfig {
    std::vector<ProfileSpec> profiles;
    std::vector<NormPair> pairs;
    std::vector<std::pair<std::size_t, std::size_t>> dims;
    long n_samples = 500;        // norm samples per cell
    long tail_samples = 100000;  // scalar functional samples per pass
    std::uint64_t seed = 0;
    std::map<std::string, double> constants;  // overrides: theorem, lemma32, bvh, thm21
    std::string output_dir = "results";
    int solver_restarts = 8;
    bool parallel = true;

    double constant(const std::string& name) const;  // default 1.0
};

// Desk-scale default sweep: dims {4,8,16,32,64}^2, p* in {1.25,1.5,2},
// q in {2,3,4,8}, families {iid 1, tensor-geom 0.7, diag-invsqrt, sparse 0.1},
// 500 norm samples.
SweepConfig default_config();

// Plain-text key/value + table format:
//   seed = 0
//   pairs { 1.5 3 \n 2 2 }
//   profiles { iid 1.0 \n sparse 0.1 }
// Unknown keys are errors; messages carry line numbers.
SweepConfig parse_config_text(const std::string& text);
SweepConfig load_config_file(const std::string& path);

struct RatioRow {
    std::string id;
    std::string family;
    double p_star = 0, q = 0;
    std::size_t m = 0, n = 0;
    double lhs = 0, rhs = 0, ratio = 0;
    double ci_lo = 0, ci_hi = 0;  // CI of the lhs estimate
    std::vector<double> extra;    // check-specific columns
};

struct SkippedCell {
    std::string check, id, reason;
};

struct RatioSummary {
    double min_ratio = 0, max_ratio = 0, geomean = 0;
    std::size_t count = 0;
};

struct RatioReport {
    std::string check;
    std::vector<std::string> extra_headers;
    std::vector<RatioRow> rows;
    std::vector<SkippedCell> skipped;
    RatioSummary summary;
    std::vector<std::pair<std::string, RatioSummary>> per_pair;
    std::vector<std::string> failures;  // empty = all assertions passed
};

struct ConcentrationCase {
    std::string id;
    std::vector<double> weights;
    double p = 2;
    std::vector<double> t_grid;
};

struct ConcentrationReport {
    std::vector<ConcentrationCase> cases;
    std::vector<TailResult> tails;                // parallel to cases
    std::vector<std::vector<double>> bound_vals;  // parallel to cases x grid
    std::vector<std::string> failures;
};

std::vector<ConcentrationCase> default_concentration_cases();

RatioReport run_check_theorem(const SweepConfig& config);
RatioReport run_check_conjecture(const SweepConfig& config);
RatioReport run_check_chevet(const SweepConfig& config);
RatioReport run_check_diagonal(const SweepConfig& config);
ConcentrationReport run_check_concentration(
    const SweepConfig& config,
    const std::vector<ConcentrationCase>& cases = default_concentration_cases());

// Every check off one shared estimation pass. Cell estimates are keyed by
// (config, seed) alone, so the reports are identical to the standalone
// run_check_* results; chevet/diagonal are absent when the config has no
// matching profile family.
struct SweepReports {
    RatioReport theorem;
    RatioReport conjecture;
    std::optional<RatioReport> chevet;
    std::optional<RatioReport> diagonal;
    ConcentrationReport concentration;
};

SweepReports run_all_checks(const SweepConfig& config);

std::string ratio_report_csv(const RatioReport& report);
std::string ratio_summary_csv(const RatioReport& report);
std::string concentration_report_csv(const ConcentrationReport& report);
std::string skipped_csv(const std::vector<SkippedCell>& skipped);

// Plot-ready two-column data files plus one SVG per (check, pair) group.
// Errors on empty reports before creating any file; returns written paths.
std::vector<std::string> emit_plots(const RatioReport& report, const std::string& out_dir);
std::vector<std::string> emit_plots(const ConcentrationReport& report,
                                    const std::string& out_dir);

struct SweepResult {
    int exit_code = 0;  // 0 pass, 2 assertion failures (reports still written)
    std::vector<std::string> files;
    std::vector<std::string> failures;
};

// Runs every check off one shared estimation pass, writes all CSVs and
// plots under config.output_dir. With verify=true nothing is written:
// outputs are recomputed and diffed against the files on disk.
SweepResult run_sweep(const SweepConfig& config, bool verify = false);

}  // namespace normlab
