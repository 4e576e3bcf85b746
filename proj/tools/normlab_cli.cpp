// Command-line front end: single estimates and bound breakdowns, the check
// suites, diagnostics tables, and the full sweep engine.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "normlab/bounds.hpp"
#include "normlab/csv.hpp"
#include "normlab/gaussian.hpp"
#include "normlab/harness.hpp"
#include "normlab/montecarlo.hpp"
#include "normlab/pqnorm.hpp"
#include "normlab/profiles.hpp"

namespace fs = std::filesystem;
using namespace normlab;

namespace {

double parse_exponent(const std::string& s) {
    if (s == "inf" || s == "Inf" || s == "INF") return kInf;
    return std::stod(s);
}

std::vector<double> read_weight_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::vector<double> w;
    std::string tok;
    while (in >> tok) {
        std::size_t pos = 0;
        double v;
        try {
            v = std::stod(tok, &pos);
            if (pos != tok.size()) throw std::invalid_argument(tok);
        } catch (const std::exception&) {
            throw std::runtime_error(path + ": bad numeric token '" + tok + "'");
        }
        w.push_back(v);
    }
    if (w.empty()) throw std::runtime_error(path + ": no weights");
    return w;
}

struct GlobalArgs {
    std::string config_path;
    std::string out_dir;
    std::string dump_samples;
    std::uint64_t seed = 0;
    bool seed_set = false;
    long samples = 0;  // 0 = keep config/command default
};

SweepConfig build_config(const GlobalArgs& g) {
    SweepConfig cfg = g.config_path.empty() ? default_config() : load_config_file(g.config_path);
    if (g.seed_set) cfg.seed = g.seed;
    if (g.samples > 0) cfg.n_samples = g.samples;
    if (!g.out_dir.empty()) cfg.output_dir = g.out_dir;
    return cfg;
}

void dump_sample_csv(const std::string& path, const std::vector<double>& values) {
    CsvDoc doc({"sample_index", "value"});
    for (std::size_t k = 0; k < values.size(); ++k)
        doc.add_row({csv_cell(k), csv_cell(values[k])});
    write_text_file(path, doc.str());
}

int write_ratio_check(const RatioReport& report, const std::string& out_dir) {
    fs::create_directories(out_dir);
    write_text_file((fs::path(out_dir) / (report.check + "_check.csv")).string(),
                    ratio_report_csv(report));
    write_text_file((fs::path(out_dir) / (report.check + "_summary.csv")).string(),
                    ratio_summary_csv(report));
    write_text_file((fs::path(out_dir) / "skipped.csv").string(), skipped_csv(report.skipped));
    if (!report.rows.empty()) emit_plots(report, out_dir);
    for (const std::string& f : report.failures) std::cerr << report.check << ": " << f << "\n";
    std::cout << report.check << ": " << report.rows.size() << " cells, "
              << report.skipped.size() << " skipped, ratio range [" << report.summary.min_ratio
              << ", " << report.summary.max_ratio << "], outputs in " << out_dir << "\n";
    return report.failures.empty() ? 0 : 2;
}

int run_estimate(const GlobalArgs& g, const std::string& profile_path, const std::string& what,
                 const std::string& pstar_s, const std::string& q_s) {
    const VarianceProfile profile = read_profile_file(profile_path);
    const NormPair pair(parse_exponent(pstar_s), parse_exponent(q_s));
    const long n = g.samples > 0 ? g.samples : 2000;
    McOpts opts;
    std::vector<double> samples;
    if (!g.dump_samples.empty()) opts.samples_out = &samples;

    EstimateResult est;
    if (what == "opnorm")
        est = estimate_opnorm(profile, pair, n, g.seed, opts);
    else if (what == "entry-max")
        est = estimate_entry_max(profile, n, g.seed, opts);
    else if (what == "rowmax-q")
        est = estimate_rowmax_qmoment(profile, pair, n, g.seed, opts);
    else
        throw std::runtime_error("unknown estimator '" + what + "'");

    CsvDoc doc({"field", "value"});
    doc.add_row({"estimator", what});
    doc.add_row({"p_star", csv_cell(pair.p_star())});
    doc.add_row({"q", csv_cell(pair.q())});
    doc.add_row({"mean", csv_cell(est.mean)});
    doc.add_row({"std_err", csv_cell(est.std_err)});
    doc.add_row({"ci_lo", csv_cell(est.ci_lo)});
    doc.add_row({"ci_hi", csv_cell(est.ci_hi)});
    if (est.q_moment_root) {
        doc.add_row({"q_moment_root", csv_cell(*est.q_moment_root)});
        doc.add_row({"q_moment_se", csv_cell(*est.q_moment_se)});
    }
    doc.add_row({"n_samples", csv_cell(est.n_samples)});
    doc.add_row({"seed", std::to_string(est.seed)});
    std::cout << doc.str();
    if (!g.dump_samples.empty()) dump_sample_csv(g.dump_samples, samples);
    return 0;
}

int run_bound(const std::string& name, const std::string& profile_path,
              const std::string& x_path, const std::string& y_path, const std::string& pstar_s,
              const std::string& q_s, double C) {
    const NormPair pair(parse_exponent(pstar_s), parse_exponent(q_s));
    if (name == "chevet") {
        if (x_path.empty() || y_path.empty())
            throw std::runtime_error("chevet needs --x and --y weight files");
        const auto b = chevet_rhs(read_weight_file(x_path), read_weight_file(y_path), pair);
        write_breakdown_csv(std::cout, b);
        return 0;
    }
    const VarianceProfile profile = read_profile_file(profile_path);
    if (name == "theorem")
        write_breakdown_csv(std::cout, theorem_main_rhs(profile, pair, C));
    else if (name == "conjecture")
        write_breakdown_csv(std::cout, conjecture_functional(profile, pair));
    else if (name == "lemma32")
        write_breakdown_csv(std::cout, lemma32_rhs(profile, pair, C));
    else if (name == "bvh")
        write_breakdown_csv(std::cout, bvh_rhs(profile, C));
    else if (name == "sigma31")
        std::cout << "bound_name,term_label,value\nsigma31,total,"
                  << format_double(sigma_lemma31(profile, pair.q())) << "\n";
    else
        throw std::runtime_error("unknown bound '" + name + "'");
    return 0;
}

int run_diagnostics(const std::string& weights_path) {
    const auto w = read_weight_file(weights_path);
    const auto orl = orlicz_norm(w);
    CsvDoc doc({"field", "value"});
    doc.add_row({"n", csv_cell(w.size())});
    doc.add_row({"l1_norm", csv_cell(lr_norm(w, 1.0))});
    doc.add_row({"l2_norm", csv_cell(lr_norm(w, 2.0))});
    doc.add_row({"linf_norm", csv_cell(lr_norm(w, kInf))});
    doc.add_row({"expected_max_abs", csv_cell(expected_max_abs(w))});
    doc.add_row({"maxgaus_comparator", csv_cell(maxgaus_comparator(w))});
    doc.add_row({"orlicz_norm", csv_cell(orl.value)});
    doc.add_row({"orlicz_residual", csv_cell(orl.residual)});
    doc.add_row({"orlicz_bisection_steps", csv_cell(static_cast<long>(orl.bisection_steps))});
    for (double r : {1.0, 2.0, 3.0, 4.0, 6.0, 8.0, 12.0, 16.0, 24.0, 32.0, 48.0, 64.0})
        doc.add_row({"gamma_" + format_double(r), csv_cell(gamma_r(r))});
    for (double p : {2.0, 4.0, 8.0})
        doc.add_row({"expected_lp_upper_p" + format_double(p), csv_cell(expected_lp_upper(w, p))});
    std::cout << doc.str();
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Gaussian random matrix norm laboratory"};
    app.require_subcommand(1);
    app.fallthrough();

    GlobalArgs g;
    app.add_option("--seed", g.seed, "experiment seed (default 0)")
        ->each([&](const std::string&) { g.seed_set = true; });
    app.add_option("--samples", g.samples, "Monte Carlo sample count override");
    app.add_option("--out", g.out_dir, "output directory override");
    app.add_option("--config", g.config_path, "sweep config file");
    app.add_option("--dump-samples", g.dump_samples, "write per-sample values to this CSV");

    auto* estimate = app.add_subcommand("estimate", "Monte Carlo estimate for one profile");
    std::string profile_path, what = "opnorm", pstar_s = "2", q_s = "2";
    estimate->add_option("--profile", profile_path, "profile file")->required();
    estimate->add_option("--what", what, "opnorm | entry-max | rowmax-q");
    estimate->add_option("--pstar", pstar_s, "p* in [1,2]");
    estimate->add_option("--q", q_s, "q in [2,inf]");

    auto* bound = app.add_subcommand("bound", "evaluate one bound as a term breakdown");
    std::string bound_name, bx, by;
    double bound_C = 1.0;
    bound->add_option("--name", bound_name, "theorem | conjecture | chevet | bvh | lemma32 | sigma31")
        ->required();
    bound->add_option("--profile", profile_path, "profile file");
    bound->add_option("--x", bx, "weight file (chevet)");
    bound->add_option("--y", by, "weight file (chevet)");
    bound->add_option("--pstar", pstar_s, "p* in [1,2]");
    bound->add_option("--q", q_s, "q in [2,inf]");
    bound->add_option("--C", bound_C, "bound constant (default 1)");

    auto* diag = app.add_subcommand("diagnostics", "scalar functional table for a weight file");
    std::string weights_path;
    diag->add_option("--weights", weights_path, "whitespace-separated weight file")->required();

    auto* chk_thm = app.add_subcommand("check-theorem", "ratio study against the main bound");
    auto* chk_con =
        app.add_subcommand("check-conjecture", "ratio study against the three-term functional");
    auto* chk_che = app.add_subcommand("check-chevet", "tensor-profile ratio study");
    auto* chk_dia = app.add_subcommand("check-diagonal", "diagonal-profile comparison study");
    auto* chk_cnc = app.add_subcommand("check-concentration", "empirical tails against the bound");

    auto* sweep = app.add_subcommand("sweep", "run every check and write all reports");
    bool verify = false;
    sweep->add_flag("--verify", verify, "recompute outputs and diff against existing files");

    try {
        app.parse(argc, argv);

        if (*estimate) return run_estimate(g, profile_path, what, pstar_s, q_s);
        if (*bound) return run_bound(bound_name, profile_path, bx, by, pstar_s, q_s, bound_C);
        if (*diag) return run_diagnostics(weights_path);

        const SweepConfig cfg = build_config(g);
        if (*chk_thm) return write_ratio_check(run_check_theorem(cfg), cfg.output_dir);
        if (*chk_con) return write_ratio_check(run_check_conjecture(cfg), cfg.output_dir);
        if (*chk_che) return write_ratio_check(run_check_chevet(cfg), cfg.output_dir);
        if (*chk_dia) return write_ratio_check(run_check_diagonal(cfg), cfg.output_dir);
        if (*chk_cnc) {
            const ConcentrationReport report = run_check_concentration(cfg);
            fs::create_directories(cfg.output_dir);
            write_text_file((fs::path(cfg.output_dir) / "concentration_check.csv").string(),
                            concentration_report_csv(report));
            emit_plots(report, cfg.output_dir);
            for (const std::string& f : report.failures) std::cerr << f << "\n";
            std::cout << "concentration: " << report.cases.size() << " cases, outputs in "
                      << cfg.output_dir << "\n";
            return report.failures.empty() ? 0 : 2;
        }
        if (*sweep) {
            const SweepResult result = run_sweep(cfg, verify);
            for (const std::string& f : result.failures) std::cerr << f << "\n";
            std::cout << (verify ? "verified " : "wrote ") << result.files.size()
                      << " files under " << cfg.output_dir << "\n";
            return result.exit_code;
        }
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
