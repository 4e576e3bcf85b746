// Acceptance suite: runs every criterion end to end and prints one
// pass/fail line per criterion. Regression baselines (recorded on the first
// full run with seed 0) live under tests/data/.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "corpus.hpp"
#include "normlab/bounds.hpp"
#include "normlab/csv.hpp"
#include "normlab/gaussian.hpp"
#include "normlab/harness.hpp"
#include "normlab/montecarlo.hpp"
#include "normlab/pqnorm.hpp"
#include "normlab/profiles.hpp"
#include "normlab/sampling.hpp"

using namespace normlab;
namespace fs = std::filesystem;

namespace {

std::string g_data_dir = ACCEPTANCE_DATA_DIR;
int g_failures = 0;

using clock_type = std::chrono::steady_clock;

struct Outcome {
    bool pass = true;
    std::string detail;
};

void run_criterion(int id, const std::string& name, Outcome (*fn)()) {
    const auto t0 = clock_type::now();
    Outcome out;
    try {
        out = fn();
    } catch (const std::exception& e) {
        out.pass = false;
        out.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(clock_type::now() - t0).count();
    std::printf("[%s] criterion %2d: %s — %s (%.1f s)\n", out.pass ? "PASS" : "FAIL", id,
                name.c_str(), out.detail.c_str(), secs);
    std::fflush(stdout);
    if (!out.pass) ++g_failures;
}

double rel_dev(double a, double b) { return std::abs(a - b) / std::max({a, b, 1e-300}); }

std::optional<std::map<std::string, double>> read_baseline(const std::string& name) {
    std::ifstream in(fs::path(g_data_dir) / name);
    if (!in) return std::nullopt;
    std::map<std::string, double> kv;
    std::string key;
    double value;
    while (in >> key >> value) kv[key] = value;
    if (kv.empty()) return std::nullopt;
    return kv;
}

void write_baseline(const std::string& name, const std::map<std::string, double>& kv) {
    fs::create_directories(g_data_dir);
    std::ofstream out(fs::path(g_data_dir) / name);
    for (const auto& [k, v] : kv) out << k << " " << format_double(v) << "\n";
}

// ---------------------------------------------------------------- criterion 1

Outcome exact_route_equivalence() {
    const double pstars[] = {1.2, 1.5, 1.75, 2.0};
    const double qs[] = {2.0, 2.5, 3.0, 4.0, 8.0};
    PowerOpts opts;
    opts.restarts = 16;
    opts.tol = 1e-13;
    opts.max_iter = 2000;

    double worst = 0.0;
    for (std::uint64_t idx = 0; idx < 200; ++idx) {
        const std::size_t m = 1 + static_cast<std::size_t>(testcorpus::unit_at(1001, idx, 0) * 8);
        const std::size_t n = 1 + static_cast<std::size_t>(testcorpus::unit_at(1001, idx, 1) * 8);
        const Matrix M = testcorpus::random_matrix(m, n, 1002, idx);
        const double q = qs[idx % 5];
        const double ps = pstars[idx % 4];

        const double exact_p1_val = op_norm(M, NormPair(1.0, q)).value;
        const double near_p1 = power_iteration(M, NormPair(1.0 + 1e-12, q), opts).value;
        worst = std::max(worst, rel_dev(exact_p1_val, near_p1));

        const double exact_inf = op_norm(M, NormPair(ps, kInf)).value;
        const double near_inf = power_iteration(M, NormPair(ps, 1e12), opts).value;
        worst = std::max(worst, rel_dev(exact_inf, near_inf));

        const double exact_spec = op_norm(M, NormPair(2.0, 2.0)).value;
        const double iter_spec = power_iteration(M, NormPair(2.0, 2.0), opts).value;
        worst = std::max(worst, rel_dev(exact_spec, iter_spec));
    }
    Outcome out;
    out.pass = worst <= 1e-8;
    out.detail = "max relative deviation " + format_double(worst) + " over 200 matrices";
    return out;
}

// ---------------------------------------------------------------- criterion 2

Outcome oracle_equivalence() {
    const double pstars[] = {1.2, 1.5, 1.8, 2.0};
    const double qs[] = {2.0, 3.0, 4.0, 8.0};
    PowerOpts opts;
    opts.restarts = 32;

    double worst_low = 0.0, worst_high = 0.0;
    auto compare = [&](const Matrix& M, const NormPair& pair, int resolution) {
        const double oracle = grid_oracle(M, pair, resolution).value;
        const double iter = power_iteration(M, pair, opts).value;
        worst_low = std::max(worst_low, oracle - iter);                       // vs oracle - 5e-3
        worst_high = std::max(worst_high, (iter - oracle) / (1.0 + oracle));  // vs 5e-3
    };

    for (std::uint64_t idx = 0; idx < 100; ++idx) {
        const std::size_t m = 2 + static_cast<std::size_t>(testcorpus::unit_at(2001, idx, 0) * 7);
        const Matrix M = testcorpus::random_matrix(m, 2, 2002, idx);
        compare(M, NormPair(pstars[idx % 4], qs[(idx / 4) % 4]), 4000);
    }
    for (std::uint64_t idx = 0; idx < 20; ++idx) {
        const std::size_t m = 2 + static_cast<std::size_t>(testcorpus::unit_at(2003, idx, 0) * 7);
        const Matrix M = testcorpus::random_matrix(m, 3, 2004, idx);
        compare(M, NormPair(pstars[idx % 4], qs[(idx / 4) % 4]), 600);
    }
    Outcome out;
    out.pass = worst_low <= 5e-3 && worst_high <= 5e-3;
    out.detail = "max shortfall " + format_double(worst_low) + ", max relative excess " +
                 format_double(worst_high);
    return out;
}

// ---------------------------------------------------------------- criterion 3

Outcome lemma31_identity() {
    const auto corpus = testcorpus::profile_corpus(50, 16);
    const double pstars[] = {1.2, 1.5, 2.0};
    const double qs[] = {2.0, 3.0, 4.0, 8.0};
    VariationalOpts opts;
    opts.restarts = 8;

    double worst = 0.0;
    for (const auto& profile : corpus) {
        for (double ps : pstars) {
            for (double q : qs) {
                const double lhs = sigma_variational(profile, q, ps, opts);
                const double rhs = sigma_lemma31(profile, q);
                worst = std::max(worst, rel_dev(lhs, rhs));
            }
        }
    }
    Outcome out;
    out.pass = worst <= 1e-6;
    out.detail = "max relative deviation " + format_double(worst) + " over 600 cases";
    return out;
}

// ---------------------------------------------------------------- criterion 4

Outcome quadrature_mc_agreement() {
    const double g1 = gamma_r(1.0), g2 = gamma_r(2.0), g4 = gamma_r(4.0);
    if (std::abs(g1 - std::sqrt(2.0 / M_PI)) > 1e-10 || std::abs(g2 - 1.0) > 1e-10 ||
        std::abs(g4 - std::pow(3.0, 0.25)) > 1e-10)
        return {false, "gamma_r closed values off"};

    const auto corpus = testcorpus::weight_corpus(20, 23, 128);
    double worst_sigmas = 0.0;
    for (const auto& w : corpus) {
        const VarianceProfile row(1, w.size(), std::vector<double>(w.begin(), w.end()));
        const auto est = estimate_entry_max(row, 100000, 4004);
        const double quad = expected_max_abs(w);
        worst_sigmas = std::max(worst_sigmas, std::abs(est.mean - quad) / est.std_err);
    }
    Outcome out;
    out.pass = worst_sigmas <= 4.0;
    out.detail = "gammas exact; max |MC - quadrature| = " + format_double(worst_sigmas) +
                 " standard errors over 20 vectors";
    return out;
}

// ------------------------------------------------------- criteria 5, 6 and 8

SweepReports* g_sweep_reports = nullptr;

Outcome theorem_end_to_end() {
    const RatioReport& report = g_sweep_reports->theorem;
    if (!report.failures.empty())
        return {false, "moment chain violated: " + report.failures.front()};
    if (report.rows.empty()) return {false, "no cells"};

    double max_ratio = 0.0, max_se = 0.0;
    for (const RatioRow& row : report.rows) {
        if (row.ratio > max_ratio) {
            max_ratio = row.ratio;
            max_se = row.extra[2] / row.rhs;  // se of the ratio at this cell
        }
    }

    const auto baseline = read_baseline("theorem_baseline.txt");
    if (!baseline) {
        write_baseline("theorem_baseline.txt",
                       {{"max_ratio", max_ratio}, {"max_ratio_se", max_se}});
        return {true, "recorded baseline max ratio " + format_double(max_ratio) + " over " +
                          std::to_string(report.rows.size()) + " cells"};
    }
    const double base = baseline->at("max_ratio");
    const double base_se = baseline->at("max_ratio_se");
    const double slack = 3.0 * std::sqrt(base_se * base_se + max_se * max_se);
    Outcome out;
    out.pass = max_ratio <= base + slack;
    out.detail = "max ratio " + format_double(max_ratio) + " vs baseline " + format_double(base) +
                 " (+3 se = " + format_double(base + slack) + "), " +
                 std::to_string(report.rows.size()) + " cells";
    return out;
}

Outcome conjecture_two_sided() {
    const RatioReport& report = g_sweep_reports->conjecture;
    if (!report.failures.empty()) return {false, report.failures.front()};
    if (report.rows.empty()) return {false, "no cells"};
    for (const RatioRow& row : report.rows)
        if (!(row.ratio > 0.0) || !std::isfinite(row.ratio))
            return {false, row.id + ": ratio outside (0, inf)"};

    // record the per-pair envelopes (the empirical c(p,q), C(p,q) candidates)
    std::map<std::string, double> kv;
    for (const auto& [pair_label, s] : report.per_pair) {
        kv["min_" + pair_label] = s.min_ratio;
        kv["max_" + pair_label] = s.max_ratio;
    }
    if (!read_baseline("conjecture_pair_ranges.txt"))
        write_baseline("conjecture_pair_ranges.txt", kv);

    return {true, "all " + std::to_string(report.rows.size()) +
                      " ratios in (0, inf); diagonal cells within 4 se of quadrature; global range [" +
                      format_double(report.summary.min_ratio) + ", " +
                      format_double(report.summary.max_ratio) + "]"};
}

Outcome concentration_tails() {
    const ConcentrationReport& report = g_sweep_reports->concentration;
    if (!report.failures.empty()) return {false, report.failures.front()};
    std::size_t points = 0;
    for (const auto& c : report.cases) points += c.t_grid.size();
    return {true, "no Wilson-adjusted violation over " + std::to_string(report.cases.size()) +
                      " cases, " + std::to_string(points) + " grid points"};
}

// ---------------------------------------------------------------- criterion 7

Outcome chevet_bracket() {
    SweepConfig cfg = default_config();
    cfg.profiles = {{ProfileSpec::Family::tensor_geom, 0.7, {}}};
    cfg.pairs = {NormPair(1.5, 2.0), NormPair(1.5, 4.0), NormPair(2.0, 2.0), NormPair(2.0, 4.0)};
    cfg.dims = {{8, 8}, {32, 32}};
    cfg.n_samples = 500;
    cfg.seed = 0;
    const RatioReport report = run_check_chevet(cfg);
    if (report.rows.size() != 8) return {false, "expected 8 tensor cells"};

    double lo = report.summary.min_ratio, hi = report.summary.max_ratio;
    const auto baseline = read_baseline("chevet_bracket.txt");
    if (!baseline) {
        write_baseline("chevet_bracket.txt", {{"min", lo}, {"max", hi}});
        Outcome out;
        out.pass = lo >= 0.2 && hi <= 5.0;
        out.detail = "recorded bracket [" + format_double(lo) + ", " + format_double(hi) +
                     "] (expected order [0.2, 5])";
        return out;
    }
    const double blo = baseline->at("min"), bhi = baseline->at("max");
    Outcome out;
    out.pass = true;
    for (const RatioRow& row : report.rows) {
        const double se = row.extra[0] / row.rhs;  // mean se scaled to the ratio
        if (row.ratio < blo - 3.0 * se || row.ratio > bhi + 3.0 * se) {
            out.pass = false;
            out.detail = row.id + ": ratio " + format_double(row.ratio) +
                         " outside recorded bracket [" + format_double(blo) + ", " +
                         format_double(bhi) + "]";
            return out;
        }
    }
    out.detail = "8 ratios within recorded bracket [" + format_double(blo) + ", " +
                 format_double(bhi) + "]";
    return out;
}

// ---------------------------------------------------------------- criterion 9

Outcome sweep_determinism() {
    const fs::path work = fs::path("acceptance_determinism");
    fs::remove_all(work);
    fs::create_directories(work);
    const std::string cfg_path = (work / "sweep.cfg").string();
    write_text_file(cfg_path,
                    "samples = 60\n"
                    "tail_samples = 4000\n"
                    "solver_restarts = 4\n"
                    "pairs {\n  1.5 3\n  2 2\n}\n"
                    "dims {\n  4 4\n  8 8\n}\n");

    auto run = [&](int threads, const std::string& out_dir) {
        const std::string cmd = "OMP_NUM_THREADS=" + std::to_string(threads) + " " +
                                NORMLAB_CLI_PATH + " sweep --seed 0 --config " + cfg_path +
                                " --out " + (work / out_dir).string() + " >/dev/null 2>&1";
        return std::system(cmd.c_str());
    };
    const int rc1 = run(1, "t1");
    const int rc2 = run(2, "t2");
    if (rc1 != 0 || rc2 != 0)
        return {false, "sweep exit codes " + std::to_string(rc1) + "/" + std::to_string(rc2)};

    std::vector<std::string> names1, names2;
    for (const auto& e : fs::directory_iterator(work / "t1")) names1.push_back(e.path().filename());
    for (const auto& e : fs::directory_iterator(work / "t2")) names2.push_back(e.path().filename());
    std::sort(names1.begin(), names1.end());
    std::sort(names2.begin(), names2.end());
    if (names1 != names2 || names1.empty()) return {false, "output file lists differ"};
    for (const std::string& name : names1) {
        if (read_text_file((work / "t1" / name).string()) !=
            read_text_file((work / "t2" / name).string()))
            return {false, name + " differs between 1 and 2 threads"};
    }
    fs::remove_all(work);
    return {true, std::to_string(names1.size()) +
                      " output files byte-identical across OMP_NUM_THREADS=1 and 2"};
}

// --------------------------------------------------------------- criterion 10

Outcome comparator_brackets() {
    const auto corpus = testcorpus::weight_corpus(200);
    double min1 = kInf, max1 = 0.0, min2 = kInf, max2 = 0.0;
    for (const auto& w : corpus) {
        const double emax = expected_max_abs(w);
        const double r1 = emax / maxgaus_comparator(w);
        const double r2 = emax / orlicz_norm(w).value;
        min1 = std::min(min1, r1);
        max1 = std::max(max1, r1);
        min2 = std::min(min2, r2);
        max2 = std::max(max2, r2);
    }
    Outcome out;
    out.pass = min1 >= 0.5 && max1 <= 4.0 && min2 >= 0.25 && max2 <= 4.0;
    out.detail = "comparator ratio in [" + format_double(min1) + ", " + format_double(max1) +
                 "] (bracket [0.5,4]); Orlicz ratio in [" + format_double(min2) + ", " +
                 format_double(max2) + "] (bracket [0.25,4]); 200 vectors";
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    if (argc > 1) g_data_dir = argv[1];
    std::printf("acceptance suite — baselines in %s\n", g_data_dir.c_str());

    run_criterion(1, "exact-route equivalence", exact_route_equivalence);
    run_criterion(2, "grid-oracle equivalence", oracle_equivalence);
    run_criterion(3, "sigma identity (variational vs closed form)", lemma31_identity);
    run_criterion(4, "quadrature vs Monte Carlo", quadrature_mc_agreement);

    // One shared estimation pass (default sweep, seed 0) feeds criteria 5, 6, 8.
    const auto t0 = clock_type::now();
    SweepConfig cfg = default_config();
    cfg.seed = 0;
    SweepReports reports = run_all_checks(cfg);
    g_sweep_reports = &reports;
    std::printf("  (default sweep, seed 0: %.1f s)\n",
                std::chrono::duration<double>(clock_type::now() - t0).count());

    run_criterion(5, "main bound end-to-end regression", theorem_end_to_end);
    run_criterion(6, "three-term functional two-sidedness", conjecture_two_sided);
    run_criterion(7, "tensor (rank-one) bracket regression", chevet_bracket);
    run_criterion(8, "concentration tails below the bound", concentration_tails);
    run_criterion(9, "sweep determinism across thread counts", sweep_determinism);
    run_criterion(10, "comparator and Orlicz brackets", comparator_brackets);

    if (g_failures == 0) {
        std::printf("all criteria passed\n");
        return 0;
    }
    std::printf("%d criteria FAILED\n", g_failures);
    return 1;
}
