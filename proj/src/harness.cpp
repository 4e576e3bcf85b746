#include "normlab/harness.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string_view>

#include "normlab/csv.hpp"
#include "normlab/gaussian.hpp"
#include "normlab/numerics.hpp"
#include "normlab/sampling.hpp"
#include "normlab/svg.hpp"

namespace fs = std::filesystem;

namespace normlab {

namespace {

constexpr std::uint64_t kSparseStream = 0x5350415253ull;

std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string compact_num(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

}  // namespace

std::string ProfileSpec::label() const {
    switch (family) {
        case Family::iid: return "iid_s" + compact_num(param);
        case Family::tensor_geom: return "tensor_g" + compact_num(param);
        case Family::diag_invsqrt: return "diag_invsqrt";
        case Family::sparse: return "sparse_d" + compact_num(param);
        case Family::file: return "file_" + fs::path(path).stem().string();
    }
    return "unknown";
}

std::pair<std::vector<double>, std::vector<double>> ProfileSpec::tensor_xy(std::size_t m,
                                                                           std::size_t n) const {
    if (family != Family::tensor_geom)
        throw std::logic_error("tensor_xy: not a tensor profile spec");
    std::vector<double> x(n), y(m);
    for (std::size_t j = 0; j < n; ++j) x[j] = std::pow(param, static_cast<double>(j));
    for (std::size_t i = 0; i < m; ++i) y[i] = std::pow(param, static_cast<double>(i));
    return {x, y};
}

std::vector<double> ProfileSpec::diag_vector(std::size_t n) const {
    if (family != Family::diag_invsqrt)
        throw std::logic_error("diag_vector: not a diagonal profile spec");
    std::vector<double> d(n);
    for (std::size_t i = 0; i < n; ++i) d[i] = 1.0 / std::sqrt(static_cast<double>(i + 1));
    return d;
}

VarianceProfile ProfileSpec::materialize(std::size_t m, std::size_t n,
                                         std::uint64_t seed) const {
    switch (family) {
        case Family::iid:
            return make_iid(m, n, param);
        case Family::tensor_geom: {
            auto [x, y] = tensor_xy(m, n);
            return make_tensor(x, y);
        }
        case Family::diag_invsqrt: {
            if (m != n) throw std::invalid_argument("diagonal family requires square dims");
            const auto d = diag_vector(n);
            return make_diagonal(d);
        }
        case Family::sparse: {
            // Bernoulli(density) 0/1 mask keyed by the sweep seed; reproducible
            // for any thread count because the mask is a pure cell function.
            std::vector<double> a(m * n, 0.0);
            for (std::size_t c = 0; c < m * n; ++c) {
                const double u = rng::u64_to_unit(rng::keyed_u64(seed, kSparseStream, c));
                if (u < param) a[c] = 1.0;
            }
            return VarianceProfile(m, n, std::move(a));
        }
        case Family::file:
            return read_profile_file(path);
    }
    throw std::logic_error("unknown profile family");
}

double SweepConfig::constant(const std::string& name) const {
    auto it = constants.find(name);
    return it == constants.end() ? 1.0 : it->second;
}

SweepConfig default_config() {
    SweepConfig cfg;
    cfg.profiles = {
        {ProfileSpec::Family::iid, 1.0, {}},
        {ProfileSpec::Family::tensor_geom, 0.7, {}},
        {ProfileSpec::Family::diag_invsqrt, 0.0, {}},
        {ProfileSpec::Family::sparse, 0.1, {}},
    };
    for (double ps : {1.25, 1.5, 2.0})
        for (double q : {2.0, 3.0, 4.0, 8.0}) cfg.pairs.emplace_back(ps, q);
    for (std::size_t d : {4u, 8u, 16u, 32u, 64u}) cfg.dims.emplace_back(d, d);
    cfg.n_samples = 500;
    cfg.seed = 0;
    cfg.output_dir = "results";
    cfg.solver_restarts = 8;
    return cfg;
}

namespace {

double parse_double_token(const std::string& tok, std::size_t line_no) {
    if (tok == "inf" || tok == "Inf" || tok == "INF") return kInf;
    try {
        std::size_t pos = 0;
        const double v = std::stod(tok, &pos);
        if (pos != tok.size()) throw std::invalid_argument(tok);
        return v;
    } catch (const std::exception&) {
        throw std::runtime_error("config line " + std::to_string(line_no) +
                                 ": bad numeric token '" + tok + "'");
    }
}

std::vector<std::string> split_ws(const std::string& s) {
    std::istringstream is(s);
    std::vector<std::string> toks;
    std::string t;
    while (is >> t) toks.push_back(t);
    return toks;
}

}  // namespace

SweepConfig parse_config_text(const std::string& text) {
    SweepConfig cfg = default_config();
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;

    bool saw_pairs = false, saw_dims = false, saw_profiles = false, saw_constants = false;

    std::string block;  // active table name, empty if none
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        auto toks = split_ws(line);
        if (toks.empty()) continue;

        if (!block.empty()) {
            if (toks.size() == 1 && toks[0] == "}") {
                block.clear();
                continue;
            }
            if (block == "pairs") {
                if (toks.size() != 2)
                    throw std::runtime_error("config line " + std::to_string(line_no) +
                                             ": pairs rows are 'p_star q'");
                if (!saw_pairs) cfg.pairs.clear();
                saw_pairs = true;
                cfg.pairs.emplace_back(parse_double_token(toks[0], line_no),
                                       parse_double_token(toks[1], line_no));
            } else if (block == "dims") {
                if (toks.size() != 2)
                    throw std::runtime_error("config line " + std::to_string(line_no) +
                                             ": dims rows are 'm n'");
                if (!saw_dims) cfg.dims.clear();
                saw_dims = true;
                const long m = std::lround(parse_double_token(toks[0], line_no));
                const long n = std::lround(parse_double_token(toks[1], line_no));
                if (m < 1 || n < 1)
                    throw std::runtime_error("config line " + std::to_string(line_no) +
                                             ": dims must be positive");
                cfg.dims.emplace_back(static_cast<std::size_t>(m), static_cast<std::size_t>(n));
            } else if (block == "profiles") {
                if (!saw_profiles) cfg.profiles.clear();
                saw_profiles = true;
                ProfileSpec spec;
                if (toks[0] == "iid" && toks.size() == 2) {
                    spec = {ProfileSpec::Family::iid, parse_double_token(toks[1], line_no), {}};
                } else if (toks[0] == "tensor-geom" && toks.size() == 2) {
                    spec = {ProfileSpec::Family::tensor_geom, parse_double_token(toks[1], line_no), {}};
                } else if (toks[0] == "diag-invsqrt" && toks.size() == 1) {
                    spec = {ProfileSpec::Family::diag_invsqrt, 0.0, {}};
                } else if (toks[0] == "sparse" && toks.size() == 2) {
                    spec = {ProfileSpec::Family::sparse, parse_double_token(toks[1], line_no), {}};
                } else if (toks[0] == "file" && toks.size() == 2) {
                    spec = {ProfileSpec::Family::file, 0.0, toks[1]};
                } else {
                    throw std::runtime_error("config line " + std::to_string(line_no) +
                                             ": unknown profile row '" + line + "'");
                }
                cfg.profiles.push_back(std::move(spec));
            } else if (block == "constants") {
                if (toks.size() != 2)
                    throw std::runtime_error("config line " + std::to_string(line_no) +
                                             ": constants rows are 'name value'");
                if (!saw_constants) cfg.constants.clear();
                saw_constants = true;
                cfg.constants[toks[0]] = parse_double_token(toks[1], line_no);
            } else {
                throw std::runtime_error("config line " + std::to_string(line_no) +
                                         ": unknown table '" + block + "'");
            }
            continue;
        }

        if (toks.size() == 2 && toks[1] == "{") {
            block = toks[0];
            if (block != "pairs" && block != "dims" && block != "profiles" && block != "constants")
                throw std::runtime_error("config line " + std::to_string(line_no) +
                                         ": unknown table '" + block + "'");
            continue;
        }
        if (toks.size() == 3 && toks[1] == "=") {
            const std::string& key = toks[0];
            const std::string& val = toks[2];
            if (key == "seed")
                cfg.seed = std::stoull(val);
            else if (key == "samples")
                cfg.n_samples = std::stol(val);
            else if (key == "tail_samples")
                cfg.tail_samples = std::stol(val);
            else if (key == "out")
                cfg.output_dir = val;
            else if (key == "solver_restarts")
                cfg.solver_restarts = static_cast<int>(std::stol(val));
            else if (key == "parallel")
                cfg.parallel = std::stol(val) != 0;
            else
                throw std::runtime_error("config line " + std::to_string(line_no) +
                                         ": unknown key '" + key + "'");
            continue;
        }
        throw std::runtime_error("config line " + std::to_string(line_no) +
                                 ": expected 'key = value' or 'table {'");
    }
    if (!block.empty()) throw std::runtime_error("config: unterminated table '" + block + "'");
    if (cfg.n_samples < 2) throw std::runtime_error("config: samples must be >= 2");
    return cfg;
}

SweepConfig load_config_file(const std::string& path) {
    return parse_config_text(read_text_file(path));
}

std::vector<ConcentrationCase> default_concentration_cases() {
    auto grid = [](double scale) {
        return std::vector<double>{0.5 * scale, 1.0 * scale, 1.5 * scale, 2.0 * scale};
    };
    auto ones = [](std::size_t n) { return std::vector<double>(n, 1.0); };
    auto invsqrt = [](std::size_t n) {
        std::vector<double> d(n);
        for (std::size_t i = 0; i < n; ++i) d[i] = 1.0 / std::sqrt(static_cast<double>(i + 1));
        return d;
    };
    auto invlin = [](std::size_t n) {
        std::vector<double> d(n);
        for (std::size_t i = 0; i < n; ++i) d[i] = 1.0 / static_cast<double>(i + 1);
        return d;
    };
    auto geom = [](std::size_t n, double r) {
        std::vector<double> d(n);
        double v = 1.0;
        for (std::size_t i = 0; i < n; ++i, v *= r) d[i] = v;
        return d;
    };
    return {
        {"unit", {1.0}, 2.0, grid(1.0)},
        {"unit_p3", {1.0}, 3.0, grid(1.0)},
        {"ones8", ones(8), 2.0, grid(1.0)},
        {"ones8_p5", ones(8), 5.0, grid(1.0)},
        {"invsqrt16", invsqrt(16), 2.0, grid(1.0)},
        {"geom16", geom(16, 0.9), 2.0, grid(1.0)},
        {"mixed5_p4", {2.0, 1.0, 1.0, 0.0, 0.0}, 4.0, grid(2.0)},
        {"ones32", ones(32), 2.0, grid(1.0)},
        {"invlin16_p3", invlin(16), 3.0, grid(1.0)},
        {"scale5", {5.0}, 2.0, grid(5.0)},
    };
}

namespace {

struct Cell {
    std::string id;
    const ProfileSpec* spec = nullptr;
    std::size_t m = 0, n = 0;
    NormPair pair{2.0, 2.0};
    VarianceProfile profile{1, 1, {0.0}};
    std::uint64_t seed = 0;
    bool materialize_failed = false;
    std::string materialize_error;
};

// Enumerates profile x dims x pairs in config order. File profiles carry
// their own dimensions and ignore the dims table.
std::vector<Cell> enumerate_cells(const SweepConfig& cfg,
                                  const std::vector<const ProfileSpec*>& specs) {
    std::vector<Cell> cells;
    for (const ProfileSpec* spec : specs) {
        std::vector<std::pair<std::size_t, std::size_t>> dims = cfg.dims;
        if (spec->family == ProfileSpec::Family::file) {
            const VarianceProfile p = read_profile_file(spec->path);
            dims = {{p.rows(), p.cols()}};
        }
        for (const auto& [m, n] : dims) {
            for (const NormPair& pair : cfg.pairs) {
                Cell cell;
                cell.spec = spec;
                cell.m = m;
                cell.n = n;
                cell.pair = pair;
                cell.id = spec->label() + "_" + std::to_string(m) + "x" + std::to_string(n) +
                          "_" + pair.label();
                cell.seed = rng::mix64(cfg.seed ^ fnv1a64(cell.id));
                try {
                    cell.profile = spec->materialize(m, n, cfg.seed);
                } catch (const std::exception& e) {
                    cell.materialize_failed = true;
                    cell.materialize_error = e.what();
                }
                cells.push_back(std::move(cell));
            }
        }
    }
    return cells;
}

struct CellData {
    Cell cell;
    EstimateResult est;
    std::vector<double> samples;  // per-sample norms, kept for diagonal cells
};

McOpts solver_opts(const SweepConfig& cfg, bool keep_samples, std::vector<double>* out) {
    McOpts opts;
    opts.parallel = cfg.parallel;
    opts.solver.restarts = cfg.solver_restarts;
    opts.samples_out = keep_samples ? out : nullptr;
    return opts;
}

std::vector<CellData> estimate_cells(const SweepConfig& cfg,
                                     const std::vector<const ProfileSpec*>& specs) {
    std::vector<CellData> out;
    for (Cell& cell : enumerate_cells(cfg, specs)) {
        CellData data;
        data.cell = std::move(cell);
        if (!data.cell.materialize_failed) {
            const bool keep = data.cell.spec->is_diagonal();
            const McOpts opts = solver_opts(cfg, keep, &data.samples);
            data.est = estimate_opnorm(data.cell.profile, data.cell.pair, cfg.n_samples,
                                       data.cell.seed, opts);
        }
        out.push_back(std::move(data));
    }
    return out;
}

void finalize_summaries(RatioReport& report) {
    RatioSummary all;
    std::vector<std::pair<std::string, RatioSummary>> per_pair;
    auto fold = [](RatioSummary& s, double ratio) {
        if (s.count == 0) {
            s.min_ratio = s.max_ratio = ratio;
            s.geomean = std::log(ratio);
        } else {
            s.min_ratio = std::min(s.min_ratio, ratio);
            s.max_ratio = std::max(s.max_ratio, ratio);
            s.geomean += std::log(ratio);
        }
        ++s.count;
    };
    for (const RatioRow& row : report.rows) {
        fold(all, row.ratio);
        const std::string key = NormPair(row.p_star, row.q).label();
        auto it = std::find_if(per_pair.begin(), per_pair.end(),
                               [&](const auto& kv) { return kv.first == key; });
        if (it == per_pair.end()) {
            per_pair.emplace_back(key, RatioSummary{});
            it = per_pair.end() - 1;
        }
        fold(it->second, row.ratio);
    }
    auto close = [](RatioSummary& s) {
        if (s.count > 0) s.geomean = std::exp(s.geomean / static_cast<double>(s.count));
    };
    close(all);
    for (auto& [k, s] : per_pair) close(s);
    report.summary = all;
    report.per_pair = std::move(per_pair);
}

std::string family_of(const Cell& cell) { return cell.spec->label(); }

// Shared row assembly: returns false when the cell was segregated.
bool push_ratio_row(RatioReport& report, const Cell& cell, double lhs, double rhs,
                    double ci_lo, double ci_hi, std::vector<double> extra) {
    if (rhs == 0.0) {
        report.skipped.push_back({report.check, cell.id, "zero rhs (zero profile)"});
        return false;
    }
    RatioRow row;
    row.id = cell.id;
    row.family = family_of(cell);
    row.m = cell.m;
    row.n = cell.n;
    row.p_star = cell.pair.p_star();
    row.q = cell.pair.q();
    row.lhs = lhs;
    row.rhs = rhs;
    row.ratio = lhs / rhs;
    row.ci_lo = ci_lo;
    row.ci_hi = ci_hi;
    row.extra = std::move(extra);
    report.rows.push_back(std::move(row));
    return true;
}

bool skip_invalid(RatioReport& report, const Cell& cell) {
    if (cell.materialize_failed) {
        report.skipped.push_back({report.check, cell.id, cell.materialize_error});
        return true;
    }
    return false;
}

RatioReport build_theorem_report(const SweepConfig& cfg, const std::vector<CellData>& cells) {
    RatioReport report;
    report.check = "theorem";
    report.extra_headers = {"mean", "mean_se", "qroot_se"};
    const double C = cfg.constant("theorem");
    for (const CellData& data : cells) {
        const Cell& cell = data.cell;
        if (skip_invalid(report, cell)) continue;
        if (!(cell.pair.p_star() > 1.0)) {
            report.skipped.push_back({report.check, cell.id, "p_star = 1 outside theorem range"});
            continue;
        }
        if (!cell.pair.q_finite()) {
            report.skipped.push_back({report.check, cell.id, "q = inf outside theorem range"});
            continue;
        }
        if (cell.m < 2) {
            report.skipped.push_back({report.check, cell.id, "m < 2 (log m vanishes)"});
            continue;
        }
        const BoundBreakdown rhs = theorem_main_rhs(cell.profile, cell.pair, C);
        const double lhs = data.est.q_moment_root.value();
        const double se = data.est.q_moment_se.value();
        if (!push_ratio_row(report, cell, lhs, rhs.total, lhs - kZ95 * se, lhs + kZ95 * se,
                            {data.est.mean, data.est.std_err, se}))
            continue;
        // power-mean chain: E||G|| <= (E||G||^q)^{1/q}
        if (data.est.mean > lhs + 1e-9 * (1.0 + data.est.mean))
            report.failures.push_back(cell.id + ": mean exceeds q-moment root");
    }
    finalize_summaries(report);
    return report;
}

RatioReport build_conjecture_report(const std::vector<CellData>& cells) {
    RatioReport report;
    report.check = "conjecture";
    report.extra_headers = {"mean_se"};
    for (const CellData& data : cells) {
        const Cell& cell = data.cell;
        if (skip_invalid(report, cell)) continue;
        const BoundBreakdown rhs = conjecture_functional(cell.profile, cell.pair);
        if (!push_ratio_row(report, cell, data.est.mean, rhs.total, data.est.ci_lo,
                            data.est.ci_hi, {data.est.std_err}))
            continue;
        if (!(data.est.mean > 0.0))
            report.failures.push_back(cell.id + ": nonpositive lhs on a nonzero profile");
        if (cell.spec->is_diagonal()) {
            const double quad = expected_max_abs(cell.spec->diag_vector(cell.n));
            if (std::abs(data.est.mean - quad) > 4.0 * data.est.std_err + 1e-12)
                report.failures.push_back(cell.id +
                                          ": diagonal lhs disagrees with quadrature beyond 4 se");
        }
    }
    finalize_summaries(report);
    return report;
}

RatioReport build_chevet_report(const std::vector<CellData>& cells) {
    RatioReport report;
    report.check = "chevet";
    report.extra_headers = {"mean_se", "term_yq_xinf", "term_yinf_xp"};
    for (const CellData& data : cells) {
        const Cell& cell = data.cell;
        if (skip_invalid(report, cell)) continue;
        if (!cell.spec->is_tensor())
            throw std::invalid_argument("chevet check requires tensor profile specs");
        if (cell.m != cell.n) {
            report.skipped.push_back({report.check, cell.id, "chevet case is square n x n"});
            continue;
        }
        const auto [x, y] = cell.spec->tensor_xy(cell.m, cell.n);
        const BoundBreakdown rhs = chevet_rhs(x, y, cell.pair);
        push_ratio_row(report, cell, data.est.mean, rhs.total, data.est.ci_lo, data.est.ci_hi,
                       {data.est.std_err, rhs.term("yq_xinf"), rhs.term("yinf_xp")});
    }
    finalize_summaries(report);
    return report;
}

RatioReport build_diagonal_report(const SweepConfig& cfg, const std::vector<CellData>& cells) {
    RatioReport report;
    report.check = "diagonal";
    report.extra_headers = {"mc_se", "quad_emax", "comparator", "orlicz", "entry_identity_dev"};
    for (const CellData& data : cells) {
        const Cell& cell = data.cell;
        if (skip_invalid(report, cell)) continue;
        if (!cell.spec->is_diagonal())
            throw std::invalid_argument("diagonal check requires diagonal profile specs");
        const auto d = cell.spec->diag_vector(cell.n);
        const double quad = expected_max_abs(d);
        const double comparator = maxgaus_comparator(d);
        const double orlicz = orlicz_norm(d).value;

        // realized norm vs realized entry max, per sample
        double max_dev = 0.0;
        for (std::size_t k = 0; k < data.samples.size(); ++k) {
            const Matrix g = sample_matrix(cell.profile, SampleKey{cell.seed, k});
            const double emax = g.max_abs();
            const double dev = std::abs(data.samples[k] - emax) / std::max(emax, 1e-300);
            max_dev = std::max(max_dev, dev);
        }

        if (!push_ratio_row(report, cell, data.est.mean, quad, data.est.ci_lo, data.est.ci_hi,
                            {data.est.std_err, quad, comparator, orlicz, max_dev}))
            continue;
        if (std::abs(data.est.mean - quad) > 4.0 * data.est.std_err + 1e-12)
            report.failures.push_back(cell.id +
                                      ": MC estimate disagrees with quadrature beyond 4 se");
        (void)cfg;
    }
    finalize_summaries(report);
    return report;
}

std::vector<const ProfileSpec*> all_specs(const SweepConfig& cfg) {
    std::vector<const ProfileSpec*> v;
    for (const auto& s : cfg.profiles) v.push_back(&s);
    return v;
}

std::vector<const ProfileSpec*> filtered_specs(const SweepConfig& cfg,
                                               bool (*pred)(const ProfileSpec&),
                                               const char* what) {
    std::vector<const ProfileSpec*> v;
    for (const auto& s : cfg.profiles)
        if (pred(s)) v.push_back(&s);
    if (v.empty()) throw std::invalid_argument(std::string("no ") + what + " profile specs in config");
    return v;
}

}  // namespace

RatioReport run_check_theorem(const SweepConfig& cfg) {
    return build_theorem_report(cfg, estimate_cells(cfg, all_specs(cfg)));
}

RatioReport run_check_conjecture(const SweepConfig& cfg) {
    return build_conjecture_report(estimate_cells(cfg, all_specs(cfg)));
}

RatioReport run_check_chevet(const SweepConfig& cfg) {
    const auto specs = filtered_specs(
        cfg, [](const ProfileSpec& s) { return s.is_tensor(); }, "tensor");
    return build_chevet_report(estimate_cells(cfg, specs));
}

RatioReport run_check_diagonal(const SweepConfig& cfg) {
    const auto specs = filtered_specs(
        cfg, [](const ProfileSpec& s) { return s.is_diagonal(); }, "diagonal");
    return build_diagonal_report(cfg, estimate_cells(cfg, specs));
}

ConcentrationReport run_check_concentration(const SweepConfig& cfg,
                                            const std::vector<ConcentrationCase>& cases) {
    ConcentrationReport report;
    report.cases = cases;
    for (const ConcentrationCase& c : cases) {
        const std::uint64_t seed = rng::mix64(cfg.seed ^ fnv1a64("conc_" + c.id));
        TailResult tail =
            empirical_tail(c.weights, c.p, cfg.tail_samples, seed, c.t_grid, cfg.parallel);
        std::vector<double> bounds(c.t_grid.size(), 0.0);
        if (!tail.degenerate) {
            for (std::size_t ti = 0; ti < c.t_grid.size(); ++ti) {
                bounds[ti] = concentration_tail(c.weights, c.p, c.t_grid[ti]);
                if (tail.freq[ti] > bounds[ti] + tail.wilson_half[ti])
                    report.failures.push_back(c.id + ": tail frequency above bound at t=" +
                                              format_double(c.t_grid[ti]));
            }
        }
        report.tails.push_back(std::move(tail));
        report.bound_vals.push_back(std::move(bounds));
    }
    return report;
}

std::string ratio_report_csv(const RatioReport& report) {
    std::vector<std::string> header = {"id",  "family", "m",      "n",     "p_star", "q",
                                       "lhs", "rhs",    "ratio",  "ci_lo", "ci_hi"};
    header.insert(header.end(), report.extra_headers.begin(), report.extra_headers.end());
    CsvDoc doc(header);
    for (const RatioRow& row : report.rows) {
        std::vector<std::string> cells = {row.id,
                                          row.family,
                                          csv_cell(row.m),
                                          csv_cell(row.n),
                                          csv_cell(row.p_star),
                                          csv_cell(row.q),
                                          csv_cell(row.lhs),
                                          csv_cell(row.rhs),
                                          csv_cell(row.ratio),
                                          csv_cell(row.ci_lo),
                                          csv_cell(row.ci_hi)};
        for (double v : row.extra) cells.push_back(csv_cell(v));
        doc.add_row(std::move(cells));
    }
    return doc.str();
}

std::string ratio_summary_csv(const RatioReport& report) {
    CsvDoc doc({"check", "scope", "min_ratio", "max_ratio", "geomean", "count"});
    doc.add_row({report.check, "all", csv_cell(report.summary.min_ratio),
                 csv_cell(report.summary.max_ratio), csv_cell(report.summary.geomean),
                 csv_cell(report.summary.count)});
    for (const auto& [pair_label, s] : report.per_pair)
        doc.add_row({report.check, pair_label, csv_cell(s.min_ratio), csv_cell(s.max_ratio),
                     csv_cell(s.geomean), csv_cell(s.count)});
    return doc.str();
}

std::string concentration_report_csv(const ConcentrationReport& report) {
    CsvDoc doc({"case_id", "p", "n_samples", "center", "t", "freq", "wilson_half", "bound",
                "violation"});
    for (std::size_t ci = 0; ci < report.cases.size(); ++ci) {
        const auto& c = report.cases[ci];
        const auto& tail = report.tails[ci];
        for (std::size_t ti = 0; ti < c.t_grid.size(); ++ti) {
            const double bound = report.bound_vals[ci][ti];
            const bool violated =
                !tail.degenerate && tail.freq[ti] > bound + tail.wilson_half[ti];
            doc.add_row({c.id, csv_cell(c.p), csv_cell(tail.n_samples), csv_cell(tail.center),
                         csv_cell(c.t_grid[ti]), csv_cell(tail.freq[ti]),
                         csv_cell(tail.wilson_half[ti]), csv_cell(bound),
                         violated ? "1" : "0"});
        }
    }
    return doc.str();
}

std::string skipped_csv(const std::vector<SkippedCell>& skipped) {
    CsvDoc doc({"check", "id", "reason"});
    for (const SkippedCell& s : skipped) doc.add_row({s.check, s.id, s.reason});
    return doc.str();
}

namespace {

// Rendered plot outputs as (relative filename, content); writing happens in
// one place so verify mode can diff instead.
std::vector<std::pair<std::string, std::string>> render_ratio_plots(const RatioReport& report) {
    if (report.rows.empty())
        throw std::invalid_argument("emit_plots: report for '" + report.check + "' has no rows");
    std::vector<std::pair<std::string, std::string>> out;
    std::vector<std::string> order;
    for (const RatioRow& row : report.rows) {
        const std::string key = NormPair(row.p_star, row.q).label();
        if (std::find(order.begin(), order.end(), key) == order.end()) order.push_back(key);
    }
    for (const std::string& key : order) {
        std::string dat = "# m ratio\n";
        std::vector<PlotSeries> series;
        for (const RatioRow& row : report.rows) {
            if (NormPair(row.p_star, row.q).label() != key) continue;
            dat += format_double(static_cast<double>(row.m)) + " " + format_double(row.ratio) + "\n";
            auto it = std::find_if(series.begin(), series.end(),
                                   [&](const PlotSeries& s) { return s.name == row.family; });
            if (it == series.end()) {
                series.push_back({row.family, {}, {}, true, true});
                it = series.end() - 1;
            }
            it->x.push_back(static_cast<double>(row.m));
            it->y.push_back(row.ratio);
        }
        const std::string base = report.check + "_" + key;
        out.emplace_back(base + ".dat", dat);
        out.emplace_back(base + ".svg",
                         render_svg_plot(report.check + " " + key, "m", "lhs / rhs", series));
    }
    return out;
}

std::vector<std::pair<std::string, std::string>> render_concentration_plots(
    const ConcentrationReport& report) {
    if (report.cases.empty()) throw std::invalid_argument("emit_plots: empty concentration report");
    std::vector<std::pair<std::string, std::string>> out;
    for (std::size_t ci = 0; ci < report.cases.size(); ++ci) {
        const auto& c = report.cases[ci];
        const auto& tail = report.tails[ci];
        std::string dat = "# t freq\n";
        PlotSeries freq{"empirical", {}, {}, true, true};
        PlotSeries bound{"bound", {}, {}, true, false};
        for (std::size_t ti = 0; ti < c.t_grid.size(); ++ti) {
            dat += format_double(c.t_grid[ti]) + " " + format_double(tail.freq[ti]) + "\n";
            freq.x.push_back(c.t_grid[ti]);
            freq.y.push_back(tail.freq[ti]);
            bound.x.push_back(c.t_grid[ti]);
            bound.y.push_back(report.bound_vals[ci][ti]);
        }
        const std::string base = "concentration_" + c.id;
        out.emplace_back(base + ".dat", dat);
        out.emplace_back(base + ".svg",
                         render_svg_plot("concentration " + c.id, "t", "P(|dev| > t)",
                                         {freq, bound}));
    }
    return out;
}

std::vector<std::string> write_rendered(const std::vector<std::pair<std::string, std::string>>& files,
                                        const std::string& out_dir) {
    fs::create_directories(out_dir);
    std::vector<std::string> paths;
    for (const auto& [name, content] : files) {
        const std::string path = (fs::path(out_dir) / name).string();
        write_text_file(path, content);
        paths.push_back(path);
    }
    return paths;
}

}  // namespace

std::vector<std::string> emit_plots(const RatioReport& report, const std::string& out_dir) {
    return write_rendered(render_ratio_plots(report), out_dir);
}

std::vector<std::string> emit_plots(const ConcentrationReport& report,
                                    const std::string& out_dir) {
    return write_rendered(render_concentration_plots(report), out_dir);
}

SweepReports run_all_checks(const SweepConfig& cfg) {
    SweepReports reports;
    const auto cells = estimate_cells(cfg, all_specs(cfg));
    reports.theorem = build_theorem_report(cfg, cells);
    reports.conjecture = build_conjecture_report(cells);

    std::vector<CellData> tensor_cells, diag_cells;
    for (const CellData& data : cells) {
        if (data.cell.spec->is_tensor() && data.cell.m == data.cell.n) tensor_cells.push_back(data);
        if (data.cell.spec->is_diagonal()) diag_cells.push_back(data);
    }
    if (!tensor_cells.empty()) reports.chevet = build_chevet_report(tensor_cells);
    if (!diag_cells.empty()) reports.diagonal = build_diagonal_report(cfg, diag_cells);
    reports.concentration = run_check_concentration(cfg);
    return reports;
}

SweepResult run_sweep(const SweepConfig& cfg, bool verify) {
    SweepResult result;

    const SweepReports all = run_all_checks(cfg);
    std::vector<RatioReport> ratio_reports = {all.theorem, all.conjecture};
    if (all.chevet) ratio_reports.push_back(*all.chevet);
    if (all.diagonal) ratio_reports.push_back(*all.diagonal);
    const ConcentrationReport& concentration = all.concentration;

    std::vector<std::pair<std::string, std::string>> files;
    std::vector<SkippedCell> skipped;
    for (const RatioReport& report : ratio_reports) {
        files.emplace_back(report.check + "_check.csv", ratio_report_csv(report));
        files.emplace_back(report.check + "_summary.csv", ratio_summary_csv(report));
        if (!report.rows.empty())
            for (auto& f : render_ratio_plots(report)) files.push_back(std::move(f));
        skipped.insert(skipped.end(), report.skipped.begin(), report.skipped.end());
        for (const std::string& f : report.failures)
            result.failures.push_back(report.check + ": " + f);
    }
    files.emplace_back("concentration_check.csv", concentration_report_csv(concentration));
    for (auto& f : render_concentration_plots(concentration)) files.push_back(std::move(f));
    for (const std::string& f : concentration.failures)
        result.failures.push_back("concentration: " + f);
    files.emplace_back("skipped.csv", skipped_csv(skipped));

    if (verify) {
        for (const auto& [name, content] : files) {
            const std::string path = (fs::path(cfg.output_dir) / name).string();
            if (!fs::exists(path)) {
                result.failures.push_back("verify: missing " + path);
                continue;
            }
            if (read_text_file(path) != content)
                result.failures.push_back("verify: content differs for " + path);
            result.files.push_back(path);
        }
    } else {
        result.files = write_rendered(files, cfg.output_dir);
    }
    result.exit_code = result.failures.empty() ? 0 : 2;
    return result;
}

}  // namespace normlab
