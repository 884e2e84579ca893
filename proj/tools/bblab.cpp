// bblab command-line tool: per-function analysis, identity/inequality
// verification sweeps, extremal ratio search, noise stability and the
// restriction-moment ledger. All randomness flows from --seed (default 0,
// never wall clock); JSON output keeps fixed field order and 17-digit
// floats so identical invocations produce byte-identical reports.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <bblab/bblab.hpp>
#include <bblab/detail/json_writer.hpp>

namespace {

using namespace bblab;

std::vector<double> parse_grid(const std::string& text) {
    std::vector<double> grid;
    std::size_t at = 0;
    while (at < text.size()) {
        std::size_t next = text.find(',', at);
        if (next == std::string::npos) next = text.size();
        const std::string tok = text.substr(at, next - at);
        try {
            grid.push_back(std::stod(tok));
        } catch (const std::exception&) {
            throw Error("cannot parse bias value \"" + tok + "\"");
        }
        at = next + 1;
    }
    if (grid.empty()) throw Error("empty bias grid");
    for (double p : grid) Bias{p};  // validate
    return grid;
}

std::string utc_now() {
    const std::time_t now =
        std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    char buf[32];
    std::tm tm{};
    gmtime_r(&now, &tm);
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path);
    out << text;
}

int env_workers() {
    const char* env = std::getenv("BBLAB_WORKERS");
    if (env == nullptr) return 1;
    const int w = std::atoi(env);
    return w >= 1 ? w : 1;
}

struct CommonFlags {
    std::string json_path;
    bool timestamp = false;
};

void emit(const CommonFlags& flags, const std::string& json) {
    if (!flags.json_path.empty()) write_file(flags.json_path, json);
}

// --- analyze -----------------------------------------------------------------

struct AnalyzeResult {
    BooleanFunction f;
    double p = 0.0;
    Chain chain;
    Spectrum spec{0, Bias{0.5}, {}};
    double entropy = 0.0;
    double entropy_moments = 0.0;
    bool has_entropy_moments = false;
    double min_ent = 0.0;
    std::size_t support = 0;
    InfluenceVector inf;
    double theorem_slack = 0.0;
    double conjecture_slack = 0.0;
};

AnalyzeResult analyze_one(const BooleanFunction& f, const Bias& bias,
                          const std::vector<int>& chain_order) {
    AnalyzeResult r;
    r.f = f;
    r.p = bias.p;
    r.chain = chain_order.empty() ? identity_chain(f.n) : make_chain(chain_order, f.n);
    r.spec = forward_transform(f, bias);
    r.entropy = spectral_entropy(r.spec);
    if (f.n <= 12) {
        r.entropy_moments = entropy_via_moments(f, bias, r.chain);
        r.has_entropy_moments = true;
    }
    r.min_ent = min_entropy(r.spec);
    r.support = support_size(r.spec);
    r.inf = influences(f, bias);
    const double ssq = r.inf.sum_squares();
    r.theorem_slack = r.entropy - bias.q * (1.0 - bias.q) * ssq;
    r.conjecture_slack = r.entropy - binary_entropy(bias.q) * ssq;
    return r;
}

void analyze_json_body(detail::JsonWriter& w, const AnalyzeResult& r) {
    const Bias bias{r.p};
    w.begin_object();
    w.key("params").begin_object();
    w.key("tt").value(format_truth_table(r.f));
    w.key("n").value(r.f.n);
    w.key("p").value(r.p);
    w.key("chain").begin_array();
    for (int c : r.chain.order) w.value(c);
    w.end_array();
    w.end_object();
    w.key("results").begin_object();
    w.key("mean").value(r.spec.coeffs[0]);
    w.key("entropy").value(r.entropy);
    if (r.has_entropy_moments) {
        w.key("entropy_via_moments").value(r.entropy_moments);
        w.key("entropy_cross_check_delta").value(r.entropy_moments - r.entropy);
    } else {
        w.key("entropy_via_moments").null_value();
        w.key("entropy_cross_check_delta").null_value();
    }
    w.key("min_entropy").value(r.min_ent);
    w.key("support_size").value(static_cast<std::uint64_t>(r.support));
    w.key("influences").begin_array();
    for (double v : r.inf.values) w.value(v);
    w.end_array();
    w.key("total_influence").value(r.inf.total());
    w.key("sum_sq_influences").value(r.inf.sum_squares());
    w.key("h_q").value(binary_entropy(bias.q));
    w.key("q_one_minus_q").value(bias.q * (1.0 - bias.q));
    w.key("theorem_slack").value(r.theorem_slack);
    w.key("conjecture_slack").value(r.conjecture_slack);
    if (r.f.n <= 16) {
        w.key("spectrum").begin_array();
        for (double c : r.spec.coeffs) w.value(c);
        w.end_array();
    } else {
        w.key("spectrum").null_value();
    }
    w.end_object();
    w.end_object();
}

void analyze_print(const AnalyzeResult& r) {
    const Bias bias{r.p};
    std::printf("function            tt=%s  n=%d  p=%.6g\n",
                format_truth_table(r.f).c_str(), r.f.n, r.p);
    std::printf("mean                %.17g\n", r.spec.coeffs[0]);
    std::printf("entropy             %.17g\n", r.entropy);
    if (r.has_entropy_moments) {
        std::printf("entropy (moments)   %.17g   delta %.3g\n", r.entropy_moments,
                    r.entropy_moments - r.entropy);
    }
    std::printf("min-entropy         %.17g\n", r.min_ent);
    std::printf("support size        %zu\n", r.support);
    std::printf("influences         ");
    for (double v : r.inf.values) std::printf(" %.17g", v);
    std::printf("\n");
    std::printf("total influence     %.17g\n", r.inf.total());
    std::printf("sum sq influences   %.17g\n", r.inf.sum_squares());
    std::printf("h(q)                %.17g\n", binary_entropy(bias.q));
    std::printf("q(1-q)              %.17g\n", bias.q * (1.0 - bias.q));
    std::printf("theorem slack       %.17g\n", r.theorem_slack);
    std::printf("conjecture slack    %.17g\n", r.conjecture_slack);
}

int cmd_analyze(const std::string& tt, const std::string& file, double p,
                const std::string& chain_text, const CommonFlags& flags) {
    std::vector<BooleanFunction> fns;
    if (!tt.empty()) {
        fns.push_back(parse_truth_table(tt));
    } else if (!file.empty()) {
        for (const std::string& line : read_truth_table_file(file)) {
            fns.push_back(parse_truth_table(line));
        }
    } else {
        throw Error("analyze needs --tt or --file");
    }
    const Bias bias{p};

    detail::JsonWriter w;
    w.begin_object();
    w.key("suite").value("analyze");
    w.key("created").value(flags.timestamp ? utc_now() : "");
    w.key("reports").begin_array();
    bool first = true;
    for (const BooleanFunction& f : fns) {
        const std::vector<int> chain_order =
            chain_text.empty() ? std::vector<int>{} : parse_chain(chain_text, f.n).order;
        const AnalyzeResult r = analyze_one(f, bias, chain_order);
        if (!first) std::printf("\n");
        first = false;
        analyze_print(r);
        analyze_json_body(w, r);
    }
    w.end_array();
    w.end_object();
    emit(flags, w.str());
    return 0;
}

// --- verify -------------------------------------------------------------------

int cmd_verify(int n, std::uint64_t random_count, bool has_random,
               const std::string& file, const std::string& p_grid_text,
               const std::string& chain_text, std::uint64_t seed, int workers,
               const CommonFlags& flags) {
    FunctionSource src = FunctionSource::exhaustive(0);
    if (!file.empty()) {
        src = FunctionSource::from_file(file);
    } else if (n > 0 && has_random) {
        src = FunctionSource::random(n, random_count, seed);
    } else if (n > 0) {
        src = FunctionSource::exhaustive(n);
    } else {
        throw Error("verify needs --n or --file");
    }

    SuiteOptions opts;
    if (!p_grid_text.empty()) opts.p_grid = parse_grid(p_grid_text);
    if (!chain_text.empty()) {
        // chain length is checked against each function when applied
        std::vector<int> order;
        std::size_t at = 0;
        while (at < chain_text.size()) {
            std::size_t next = chain_text.find(',', at);
            if (next == std::string::npos) next = chain_text.size();
            order.push_back(std::atoi(chain_text.substr(at, next - at).c_str()));
            at = next + 1;
        }
        opts.chain_order = order;
    }
    opts.seed = seed;
    opts.workers = workers;
    if (flags.timestamp) opts.created = utc_now();

    const VerificationReport report = run_suite(src, opts);
    emit(flags, to_json(report));

    std::printf("%-28s %-12s %10s %9s  %s\n", "check", "kind", "count", "failures",
                "worst slack");
    for (const CheckAggregate& c : report.checks) {
        std::printf("%-28s %-12s %10llu %9llu  %s\n", c.name.c_str(),
                    to_string(c.kind), static_cast<unsigned long long>(c.count),
                    static_cast<unsigned long long>(c.failures),
                    c.has_worst ? std::to_string(c.worst_slack).c_str() : "-");
    }
    const std::uint64_t gating = report.gating_failures();
    std::printf("functions=%llu  failures=%llu  gating=%llu  -> %s\n",
                static_cast<unsigned long long>(report.functions),
                static_cast<unsigned long long>(report.total_failures()),
                static_cast<unsigned long long>(gating),
                gating == 0 ? "PASS" : "FAIL");
    return gating == 0 ? 0 : 1;
}

// --- search / sweep -----------------------------------------------------------

void print_report_line(const SearchReport& r) {
    std::printf("p=%-8.6g  mode=%-10s  evaluated=%llu  min_ratio=%s  h(q)=%.9g  q(1-q)=%.9g\n",
                r.config.p, r.config.mode.c_str(),
                static_cast<unsigned long long>(r.stats.evaluated),
                r.leaderboard.empty()
                    ? "-"
                    : std::to_string(r.leaderboard[0].ratio).c_str(),
                r.h_q, r.q_one_minus_q);
    if (r.conjecture_violations > 0) {
        std::printf("*** CONJECTURE VIOLATION: %llu function(s) fall below h(q) "
                    "at p=%.6g -- inspect the leaderboard ***\n",
                    static_cast<unsigned long long>(r.conjecture_violations),
                    r.config.p);
    }
}

std::vector<SearchReport> run_search_grid(int n, const std::vector<double>& grid,
                                          const SweepOptions& opts) {
    std::vector<SearchReport> reports = p_sweep(n, grid, opts);
    for (const SearchReport& r : reports) print_report_line(r);
    return reports;
}

int cmd_search(int n, const std::string& p_text, const std::string& p_grid_text,
               const std::string& mode, std::uint64_t samples, std::uint64_t seed,
               std::size_t top_k, std::uint64_t budget, const std::string& start_tt,
               int workers, bool force_long, bool dedup_perm, bool timing,
               const std::string& csv_path, const CommonFlags& flags) {
    std::vector<double> grid;
    if (!p_text.empty()) {
        grid = parse_grid(p_text);
    } else if (!p_grid_text.empty()) {
        grid = parse_grid(p_grid_text);
    } else {
        throw Error("search needs --p or --p-grid");
    }
    SweepOptions opts;
    opts.mode = mode;
    opts.samples = samples;
    opts.seed = seed;
    opts.budget = budget;
    opts.start_tt = start_tt;
    opts.top_k = top_k;
    opts.workers = workers;
    opts.allow_large = force_long;
    opts.dedup_permutation = dedup_perm;

    const std::vector<SearchReport> reports = run_search_grid(n, grid, opts);
    emit(flags, to_json(reports, flags.timestamp ? utc_now() : "", timing));
    if (!csv_path.empty()) write_file(csv_path, to_csv(reports));
    return 0;
}

int cmd_sweep(int n, const std::string& p_grid_text, const std::string& mode,
              std::uint64_t samples, std::uint64_t seed, std::size_t top_k,
              std::uint64_t budget, int workers, bool force_long, bool dedup_perm,
              bool timing, const std::string& csv_path, const CommonFlags& flags) {
    const std::vector<double> grid = parse_grid(p_grid_text);
    SweepOptions opts;
    opts.mode = mode;
    opts.samples = samples;
    opts.seed = seed;
    opts.budget = budget;
    opts.top_k = top_k;
    opts.workers = workers;
    opts.allow_large = force_long;
    opts.dedup_permutation = dedup_perm;

    const std::vector<SearchReport> reports = run_search_grid(n, grid, opts);

    detail::JsonWriter w;
    w.begin_object();
    w.key("suite").value("sweep");
    w.key("created").value(flags.timestamp ? utc_now() : "");
    w.key("params").begin_object();
    w.key("n").value(n);
    w.key("p_grid").begin_array();
    for (double p : grid) w.value(p);
    w.end_array();
    w.key("mode").value(mode);
    w.key("samples").value(samples);
    w.key("seed").value(seed);
    w.end_object();
    w.key("curve").begin_array();
    for (const SearchReport& r : reports) {
        w.begin_object();
        w.key("p").value(r.config.p);
        w.key("h_q").value(r.h_q);
        w.key("q_one_minus_q").value(r.q_one_minus_q);
        if (r.leaderboard.empty()) {
            w.key("min_ratio").null_value();
            w.key("argmin_tt").value("");
        } else {
            w.key("min_ratio").value(r.leaderboard[0].ratio);
            w.key("argmin_tt").value(r.leaderboard[0].tt);
        }
        w.key("conjecture_violations").value(r.conjecture_violations);
        w.end_object();
    }
    w.end_array();
    w.key("reports").begin_array();
    for (const SearchReport& r : reports) detail::write_report_body(w, r, timing);
    w.end_array();
    w.end_object();
    emit(flags, w.str());
    if (!csv_path.empty()) write_file(csv_path, to_csv(reports));
    return 0;
}

// --- stability ----------------------------------------------------------------

int cmd_stability(const std::string& tt, double p, double eps, std::uint64_t mc,
                  std::uint64_t seed, int workers, const CommonFlags& flags) {
    const BooleanFunction f = parse_truth_table(tt);
    const Bias bias{p};
    const double spectral = noise_stability(forward_transform(f, bias), eps);
    std::printf("spectral stability  %.17g\n", spectral);
    double estimate = 0.0;
    if (mc > 0) {
        estimate = noise_stability_mc(f, bias, eps, mc, seed, workers);
        std::printf("monte carlo         %.17g   (samples=%llu seed=%llu)\n", estimate,
                    static_cast<unsigned long long>(mc),
                    static_cast<unsigned long long>(seed));
        std::printf("difference          %.17g\n", estimate - spectral);
    }

    detail::JsonWriter w;
    w.begin_object();
    w.key("suite").value("stability");
    w.key("created").value(flags.timestamp ? utc_now() : "");
    w.key("params").begin_object();
    w.key("tt").value(format_truth_table(f));
    w.key("n").value(f.n);
    w.key("p").value(p);
    w.key("eps").value(eps);
    w.key("mc_samples").value(mc);
    w.key("seed").value(seed);
    w.end_object();
    w.key("results").begin_object();
    w.key("spectral").value(spectral);
    if (mc > 0) {
        w.key("mc_estimate").value(estimate);
        w.key("difference").value(estimate - spectral);
    } else {
        w.key("mc_estimate").null_value();
        w.key("difference").null_value();
    }
    w.end_object();
    w.end_object();
    emit(flags, w.str());
    return 0;
}

// --- moments ------------------------------------------------------------------

struct TooLargeForLedger : Error {
    using Error::Error;
};

int cmd_moments(const std::string& tt, double p, double eps,
                const std::string& chain_text, bool force_long,
                const CommonFlags& flags) {
    const BooleanFunction f = parse_truth_table(tt);
    const Bias bias{p};
    if (!(eps >= 0.0 && eps < 0.5)) {
        throw EpsOutOfRange("moments needs eps in [0, 0.5), got " + std::to_string(eps));
    }
    const Chain chain =
        chain_text.empty() ? identity_chain(f.n) : parse_chain(chain_text, f.n);
    if (f.n > 6 && !force_long) {
        throw TooLargeForLedger("the proof ledger costs ~3^n; n <= 6 unless forced");
    }

    std::vector<double> ms(f.n + 1);
    for (int k = 0; k <= f.n; ++k) {
        ms[k] = moment(f, bias, chain.prefix_mask(k), eps);
    }
    std::vector<double> deltas(f.n);
    for (int k = 1; k <= f.n; ++k) deltas[k - 1] = increment(f, bias, chain, k, eps);
    double delta_sum = 0.0;
    for (double d : deltas) delta_sum += d;
    const double residual = delta_sum + ms[0] - ms[f.n];
    const ProofLedger ledger = proof_slack_report(f, bias, chain);

    std::printf("eps=%.6g  chain=", eps);
    for (std::size_t i = 0; i < chain.order.size(); ++i) {
        std::printf("%s%d", i ? "," : "", chain.order[i]);
    }
    std::printf("\n");
    for (int k = 0; k <= f.n; ++k) {
        std::printf("M_%d                %.17g\n", k, ms[k]);
    }
    for (int k = 1; k <= f.n; ++k) {
        std::printf("delta_%d            %.17g\n", k, deltas[k - 1]);
    }
    std::printf("telescope residual %.3g\n", residual);
    std::printf("%3s %4s %14s %14s %14s %14s %14s\n", "k", "coord", "entropy",
                "harmonic", "(sum E|ab|)^2", "(sum|E ab|)^2", "corr^2");
    for (std::size_t i = 0; i < ledger.steps.size(); ++i) {
        const LedgerStep& s = ledger.steps[i];
        std::printf("%3zu %4d %14.8g %14.8g %14.8g %14.8g %14.8g\n", i + 1,
                    s.coordinate, s.entropy_share, s.harmonic_mass, s.sq_mean_abs,
                    s.sq_abs_mean, s.corr_sq);
    }
    std::printf("entropy total      %.17g\nmin chain slack    %.3g\n",
                ledger.entropy_total, ledger.min_chain_slack);

    detail::JsonWriter w;
    w.begin_object();
    w.key("suite").value("moments");
    w.key("created").value(flags.timestamp ? utc_now() : "");
    w.key("params").begin_object();
    w.key("tt").value(format_truth_table(f));
    w.key("n").value(f.n);
    w.key("p").value(p);
    w.key("eps").value(eps);
    w.key("chain").begin_array();
    for (int c : chain.order) w.value(c);
    w.end_array();
    w.end_object();
    w.key("results").begin_object();
    w.key("moments").begin_array();
    for (double m : ms) w.value(m);
    w.end_array();
    w.key("increments").begin_array();
    for (double d : deltas) w.value(d);
    w.end_array();
    w.key("telescope_residual").value(residual);
    w.key("ledger").begin_array();
    for (std::size_t i = 0; i < ledger.steps.size(); ++i) {
        const LedgerStep& s = ledger.steps[i];
        w.begin_object();
        w.key("k").value(static_cast<std::uint64_t>(i + 1));
        w.key("coordinate").value(s.coordinate);
        w.key("entropy_share").value(s.entropy_share);
        w.key("harmonic_mass").value(s.harmonic_mass);
        w.key("sq_mean_abs").value(s.sq_mean_abs);
        w.key("sq_abs_mean").value(s.sq_abs_mean);
        w.key("corr_sq").value(s.corr_sq);
        w.key("cross_term_err").value(s.cross_term_err);
        w.key("min_slack").value(s.min_slack());
        w.end_object();
    }
    w.end_array();
    w.key("entropy_total").value(ledger.entropy_total);
    w.key("min_chain_slack").value(ledger.min_chain_slack);
    w.end_object();
    w.end_object();
    emit(flags, w.str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Spectral analysis of Boolean functions on the p-biased hypercube"};
    app.require_subcommand(1);

    // analyze
    auto* analyze = app.add_subcommand("analyze", "quantities of one function");
    std::string a_tt, a_file, a_chain;
    double a_p = 0.5;
    CommonFlags a_flags;
    analyze->add_option("--tt", a_tt, "truth table (0/1 string or hex)");
    analyze->add_option("--file", a_file, "file with one truth table per line");
    analyze->add_option("--p", a_p, "bias")->required();
    analyze->add_option("--chain", a_chain, "coordinate chain, e.g. 3,1,2");
    analyze->add_option("--json", a_flags.json_path, "write a JSON report here");
    analyze->add_flag("--timestamp", a_flags.timestamp, "stamp the report with UTC time");

    // verify
    auto* verify = app.add_subcommand("verify", "run the identity/inequality suite");
    int v_n = 0;
    std::uint64_t v_random = 0;
    bool v_has_random = false;
    std::string v_file, v_grid, v_chain;
    std::uint64_t v_seed = 0;
    int v_workers = env_workers();
    CommonFlags v_flags;
    verify->add_option("--n", v_n, "coordinate count (exhaustive unless --random)");
    verify->add_option("--random", v_random, "check COUNT random functions instead")
        ->each([&](const std::string&) { v_has_random = true; });
    verify->add_option("--file", v_file, "file with one truth table per line");
    verify->add_option("--p-grid", v_grid, "comma-separated biases");
    verify->add_option("--chain", v_chain, "coordinate chain");
    verify->add_option("--seed", v_seed, "root seed");
    verify->add_option("--workers", v_workers, "parallel partitions");
    verify->add_option("--json", v_flags.json_path, "write the report here");
    verify->add_flag("--timestamp", v_flags.timestamp, "stamp the report with UTC time");

    // search
    auto* search = app.add_subcommand("search", "hunt for extremal ratio functions");
    int s_n = 0;
    std::string s_p, s_grid, s_mode = "exhaustive", s_start, s_csv;
    std::uint64_t s_samples = 10000, s_seed = 0, s_budget = 1000;
    std::size_t s_top = 20;
    int s_workers = env_workers();
    bool s_force = false, s_dedup_perm = false, s_timing = false;
    CommonFlags s_flags;
    search->add_option("--n", s_n, "coordinate count")->required();
    search->add_option("--p", s_p, "bias (single value)");
    search->add_option("--p-grid", s_grid, "comma-separated biases");
    search->add_option("--mode", s_mode, "exhaustive | random | refine");
    search->add_option("--samples", s_samples, "random-mode sample count");
    search->add_option("--seed", s_seed, "root seed");
    search->add_option("--top", s_top, "leaderboard size");
    search->add_option("--budget", s_budget, "refine-mode flip budget");
    search->add_option("--start", s_start, "refine-mode start truth table");
    search->add_option("--workers", s_workers, "parallel partitions");
    search->add_flag("--force-long", s_force, "unlock exhaustive n=5");
    search->add_flag("--dedup-perm", s_dedup_perm, "also quotient by coordinate permutations");
    search->add_flag("--timing", s_timing, "include wall time in the JSON");
    search->add_option("--json", s_flags.json_path, "write the report here");
    search->add_option("--csv", s_csv, "write leaderboard rows as CSV");
    search->add_flag("--timestamp", s_flags.timestamp, "stamp the report with UTC time");

    // sweep
    auto* sweep = app.add_subcommand("sweep", "search across a bias grid");
    int w_n = 0;
    std::string w_grid, w_mode = "exhaustive", w_csv;
    std::uint64_t w_samples = 10000, w_seed = 0, w_budget = 1000;
    std::size_t w_top = 20;
    int w_workers = env_workers();
    bool w_force = false, w_dedup_perm = false, w_timing = false;
    CommonFlags w_flags;
    sweep->add_option("--n", w_n, "coordinate count")->required();
    sweep->add_option("--p-grid", w_grid, "comma-separated biases")->required();
    sweep->add_option("--mode", w_mode, "exhaustive | random | refine");
    sweep->add_option("--samples", w_samples, "random-mode sample count");
    sweep->add_option("--seed", w_seed, "root seed");
    sweep->add_option("--top", w_top, "leaderboard size");
    sweep->add_option("--budget", w_budget, "refine-mode flip budget");
    sweep->add_option("--workers", w_workers, "parallel partitions");
    sweep->add_flag("--force-long", w_force, "unlock exhaustive n=5");
    sweep->add_flag("--dedup-perm", w_dedup_perm, "also quotient by coordinate permutations");
    sweep->add_flag("--timing", w_timing, "include wall time in the JSON");
    sweep->add_option("--json", w_flags.json_path, "write the report here");
    sweep->add_option("--csv", w_csv, "write leaderboard rows as CSV");
    sweep->add_flag("--timestamp", w_flags.timestamp, "stamp the report with UTC time");

    // stability
    auto* stability = app.add_subcommand("stability", "noise stability of one function");
    std::string t_tt;
    double t_p = 0.5, t_eps = 0.0;
    std::uint64_t t_mc = 0, t_seed = 0;
    int t_workers = env_workers();
    CommonFlags t_flags;
    stability->add_option("--tt", t_tt, "truth table")->required();
    stability->add_option("--p", t_p, "bias")->required();
    stability->add_option("--eps", t_eps, "resampling rate in [0,1]")->required();
    stability->add_option("--mc", t_mc, "Monte Carlo sample count");
    stability->add_option("--seed", t_seed, "root seed");
    stability->add_option("--workers", t_workers, "Monte Carlo partitions");
    stability->add_option("--json", t_flags.json_path, "write the report here");
    stability->add_flag("--timestamp", t_flags.timestamp, "stamp the report with UTC time");

    // moments
    auto* moments = app.add_subcommand("moments", "restriction moments along a chain");
    std::string m_tt, m_chain;
    double m_p = 0.5, m_eps = 0.0;
    bool m_force = false;
    CommonFlags m_flags;
    moments->add_option("--tt", m_tt, "truth table")->required();
    moments->add_option("--p", m_p, "bias")->required();
    moments->add_option("--eps", m_eps, "moment exponent offset in [0, 0.5)")->required();
    moments->add_option("--chain", m_chain, "coordinate chain");
    moments->add_flag("--force-long", m_force, "allow the ledger beyond n=6");
    moments->add_option("--json", m_flags.json_path, "write the report here");
    moments->add_flag("--timestamp", m_flags.timestamp, "stamp the report with UTC time");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*analyze) {
            return cmd_analyze(a_tt, a_file, a_p, a_chain, a_flags);
        }
        if (*verify) {
            return cmd_verify(v_n, v_random, v_has_random, v_file, v_grid, v_chain,
                              v_seed, v_workers, v_flags);
        }
        if (*search) {
            return cmd_search(s_n, s_p, s_grid, s_mode, s_samples, s_seed, s_top,
                              s_budget, s_start, s_workers, s_force, s_dedup_perm,
                              s_timing, s_csv, s_flags);
        }
        if (*sweep) {
            return cmd_sweep(w_n, w_grid, w_mode, w_samples, w_seed, w_top, w_budget,
                             w_workers, w_force, w_dedup_perm, w_timing, w_csv,
                             w_flags);
        }
        if (*stability) {
            return cmd_stability(t_tt, t_p, t_eps, t_mc, t_seed, t_workers, t_flags);
        }
        if (*moments) {
            return cmd_moments(m_tt, m_p, m_eps, m_chain, m_force, m_flags);
        }
    } catch (const Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 0;
}
