#pragma once
// Extremal hunting for the entropy-to-squared-influence ratio
// Ent_p(f) / sum_k Inf_k^2: exhaustive at small n, uniform sampling and
// annealed local flips at larger n. Work partitions across workers into
// private reports that merge by an associative, commutative fold.
//
// Dedup quotient: always by f -> -f (the spectrum only changes sign, so
// every scored quantity is preserved); optionally by coordinate
// permutations (sound because mu_p^n is exchangeable). Never by input
// flips, which are not measure-preserving for p != 1/2.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "core.hpp"
#include "detail/json_writer.hpp"
#include "quantities.hpp"
#include "transform.hpp"

namespace bblab {

struct ExtremalRecord {
    std::string tt;
    int n = 0;
    double p = 0.0;
    double entropy = 0.0;
    double sum_sq_inf = 0.0;
    double ratio = 0.0;
    double conjecture_slack = 0.0;  // entropy - h(q) * sum_sq_inf
};

inline bool record_less(const ExtremalRecord& a, const ExtremalRecord& b) {
    if (a.ratio != b.ratio) return a.ratio < b.ratio;
    return a.tt < b.tt;
}

struct SearchStats {
    std::uint64_t evaluated = 0;
    std::uint64_t skipped_constant = 0;
    std::uint64_t dedup_saved = 0;
    double wall_ms = 0.0;  // max across merged partitions
};

struct SearchConfig {
    int n = 0;
    double p = 0.5;
    std::string mode = "exhaustive";  // exhaustive | random | refine
    std::size_t top_k = 20;
    bool dedup_negation = true;
    bool dedup_permutation = false;
    bool allow_large = false;  // unlocks exhaustive n = 5 and the big ledgers
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;
    std::uint64_t budget = 0;
    int workers = 1;

    bool compatible_with(const SearchConfig& other) const {
        return n == other.n && p == other.p && top_k == other.top_k &&
               dedup_negation == other.dedup_negation &&
               dedup_permutation == other.dedup_permutation;
    }
};

struct SearchReport {
    SearchConfig config;
    double h_q = 0.0;            // conjectured sharp constant at this bias
    double q_one_minus_q = 0.0;  // proven constant at this bias
    std::vector<ExtremalRecord> leaderboard;  // ascending (ratio, tt)
    SearchStats stats;
    std::uint64_t conjecture_violations = 0;
};

inline ExtremalRecord score_function(const BooleanFunction& f, const Bias& bias) {
    if (is_constant(f)) {
        throw ConstantStart("ratio undefined for constant functions");
    }
    const Spectrum spec = forward_transform(f, bias);
    ExtremalRecord rec;
    rec.tt = format_truth_table(f);
    rec.n = f.n;
    rec.p = bias.p;
    rec.entropy = spectral_entropy(spec);
    rec.sum_sq_inf = influences_spectral(spec).sum_squares();
    rec.ratio = rec.entropy / rec.sum_sq_inf;
    rec.conjecture_slack = rec.entropy - binary_entropy(bias.q) * rec.sum_sq_inf;
    return rec;
}

namespace detail {

inline void leaderboard_insert(std::vector<ExtremalRecord>& board, std::size_t top_k,
                               const ExtremalRecord& rec) {
    if (board.size() == top_k && !board.empty() && !record_less(rec, board.back())) {
        return;
    }
    const auto at = std::lower_bound(board.begin(), board.end(), rec, record_less);
    if (at != board.end() && at->tt == rec.tt && !record_less(rec, *at)) {
        return;  // already present
    }
    board.insert(at, rec);
    if (board.size() > top_k) board.pop_back();
}

// index remaps for all coordinate permutations of [n]
inline std::vector<std::vector<std::uint32_t>> permutation_tables(int n) {
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<std::vector<std::uint32_t>> tables;
    do {
        std::vector<std::uint32_t> map(std::size_t{1} << n);
        for (std::uint32_t x = 0; x < map.size(); ++x) {
            std::uint32_t y = 0;
            for (int i = 0; i < n; ++i) {
                if ((x >> i) & 1) y |= std::uint32_t{1} << perm[i];
            }
            map[x] = y;
        }
        tables.push_back(std::move(map));
    } while (std::next_permutation(perm.begin(), perm.end()));
    return tables;
}

inline std::uint64_t permute_code(std::uint64_t code,
                                  const std::vector<std::uint32_t>& map) {
    std::uint64_t out = 0;
    for (std::uint32_t x = 0; x < map.size(); ++x) {
        if ((code >> x) & 1) out |= std::uint64_t{1} << map[x];
    }
    return out;
}

struct ScoreFold {
    std::vector<ExtremalRecord> board;
    SearchStats stats;
    std::uint64_t violations = 0;

    void add(const ExtremalRecord& rec, std::size_t top_k) {
        ++stats.evaluated;
        if (rec.conjecture_slack < -1e-9) ++violations;
        leaderboard_insert(board, top_k, rec);
    }
};

}  // namespace detail

// Scores every non-constant truth table on n coordinates (modulo the enabled
// dedup quotients). Mandatory cap n <= 4; n = 5 only behind allow_large.
inline SearchReport exhaustive_search(int n, const Bias& bias,
                                      const SearchConfig& cfg_in = {}) {
    SearchConfig cfg = cfg_in;
    cfg.n = n;
    cfg.p = bias.p;
    cfg.mode = "exhaustive";
    if (n < 1 || n > 5 || (n == 5 && !cfg.allow_large)) {
        throw TooLarge("exhaustive search needs n <= 4 (n = 5 only when forced)");
    }
    const auto start = std::chrono::steady_clock::now();
    const std::uint64_t total = std::uint64_t{1} << (std::uint64_t{1} << n);
    const std::vector<std::vector<std::uint32_t>> perms =
        cfg.dedup_permutation ? detail::permutation_tables(n)
                              : std::vector<std::vector<std::uint32_t>>{};

    const int workers =
        std::max(1, std::min<int>(cfg.workers, static_cast<int>(std::min<std::uint64_t>(
                                      total, 64))));
    std::vector<detail::ScoreFold> local(workers);

    auto run_range = [&](int w, std::uint64_t lo, std::uint64_t hi) {
        detail::ScoreFold& fold = local[w];
        for (std::uint64_t code = lo; code < hi; ++code) {
            if (cfg.dedup_negation && (code & 1)) {
                ++fold.stats.dedup_saved;
                continue;
            }
            if (code == 0 || code == total - 1) {
                ++fold.stats.skipped_constant;
                continue;
            }
            if (cfg.dedup_permutation) {
                bool canonical = true;
                for (const auto& map : perms) {
                    if (detail::permute_code(code, map) < code) {
                        canonical = false;
                        break;
                    }
                }
                if (!canonical) {
                    ++fold.stats.dedup_saved;
                    continue;
                }
            }
            fold.add(score_function(function_from_bits(n, code), bias), cfg.top_k);
        }
    };

    if (workers == 1) {
        run_range(0, 0, total);
    } else {
        std::vector<std::thread> pool;
        const std::uint64_t per = (total + workers - 1) / workers;
        for (int w = 0; w < workers; ++w) {
            const std::uint64_t lo = std::min<std::uint64_t>(total, w * per);
            pool.emplace_back(run_range, w, lo, std::min(total, lo + per));
        }
        for (auto& t : pool) t.join();
    }

    SearchReport report;
    report.config = cfg;
    report.h_q = binary_entropy(bias.q);
    report.q_one_minus_q = bias.q * (1.0 - bias.q);
    for (const auto& fold : local) {
        for (const auto& rec : fold.board) {
            detail::leaderboard_insert(report.leaderboard, cfg.top_k, rec);
        }
        report.stats.evaluated += fold.stats.evaluated;
        report.stats.skipped_constant += fold.stats.skipped_constant;
        report.stats.dedup_saved += fold.stats.dedup_saved;
        report.conjecture_violations += fold.violations;
    }
    report.stats.wall_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                  start)
            .count();
    return report;
}

// Uniform random truth tables, scored; deterministic for fixed
// (seed, workers). Constant draws are skipped but counted.
inline SearchReport random_search(int n, const Bias& bias, std::uint64_t samples,
                                  std::uint64_t seed, const SearchConfig& cfg_in = {}) {
    SearchConfig cfg = cfg_in;
    cfg.n = n;
    cfg.p = bias.p;
    cfg.mode = "random";
    cfg.samples = samples;
    cfg.seed = seed;
    if (n < 1 || n > 20) throw TooLarge("random search needs n in [1,20]");
    if (samples < 1) throw Error("sample count must be at least 1");
    const auto start = std::chrono::steady_clock::now();

    const int workers = std::max(
        1, std::min<int>(cfg.workers, static_cast<int>(std::min<std::uint64_t>(
                             samples, 64))));
    std::vector<detail::ScoreFold> local(workers);

    auto run_share = [&](int w) {
        detail::ScoreFold& fold = local[w];
        const std::uint64_t share =
            samples / workers + (static_cast<std::uint64_t>(w) < samples % workers);
        std::mt19937_64 rng(mix_seed(seed, static_cast<std::uint64_t>(w)));
        BooleanFunction f;
        f.n = n;
        f.table.resize(std::size_t{1} << n);
        for (std::uint64_t i = 0; i < share; ++i) {
            std::uint64_t word = 0;
            for (std::uint32_t x = 0; x < f.size(); ++x) {
                if (x % 64 == 0) word = rng();
                f.table[x] = static_cast<std::int8_t>((word >> (x % 64)) & 1 ? 1 : -1);
            }
            if (is_constant(f)) {
                ++fold.stats.skipped_constant;
                continue;
            }
            fold.add(score_function(f, bias), cfg.top_k);
        }
    };

    if (workers == 1) {
        run_share(0);
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) pool.emplace_back(run_share, w);
        for (auto& t : pool) t.join();
    }

    SearchReport report;
    report.config = cfg;
    report.h_q = binary_entropy(bias.q);
    report.q_one_minus_q = bias.q * (1.0 - bias.q);
    for (const auto& fold : local) {
        for (const auto& rec : fold.board) {
            detail::leaderboard_insert(report.leaderboard, cfg.top_k, rec);
        }
        report.stats.evaluated += fold.stats.evaluated;
        report.stats.skipped_constant += fold.stats.skipped_constant;
        report.conjecture_violations += fold.violations;
    }
    report.stats.wall_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                  start)
            .count();
    return report;
}

// Annealed single-flip descent on the ratio. Accepts every decrease, accepts
// increases with probability exp(-delta/T); T starts at a tenth of the start
// ratio and decays by 0.95 on each accepted step. Returns the best record
// seen, so the result is never worse than the start and never constant.
inline ExtremalRecord local_refine(const BooleanFunction& start, const Bias& bias,
                                   std::uint64_t budget, std::uint64_t seed) {
    if (is_constant(start)) {
        throw ConstantStart("local refinement needs a non-constant start");
    }
    ExtremalRecord best = score_function(start, bias);
    BooleanFunction cur = start;
    double cur_ratio = best.ratio;
    double temperature = 0.1 * best.ratio;
    std::mt19937_64 rng(mix_seed(seed, 0x2ef1ull));

    for (std::uint64_t step = 0; step < budget; ++step) {
        const std::uint32_t at =
            static_cast<std::uint32_t>(rng() % cur.size());
        cur.table[at] = static_cast<std::int8_t>(-cur.table[at]);
        if (is_constant(cur)) {
            cur.table[at] = static_cast<std::int8_t>(-cur.table[at]);
            continue;
        }
        const ExtremalRecord cand = score_function(cur, bias);
        const double delta = cand.ratio - cur_ratio;
        bool accept = delta < 0.0;
        if (!accept && temperature > 0.0) {
            accept = to_unit_double(rng()) < std::exp(-delta / temperature);
        }
        if (accept) {
            cur_ratio = cand.ratio;
            temperature *= 0.95;
            if (record_less(cand, best)) best = cand;
        } else {
            cur.table[at] = static_cast<std::int8_t>(-cur.table[at]);  // undo
        }
    }
    return best;
}

inline SearchReport merge_reports(const SearchReport& a, const SearchReport& b) {
    if (!a.config.compatible_with(b.config)) {
        throw ConfigMismatch("reports come from different (n, p, scoring) setups");
    }
    SearchReport out = a;
    for (const auto& rec : b.leaderboard) {
        detail::leaderboard_insert(out.leaderboard, out.config.top_k, rec);
    }
    out.stats.evaluated += b.stats.evaluated;
    out.stats.skipped_constant += b.stats.skipped_constant;
    out.stats.dedup_saved += b.stats.dedup_saved;
    out.stats.wall_ms = std::max(out.stats.wall_ms, b.stats.wall_ms);
    out.conjecture_violations += b.conjecture_violations;
    return out;
}

struct SweepOptions {
    std::string mode = "exhaustive";
    std::uint64_t samples = 10000;
    std::uint64_t seed = 0;
    std::uint64_t budget = 1000;
    std::string start_tt;  // refine mode; random non-constant start if empty
    std::size_t top_k = 20;
    int workers = 1;
    bool allow_large = false;
    bool dedup_permutation = false;
};

// Runs the chosen search at every grid bias; each report carries the h(q)
// and q(1-q) reference values for that p.
inline std::vector<SearchReport> p_sweep(int n, const std::vector<double>& p_grid,
                                         const SweepOptions& opts = {}) {
    std::vector<SearchReport> out;
    out.reserve(p_grid.size());
    for (double p : p_grid) {
        const Bias bias{p};
        SearchConfig cfg;
        cfg.top_k = opts.top_k;
        cfg.workers = opts.workers;
        cfg.allow_large = opts.allow_large;
        cfg.dedup_permutation = opts.dedup_permutation;
        if (opts.mode == "exhaustive") {
            out.push_back(exhaustive_search(n, bias, cfg));
        } else if (opts.mode == "random") {
            out.push_back(random_search(n, bias, opts.samples, opts.seed, cfg));
        } else if (opts.mode == "refine") {
            BooleanFunction start;
            if (!opts.start_tt.empty()) {
                start = parse_truth_table(opts.start_tt);
            } else {
                std::mt19937_64 rng(mix_seed(opts.seed, 0x57a27ull));
                do {
                    start.n = n;
                    start.table.assign(std::size_t{1} << n, 0);
                    std::uint64_t word = 0;
                    for (std::uint32_t x = 0; x < start.size(); ++x) {
                        if (x % 64 == 0) word = rng();
                        start.table[x] =
                            static_cast<std::int8_t>((word >> (x % 64)) & 1 ? 1 : -1);
                    }
                } while (is_constant(start));
            }
            SearchReport report;
            cfg.n = n;
            cfg.p = p;
            cfg.mode = "refine";
            cfg.seed = opts.seed;
            cfg.budget = opts.budget;
            report.config = cfg;
            report.h_q = binary_entropy(bias.q);
            report.q_one_minus_q = bias.q * (1.0 - bias.q);
            report.stats.evaluated = opts.budget + 1;
            const ExtremalRecord rec = local_refine(start, bias, opts.budget, opts.seed);
            report.leaderboard.push_back(rec);
            if (rec.conjecture_slack < -1e-9) report.conjecture_violations = 1;
            out.push_back(std::move(report));
        } else {
            throw Error("unknown search mode: " + opts.mode);
        }
    }
    return out;
}

// --- serialization ----------------------------------------------------------

namespace detail {

inline void write_record(JsonWriter& w, const ExtremalRecord& rec) {
    w.begin_object();
    w.key("tt").value(rec.tt);
    w.key("n").value(rec.n);
    w.key("p").value(rec.p);
    w.key("entropy").value(rec.entropy);
    w.key("sum_sq_inf").value(rec.sum_sq_inf);
    w.key("ratio").value(rec.ratio);
    w.key("conjecture_slack").value(rec.conjecture_slack);
    w.end_object();
}

inline void write_report_body(JsonWriter& w, const SearchReport& r, bool with_timing) {
    w.begin_object();
    w.key("params").begin_object();
    w.key("n").value(r.config.n);
    w.key("p").value(r.config.p);
    w.key("mode").value(r.config.mode);
    w.key("top_k").value(static_cast<std::uint64_t>(r.config.top_k));
    w.key("samples").value(r.config.samples);
    w.key("seed").value(r.config.seed);
    w.key("budget").value(r.config.budget);
    w.key("dedup_negation").value(r.config.dedup_negation);
    w.key("dedup_permutation").value(r.config.dedup_permutation);
    w.end_object();
    w.key("reference").begin_object();
    w.key("h_q").value(r.h_q);
    w.key("q_one_minus_q").value(r.q_one_minus_q);
    w.end_object();
    w.key("stats").begin_object();
    w.key("evaluated").value(r.stats.evaluated);
    w.key("skipped_constant").value(r.stats.skipped_constant);
    w.key("dedup_saved").value(r.stats.dedup_saved);
    if (with_timing) w.key("wall_ms").value(r.stats.wall_ms);
    w.end_object();
    w.key("conjecture_violations").value(r.conjecture_violations);
    w.key("leaderboard").begin_array();
    for (const auto& rec : r.leaderboard) write_record(w, rec);
    w.end_array();
    w.end_object();
}

}  // namespace detail

// Timing is opt-in so the default report stays byte-identical across runs.
inline std::string to_json(const std::vector<SearchReport>& reports,
                           const std::string& created = "",
                           bool with_timing = false) {
    detail::JsonWriter w;
    w.begin_object();
    w.key("suite").value("search");
    w.key("created").value(created);
    w.key("reports").begin_array();
    for (const auto& r : reports) detail::write_report_body(w, r, with_timing);
    w.end_array();
    w.end_object();
    return w.str();
}

inline std::string to_csv(const std::vector<SearchReport>& reports) {
    std::string out = "tt,n,p,entropy,sum_sq_inf,ratio,conjecture_slack\n";
    char buf[160];
    for (const auto& r : reports) {
        for (const auto& rec : r.leaderboard) {
            std::snprintf(buf, sizeof(buf), "%s,%d,%.17g,%.17g,%.17g,%.17g,%.17g\n",
                          rec.tt.c_str(), rec.n, rec.p, rec.entropy, rec.sum_sq_inf,
                          rec.ratio, rec.conjecture_slack);
            out += buf;
        }
    }
    return out;
}

}  // namespace bblab
