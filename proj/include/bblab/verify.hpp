#pragma once
// Batch checkers: every identity and inequality the library implements, run
// over a stream of functions and a grid of biases, folded into a
// machine-readable report. The function stream is partitioned across
// workers and partial reports merge by an associative, commutative fold, so
// the report is identical for any worker count.

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "core.hpp"
#include "detail/json_writer.hpp"
#include "quantities.hpp"
#include "restriction.hpp"
#include "transform.hpp"

namespace bblab {

enum class CheckKind {
    identity,    // pass iff |slack| <= tolerance; gates the suite
    inequality,  // pass iff slack >= -tolerance; gates the suite
    conjecture,  // like inequality, but failures are findings, not errors
};

inline const char* to_string(CheckKind k) {
    switch (k) {
        case CheckKind::identity: return "identity";
        case CheckKind::inequality: return "inequality";
        default: return "conjecture";
    }
}

struct CheckResult {
    std::string name;
    CheckKind kind = CheckKind::identity;
    std::string tt;  // truth table of the function checked
    double p = 0.0;
    double left = 0.0;
    double right = 0.0;
    double slack = 0.0;  // left - right, or the worst signed error for identities
    double tolerance = 0.0;
    bool pass = true;
};

namespace detail {

inline CheckResult identity_result(std::string name, const std::string& tt, double p,
                                   double worst_err, double tol) {
    CheckResult r;
    r.name = std::move(name);
    r.kind = CheckKind::identity;
    r.tt = tt;
    r.p = p;
    r.slack = worst_err;
    r.tolerance = tol;
    r.pass = std::abs(worst_err) <= tol;
    return r;
}

inline CheckResult bound_result(std::string name, CheckKind kind, const std::string& tt,
                                double p, double left, double right, double tol) {
    CheckResult r;
    r.name = std::move(name);
    r.kind = kind;
    r.tt = tt;
    r.p = p;
    r.left = left;
    r.right = right;
    r.slack = left - right;
    r.tolerance = tol;
    r.pass = r.slack >= -tol;
    return r;
}

// tracks the error with the largest magnitude, keeping its sign
inline void worse(double& worst, double err) {
    if (std::abs(err) > std::abs(worst)) worst = err;
}

}  // namespace detail

// Ent_p(f) >= q(1-q) sum_k Inf_k^2
inline CheckResult check_theorem(const BooleanFunction& f, const Bias& bias) {
    const Spectrum spec = forward_transform(f, bias);
    const double ent = spectral_entropy(spec);
    const double ssq = influences(f, bias).sum_squares();
    return detail::bound_result("entropy_lower_bound_q1q", CheckKind::inequality,
                                format_truth_table(f), bias.p, ent,
                                bias.q * (1.0 - bias.q) * ssq, 1e-9);
}

// Conjectured sharp form: Ent_p(f) >= h(q) sum_k Inf_k^2
inline CheckResult check_conjecture(const BooleanFunction& f, const Bias& bias) {
    const Spectrum spec = forward_transform(f, bias);
    const double ent = spectral_entropy(spec);
    const double ssq = influences(f, bias).sum_squares();
    return detail::bound_result("entropy_lower_bound_hq", CheckKind::conjecture,
                                format_truth_table(f), bias.p, ent,
                                binary_entropy(bias.q) * ssq, 1e-9);
}

// |supp(fhat)| >= exp(Ent_p(f))
inline CheckResult check_support_corollary(const BooleanFunction& f, const Bias& bias) {
    const Spectrum spec = forward_transform(f, bias);
    return detail::bound_result("support_exp_entropy", CheckKind::inequality,
                                format_truth_table(f), bias.p,
                                static_cast<double>(support_size(spec)),
                                std::exp(spectral_entropy(spec)), 1e-6);
}

// min-entropy never exceeds the Shannon entropy
inline CheckResult check_min_entropy(const BooleanFunction& f, const Bias& bias) {
    const Spectrum spec = forward_transform(f, bias);
    return detail::bound_result("min_entropy_le_entropy", CheckKind::inequality,
                                format_truth_table(f), bias.p, spectral_entropy(spec),
                                min_entropy(spec), 1e-9);
}

// The per-step proof chain stays monotone and its shares sum to the entropy.
inline CheckResult check_proof_chain(const BooleanFunction& f, const Bias& bias,
                                     const Chain& chain) {
    const ProofLedger ledger = proof_slack_report(f, bias, chain);
    return detail::bound_result("proof_chain_monotone", CheckKind::inequality,
                                format_truth_table(f), bias.p, ledger.min_chain_slack,
                                0.0, 1e-9);
}

// Bundled exact identities. Exhaustive over restrictions, so n <= 8.
inline std::vector<CheckResult> check_identities(const BooleanFunction& f,
                                                 const Bias& bias, const Chain& chain) {
    if (f.n > 8) throw TooLarge("identity bundle is exhaustive over restrictions; n <= 8");
    const std::string tt = format_truth_table(f);
    const std::uint32_t size = f.size();
    const std::uint32_t full = size - 1;
    std::vector<CheckResult> out;

    const Spectrum spec = forward_transform(f, bias);

    // Parseval
    {
        double mass = 0.0;
        for (double c : spec.coeffs) mass += c * c;
        out.push_back(detail::identity_result("parseval", tt, bias.p, mass - 1.0, 1e-12));
    }

    // forward then inverse reproduces the table
    {
        const std::vector<double> back = inverse_transform(spec);
        double worst = 0.0;
        for (std::uint32_t x = 0; x < size; ++x) {
            detail::worse(worst, back[x] - f.table[x]);
        }
        out.push_back(detail::identity_result("transform_round_trip", tt, bias.p, worst,
                                              1e-12));
    }

    // butterfly agrees with the direct expectation route
    {
        const Spectrum direct = forward_transform_direct(f, bias);
        double worst = 0.0;
        for (std::uint32_t s = 0; s < size; ++s) {
            detail::worse(worst, spec.coeffs[s] - direct.coeffs[s]);
        }
        out.push_back(detail::identity_result("butterfly_vs_direct", tt, bias.p, worst,
                                              1e-12));
    }

    // flip-probability influences equal the spectral ones
    const InfluenceVector inf_comb = influences(f, bias);
    {
        const InfluenceVector inf_spec = influences_spectral(spec);
        double worst = 0.0;
        for (int k = 0; k < f.n; ++k) {
            detail::worse(worst, inf_comb.values[k] - inf_spec.values[k]);
        }
        out.push_back(detail::identity_result("influence_two_routes", tt, bias.p, worst,
                                              1e-10));
    }

    // paired-coefficient sum = <f, d_k f> = 2 sigma (2p-1) Inf_k
    {
        double worst_inner = 0.0, worst_inf = 0.0;
        for (int k = 1; k <= f.n; ++k) {
            const double cc = cross_correlation(spec, k);
            detail::worse(worst_inner,
                          cc - plancherel(spec, derivative_spectrum(spec, k)));
            detail::worse(worst_inf, cc - 2.0 * bias.sigma * (2.0 * bias.p - 1.0) *
                                              inf_comb.values[k - 1]);
        }
        out.push_back(detail::identity_result("derivative_inner_product", tt, bias.p,
                                              worst_inner, 1e-10));
        out.push_back(detail::identity_result("influence_correlation", tt, bias.p,
                                              worst_inf, 1e-10));
    }

    // restricted coefficients: formula route vs transform of the restriction,
    // and their mean over assignments recovers the full coefficient
    {
        double worst_formula = 0.0, worst_mean = 0.0;
        for (std::uint32_t alive = 0; alive <= full; ++alive) {
            const std::uint32_t dead = full ^ alive;
            const std::uint32_t m = std::uint32_t{1} << popcount(alive);
            std::vector<double> mean(m, 0.0);
            std::uint32_t z = dead;
            while (true) {
                const Restriction r{alive, z};
                const Spectrum via_formula = restricted_spectrum(spec, r);
                const Spectrum via_restrict =
                    forward_transform(restrict_function(f, r), bias);
                const double w = point_measure(compact_bits(z, dead), bias,
                                               popcount(dead));
                for (std::uint32_t t = 0; t < m; ++t) {
                    detail::worse(worst_formula,
                                  via_formula.coeffs[t] - via_restrict.coeffs[t]);
                    mean[t] += w * via_formula.coeffs[t];
                }
                if (z == 0) break;
                z = (z - 1) & dead;
            }
            for (std::uint32_t t = 0; t < m; ++t) {
                detail::worse(worst_mean, mean[t] - spec.coeffs[scatter_bits(t, alive)]);
            }
        }
        out.push_back(detail::identity_result("restricted_coefficients", tt, bias.p,
                                              worst_formula, 1e-10));
        out.push_back(detail::identity_result("restriction_mean", tt, bias.p, worst_mean,
                                              1e-10));
    }

    // chain-step identities: restricted Parseval, the one-coordinate
    // coefficient recursion, and the cross-term expansion
    {
        double worst_parseval = 0.0, worst_recursion = 0.0, worst_cross = 0.0;
        for (int k = 1; k <= f.n; ++k) {
            const SubsetMask jk = chain.prefix_mask(k);
            const SubsetMask jk1 = chain.prefix_mask(k - 1);
            const int ck = chain.order[k - 1];
            const std::uint32_t ck_bit = std::uint32_t{1} << (ck - 1);
            const int pos = popcount(jk & (ck_bit - 1));
            const std::uint32_t dead = full ^ jk;
            const std::uint32_t half = std::uint32_t{1} << (k - 1);

            std::vector<double> mean_ab(half, 0.0);
            std::vector<std::uint32_t> s_orig(half, 0);

            std::uint32_t z = dead;
            while (true) {
                const Spectrum rs =
                    forward_transform(restrict_function(f, Restriction{jk, z}), bias);
                const double w =
                    point_measure(compact_bits(z, dead), bias, popcount(dead));

                double mass = 0.0;
                for (double c : rs.coeffs) mass += c * c;
                detail::worse(worst_parseval, mass - 1.0);

                // z_k joins the assignment: coefficients at level k-1 must be
                // a + chi(z_k) b for both values of z_k
                for (int zk = 0; zk <= 1; ++zk) {
                    const std::uint32_t z1 = z | (zk ? ck_bit : 0);
                    const Spectrum rs1 = forward_transform(
                        restrict_function(f, Restriction{jk1, z1}), bias);
                    for (std::uint32_t s = 0; s < rs.size(); ++s) {
                        if (s & (std::uint32_t{1} << pos)) continue;
                        const double a = rs.coeffs[s];
                        const double b = rs.coeffs[s | (std::uint32_t{1} << pos)];
                        const std::uint32_t low =
                            s & ((std::uint32_t{1} << pos) - 1);
                        const std::uint32_t idx = low | ((s >> (pos + 1)) << pos);
                        detail::worse(worst_recursion,
                                      rs1.coeffs[idx] - (a + bias.chi(zk) * b));
                        if (zk == 0) {
                            mean_ab[idx] += w * a * b;
                            s_orig[idx] = scatter_bits(s, jk);
                        }
                    }
                }
                if (z == 0) break;
                z = (z - 1) & dead;
            }

            for (std::uint32_t i = 0; i < half; ++i) {
                double rhs = 0.0;
                std::uint32_t t = dead;
                while (true) {
                    rhs += spec.coeffs[s_orig[i] | t] *
                           spec.coeffs[s_orig[i] | t | ck_bit];
                    if (t == 0) break;
                    t = (t - 1) & dead;
                }
                detail::worse(worst_cross, mean_ab[i] - rhs);
            }
        }
        out.push_back(detail::identity_result("restricted_parseval", tt, bias.p,
                                              worst_parseval, 1e-10));
        out.push_back(detail::identity_result("coefficient_recursion", tt, bias.p,
                                              worst_recursion, 1e-12));
        out.push_back(detail::identity_result("restriction_cross_term", tt, bias.p,
                                              worst_cross, 1e-10));
    }

    // telescoping of moments and the two increment routes
    {
        double worst_tel = 0.0, worst_inc = 0.0;
        for (double eps : {0.0, 0.05, 0.1, 0.2}) {
            double sum = 0.0;
            for (int k = 1; k <= f.n; ++k) {
                const IncrementValue v = increment_routes(f, bias, chain, k, eps);
                detail::worse(worst_inc, v.direct - v.difference);
                sum += v.direct;
            }
            double m_full = 0.0;
            for (double c : spec.coeffs) m_full += detail::pow_2e(c, eps);
            detail::worse(worst_tel, sum + 1.0 - m_full);
        }
        out.push_back(detail::identity_result("moment_telescoping", tt, bias.p,
                                              worst_tel, 1e-9));
        out.push_back(detail::identity_result("increment_two_routes", tt, bias.p,
                                              worst_inc, 1e-9));
    }

    // entropy as the moment derivative at 0
    out.push_back(detail::identity_result(
        "entropy_as_derivative", tt, bias.p,
        entropy_via_moments(f, bias, chain) - spectral_entropy(spec), 1e-9));

    return out;
}

// --- suite ------------------------------------------------------------------

struct CheckAggregate {
    std::string name;
    CheckKind kind = CheckKind::identity;
    double tolerance = 0.0;
    std::uint64_t count = 0;
    std::uint64_t failures = 0;
    bool has_worst = false;
    double worst_slack = 0.0;
    std::string argmin_tt;
    double argmin_p = 0.0;

    // For inequalities the witness is the smallest slack; for identities the
    // largest |error|. Ties break on (tt, p) so merges are order-free.
    bool candidate_wins(double slack, const std::string& tt, double p) const {
        if (!has_worst) return true;
        const bool ident = kind == CheckKind::identity;
        const double cur = ident ? -std::abs(worst_slack) : worst_slack;
        const double cand = ident ? -std::abs(slack) : slack;
        if (cand != cur) return cand < cur;
        if (tt != argmin_tt) return tt < argmin_tt;
        return p < argmin_p;
    }

    void fold(const CheckResult& r) {
        ++count;
        if (!r.pass) ++failures;
        if (candidate_wins(r.slack, r.tt, r.p)) {
            has_worst = true;
            worst_slack = r.slack;
            argmin_tt = r.tt;
            argmin_p = r.p;
        }
    }

    void merge(const CheckAggregate& other) {
        count += other.count;
        failures += other.failures;
        if (other.has_worst &&
            candidate_wins(other.worst_slack, other.argmin_tt, other.argmin_p)) {
            has_worst = true;
            worst_slack = other.worst_slack;
            argmin_tt = other.argmin_tt;
            argmin_p = other.argmin_p;
        }
    }
};

struct FunctionSource {
    enum class Kind { exhaustive, file, random };
    Kind kind = Kind::exhaustive;
    int n = 0;
    std::uint64_t count = 0;
    std::uint64_t seed = 0;
    std::string path;

    static FunctionSource exhaustive(int n) {
        FunctionSource s;
        s.kind = Kind::exhaustive;
        s.n = n;
        return s;
    }
    static FunctionSource from_file(std::string path) {
        FunctionSource s;
        s.kind = Kind::file;
        s.path = std::move(path);
        return s;
    }
    static FunctionSource random(int n, std::uint64_t count, std::uint64_t seed) {
        FunctionSource s;
        s.kind = Kind::random;
        s.n = n;
        s.count = count;
        s.seed = seed;
        return s;
    }

    std::string describe() const {
        switch (kind) {
            case Kind::exhaustive: return "exhaustive(" + std::to_string(n) + ")";
            case Kind::file: return "file:" + path;
            default:
                return "random(" + std::to_string(n) + "," + std::to_string(count) +
                       ")";
        }
    }
};

inline std::vector<std::string> read_truth_table_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SourceUnavailable("cannot open " + path);
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        const std::size_t a = line.find_first_not_of(" \t\r");
        if (a == std::string::npos) continue;
        const std::size_t b = line.find_last_not_of(" \t\r");
        lines.push_back(line.substr(a, b - a + 1));
    }
    return lines;
}

inline std::vector<BooleanFunction> materialize(const FunctionSource& src) {
    std::vector<BooleanFunction> fns;
    switch (src.kind) {
        case FunctionSource::Kind::exhaustive: {
            if (src.n < 1 || src.n > 4) {
                throw TooLarge("exhaustive source needs n in [1,4], got " +
                               std::to_string(src.n));
            }
            const std::uint64_t total = std::uint64_t{1} << (std::uint64_t{1} << src.n);
            fns.reserve(total);
            for (std::uint64_t code = 0; code < total; ++code) {
                fns.push_back(function_from_bits(src.n, code));
            }
            break;
        }
        case FunctionSource::Kind::file: {
            for (const std::string& tt : read_truth_table_file(src.path)) {
                fns.push_back(parse_truth_table(tt));
            }
            break;
        }
        case FunctionSource::Kind::random: {
            if (src.n < 1 || src.n > 16) {
                throw TooLarge("random source needs n in [1,16], got " +
                               std::to_string(src.n));
            }
            std::mt19937_64 rng(mix_seed(src.seed, 0x5eedull));
            fns.reserve(src.count);
            for (std::uint64_t i = 0; i < src.count; ++i) {
                BooleanFunction f;
                f.n = src.n;
                f.table.resize(std::size_t{1} << src.n);
                std::uint64_t word = 0;
                for (std::uint32_t x = 0; x < f.size(); ++x) {
                    if (x % 64 == 0) word = rng();
                    f.table[x] = static_cast<std::int8_t>((word >> (x % 64)) & 1 ? 1 : -1);
                }
                fns.push_back(std::move(f));
            }
            break;
        }
    }
    return fns;
}

inline const std::vector<double>& default_p_grid() {
    static const std::vector<double> grid = {0.05, 0.1, 0.2, 0.3, 0.4, 0.5,
                                             0.6, 0.7, 0.8, 0.9, 0.95};
    return grid;
}

struct SuiteOptions {
    std::vector<double> p_grid = default_p_grid();
    std::vector<int> chain_order;  // empty = identity order
    std::uint64_t seed = 0;
    int workers = 1;
    std::string created;  // left empty unless the caller opts into a timestamp
};

struct VerificationReport {
    std::string created;
    std::string source;
    int n = 0;  // 0 when the source mixes coordinate counts
    std::vector<double> p_grid;
    std::vector<int> chain_order;
    std::uint64_t seed = 0;
    int workers = 1;
    std::uint64_t functions = 0;
    std::vector<CheckAggregate> checks;

    std::uint64_t total_failures() const {
        std::uint64_t acc = 0;
        for (const auto& c : checks) acc += c.failures;
        return acc;
    }
    // conjecture findings do not gate the suite
    std::uint64_t gating_failures() const {
        std::uint64_t acc = 0;
        for (const auto& c : checks) {
            if (c.kind != CheckKind::conjecture) acc += c.failures;
        }
        return acc;
    }
};

namespace detail {

struct CheckSpec {
    const char* name;
    CheckKind kind;
    double tolerance;
};

inline const std::vector<CheckSpec>& check_registry() {
    static const std::vector<CheckSpec> reg = {
        {"entropy_lower_bound_q1q", CheckKind::inequality, 1e-9},
        {"entropy_lower_bound_hq", CheckKind::conjecture, 1e-9},
        {"support_exp_entropy", CheckKind::inequality, 1e-6},
        {"min_entropy_le_entropy", CheckKind::inequality, 1e-9},
        {"proof_chain_monotone", CheckKind::inequality, 1e-9},
        {"parseval", CheckKind::identity, 1e-12},
        {"transform_round_trip", CheckKind::identity, 1e-12},
        {"butterfly_vs_direct", CheckKind::identity, 1e-12},
        {"influence_two_routes", CheckKind::identity, 1e-10},
        {"derivative_inner_product", CheckKind::identity, 1e-10},
        {"influence_correlation", CheckKind::identity, 1e-10},
        {"restricted_coefficients", CheckKind::identity, 1e-10},
        {"restriction_mean", CheckKind::identity, 1e-10},
        {"restricted_parseval", CheckKind::identity, 1e-10},
        {"coefficient_recursion", CheckKind::identity, 1e-12},
        {"restriction_cross_term", CheckKind::identity, 1e-10},
        {"moment_telescoping", CheckKind::identity, 1e-9},
        {"increment_two_routes", CheckKind::identity, 1e-9},
        {"entropy_as_derivative", CheckKind::identity, 1e-9},
    };
    return reg;
}

inline std::vector<CheckAggregate> fresh_aggregates() {
    std::vector<CheckAggregate> out;
    for (const CheckSpec& spec : check_registry()) {
        CheckAggregate agg;
        agg.name = spec.name;
        agg.kind = spec.kind;
        agg.tolerance = spec.tolerance;
        out.push_back(std::move(agg));
    }
    return out;
}

inline std::size_t registry_index(const std::string& name) {
    const auto& reg = check_registry();
    for (std::size_t i = 0; i < reg.size(); ++i) {
        if (name == reg[i].name) return i;
    }
    throw Error("unregistered check name: " + name);
}

}  // namespace detail

inline VerificationReport run_suite(const FunctionSource& src,
                                    const SuiteOptions& opts = {}) {
    const std::vector<BooleanFunction> fns = materialize(src);
    for (double p : opts.p_grid) Bias{p};  // validate the grid up front

    VerificationReport report;
    report.created = opts.created;
    report.source = src.describe();
    report.p_grid = opts.p_grid;
    report.seed = opts.seed;
    report.workers = std::max(1, opts.workers);
    report.functions = fns.size();
    if (!fns.empty()) {
        report.n = fns[0].n;
        for (const auto& f : fns) {
            if (f.n != report.n) {
                report.n = 0;
                break;
            }
        }
    }
    report.chain_order = opts.chain_order;
    if (!opts.chain_order.empty() && report.n > 0) {
        make_chain(opts.chain_order, report.n);  // validate
    }

    const int workers =
        std::min<int>(report.workers, std::max<std::size_t>(fns.size(), 1));
    std::vector<std::vector<CheckAggregate>> local(workers, detail::fresh_aggregates());

    auto run_range = [&](int w, std::size_t lo, std::size_t hi) {
        auto& agg = local[w];
        auto fold = [&](const CheckResult& r) {
            agg[detail::registry_index(r.name)].fold(r);
        };
        for (std::size_t i = lo; i < hi; ++i) {
            const BooleanFunction& f = fns[i];
            const Chain chain =
                (static_cast<int>(opts.chain_order.size()) == f.n)
                    ? make_chain(opts.chain_order, f.n)
                    : identity_chain(f.n);
            for (double p : opts.p_grid) {
                const Bias bias{p};
                fold(check_theorem(f, bias));
                fold(check_conjecture(f, bias));
                fold(check_support_corollary(f, bias));
                fold(check_min_entropy(f, bias));
                if (f.n <= 6) fold(check_proof_chain(f, bias, chain));
                if (f.n <= 8) {
                    for (const CheckResult& r : check_identities(f, bias, chain)) {
                        fold(r);
                    }
                }
            }
        }
    };

    if (workers == 1) {
        run_range(0, 0, fns.size());
    } else {
        std::vector<std::thread> pool;
        const std::size_t per = (fns.size() + workers - 1) / workers;
        for (int w = 0; w < workers; ++w) {
            const std::size_t lo = std::min(fns.size(), w * per);
            const std::size_t hi = std::min(fns.size(), lo + per);
            pool.emplace_back(run_range, w, lo, hi);
        }
        for (auto& t : pool) t.join();
    }

    report.checks = std::move(local[0]);
    for (int w = 1; w < workers; ++w) {
        for (std::size_t i = 0; i < report.checks.size(); ++i) {
            report.checks[i].merge(local[w][i]);
        }
    }
    return report;
}

inline std::string to_json(const VerificationReport& report) {
    detail::JsonWriter w;
    w.begin_object();
    w.key("suite").value("verify");
    w.key("created").value(report.created);
    w.key("params").begin_object();
    w.key("n").value(report.n);
    w.key("p_grid").begin_array();
    for (double p : report.p_grid) w.value(p);
    w.end_array();
    w.key("tolerances").begin_object();
    w.key("identity").value(1e-9);
    w.key("inequality").value(1e-9);
    w.end_object();
    w.key("seed").value(report.seed);
    w.key("source").value(report.source);
    w.key("chain").begin_array();
    for (int c : report.chain_order) w.value(c);
    w.end_array();
    w.key("workers").value(report.workers);
    w.end_object();
    w.key("functions").value(report.functions);
    w.key("checks").begin_array();
    for (const CheckAggregate& c : report.checks) {
        w.begin_object();
        w.key("name").value(c.name);
        w.key("kind").value(to_string(c.kind));
        w.key("count").value(c.count);
        w.key("failures").value(c.failures);
        w.key("tolerance").value(c.tolerance);
        if (c.has_worst) {
            w.key("min_slack").value(c.worst_slack);
            w.key("argmin_tt").value(c.argmin_tt);
            w.key("argmin_p").value(c.argmin_p);
        } else {
            w.key("min_slack").null_value();
            w.key("argmin_tt").value("");
            w.key("argmin_p").null_value();
        }
        w.end_object();
    }
    w.end_array();
    w.key("failures").value(report.total_failures());
    w.key("gating_failures").value(report.gating_failures());
    w.end_object();
    return w.str();
}

}  // namespace bblab
