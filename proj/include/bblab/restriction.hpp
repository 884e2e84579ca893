#pragma once
// Restrictions and the moment machinery built on them: restricted spectra,
// the eps-moment M_{J,eps,p}, one-step increments along a coordinate chain,
// the two-point functional Phi and its eps-derivative at 0, entropy via the
// telescoped derivative, and the per-step proof ledger.
//
// Restricted objects live in compacted index space: a restriction keeping
// J alive yields a function/spectrum on |J| coordinates, where compact bit
// j stands for the (j+1)-th smallest member of J (scatter_bits maps back).
// All expectations over assignments are exact weighted sums, never sampled.

#include <algorithm>
#include <numeric>
#include <string>
#include <vector>

#include "core.hpp"
#include "quantities.hpp"
#include "transform.hpp"

namespace bblab {

struct Restriction {
    SubsetMask alive = 0;      // J
    PointMask assignment = 0;  // z, supported on the complement of J
};

inline Restriction make_restriction(SubsetMask alive, PointMask assignment, int n) {
    const std::uint32_t full = (std::uint32_t{1} << n) - 1;
    if ((alive | full) != full || (assignment | full) != full) {
        throw SizeMismatch("restriction masks exceed 2^n");
    }
    if ((assignment & alive) != 0) {
        throw AssignmentOverlapsAlive("assignment sets bits inside the alive set");
    }
    return Restriction{alive, assignment};
}

// f_{J^c -> z}, as a function of the |J| alive coordinates.
inline BooleanFunction restrict_function(const BooleanFunction& f, const Restriction& r) {
    const int m = popcount(r.alive);
    BooleanFunction out;
    out.n = m;
    out.table.resize(std::size_t{1} << m);
    for (std::uint32_t y = 0; y < out.size(); ++y) {
        out.table[y] = f.table[scatter_bits(y, r.alive) | r.assignment];
    }
    return out;
}

// Restricted coefficients straight from the full spectrum:
//   fhat_{J^c->z}(T) = sum_{S subset J^c} fhat(S + T) chi_S(z).
inline Spectrum restricted_spectrum(const Spectrum& spec, const Restriction& r) {
    const int m = popcount(r.alive);
    const std::uint32_t full = (std::uint32_t{1} << spec.n) - 1;
    const std::uint32_t dead = full ^ r.alive;
    Spectrum out{m, spec.bias, std::vector<double>(std::size_t{1} << m, 0.0)};
    for (std::uint32_t t = 0; t < out.size(); ++t) {
        const std::uint32_t torig = scatter_bits(t, r.alive);
        double acc = 0.0;
        std::uint32_t s = dead;
        while (true) {
            acc += spec.coeffs[torig | s] * basis_value(s, r.assignment, spec.bias);
            if (s == 0) break;
            s = (s - 1) & dead;
        }
        out.coeffs[t] = acc;
    }
    return out;
}

struct Chain {
    std::vector<int> order;  // permutation of 1..n; J_k = {order[0..k-1]}

    int n() const { return static_cast<int>(order.size()); }

    SubsetMask prefix_mask(int k) const {
        SubsetMask m = 0;
        for (int i = 0; i < k; ++i) m |= SubsetMask{1} << (order[i] - 1);
        return m;
    }
};

inline Chain make_chain(std::vector<int> order, int n) {
    if (static_cast<int>(order.size()) != n) {
        throw InvalidChain("chain lists " + std::to_string(order.size()) +
                           " coordinates, function has " + std::to_string(n));
    }
    std::vector<bool> seen(n, false);
    for (int c : order) {
        if (c < 1 || c > n || seen[c - 1]) {
            throw InvalidChain("chain is not a permutation of 1.." + std::to_string(n));
        }
        seen[c - 1] = true;
    }
    return Chain{std::move(order)};
}

inline Chain identity_chain(int n) {
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 1);
    return Chain{std::move(order)};
}

inline Chain parse_chain(const std::string& text, int n) {
    std::vector<int> order;
    std::size_t at = 0;
    while (at < text.size()) {
        std::size_t next = text.find(',', at);
        if (next == std::string::npos) next = text.size();
        try {
            order.push_back(std::stoi(text.substr(at, next - at)));
        } catch (const std::exception&) {
            throw InvalidChain("cannot parse chain entry \"" +
                               text.substr(at, next - at) + "\"");
        }
        at = next + 1;
    }
    return make_chain(std::move(order), n);
}

namespace detail {

// |x|^(2(1+eps)) as (x^2)^(1+eps), 0 at x = 0.
inline double pow_2e(double x, double eps) {
    const double t = x * x;
    if (t == 0.0) return 0.0;
    return std::pow(t, 1.0 + eps);
}

// x^2 log x^2 with the 0 log 0 = 0 convention (and underflow guard).
inline double sq_log_sq(double x) {
    const double t = x * x;
    if (t < 1e-300) return 0.0;
    return t * std::log(t);
}

}  // namespace detail

// Phi_{p,eps}(a,b) = |a|^(2(1+eps)) + |b|^(2(1+eps))
//                  - p |a + alpha b|^(2(1+eps)) - (1-p) |a - beta b|^(2(1+eps))
// with alpha = sqrt((1-p)/p), beta = sqrt(p/(1-p)). Identically 0 at b = 0,
// and 0 for every (a,b) at eps = 0 since p u + (1-p) v = a^2 + b^2.
// Accepts eps in (-1/2, 1/2) so central differences at 0 stay in range.
inline double phi(double a, double b, const Bias& bias, double eps) {
    if (!(eps > -0.5 && eps < 0.5)) {
        throw EpsOutOfRange("phi needs eps in (-0.5, 0.5), got " + std::to_string(eps));
    }
    if (b == 0.0) return 0.0;
    const double alpha = bias.chi1;
    const double beta = -bias.chi0;
    return detail::pow_2e(a, eps) + detail::pow_2e(b, eps) -
           bias.p * detail::pow_2e(a + alpha * b, eps) -
           (1.0 - bias.p) * detail::pow_2e(a - beta * b, eps);
}

// d/deps Phi_{p,eps}(a,b) at eps = 0:
//   a^2 log a^2 + b^2 log b^2 - p u log u - (1-p) v log v,
// u = (a + alpha b)^2, v = (a - beta b)^2.
inline double phi_derivative0(double a, double b, const Bias& bias) {
    if (b == 0.0) return 0.0;
    const double alpha = bias.chi1;
    const double beta = -bias.chi0;
    return detail::sq_log_sq(a) + detail::sq_log_sq(b) -
           bias.p * detail::sq_log_sq(a + alpha * b) -
           (1.0 - bias.p) * detail::sq_log_sq(a - beta * b);
}

// M_{J,eps,p}(f) = sum_{S subset J} E_{z ~ mu_p^{J^c}} |fhat_{J^c->z}(S)|^(2(1+eps)),
// the expectation taken exactly over all 2^|J^c| assignments.
inline double moment(const BooleanFunction& f, const Bias& bias, SubsetMask alive,
                     double eps) {
    if (!(eps >= 0.0 && eps < 0.5)) {
        throw EpsOutOfRange("moment needs eps in [0, 0.5), got " + std::to_string(eps));
    }
    const std::uint32_t full = (std::uint32_t{1} << f.n) - 1;
    if ((alive | full) != full) throw SizeMismatch("alive set exceeds 2^n");
    const std::uint32_t dead = full ^ alive;
    const int dead_count = popcount(dead);

    double acc = 0.0;
    std::uint32_t z = dead;
    while (true) {
        double weight = 1.0;
        {
            const int ones = popcount(z);
            for (int i = 0; i < ones; ++i) weight *= bias.p;
            for (int i = 0; i < dead_count - ones; ++i) weight *= 1.0 - bias.p;
        }
        const Spectrum rs =
            forward_transform(restrict_function(f, Restriction{alive, z}), bias);
        double inner = 0.0;
        for (double c : rs.coeffs) inner += detail::pow_2e(c, eps);
        acc += weight * inner;
        if (z == 0) break;
        z = (z - 1) & dead;
    }
    return acc;
}

namespace detail {

// Visits every (assignment z' over the complement of J_k, S subset J_{k-1})
// pair for chain step k, handing the callback the assignment weight, the
// restricted coefficients a = fhat_{J_k^c->z'}(S) and b at S + {c_k}, and
// S in both compact-in-J_k and original index space.
template <class Fn>
void for_each_restricted_pair(const BooleanFunction& f, const Bias& bias,
                              const Chain& chain, int k, Fn&& fn) {
    const SubsetMask jk = chain.prefix_mask(k);
    const int ck = chain.order[k - 1];
    const int pos = popcount(jk & ((SubsetMask{1} << (ck - 1)) - 1));
    const std::uint32_t pos_bit = std::uint32_t{1} << pos;
    const std::uint32_t full = (std::uint32_t{1} << f.n) - 1;
    const std::uint32_t dead = full ^ jk;
    const int dead_count = popcount(dead);

    std::uint32_t z = dead;
    while (true) {
        double weight = 1.0;
        {
            const int ones = popcount(z);
            for (int i = 0; i < ones; ++i) weight *= bias.p;
            for (int i = 0; i < dead_count - ones; ++i) weight *= 1.0 - bias.p;
        }
        const Spectrum rs =
            forward_transform(restrict_function(f, Restriction{jk, z}), bias);
        for (std::uint32_t s = 0; s < rs.size(); ++s) {
            if (s & pos_bit) continue;
            fn(weight, rs.coeffs[s], rs.coeffs[s | pos_bit], s, scatter_bits(s, jk));
        }
        if (z == 0) break;
        z = (z - 1) & dead;
    }
}

}  // namespace detail

struct IncrementValue {
    double direct;      // M_{J_k} - M_{J_{k-1}}
    double difference;  // sum_S E_{z'}[Phi(a, b)]
};

inline IncrementValue increment_routes(const BooleanFunction& f, const Bias& bias,
                                       const Chain& chain, int k, double eps) {
    if (chain.n() != f.n) throw InvalidChain("chain length does not match function");
    if (k < 1 || k > f.n) {
        throw StepOutOfRange("chain step " + std::to_string(k) + " outside [1, " +
                             std::to_string(f.n) + "]");
    }
    if (!(eps >= 0.0 && eps < 0.5)) {
        throw EpsOutOfRange("increment needs eps in [0, 0.5), got " +
                            std::to_string(eps));
    }
    IncrementValue out{};
    out.direct = moment(f, bias, chain.prefix_mask(k), eps) -
                 moment(f, bias, chain.prefix_mask(k - 1), eps);
    double acc = 0.0;
    detail::for_each_restricted_pair(
        f, bias, chain, k,
        [&](double w, double a, double b, std::uint32_t, std::uint32_t) {
            acc += w * phi(a, b, bias, eps);
        });
    out.difference = acc;
    return out;
}

// Delta_{k,eps,p}(f); computes both routes and insists they agree.
inline double increment(const BooleanFunction& f, const Bias& bias, const Chain& chain,
                        int k, double eps) {
    const IncrementValue v = increment_routes(f, bias, chain, k, eps);
    if (std::abs(v.direct - v.difference) > 1e-9) {
        throw Error("increment routes disagree by " +
                    std::to_string(std::abs(v.direct - v.difference)));
    }
    return v.direct;
}

// Ent_p(f) = -sum_k d/deps Delta_k at eps = 0, each step's derivative taken
// analytically through Phi. Chain-order invariant.
inline double entropy_via_moments(const BooleanFunction& f, const Bias& bias,
                                  const Chain& chain) {
    if (chain.n() != f.n) throw InvalidChain("chain length does not match function");
    double acc = 0.0;
    for (int k = 1; k <= f.n; ++k) {
        detail::for_each_restricted_pair(
            f, bias, chain, k,
            [&](double w, double a, double b, std::uint32_t, std::uint32_t) {
                acc += w * phi_derivative0(a, b, bias);
            });
    }
    return -acc;
}

// One chain step of the entropy lower-bound argument. The five quantities
// decrease in order, ending at the squared correlation with d_k f:
//   entropy_share >= harmonic_mass >= sq_mean_abs >= sq_abs_mean >= corr_sq.
struct LedgerStep {
    int coordinate = 0;          // c_k, the coordinate this step adds
    double entropy_share = 0.0;  // -d/deps Delta_k at 0
    double harmonic_mass = 0.0;  // sum_S E[a^2 b^2 / (a^2 + b^2)]
    double sq_mean_abs = 0.0;    // (sum_S E|ab|)^2
    double sq_abs_mean = 0.0;    // (sum_S |E[ab]|)^2
    double corr_sq = 0.0;        // <f, d_k f>^2
    double cross_term_err = 0.0; // max_S |E[ab] - sum_T fhat(S+T) fhat(S+T+{c_k})|

    double min_slack() const {
        return std::min(std::min(entropy_share - harmonic_mass,
                                 harmonic_mass - sq_mean_abs),
                        std::min(sq_mean_abs - sq_abs_mean, sq_abs_mean - corr_sq));
    }
};

struct ProofLedger {
    std::vector<LedgerStep> steps;
    double entropy_total = 0.0;   // sum of entropy_share over steps
    double min_chain_slack = 0.0; // worst pairwise slack across all steps
};

inline ProofLedger proof_slack_report(const BooleanFunction& f, const Bias& bias,
                                      const Chain& chain) {
    if (chain.n() != f.n) throw InvalidChain("chain length does not match function");
    const Spectrum spec = forward_transform(f, bias);
    ProofLedger ledger;
    ledger.steps.reserve(f.n);

    for (int k = 1; k <= f.n; ++k) {
        const int ck = chain.order[k - 1];
        const std::uint32_t ck_bit = std::uint32_t{1} << (ck - 1);
        const std::uint32_t half = std::uint32_t{1} << (k - 1);

        // per-S accumulators, indexed by S compacted into J_{k-1}
        std::vector<double> mean_ab(half, 0.0);
        std::vector<double> mean_abs_ab(half, 0.0);
        std::vector<std::uint32_t> s_orig(half, 0);
        double deriv = 0.0;
        double harmonic = 0.0;

        const SubsetMask jk = chain.prefix_mask(k);
        const int pos = popcount(jk & (ck_bit - 1));
        detail::for_each_restricted_pair(
            f, bias, chain, k,
            [&](double w, double a, double b, std::uint32_t s_compact,
                std::uint32_t s_full) {
                // drop the (clear) bit at pos to index subsets of J_{k-1}
                const std::uint32_t low = s_compact & ((std::uint32_t{1} << pos) - 1);
                const std::uint32_t idx = low | ((s_compact >> (pos + 1)) << pos);
                deriv += w * phi_derivative0(a, b, bias);
                const double ab = a * b;
                const double denom = a * a + b * b;
                if (denom > 0.0) harmonic += w * (ab * ab) / denom;
                mean_ab[idx] += w * ab;
                mean_abs_ab[idx] += w * std::abs(ab);
                s_orig[idx] = s_full;
            });

        LedgerStep step;
        step.coordinate = ck;
        step.entropy_share = -deriv;
        step.harmonic_mass = harmonic;

        double sum_abs = 0.0, sum_abs_mean = 0.0;
        for (std::uint32_t i = 0; i < half; ++i) {
            sum_abs += mean_abs_ab[i];
            sum_abs_mean += std::abs(mean_ab[i]);
        }
        step.sq_mean_abs = sum_abs * sum_abs;
        step.sq_abs_mean = sum_abs_mean * sum_abs_mean;

        const double corr = cross_correlation(spec, ck);
        step.corr_sq = corr * corr;

        // E_{z'}[a b] must match the paired coefficient sum over the dead set
        const std::uint32_t full = (std::uint32_t{1} << f.n) - 1;
        const std::uint32_t dead = full ^ jk;
        for (std::uint32_t i = 0; i < half; ++i) {
            double rhs = 0.0;
            std::uint32_t t = dead;
            while (true) {
                rhs += spec.coeffs[s_orig[i] | t] * spec.coeffs[s_orig[i] | t | ck_bit];
                if (t == 0) break;
                t = (t - 1) & dead;
            }
            step.cross_term_err =
                std::max(step.cross_term_err, std::abs(mean_ab[i] - rhs));
        }

        ledger.entropy_total += step.entropy_share;
        ledger.steps.push_back(step);
    }

    ledger.min_chain_slack = ledger.steps.empty() ? 0.0 : ledger.steps[0].min_slack();
    for (const LedgerStep& s : ledger.steps) {
        ledger.min_chain_slack = std::min(ledger.min_chain_slack, s.min_slack());
    }
    return ledger;
}

}  // namespace bblab
