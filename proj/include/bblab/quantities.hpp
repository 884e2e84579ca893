#pragma once
// Scalar functionals of a Boolean function under mu_p: influences by both
// routes (flip probability and spectral mass), total influence, spectral
// entropy, the discrete derivative, cross-correlation with it, noise
// stability (exact and Monte Carlo), support size and min-entropy.

#include <cstdint>
#include <random>
#include <thread>
#include <vector>

#include "core.hpp"
#include "transform.hpp"

namespace bblab {

struct InfluenceVector {
    std::vector<double> values;  // values[k-1] = Inf_k

    double total() const {
        double acc = 0.0;
        for (double v : values) acc += v;
        return acc;
    }
    double sum_squares() const {
        double acc = 0.0;
        for (double v : values) acc += v * v;
        return acc;
    }
};

// Inf_k = P_{x ~ mu_p}[f(x) != f(x xor e_k)], summed over every point with a
// disagreeing flip (both endpoints of each disagreeing edge contribute).
inline double influence(const BooleanFunction& f, const Bias& bias, int k) {
    check_coordinate(k, f.n);
    const std::uint32_t bit = std::uint32_t{1} << (k - 1);
    std::vector<double> pw1(f.n + 1), pw0(f.n + 1);
    pw1[0] = pw0[0] = 1.0;
    for (int i = 1; i <= f.n; ++i) {
        pw1[i] = pw1[i - 1] * bias.p;
        pw0[i] = pw0[i - 1] * (1.0 - bias.p);
    }
    double acc = 0.0;
    for (std::uint32_t x = 0; x < f.size(); ++x) {
        if (f.table[x] != f.table[x ^ bit]) {
            const int ones = popcount(x);
            acc += pw1[ones] * pw0[f.n - ones];
        }
    }
    return acc;
}

inline InfluenceVector influences(const BooleanFunction& f, const Bias& bias) {
    InfluenceVector out;
    out.values.resize(f.n);
    for (int k = 1; k <= f.n; ++k) out.values[k - 1] = influence(f, bias, k);
    return out;
}

// Inf_k = (sum_{S contains k} fhat(S)^2) / 4p(1-p)
inline InfluenceVector influences_spectral(const Spectrum& spec) {
    InfluenceVector out;
    out.values.assign(spec.n, 0.0);
    for (std::uint32_t s = 0; s < spec.size(); ++s) {
        const double w = spec.coeffs[s] * spec.coeffs[s];
        std::uint32_t m = s;
        while (m != 0) {
            const int i = std::countr_zero(m);
            out.values[i] += w;
            m &= m - 1;
        }
    }
    for (double& v : out.values) v /= spec.bias.q;
    return out;
}

// sum_k Inf_k = (1 / 4p(1-p)) sum_S |S| fhat(S)^2
inline double total_influence(const Spectrum& spec) {
    double acc = 0.0;
    for (std::uint32_t s = 0; s < spec.size(); ++s) {
        acc += popcount(s) * spec.coeffs[s] * spec.coeffs[s];
    }
    return acc / spec.bias.q;
}

// Shannon entropy (nats) of the distribution {fhat(S)^2}. Squared masses
// below 1e-300 count as exact zeros so IEEE underflow cannot produce NaN.
inline double spectral_entropy(const Spectrum& spec) {
    double mass = 0.0;
    for (double c : spec.coeffs) mass += c * c;
    if (std::abs(mass - 1.0) > 1e-9) {
        throw NotNormalized("squared coefficients sum to " + std::to_string(mass) +
                            ", not a probability distribution");
    }
    double ent = 0.0;
    for (double c : spec.coeffs) {
        const double w = c * c;
        if (w >= 1e-300) ent -= w * std::log(w);
    }
    return ent;
}

// Spectrum of d_k f: the coefficient at S (k not in S) is fhat(S + {k}).
inline Spectrum derivative_spectrum(const Spectrum& spec, int k) {
    check_coordinate(k, spec.n);
    const std::uint32_t bit = std::uint32_t{1} << (k - 1);
    Spectrum out{spec.n, spec.bias, std::vector<double>(spec.size(), 0.0)};
    for (std::uint32_t s = 0; s < spec.size(); ++s) {
        if (!(s & bit)) out.coeffs[s] = spec.coeffs[s | bit];
    }
    return out;
}

// sum_{S not cont. k} fhat(S) fhat(S + {k}) = <f, d_k f>; for Boolean f this
// equals 2 sigma (2p-1) Inf_k.
inline double cross_correlation(const Spectrum& spec, int k) {
    check_coordinate(k, spec.n);
    const std::uint32_t bit = std::uint32_t{1} << (k - 1);
    double acc = 0.0;
    for (std::uint32_t s = 0; s < spec.size(); ++s) {
        if (!(s & bit)) acc += spec.coeffs[s] * spec.coeffs[s | bit];
    }
    return acc;
}

// S_eps(f) = sum_S (1-eps)^|S| fhat(S)^2
inline double noise_stability(const Spectrum& spec, double eps) {
    if (!(eps >= 0.0 && eps <= 1.0)) {
        throw EpsOutOfRange("noise rate must lie in [0,1], got " + std::to_string(eps));
    }
    std::vector<double> lvl(spec.n + 1);
    lvl[0] = 1.0;
    for (int i = 1; i <= spec.n; ++i) lvl[i] = lvl[i - 1] * (1.0 - eps);
    double acc = 0.0;
    for (std::uint32_t s = 0; s < spec.size(); ++s) {
        acc += lvl[popcount(s)] * spec.coeffs[s] * spec.coeffs[s];
    }
    return acc;
}

// Monte Carlo estimate of E[f(X) f(Y)] where X ~ mu_p^n and Y resamples each
// coordinate of X independently with probability eps. The sample budget is
// split across workers, each on a seed derived from `seed`; partial sums
// merge by sample-weighted average, so the result is deterministic for a
// fixed (seed, workers) pair.
inline double noise_stability_mc(const BooleanFunction& f, const Bias& bias, double eps,
                                 std::uint64_t samples, std::uint64_t seed,
                                 int workers = 1) {
    if (!(eps >= 0.0 && eps <= 1.0)) {
        throw EpsOutOfRange("noise rate must lie in [0,1], got " + std::to_string(eps));
    }
    if (samples < 1) throw Error("sample count must be at least 1");
    if (workers < 1) workers = 1;
    if (static_cast<std::uint64_t>(workers) > samples) {
        workers = static_cast<int>(samples);
    }

    std::vector<std::int64_t> partial(workers, 0);
    auto run = [&](int w) {
        std::uint64_t share = samples / workers + (static_cast<std::uint64_t>(w) <
                                                   samples % workers);
        std::mt19937_64 rng(mix_seed(seed, static_cast<std::uint64_t>(w)));
        std::int64_t acc = 0;
        for (std::uint64_t i = 0; i < share; ++i) {
            PointMask x = 0;
            PointMask y = 0;
            for (int c = 0; c < f.n; ++c) {
                const int xbit = to_unit_double(rng()) < bias.p;
                int ybit = xbit;
                if (to_unit_double(rng()) < eps) {
                    ybit = to_unit_double(rng()) < bias.p;
                }
                x |= static_cast<PointMask>(xbit) << c;
                y |= static_cast<PointMask>(ybit) << c;
            }
            acc += f.table[x] * f.table[y];
        }
        partial[w] = acc;
    };

    if (workers == 1) {
        run(0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (int w = 0; w < workers; ++w) pool.emplace_back(run, w);
        for (auto& t : pool) t.join();
    }

    std::int64_t total = 0;
    for (std::int64_t v : partial) total += v;
    return static_cast<double>(total) / static_cast<double>(samples);
}

inline std::size_t support_size(const Spectrum& spec, double tol = 1e-10) {
    std::size_t count = 0;
    for (double c : spec.coeffs) {
        if (std::abs(c) > tol) ++count;
    }
    return count;
}

// -log(max_S fhat(S)^2), in nats.
inline double min_entropy(const Spectrum& spec) {
    double max_w = 0.0;
    for (double c : spec.coeffs) max_w = std::max(max_w, c * c);
    if (max_w == 0.0) throw ZeroSpectrum("all coefficients are zero");
    return -std::log(max_w);
}

}  // namespace bblab
