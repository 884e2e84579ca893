#pragma once
// Forward and inverse p-biased Fourier transform. The forward butterfly
// applies the 2x2 kernel per coordinate,
//   (a0, a1) -> ((1-p) a0 + p a1, sigma (a1 - a0)),
// so entry S of the result is fhat(S) = E_{mu_p}[f chi_S] in O(n 2^n).
// A direct O(4^n) evaluation of the same expectations is kept as the
// reference route.

#include <vector>

#include "core.hpp"

namespace bblab {

struct Spectrum {
    int n = 0;
    Bias bias;
    std::vector<double> coeffs;  // entry at SubsetMask S holds fhat(S)

    std::uint32_t size() const { return std::uint32_t{1} << n; }
};

// chi_S^p(x) = prod_{i in S} chi^p(x_i)
inline double basis_value(SubsetMask s, PointMask x, const Bias& bias) {
    double prod = 1.0;
    while (s != 0) {
        const std::uint32_t low = s & (~s + 1);
        prod *= (x & low) ? bias.chi1 : bias.chi0;
        s ^= low;
    }
    return prod;
}

inline Spectrum forward_transform_table(std::vector<double> values, const Bias& bias) {
    if (!detail::is_power_of_two(values.size())) {
        throw SizeMismatch("table length must be a power of two");
    }
    const int n = std::countr_zero(values.size());
    const double p = bias.p;
    for (int j = 0; j < n; ++j) {
        const std::uint32_t bit = std::uint32_t{1} << j;
        for (std::uint32_t x = 0; x < values.size(); ++x) {
            if (x & bit) continue;
            const double a0 = values[x];
            const double a1 = values[x | bit];
            values[x] = (1.0 - p) * a0 + p * a1;
            values[x | bit] = bias.sigma * (a1 - a0);
        }
    }
    Spectrum spec{n, bias, std::move(values)};
    return spec;
}

inline Spectrum forward_transform(const BooleanFunction& f, const Bias& bias) {
    std::vector<double> values(f.table.begin(), f.table.end());
    return forward_transform_table(std::move(values), bias);
}

// Reference route: fhat(S) = sum_x mu_p(x) f(x) chi_S(x), term by term.
inline Spectrum forward_transform_direct(const BooleanFunction& f, const Bias& bias) {
    const std::uint32_t size = f.size();
    std::vector<double> weighted(size);
    for (std::uint32_t x = 0; x < size; ++x) {
        weighted[x] = point_measure(x, bias, f.n) * f.table[x];
    }
    Spectrum spec{f.n, bias, std::vector<double>(size, 0.0)};
    for (std::uint32_t s = 0; s < size; ++s) {
        double acc = 0.0;
        for (std::uint32_t x = 0; x < size; ++x) {
            acc += weighted[x] * basis_value(s, x, bias);
        }
        spec.coeffs[s] = acc;
    }
    return spec;
}

// Pointwise values sum_S fhat(S) chi_S(x); inverts the forward butterfly
// one coordinate at a time via a(x_k) = c_without + chi(x_k) c_with.
inline std::vector<double> inverse_transform(const Spectrum& spec) {
    std::vector<double> values = spec.coeffs;
    for (int j = 0; j < spec.n; ++j) {
        const std::uint32_t bit = std::uint32_t{1} << j;
        for (std::uint32_t x = 0; x < values.size(); ++x) {
            if (x & bit) continue;
            const double c0 = values[x];
            const double c1 = values[x | bit];
            values[x] = c0 + spec.bias.chi0 * c1;
            values[x | bit] = c0 + spec.bias.chi1 * c1;
        }
    }
    return values;
}

// <f,g> = sum_S fhat(S) ghat(S)  (Plancherel)
inline double plancherel(const Spectrum& a, const Spectrum& b) {
    if (a.n != b.n) {
        throw SizeMismatch("spectra have different coordinate counts");
    }
    if (!a.bias.same_as(b.bias)) {
        throw BiasMismatch("spectra were computed under different biases");
    }
    double acc = 0.0;
    for (std::uint32_t s = 0; s < a.size(); ++s) {
        acc += a.coeffs[s] * b.coeffs[s];
    }
    return acc;
}

}  // namespace bblab
