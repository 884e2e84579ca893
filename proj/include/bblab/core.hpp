#pragma once
// Core types for Boolean functions on the p-biased hypercube: +-1 truth
// tables indexed by point bitmasks, the bias parameter with its derived
// constants, and the product measure mu_p. Bit (k-1) of a mask carries
// coordinate k, for points and for index sets alike; every other header
// inherits this convention.

#include <bit>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace bblab {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct LengthMismatch : Error { using Error::Error; };
struct NonBooleanValue : Error { using Error::Error; };
struct CoordinateOutOfRange : Error { using Error::Error; };
struct BadBias : Error { using Error::Error; };
struct BiasMismatch : Error { using Error::Error; };
struct SizeMismatch : Error { using Error::Error; };
struct NotNormalized : Error { using Error::Error; };
struct EpsOutOfRange : Error { using Error::Error; };
struct ZeroSpectrum : Error { using Error::Error; };
struct AssignmentOverlapsAlive : Error { using Error::Error; };
struct StepOutOfRange : Error { using Error::Error; };
struct InvalidChain : Error { using Error::Error; };
struct SourceUnavailable : Error { using Error::Error; };
struct ConstantStart : Error { using Error::Error; };
struct TooLarge : Error { using Error::Error; };
struct ConfigMismatch : Error { using Error::Error; };

// Point x in {0,1}^n and index set S subset of [n], both as bitmasks.
using PointMask = std::uint32_t;
using SubsetMask = std::uint32_t;

// Dense spectra are 2^n doubles; 24 keeps that within ~128 MiB.
inline constexpr int kMaxN = 24;

inline int popcount(std::uint32_t x) { return std::popcount(x); }

// Bernoulli(p) coordinate marginal with its derived constants.
// chi1/chi0 are the two values of the biased character chi^p on a single
// coordinate: chi^p(1) = sqrt((1-p)/p), chi^p(0) = -sqrt(p/(1-p)).
struct Bias {
    double p;
    double sigma;  // sqrt(p(1-p))
    double q;      // 4p(1-p)
    double chi1;
    double chi0;

    explicit Bias(double p_) : p(p_) {
        if (!(p_ >= 1e-6 && p_ <= 1.0 - 1e-6)) {
            throw BadBias("bias p must lie in [1e-6, 1-1e-6], got " +
                          std::to_string(p_));
        }
        sigma = std::sqrt(p * (1.0 - p));
        q = 4.0 * p * (1.0 - p);
        chi1 = std::sqrt((1.0 - p) / p);
        chi0 = -std::sqrt(p / (1.0 - p));
    }

    double chi(int coordinate_bit) const { return coordinate_bit ? chi1 : chi0; }

    bool same_as(const Bias& other) const { return p == other.p; }
};

struct BooleanFunction {
    int n = 0;                       // restrictions may produce n = 0
    std::vector<std::int8_t> table;  // 2^n entries, each +1 or -1

    std::uint32_t size() const { return std::uint32_t{1} << n; }
    int operator()(PointMask x) const { return table[x]; }
};

inline BooleanFunction make_function(int n, const std::vector<int>& values) {
    if (n < 1 || n > kMaxN) {
        throw LengthMismatch("coordinate count must be in [1, " +
                             std::to_string(kMaxN) + "], got " + std::to_string(n));
    }
    const std::size_t want = std::size_t{1} << n;
    if (values.size() != want) {
        throw LengthMismatch("truth table needs " + std::to_string(want) +
                             " entries, got " + std::to_string(values.size()));
    }
    BooleanFunction f;
    f.n = n;
    f.table.resize(want);
    for (std::size_t i = 0; i < want; ++i) {
        if (values[i] != 1 && values[i] != -1) {
            throw NonBooleanValue("table entry " + std::to_string(i) +
                                  " is " + std::to_string(values[i]) +
                                  ", expected +1 or -1");
        }
        f.table[i] = static_cast<std::int8_t>(values[i]);
    }
    return f;
}

inline void check_coordinate(int k, int n) {
    if (k < 1 || k > n) {
        throw CoordinateOutOfRange("coordinate " + std::to_string(k) +
                                   " outside [1, " + std::to_string(n) + "]");
    }
}

inline PointMask flip_point(PointMask x, int k, int n) {
    check_coordinate(k, n);
    return x ^ (PointMask{1} << (k - 1));
}

// mu_p(x) = p^|x| (1-p)^(n-|x|)
inline double point_measure(PointMask x, const Bias& bias, int n) {
    const int ones = popcount(x);
    double m = 1.0;
    for (int i = 0; i < ones; ++i) m *= bias.p;
    for (int i = 0; i < n - ones; ++i) m *= 1.0 - bias.p;
    return m;
}

// Binary entropy in nats, with 0 log 0 = 0.
inline double binary_entropy(double t) {
    double e = 0.0;
    if (t > 0.0) e -= t * std::log(t);
    if (t < 1.0) e -= (1.0 - t) * std::log(1.0 - t);
    return e;
}

inline bool is_constant(const BooleanFunction& f) {
    for (std::int8_t v : f.table) {
        if (v != f.table[0]) return false;
    }
    return true;
}

inline BooleanFunction negate_function(const BooleanFunction& f) {
    BooleanFunction g = f;
    for (auto& v : g.table) v = static_cast<std::int8_t>(-v);
    return g;
}

inline BooleanFunction constant_function(int n, int value) {
    return make_function(n, std::vector<int>(std::size_t{1} << n, value));
}

// Truth table from the low 2^n bits of `code`: bit x set means f(x) = +1.
inline BooleanFunction function_from_bits(int n, std::uint64_t code) {
    BooleanFunction f;
    f.n = n;
    f.table.resize(std::size_t{1} << n);
    for (std::uint32_t x = 0; x < f.size(); ++x) {
        f.table[x] = static_cast<std::int8_t>((code >> x) & 1 ? 1 : -1);
    }
    return f;
}

// f(x) = 2 x_k - 1
inline BooleanFunction dictator(int n, int k) {
    check_coordinate(k, n);
    BooleanFunction f;
    f.n = n;
    f.table.resize(std::size_t{1} << n);
    for (std::uint32_t x = 0; x < f.size(); ++x) {
        f.table[x] = static_cast<std::int8_t>((x >> (k - 1)) & 1 ? 1 : -1);
    }
    return f;
}

// f(x) = prod_{i in T} (2 x_i - 1)
inline BooleanFunction parity_function(int n, SubsetMask t) {
    BooleanFunction f;
    f.n = n;
    f.table.resize(std::size_t{1} << n);
    for (std::uint32_t x = 0; x < f.size(); ++x) {
        f.table[x] = static_cast<std::int8_t>(popcount(x & t) & 1 ? 1 : -1);
    }
    return f;
}

// --- truth-table text format ------------------------------------------------
//
// Binary form: 2^n characters from {0,1}, position i giving the value at
// PointMask i ('1' -> +1, '0' -> -1). Hex form: 2^n/4 lowercase hex digits
// (n >= 2); digit j packs positions 4j..4j+3 with position 4j in the low bit.
// A string made only of 0/1 of power-of-two length >= 2 is read as binary.

inline std::string format_truth_table(const BooleanFunction& f) {
    std::string s(f.size(), '0');
    for (std::uint32_t x = 0; x < f.size(); ++x) {
        if (f.table[x] > 0) s[x] = '1';
    }
    return s;
}

inline std::string format_truth_table_hex(const BooleanFunction& f) {
    if (f.n < 2) throw LengthMismatch("hex form needs at least 2 coordinates");
    static const char* digits = "0123456789abcdef";
    std::string s(f.size() / 4, '0');
    for (std::uint32_t j = 0; j < f.size() / 4; ++j) {
        int nibble = 0;
        for (int b = 0; b < 4; ++b) {
            if (f.table[4 * j + b] > 0) nibble |= 1 << b;
        }
        s[j] = digits[nibble];
    }
    return s;
}

namespace detail {

inline bool is_power_of_two(std::size_t v) { return v != 0 && (v & (v - 1)) == 0; }

inline int hex_nibble(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
}

}  // namespace detail

inline BooleanFunction parse_truth_table(const std::string& text) {
    if (text.empty()) throw LengthMismatch("empty truth table string");

    bool all_binary = true;
    bool all_hex = true;
    for (char c : text) {
        if (c != '0' && c != '1') all_binary = false;
        if (detail::hex_nibble(c) < 0) all_hex = false;
    }

    if (all_binary && detail::is_power_of_two(text.size()) && text.size() >= 2) {
        int n = std::countr_zero(text.size());
        if (n > kMaxN) throw LengthMismatch("truth table larger than 2^24");
        BooleanFunction f;
        f.n = n;
        f.table.resize(text.size());
        for (std::size_t i = 0; i < text.size(); ++i) {
            f.table[i] = static_cast<std::int8_t>(text[i] == '1' ? 1 : -1);
        }
        return f;
    }

    if (!all_hex) {
        throw NonBooleanValue("truth table must be a 0/1 string or hex digits, got \"" +
                              text + "\"");
    }
    if (!detail::is_power_of_two(text.size())) {
        throw LengthMismatch("hex truth table length must be a power of two, got " +
                             std::to_string(text.size()));
    }
    const int n = std::countr_zero(text.size()) + 2;
    if (n > kMaxN) throw LengthMismatch("truth table larger than 2^24");
    BooleanFunction f;
    f.n = n;
    f.table.resize(std::size_t{1} << n);
    for (std::size_t j = 0; j < text.size(); ++j) {
        const int nibble = detail::hex_nibble(text[j]);
        for (int b = 0; b < 4; ++b) {
            f.table[4 * j + b] = static_cast<std::int8_t>((nibble >> b) & 1 ? 1 : -1);
        }
    }
    return f;
}

// --- compact index mapping for restrictions ---------------------------------

// Deposits the low popcount(mask) bits of `compact` into the set positions
// of `mask`, ascending. Inverse of compact_bits.
inline std::uint32_t scatter_bits(std::uint32_t compact, std::uint32_t mask) {
    std::uint32_t out = 0;
    while (mask != 0) {
        const std::uint32_t low = mask & (~mask + 1);
        if (compact & 1) out |= low;
        compact >>= 1;
        mask ^= low;
    }
    return out;
}

inline std::uint32_t compact_bits(std::uint32_t x, std::uint32_t mask) {
    std::uint32_t out = 0;
    int at = 0;
    while (mask != 0) {
        const std::uint32_t low = mask & (~mask + 1);
        if (x & low) out |= std::uint32_t{1} << at;
        ++at;
        mask ^= low;
    }
    return out;
}

// --- seeding ----------------------------------------------------------------

// splitmix64 finalizer; derives independent stream seeds from one root seed.
inline std::uint64_t mix_seed(std::uint64_t root, std::uint64_t stream) {
    std::uint64_t z = root + 0x9e3779b97f4a7c15ull * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

// Uniform in [0,1) from a raw 64-bit draw; fully specified, engine-portable.
inline double to_unit_double(std::uint64_t r) {
    return static_cast<double>(r >> 11) * 0x1.0p-53;
}

}  // namespace bblab
