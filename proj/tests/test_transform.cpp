#include <catch_amalgamated.hpp>

#include <random>

#include <bblab/core.hpp>
#include <bblab/transform.hpp>

using namespace bblab;

namespace {

// independent oracle: fhat(S) as the plain weighted sum over all points,
// with the character built from first principles
double coefficient_oracle(const BooleanFunction& f, const Bias& bias, SubsetMask s) {
    double acc = 0.0;
    for (PointMask x = 0; x < f.size(); ++x) {
        double chi = 1.0;
        for (int i = 0; i < f.n; ++i) {
            if (!(s >> i & 1)) continue;
            chi *= (x >> i & 1) ? std::sqrt((1 - bias.p) / bias.p)
                                : -std::sqrt(bias.p / (1 - bias.p));
        }
        acc += point_measure(x, bias, f.n) * f.table[x] * chi;
    }
    return acc;
}

double pointwise_inner(const std::vector<double>& f, const std::vector<double>& g,
                       const Bias& bias, int n) {
    double acc = 0.0;
    for (PointMask x = 0; x < (1u << n); ++x) {
        acc += point_measure(x, bias, n) * f[x] * g[x];
    }
    return acc;
}

}  // namespace

TEST_CASE("basis values") {
    const Bias b3{0.3};
    CHECK(basis_value(0, 0b1011, b3) == 1.0);
    CHECK(basis_value(0b1, 0b1, Bias{0.5}) == Catch::Approx(1.0).margin(1e-15));
    // chi at x_1 = 0, p = 0.3: -sqrt(0.3/0.7)
    CHECK(basis_value(0b1, 0b0, b3) ==
          Catch::Approx(-0.65465367070797714).margin(1e-15));
    CHECK(basis_value(0b11, 0b01, b3) ==
          Catch::Approx(b3.chi1 * b3.chi0).margin(1e-15));
}

TEST_CASE("dictator spectrum has the closed form") {
    for (double p : {0.05, 0.1, 0.3, 0.5, 0.7, 0.95}) {
        const Bias bias{p};
        const Spectrum spec = forward_transform(dictator(3, 2), bias);
        for (SubsetMask s = 0; s < spec.size(); ++s) {
            double want = 0.0;
            if (s == 0) want = 2 * p - 1;
            if (s == 0b010) want = 2 * bias.sigma;
            CHECK(std::abs(spec.coeffs[s] - want) < 1e-12);
        }
    }
}

TEST_CASE("and2 spectrum at p=0.3 matches the frozen expansion") {
    // oracle values from the 4-point expectation: fhat(0) = 2p^2 - 1,
    // fhat({i}) = 2 p sigma, fhat({1,2}) = 2 sigma^2
    const Bias bias{0.3};
    const BooleanFunction and2 = make_function(2, {-1, -1, -1, 1});
    const Spectrum spec = forward_transform(and2, bias);
    CHECK(spec.coeffs[0b00] == Catch::Approx(-0.82).margin(1e-15));
    CHECK(spec.coeffs[0b01] == Catch::Approx(0.27495454169735040).margin(1e-14));
    CHECK(spec.coeffs[0b10] == Catch::Approx(0.27495454169735040).margin(1e-14));
    CHECK(spec.coeffs[0b11] == Catch::Approx(0.42).margin(1e-14));
    for (SubsetMask s = 0; s < 4; ++s) {
        CHECK(std::abs(spec.coeffs[s] - coefficient_oracle(and2, bias, s)) < 1e-14);
    }
}

TEST_CASE("constant function concentrates at the empty set") {
    const Spectrum spec = forward_transform(constant_function(3, 1), Bias{0.42});
    CHECK(spec.coeffs[0] == Catch::Approx(1.0).margin(1e-15));
    for (SubsetMask s = 1; s < spec.size(); ++s) {
        CHECK(std::abs(spec.coeffs[s]) < 1e-15);
    }
}

TEST_CASE("round trip is exact over all functions at n=3") {
    for (double p : {0.1, 0.3, 0.5, 0.7, 0.9}) {
        const Bias bias{p};
        for (std::uint64_t code = 0; code < 256; ++code) {
            const BooleanFunction f = function_from_bits(3, code);
            const std::vector<double> back =
                inverse_transform(forward_transform(f, bias));
            for (PointMask x = 0; x < 8; ++x) {
                CHECK(std::abs(back[x] - f.table[x]) < 1e-12);
            }
        }
    }
}

TEST_CASE("inverse of a bare constant spectrum is the constant table") {
    Spectrum spec{2, Bias{0.3}, {0.25, 0.0, 0.0, 0.0}};
    for (double v : inverse_transform(spec)) {
        CHECK(v == Catch::Approx(0.25).margin(1e-15));
    }
}

TEST_CASE("majority of three round trips at p=0.5") {
    const BooleanFunction maj = make_function(3, {-1, -1, -1, 1, -1, 1, 1, 1});
    const std::vector<double> back = inverse_transform(forward_transform(maj, Bias{0.5}));
    for (PointMask x = 0; x < 8; ++x) {
        CHECK(back[x] == Catch::Approx(maj.table[x]).margin(1e-12));
    }
}

TEST_CASE("butterfly agrees with the direct expectation") {
    std::mt19937_64 rng(101);
    for (double p : {0.1, 0.3, 0.5, 0.9}) {
        const Bias bias{p};
        for (std::uint64_t code = 0; code < 256; ++code) {
            const BooleanFunction f = function_from_bits(3, code);
            const Spectrum fast = forward_transform(f, bias);
            const Spectrum slow = forward_transform_direct(f, bias);
            for (SubsetMask s = 0; s < 8; ++s) {
                CHECK(std::abs(fast.coeffs[s] - slow.coeffs[s]) < 1e-12);
            }
        }
        for (int rep = 0; rep < 10; ++rep) {
            const BooleanFunction f = function_from_bits(8, rng());
            const Spectrum fast = forward_transform(f, bias);
            const Spectrum slow = forward_transform_direct(f, bias);
            for (SubsetMask s = 0; s < 256; ++s) {
                CHECK(std::abs(fast.coeffs[s] - slow.coeffs[s]) < 1e-12);
            }
        }
    }
}

TEST_CASE("plancherel equals the pointwise inner product") {
    const Bias bias{0.5};
    const Spectrum d1 = forward_transform(dictator(2, 1), bias);
    const Spectrum d2 = forward_transform(dictator(2, 2), bias);
    CHECK(plancherel(d1, d1) == Catch::Approx(1.0).margin(1e-12));
    CHECK(plancherel(d1, d2) == Catch::Approx(0.0).margin(1e-12));

    const Spectrum neg = forward_transform(negate_function(dictator(2, 1)), bias);
    CHECK(plancherel(d1, neg) == Catch::Approx(-1.0).margin(1e-12));

    std::mt19937_64 rng(5);
    for (double p : {0.2, 0.6}) {
        const Bias b{p};
        for (int rep = 0; rep < 20; ++rep) {
            const BooleanFunction f = function_from_bits(4, rng());
            const BooleanFunction g = function_from_bits(4, rng());
            const std::vector<double> fv(f.table.begin(), f.table.end());
            const std::vector<double> gv(g.table.begin(), g.table.end());
            CHECK(plancherel(forward_transform(f, b), forward_transform(g, b)) ==
                  Catch::Approx(pointwise_inner(fv, gv, b, 4)).margin(1e-12));
        }
    }
}

TEST_CASE("plancherel rejects mismatched spectra") {
    const Spectrum a = forward_transform(dictator(2, 1), Bias{0.3});
    const Spectrum b = forward_transform(dictator(3, 1), Bias{0.3});
    const Spectrum c = forward_transform(dictator(2, 1), Bias{0.4});
    CHECK_THROWS_AS(plancherel(a, b), SizeMismatch);
    CHECK_THROWS_AS(plancherel(a, c), BiasMismatch);
}

TEST_CASE("characters are orthonormal under the biased measure") {
    for (double p : {0.2, 0.5, 0.8}) {
        const Bias bias{p};
        const int n = 4;
        for (SubsetMask s = 0; s < (1u << n); ++s) {
            std::vector<double> xs(1u << n);
            for (PointMask x = 0; x < (1u << n); ++x) xs[x] = basis_value(s, x, bias);
            for (SubsetMask t = 0; t < (1u << n); ++t) {
                std::vector<double> xt(1u << n);
                for (PointMask x = 0; x < (1u << n); ++x) {
                    xt[x] = basis_value(t, x, bias);
                }
                const double inner = pointwise_inner(xs, xt, bias, n);
                CHECK(std::abs(inner - (s == t ? 1.0 : 0.0)) < 1e-12);
            }
        }
    }
}

TEST_CASE("parseval holds for boolean spectra") {
    std::mt19937_64 rng(13);
    for (double p : {0.05, 0.3, 0.5, 0.95}) {
        const Bias bias{p};
        for (int rep = 0; rep < 50; ++rep) {
            const Spectrum spec = forward_transform(function_from_bits(6, rng()), bias);
            double mass = 0.0;
            for (double c : spec.coeffs) mass += c * c;
            CHECK(std::abs(mass - 1.0) < 1e-12);
        }
    }
}
