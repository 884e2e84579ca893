#include <catch_amalgamated.hpp>

#include <random>

#include <bblab/core.hpp>

using namespace bblab;

TEST_CASE("make_function validates shape and values") {
    const BooleanFunction dict = make_function(1, {-1, 1});
    CHECK(dict.n == 1);
    CHECK(dict(0) == -1);
    CHECK(dict(1) == 1);

    const BooleanFunction and2 = make_function(2, {-1, -1, -1, 1});
    CHECK(and2(0b11) == 1);
    CHECK(and2(0b01) == -1);

    CHECK_THROWS_AS(make_function(2, {-1, -1, -1}), LengthMismatch);
    CHECK_THROWS_AS(make_function(1, {-1, 2}), NonBooleanValue);
    CHECK_THROWS_AS(make_function(0, {}), LengthMismatch);
    CHECK_THROWS_AS(make_function(25, {1}), LengthMismatch);
}

TEST_CASE("flip_point toggles one coordinate") {
    CHECK(flip_point(0b00, 1, 2) == 0b01);
    CHECK(flip_point(0b01, 1, 2) == 0b00);
    CHECK(flip_point(0b10, 2, 2) == 0b00);
    CHECK_THROWS_AS(flip_point(0, 0, 2), CoordinateOutOfRange);
    CHECK_THROWS_AS(flip_point(0, 3, 2), CoordinateOutOfRange);

    const int n = 5;
    for (PointMask x = 0; x < (1u << n); ++x) {
        for (int k = 1; k <= n; ++k) {
            CHECK(flip_point(flip_point(x, k, n), k, n) == x);
        }
    }
}

TEST_CASE("point_measure matches the product form and sums to one") {
    const Bias half{0.5};
    CHECK(point_measure(0b11, half, 2) == Catch::Approx(0.25).margin(1e-15));
    const Bias b{0.3};
    CHECK(point_measure(0b11, b, 2) == Catch::Approx(0.09).margin(1e-15));
    CHECK(point_measure(0b0, b, 1) == Catch::Approx(0.7).margin(1e-15));

    for (double p : {0.05, 0.1, 0.3, 0.5, 0.7, 0.9, 0.95}) {
        const Bias bias{p};
        for (int n = 1; n <= 12; ++n) {
            double total = 0.0;
            for (PointMask x = 0; x < (1u << n); ++x) {
                total += point_measure(x, bias, n);
            }
            CHECK(std::abs(total - 1.0) < 1e-12);
        }
    }
}

TEST_CASE("bias guards its range and derives constants") {
    CHECK_THROWS_AS(Bias{0.0}, BadBias);
    CHECK_THROWS_AS(Bias{1.0}, BadBias);
    CHECK_THROWS_AS(Bias{-0.2}, BadBias);
    CHECK_THROWS_AS(Bias{1.5}, BadBias);
    CHECK_NOTHROW(Bias{1e-6});
    CHECK_NOTHROW(Bias{1.0 - 1e-6});

    for (double p : {1e-6, 0.05, 0.1, 0.3, 0.5, 0.7, 0.95, 1.0 - 1e-6}) {
        const Bias b{p};
        // sigma^2 = p - p^2, written in the cancellation-free product form
        const double pq = p * (1.0 - p);
        CHECK(std::abs(b.sigma * b.sigma - pq) <= 1e-15 * pq);
        CHECK(std::abs(b.q - 4.0 * b.sigma * b.sigma) <= 1e-15 * b.q);
        CHECK(b.chi1 == Catch::Approx(std::sqrt((1 - p) / p)).epsilon(1e-15));
        CHECK(b.chi0 == Catch::Approx(-std::sqrt(p / (1 - p))).epsilon(1e-15));
    }
}

TEST_CASE("truth table text round trips") {
    const BooleanFunction dict = parse_truth_table("01");
    CHECK(dict.n == 1);
    CHECK(dict(0) == -1);
    CHECK(dict(1) == 1);
    CHECK(format_truth_table(dict) == "01");

    const BooleanFunction par = parse_truth_table("0110");
    CHECK(par.n == 2);
    CHECK(par(0b00) == -1);
    CHECK(par(0b01) == 1);
    CHECK(par(0b10) == 1);
    CHECK(par(0b11) == -1);

    // hex: digit j packs positions 4j..4j+3, low bit first
    const BooleanFunction and2 = parse_truth_table("8");
    CHECK(and2.n == 2);
    CHECK(format_truth_table(and2) == "0001");
    CHECK(format_truth_table_hex(and2) == "8");

    const BooleanFunction f3 = parse_truth_table("a5");
    CHECK(f3.n == 3);
    CHECK(format_truth_table(f3) == "01011010");
    CHECK(parse_truth_table(format_truth_table_hex(f3)).table == f3.table);

    CHECK_THROWS_AS(parse_truth_table(""), LengthMismatch);
    CHECK_THROWS_AS(parse_truth_table("011"), LengthMismatch);    // 3 hex digits
    CHECK_THROWS_AS(parse_truth_table("xyz"), NonBooleanValue);
    CHECK_THROWS_AS(parse_truth_table("0g"), NonBooleanValue);
}

TEST_CASE("hex and binary forms agree on random tables") {
    std::mt19937_64 rng(7);
    for (int n = 2; n <= 6; ++n) {
        for (int rep = 0; rep < 20; ++rep) {
            const BooleanFunction f = function_from_bits(n, rng());
            const BooleanFunction g = parse_truth_table(format_truth_table_hex(f));
            CHECK(g.n == f.n);
            CHECK(g.table == f.table);
            CHECK(parse_truth_table(format_truth_table(f)).table == f.table);
        }
    }
}

TEST_CASE("generators produce the expected tables") {
    CHECK(format_truth_table(dictator(2, 1)) == "0101");
    CHECK(format_truth_table(dictator(2, 2)) == "0011");
    CHECK(format_truth_table(parity_function(2, 0b11)) == "0110");
    CHECK(format_truth_table(constant_function(2, 1)) == "1111");
    CHECK(is_constant(constant_function(3, -1)));
    CHECK(!is_constant(dictator(3, 2)));
    CHECK(format_truth_table(negate_function(dictator(1, 1))) == "10");
}

TEST_CASE("scatter and compact invert each other") {
    std::mt19937_64 rng(11);
    for (int rep = 0; rep < 200; ++rep) {
        const std::uint32_t mask = static_cast<std::uint32_t>(rng()) & 0x3ff;
        const int m = popcount(mask);
        const std::uint32_t compact = static_cast<std::uint32_t>(rng()) & ((1u << m) - 1);
        const std::uint32_t scattered = scatter_bits(compact, mask);
        CHECK((scattered & ~mask) == 0u);
        CHECK(compact_bits(scattered, mask) == compact);
        CHECK(popcount(scattered) == popcount(compact));
    }
    CHECK(scatter_bits(0b11, 0b1010) == 0b1010);
    CHECK(compact_bits(0b1000, 0b1010) == 0b10);
}

TEST_CASE("seed derivation separates streams") {
    CHECK(mix_seed(0, 0) != mix_seed(0, 1));
    CHECK(mix_seed(1, 0) != mix_seed(2, 0));
    CHECK(mix_seed(42, 7) == mix_seed(42, 7));
    const double u = to_unit_double(~0ull);
    CHECK(u < 1.0);
    CHECK(to_unit_double(0) == 0.0);
}
