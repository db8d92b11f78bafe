#include <doctest.h>

#include <cstdint>
#include <random>
#include <vector>

#include "qseries/series.hpp"

using namespace qseries;

namespace {

series<exact_ring> from_ints(std::vector<std::int64_t> v) {
    exact_ring zz;
    std::vector<mpz_class> c;
    for (auto x : v) c.push_back(zz.from_int(x));
    return series<exact_ring>(zz, std::move(c));
}

series<mod_ring> from_ints_mod(std::uint64_t m, std::vector<std::int64_t> v) {
    mod_ring ring(m);
    std::vector<std::uint64_t> c;
    for (auto x : v) c.push_back(ring.from_int(x));
    return series<mod_ring>(ring, std::move(c));
}

// independent convolution oracle on plain integers
std::vector<std::int64_t> convolve(const std::vector<std::int64_t>& a,
                                   const std::vector<std::int64_t>& b,
                                   std::size_t n) {
    std::vector<std::int64_t> out(n, 0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; i + j < n; ++j)
            out[i + j] += (i < a.size() ? a[i] : 0) * (j < b.size() ? b[j] : 0);
    return out;
}

// pentagonal-number coefficients of f_1 by brute force
std::vector<std::int64_t> pentagonal_coeffs(std::size_t n) {
    std::vector<std::int64_t> c(n, 0);
    for (std::int64_t k = -300; k <= 300; ++k) {
        std::int64_t e = k * (3 * k + 1) / 2;
        if (e >= 0 && e < static_cast<std::int64_t>(n))
            c[e] += (k % 2 == 0) ? 1 : -1;
    }
    return c;
}

template <coefficient_ring R>
void check_coeffs(const series<R>& s, const std::vector<std::int64_t>& expected) {
    REQUIRE(s.order() >= static_cast<std::int64_t>(expected.size()));
    for (std::size_t i = 0; i < expected.size(); ++i) {
        INFO("coefficient ", i);
        CHECK(s.ring().equal(s[static_cast<std::int64_t>(i)],
                             s.ring().from_int(expected[i])));
    }
}

std::mt19937_64 rng(20240817);

series<exact_ring> random_series(std::int64_t order) {
    std::uniform_int_distribution<std::int64_t> coeff(-9, 9);
    std::vector<std::int64_t> v;
    for (std::int64_t i = 0; i < order; ++i) v.push_back(coeff(rng));
    return from_ints(std::move(v));
}

series<mod_ring> random_series_mod(std::uint64_t m, std::int64_t order) {
    std::uniform_int_distribution<std::int64_t> coeff(0, 200);
    std::vector<std::int64_t> v;
    for (std::int64_t i = 0; i < order; ++i) v.push_back(coeff(rng));
    return from_ints_mod(m, std::move(v));
}

} // namespace

TEST_CASE("add: cancellation, identity, modular reduction") {
    auto s1 = from_ints({1, 1});
    auto s2 = from_ints({1, -1});
    check_coeffs(add(s1, s2), {2, 0});

    auto zero = series<exact_ring>(exact_ring{}, 2);
    CHECK(eq_up_to(add(s1, zero), s1, 2).equal);

    check_coeffs(add(from_ints_mod(3, {2, 1}), from_ints_mod(3, {2, 2})), {1, 0});

    CHECK_THROWS_AS(add(from_ints_mod(3, {1}), from_ints_mod(5, {1})),
                    ring_mismatch_error);
}

TEST_CASE("mul: difference of squares, identity, square of geometric series") {
    check_coeffs(mul(from_ints({1, -1, 0}), from_ints({1, 1, 0})), {1, 0, -1});

    auto s = from_ints({3, 1, 4, 1, 5});
    CHECK(eq_up_to(mul(s, one_series(exact_ring{}, 5)), s, 5).equal);

    // (sum q^n)^2 = sum (n+1) q^n, expected values from the plain-integer
    // convolution oracle
    std::vector<std::int64_t> ones(6, 1);
    auto expected = convolve(ones, ones, 6);
    for (std::size_t n = 0; n < 6; ++n)
        CHECK(expected[n] == static_cast<std::int64_t>(n) + 1);
    check_coeffs(mul(from_ints({1, 1, 1, 1, 1, 1}), from_ints({1, 1, 1, 1, 1, 1})),
                 expected);
}

TEST_CASE("invert: geometric series, one, partition numbers") {
    check_coeffs(invert(from_ints({1, -1, 0, 0})), {1, 1, 1, 1});
    check_coeffs(invert(one_series(exact_ring{}, 4)), {1, 0, 0, 0});

    // 1/f_1 counts partitions; oracle is the classic unbounded-knapsack DP
    std::vector<std::int64_t> p(8, 0);
    p[0] = 1;
    for (std::int64_t part = 1; part < 8; ++part)
        for (std::int64_t n = part; n < 8; ++n) p[n] += p[n - part];
    CHECK(p == std::vector<std::int64_t>{1, 1, 2, 3, 5, 7, 11, 15});

    auto f1 = from_ints(pentagonal_coeffs(8));
    check_coeffs(invert(f1), p);

    CHECK_THROWS_AS(invert(from_ints({2, 1})), not_invertible_error);
    CHECK_THROWS_AS(invert(from_ints_mod(6, {3, 1})), not_invertible_error);
    // 5 is a unit mod 6
    CHECK(eq_up_to(mul(invert(from_ints_mod(6, {5, 2, 3})),
                       from_ints_mod(6, {5, 2, 3})),
                   one_series(mod_ring(6), 3), 3)
              .equal);
}

TEST_CASE("pow: binomial square, zero exponent, negative exponent") {
    check_coeffs(pow(from_ints({1, 1, 0}), 2), {1, 2, 1});
    check_coeffs(pow(from_ints({7, 3, 1}), 0), {1, 0, 0});
    check_coeffs(pow(from_ints({1, -1, 0, 0}), -1), {1, 1, 1, 1});
    CHECK_THROWS_AS(pow(from_ints({0, 1}), -2), not_invertible_error);
}

TEST_CASE("substitute_power: q^2, identity, f_1 -> f_3 against the product oracle") {
    check_coeffs(substitute_power(from_ints({1, 1}), 2), {1, 0});

    auto s = from_ints({4, 2, 7});
    CHECK(eq_up_to(substitute_power(s, 1), s, 3).equal);

    // naive truncated product of (1 - q^{3n})
    const std::size_t N = 60;
    std::vector<std::int64_t> prod(N, 0);
    prod[0] = 1;
    for (std::size_t k = 3; k < N; k += 3) {
        std::vector<std::int64_t> factor(N, 0);
        factor[0] = 1;
        factor[k] = -1;
        prod = convolve(prod, factor, N);
    }
    auto f1 = from_ints(pentagonal_coeffs(N));
    check_coeffs(substitute_power(f1, 3), prod);
}

TEST_CASE("extract_progression: odd part, identity, empty pentagonal class") {
    // s = sum n q^n
    auto s = from_ints({0, 1, 2, 3, 4, 5, 6, 7});
    check_coeffs(extract_progression(s, 2, 1), {1, 3, 5, 7});
    CHECK(eq_up_to(extract_progression(s, 1, 0), s, 8).equal);

    // no pentagonal exponent n(3n+1)/2 is 3 mod 5: brute force first,
    // then the extraction must be identically zero
    for (std::int64_t n = -200; n <= 200; ++n)
        CHECK(((n * (3 * n + 1) / 2) % 5 + 5) % 5 != 3);
    auto f1 = from_ints(pentagonal_coeffs(500));
    CHECK(extract_progression(f1, 5, 3).is_zero());

    CHECK_THROWS_AS(extract_progression(s, 2, 2), bad_residue_error);
    CHECK_THROWS_AS(extract_progression(from_ints({1}), 5, 3),
                    insufficient_precision_error);
}

TEST_CASE("reduce_mod: small cases and f_1^2 mod 4") {
    check_coeffs(reduce_mod(from_ints({2, -3}), 3), {2, 0});
    CHECK(reduce_mod(series<exact_ring>(exact_ring{}, 5), 7).is_zero());

    // f_1^2 mod 4 from an independent convolution of pentagonal coefficients
    auto pent = pentagonal_coeffs(16);
    auto sq = convolve(pent, pent, 16);
    std::vector<std::int64_t> expected;
    for (auto v : sq) expected.push_back(((v % 4) + 4) % 4);
    CHECK(std::vector<std::int64_t>(expected.begin(), expected.begin() + 6) ==
          std::vector<std::int64_t>{1, 2, 3, 2, 1, 2});
    auto f1 = from_ints(pentagonal_coeffs(16));
    check_coeffs(reduce_mod(mul(f1, f1), 4), expected);
}

TEST_CASE("eq_up_to: reflexivity, first mismatch, reciprocal contract") {
    auto s = from_ints({1, 2, 3});
    CHECK(eq_up_to(s, s, 3).equal);

    auto lhs = from_ints({1, 0, 0, 0, 0, 0});
    auto rhs = from_ints({1, 0, 0, 0, 0, 1});
    CHECK(eq_up_to(lhs, rhs, 5).equal);
    auto r = eq_up_to(lhs, rhs, 6);
    CHECK_FALSE(r.equal);
    CHECK(r.mismatch_index == 5);
    CHECK(r.lhs_value == "0");
    CHECK(r.rhs_value == "1");

    auto f1 = from_ints(pentagonal_coeffs(100));
    CHECK(eq_up_to(mul(f1, invert(f1)), one_series(exact_ring{}, 100), 100).equal);

    CHECK_THROWS_AS(eq_up_to(s, s, 4), insufficient_precision_error);
    CHECK_THROWS_AS(eq_up_to(from_ints_mod(3, {1}), from_ints_mod(5, {1}), 1),
                    ring_mismatch_error);
}

TEST_CASE("ring axioms hold for random series") {
    for (int trial = 0; trial < 100; ++trial) {
        std::int64_t n = 1 + static_cast<std::int64_t>(rng() % 64);
        auto a = random_series(n), b = random_series(n), c = random_series(n);
        CHECK(eq_up_to(add(a, b), add(b, a), n).equal);
        CHECK(eq_up_to(mul(a, b), mul(b, a), n).equal);
        CHECK(eq_up_to(add(add(a, b), c), add(a, add(b, c)), n).equal);
        CHECK(eq_up_to(mul(mul(a, b), c), mul(a, mul(b, c)), n).equal);
        CHECK(eq_up_to(mul(a, add(b, c)), add(mul(a, b), mul(a, c)), n).equal);

        std::uint64_t m = 2 + rng() % 96;
        auto am = random_series_mod(m, n), bm = random_series_mod(m, n),
             cm = random_series_mod(m, n);
        CHECK(eq_up_to(add(am, bm), add(bm, am), n).equal);
        CHECK(eq_up_to(mul(mul(am, bm), cm), mul(am, mul(bm, cm)), n).equal);
        CHECK(eq_up_to(mul(am, add(bm, cm)), add(mul(am, bm), mul(am, cm)), n).equal);
    }
}

TEST_CASE("invert is a two-sided reciprocal for unit constants") {
    for (int trial = 0; trial < 100; ++trial) {
        std::int64_t n = 2 + static_cast<std::int64_t>(rng() % 63);
        auto s = random_series(n);
        auto coeffs = s.coeffs();
        coeffs[0] = (rng() % 2) ? 1 : -1;
        series<exact_ring> unit(exact_ring{}, std::move(coeffs));
        CHECK(eq_up_to(mul(unit, invert(unit)), one_series(exact_ring{}, n), n).equal);
    }
}

TEST_CASE("extract_progression is linear") {
    for (int trial = 0; trial < 100; ++trial) {
        std::int64_t n = 8 + static_cast<std::int64_t>(rng() % 57);
        std::int64_t m = 2 + static_cast<std::int64_t>(rng() % 6);
        std::int64_t r = static_cast<std::int64_t>(rng() % m);
        auto a = random_series(n), b = random_series(n);
        auto lhs = extract_progression(add(a, b), m, r);
        auto rhs = add(extract_progression(a, m, r), extract_progression(b, m, r));
        CHECK(eq_up_to(lhs, rhs, lhs.order()).equal);
    }
}

TEST_CASE("dissection completeness reassembles the series") {
    for (int trial = 0; trial < 100; ++trial) {
        std::int64_t n = 16 + static_cast<std::int64_t>(rng() % 49);
        std::int64_t m = 2 + static_cast<std::int64_t>(rng() % 6);
        auto s = random_series(n);
        std::int64_t valid = n;
        std::optional<series<exact_ring>> sum;
        for (std::int64_t r = 0; r < m; ++r) {
            auto part = substitute_power(extract_progression(s, m, r), m);
            auto term = mul(monomial(exact_ring{}, 1, r, part.order() + r), part);
            valid = std::min(valid, term.order());
            sum = sum ? add(*sum, term) : term;
        }
        CHECK(eq_up_to(sum->truncated(valid), s.truncated(valid), valid).equal);
    }
}

TEST_CASE("reduce_mod commutes with add and mul") {
    for (int trial = 0; trial < 100; ++trial) {
        std::int64_t n = 1 + static_cast<std::int64_t>(rng() % 40);
        std::uint64_t m = 2 + rng() % 30;
        auto a = random_series(n), b = random_series(n);
        CHECK(eq_up_to(reduce_mod(add(a, b), m), add(reduce_mod(a, m), reduce_mod(b, m)), n).equal);
        CHECK(eq_up_to(reduce_mod(mul(a, b), m), mul(reduce_mod(a, m), reduce_mod(b, m)), n).equal);
    }
}
