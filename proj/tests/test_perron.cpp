#include <doctest.h>

#include <cmath>
#include <random>

#include "support.hpp"

using namespace pfr;

TEST_CASE("spectral radius data on sign-mixed, identity, and paper input") {
    {
        const PerronReport rep = spectral_radius_data(RealMatrix(2, 2, {2, 1, 2, -1}));
        CHECK(std::abs(rep.rho - 0.5 * (1.0 + std::sqrt(17.0))) <= 1e-9);
        CHECK(rep.rho_is_eigenvalue);
        CHECK(rep.rho_simple);
        CHECK(rep.rho_dominant);
        CHECK(rep.right_positive);
    }
    {
        const PerronReport rep = spectral_radius_data(RealMatrix::identity(2));
        CHECK(rep.rho == doctest::Approx(1.0));
        CHECK_FALSE(rep.rho_simple);
    }
    {
        const PerronReport rep = spectral_radius_data(testsup::load("ex31_A.txt"));
        CHECK(std::abs(rep.rho - 10.0) <= 1e-8);
        CHECK(rep.rho_simple);
        CHECK(rep.rho_dominant);
        CHECK(rep.right_positive);
        CHECK(rep.left_positive);
        double sum = 0.0;
        for (double v : rep.right_vector) {
            CHECK(v > 0.0);
            sum += std::abs(v);
        }
        CHECK(sum == doctest::Approx(1.0));
    }
    CHECK_THROWS_AS(spectral_radius_data(RealMatrix(2, 2)), numerical_error);
}

TEST_CASE("strong Perron-Frobenius property") {
    CHECK(has_strong_pf_property(RealMatrix(2, 2, {2, 1, 2, -1})));
    CHECK_FALSE(has_strong_pf_property(RealMatrix(2, 2, {0, 1, 1, 0})));  // -1 ties modulus
    std::mt19937_64 rng(73);
    for (int rep = 0; rep < 10; ++rep) {
        const std::size_t n = 2 + rep % 4;
        CHECK(has_strong_pf_property(testsup::random_matrix(rng, n, 0.05, 1.0)));
    }
}

TEST_CASE("eventual positivity via the transpose characterization") {
    CHECK(is_eventually_positive(RealMatrix(2, 2, {2, 1, 2, -1})));
    CHECK_FALSE(is_eventually_positive(RealMatrix(2, 2, {0, 1, 1, 0})));
    // Eventually positive but not nonnegative: confirmed by direct powers.
    const RealMatrix a(2, 2, {2, 1, 2, -1});
    const PowerIndexResult idx = power_index(a, 100);
    REQUIRE(idx.verdict == PowerIndexResult::Verdict::found);
    RealMatrix p = matrix_power(a, static_cast<unsigned long long>(idx.witness_exponent));
    for (int extra = 0; extra <= 2; ++extra) {
        CHECK(is_entrywise_positive(p));
        p = p * a;
    }
}

TEST_CASE("power index anchors") {
    CHECK(power_index(RealMatrix(2, 2, {1, 2, 3, 4}), 10).witness_exponent == 1);
    CHECK(power_index(testsup::load("fib.txt"), 10).witness_exponent == 2);
    CHECK(power_index(testsup::load("wielandt.txt"), 10).witness_exponent == 5);
    const PowerIndexResult swap = power_index(RealMatrix(2, 2, {0, 1, 1, 0}), 100);
    CHECK(swap.verdict == PowerIndexResult::Verdict::exceeded_cap);
    CHECK(swap.cap_used == 100);
    CHECK_THROWS_AS(power_index(RealMatrix::identity(2), 0), error);
}

TEST_CASE("power index of a 1x1 matrix counts from zero") {
    CHECK(power_index(RealMatrix(1, 1, {2.0}), 4).witness_exponent == 0);
    CHECK(power_index(RealMatrix(1, 1, {0.0}), 4).verdict ==
          PowerIndexResult::Verdict::exceeded_cap);
}

TEST_CASE("primitivity decided by the sharp power cap") {
    CHECK_FALSE(is_primitive(RealMatrix(2, 2, {0, 1, 1, 0})));
    CHECK(is_primitive(testsup::load("fib.txt")));
    CHECK(is_primitive(testsup::load("ex32_A.txt")));
    CHECK(is_primitive(testsup::load("wielandt.txt")));
    CHECK_THROWS_AS(is_primitive(RealMatrix(2, 2, {2, 1, 2, -1})), numerical_error);
}

TEST_CASE("primitivity index never exceeds the sharp bound on random primitives") {
    std::mt19937_64 rng(79);
    for (int rep = 0; rep < 15; ++rep) {
        const std::size_t n = 2 + rep % 4;
        // Random zero pattern kept primitive by a positive power check.
        RealMatrix a = testsup::random_matrix(rng, n, 0.0, 1.0);
        std::uniform_int_distribution<int> coin(0, 3);
        for (std::size_t i = 0; i < a.size(); ++i)
            if (coin(rng) == 0) a.data()[i] = 0.0;
        const long long nn = static_cast<long long>(n);
        const int cap = static_cast<int>(nn * nn - 2 * nn + 2);
        const PowerIndexResult res = power_index(a, cap + 4 * static_cast<int>(n * n));
        if (res.verdict == PowerIndexResult::Verdict::found) {
            CHECK(res.witness_exponent <= cap);
            // Positivity is monotone past the index.
            RealMatrix p = matrix_power(a, static_cast<unsigned long long>(res.witness_exponent));
            const double scale = max_abs_norm(p);
            for (std::size_t m = 0; m <= n; ++m) {
                CHECK(min_entry(p) > 1e-9 * max_abs_norm(p));
                p = p * a;
            }
            (void)scale;
        }
    }
}

TEST_CASE("spectral radius is transpose invariant") {
    std::mt19937_64 rng(83);
    for (int rep = 0; rep < 10; ++rep) {
        const RealMatrix a = testsup::random_matrix(rng, 5, -1.0, 1.0);
        double r1 = 0.0, r2 = 0.0;
        try {
            r1 = spectral_radius_data(a).rho;
            r2 = spectral_radius_data(transpose(a)).rho;
        } catch (const numerical_error&) {
            continue;
        }
        CHECK(std::abs(r1 - r2) <= 1e-10 * std::max(1.0, r1));
    }
}

TEST_CASE("strong PF verdict is invariant under positive diagonal scaling") {
    std::mt19937_64 rng(89);
    std::uniform_real_distribution<double> dpos(0.2, 5.0);
    for (int rep = 0; rep < 8; ++rep) {
        const std::size_t n = 3;
        const RealMatrix a = (rep % 2 == 0) ? testsup::random_matrix(rng, n, 0.05, 1.0)
                                            : testsup::random_matrix(rng, n, -1.0, 1.0);
        RealMatrix d(n, n), dinv(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            const double v = dpos(rng);
            d(i, i) = v;
            dinv(i, i) = 1.0 / v;
        }
        const RealMatrix scaled = dinv * a * d;
        CHECK(has_strong_pf_property(a) == has_strong_pf_property(scaled));
    }
}

TEST_CASE("stochasticity predicates") {
    CHECK(is_stochastic(RealMatrix::identity(3)));
    CHECK(is_stochastic(RealMatrix(2, 2, {0.5, 0.5, 0.25, 0.75})));
    CHECK_FALSE(is_stochastic(RealMatrix(2, 2, {0.5, 0.6, 0.2, 0.8})));
    CHECK_FALSE(is_stochastic(RealMatrix(2, 2, {1.5, -0.5, 0.25, 0.75})));
}

TEST_CASE("eventual stochasticity") {
    CHECK(is_eventually_stochastic(RealMatrix(2, 2, {0.5, 0.5, 0.25, 0.75})));
    CHECK_FALSE(is_eventually_stochastic(RealMatrix(2, 2, {2, 1, 2, -1})));
    CHECK_FALSE(is_eventually_stochastic(RealMatrix::identity(3)));  // not eventually positive
}

TEST_CASE("eventually positive inputs terminate the power scan at desk scale") {
    // Signed but eventually positive matrices: the scan finds an index well
    // under the generous cap.
    const RealMatrix a(2, 2, {2, 1, 2, -1});
    const PowerIndexResult res = power_index(a, 10000);
    CHECK(res.verdict == PowerIndexResult::Verdict::found);
    const RealMatrix b = testsup::load("ex31_A.txt");
    CHECK(power_index(b, 10000).verdict == PowerIndexResult::Verdict::found);
}
