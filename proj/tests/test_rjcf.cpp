#include <doctest.h>

#include <cmath>
#include <random>

#include "support.hpp"

using namespace pfr;

TEST_CASE("pair block anchors") {
    CHECK(testsup::diff_norm(complex_pair_block(cdouble(1, 1), 1), RealMatrix(2, 2, {1, 1, -1, 1})) ==
          0.0);
    const RealMatrix c2 = complex_pair_block(cdouble(1, 1), 2);
    const RealMatrix want(4, 4, {1, 1, 1, 0, -1, 1, 0, 1, 0, 0, 1, 1, 0, 0, -1, 1});
    CHECK(testsup::diff_norm(c2, want) == 0.0);
    CHECK(testsup::diff_norm(complex_pair_block(cdouble(3, 0), 1), RealMatrix(2, 2, {3, 0, 0, 3})) ==
          0.0);
}

TEST_CASE("pairing similarity conjugates C to the diagonal pair form") {
    {
        const ComplexMatrix lhs = pairing_similarity_inverse(1) *
                                  complexify(complex_pair_block(cdouble(1, 1), 1)) *
                                  pairing_similarity(1);
        ComplexMatrix want(2, 2);
        want(0, 0) = cdouble(1, 1);
        want(1, 1) = cdouble(1, -1);
        CHECK(max_abs_norm(lhs - want) <= 1e-15);
    }
    {
        const ComplexMatrix lhs = pairing_similarity_inverse(2) *
                                  complexify(complex_pair_block(cdouble(1, 1), 2)) *
                                  pairing_similarity(2);
        ComplexMatrix want(4, 4);
        want(0, 0) = cdouble(1, 1);
        want(1, 1) = cdouble(1, -1);
        want(2, 2) = cdouble(1, 1);
        want(3, 3) = cdouble(1, -1);
        want(0, 2) = 1.0;
        want(1, 3) = 1.0;
        CHECK(max_abs_norm(lhs - want) <= 1e-15);
    }
    {
        const ComplexMatrix lhs = pairing_similarity_inverse(1) *
                                  complexify(complex_pair_block(cdouble(3, 0), 1)) *
                                  pairing_similarity(1);
        ComplexMatrix want(2, 2);
        want(0, 0) = 3.0;
        want(1, 1) = 3.0;
        CHECK(max_abs_norm(lhs - want) <= 1e-15);
    }
    CHECK(max_abs_norm(pairing_similarity(3) * pairing_similarity_inverse(3) -
                       ComplexMatrix::identity(6)) <= 1e-15);
}

TEST_CASE("interleaving permutation splits the diagonal pair form") {
    CHECK(testsup::diff_norm(interleave_permutation(1), RealMatrix::identity(2)) == 0.0);

    const RealMatrix p2 = interleave_permutation(2);
    // Columns e1, e3, e2, e4.
    const RealMatrix want(4, 4, {1, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0, 0, 0, 0, 0, 1});
    CHECK(testsup::diff_norm(p2, want) == 0.0);

    for (int k = 1; k <= 4; ++k) {
        const RealMatrix pk = interleave_permutation(k);
        CHECK(testsup::diff_norm(transpose(pk) * pk, RealMatrix::identity(2 * k)) == 0.0);
    }

    // P_2^T D_2(1+i) P_2 = J_2(1+i) ⊕ J_2(1-i), by direct multiplication.
    const cdouble lam(1, 1);
    ComplexMatrix d2(4, 4);
    d2(0, 0) = lam;
    d2(1, 1) = std::conj(lam);
    d2(2, 2) = lam;
    d2(3, 3) = std::conj(lam);
    d2(0, 2) = 1.0;
    d2(1, 3) = 1.0;
    const ComplexMatrix p2c = complexify(p2);
    ComplexMatrix split(4, 4);
    split.place(0, 0, jordan_block(lam, 2));
    split.place(2, 2, jordan_block(std::conj(lam), 2));
    CHECK(max_abs_norm(transpose(p2c) * d2 * p2c - split) <= 1e-15);
}

TEST_CASE("structural transform identity on random eigenvalues") {
    std::mt19937_64 rng(47);
    std::uniform_real_distribution<double> re(-3.0, 3.0);
    std::uniform_real_distribution<double> im(0.1, 3.0);
    for (int k = 1; k <= 4; ++k)
        for (int rep = 0; rep < 25; ++rep) {
            const cdouble lam(re(rng), im(rng));
            const ComplexMatrix pk = complexify(interleave_permutation(k));
            const ComplexMatrix lhs = transpose(pk) * pairing_similarity_inverse(k) *
                                      complexify(complex_pair_block(lam, k)) *
                                      pairing_similarity(k) * pk;
            ComplexMatrix want(2 * k, 2 * k);
            want.place(0, 0, jordan_block(lam, k));
            want.place(k, k, jordan_block(std::conj(lam), k));
            CHECK(max_abs_norm(lhs - want) <= 1e-12);
        }
}

TEST_CASE("decomposition of a symmetric matrix") {
    const RealJordanDecomposition d = real_jordan_decompose(RealMatrix(2, 2, {2, 1, 1, 2}));
    REQUIRE(d.blocks.size() == 2);
    CHECK(d.blocks[0].kind == RealBlockSpec::Kind::real_eigen);
    CHECK(std::abs(d.blocks[0].lambda.real() - 3.0) <= 1e-9);
    CHECK(d.blocks[0].size == 1);
    CHECK(std::abs(d.blocks[1].lambda.real() - 1.0) <= 1e-9);
    CHECK(d.residual <= 1e-6 * max_abs_norm(d.a));
    CHECK_FALSE(d.derogatory());
    CHECK_FALSE(d.singular());
}

TEST_CASE("numerical decomposition of the paper matrices") {
    {
        const RealJordanDecomposition d = real_jordan_decompose(testsup::load("ex31_A.txt"));
        REQUIRE(d.blocks.size() == 2);
        CHECK(d.blocks[0].kind == RealBlockSpec::Kind::real_eigen);
        CHECK(std::abs(d.blocks[0].lambda.real() - 10.0) <= 1e-7);
        CHECK(d.blocks[1].kind == RealBlockSpec::Kind::complex_pair);
        CHECK(std::abs(d.blocks[1].lambda - cdouble(1, 1)) <= 1e-5);
        CHECK(d.blocks[1].size == 2);
        CHECK(d.residual <= 1e-6 * max_abs_norm(d.a));

        // Perron normalization: leading column positive with unit 1-norm.
        double one_norm = 0.0;
        for (std::size_t i = 0; i < 5; ++i) {
            CHECK(d.r(i, 0) > 0.0);
            one_norm += std::abs(d.r(i, 0));
        }
        CHECK(std::abs(one_norm - 1.0) <= 1e-12);
    }
    {
        const RealJordanDecomposition d = real_jordan_decompose(testsup::load("ex32_A.txt"));
        REQUIRE(d.blocks.size() == 3);
        CHECK(d.blocks[0].kind == RealBlockSpec::Kind::real_eigen);
        CHECK(std::abs(d.blocks[0].lambda.real() - 20.0) <= 1e-6);
        CHECK(d.blocks[1].kind == RealBlockSpec::Kind::complex_pair);
        CHECK(d.blocks[1].size == 2);
        CHECK(d.blocks[2].kind == RealBlockSpec::Kind::complex_pair);
        CHECK(d.blocks[2].size == 2);
        CHECK(d.derogatory());
        CHECK(d.residual <= 1e-6 * max_abs_norm(d.a));
    }
}

TEST_CASE("decomposition from the explicit factorization file") {
    const RealMatrix a = testsup::load("ex31_A.txt");
    const FactorizationFile fac = read_factorization_file(testsup::data_path("ex31_RJ.txt"));
    const RealJordanDecomposition d = decomposition_from_factorization(a, fac.r, fac.blocks);
    CHECK(d.from_factorization);
    CHECK(d.residual <= 1e-12 * std::max(1.0, max_abs_norm(a)));
    CHECK(d.summary.s == 3);
    CHECK(d.summary.r1 == 1);
    CHECK(d.summary.c == 1);
    CHECK(d.summary.t == 3);  // one real block plus a pair block counted twice

    // Wrong basis must be rejected by the residual gate.
    CHECK_THROWS_AS(decomposition_from_factorization(a, RealMatrix::identity(5), fac.blocks),
                    numerical_error);
}

TEST_CASE("factorization block order is validated") {
    std::vector<RealBlockSpec> blocks;
    blocks.push_back({RealBlockSpec::Kind::complex_pair, cdouble(1, 1), 1, -1});
    blocks.push_back({RealBlockSpec::Kind::real_eigen, cdouble(2, 0), 1, -1});
    RealMatrix a(3, 3);
    a.place(0, 0, complex_pair_block(cdouble(1, 1), 1));
    a(2, 2) = 2.0;
    CHECK_THROWS_AS(decomposition_from_factorization(a, RealMatrix::identity(3), blocks),
                    numerical_error);
}

TEST_CASE("random reconstruction property") {
    std::mt19937_64 rng(53);
    for (int rep = 0; rep < 20; ++rep) {
        const std::size_t n = 2 + rep % 5;
        const RealMatrix a = testsup::random_matrix(rng, n, -1.5, 1.5);
        try {
            const RealJordanDecomposition d = real_jordan_decompose(a);
            CHECK(d.residual <= 1e-6 * std::max(1.0, max_abs_norm(a)));
            // Block ordering: real blocks precede pair blocks.
            bool seen_pair = false;
            for (const RealBlockSpec& b : d.blocks) {
                if (b.kind == RealBlockSpec::Kind::complex_pair) seen_pair = true;
                if (b.kind == RealBlockSpec::Kind::real_eigen) CHECK_FALSE(seen_pair);
            }
        } catch (const numerical_error&) {
            // A random draw can be too close to a clustering boundary;
            // refusing with a diagnostic is acceptable behavior.
        }
    }
}

TEST_CASE("negative pairing rewrites twin blocks") {
    {
        const RealMatrix a(2, 2, {-1, 0, 0, -1});
        const RealJordanDecomposition d = real_jordan_decompose(a);
        const RealJordanDecomposition paired = negative_pairing(d, 2);
        REQUIRE(paired.blocks.size() == 1);
        CHECK(paired.blocks[0].kind == RealBlockSpec::Kind::complex_pair);
        CHECK(paired.blocks[0].lambda == cdouble(-1, 0));
        CHECK(paired.blocks[0].size == 1);
        CHECK(paired.residual <= 1e-10);
    }
    {
        const RealMatrix a(1, 1, {-1});
        const RealJordanDecomposition d = real_jordan_decompose(a);
        CHECK_THROWS_AS(negative_pairing(d, 2), numerical_error);
        // Odd p leaves everything untouched.
        const RealJordanDecomposition same = negative_pairing(d, 3);
        CHECK(same.blocks.size() == 1);
        CHECK(same.blocks[0].kind == RealBlockSpec::Kind::real_eigen);
    }
    {
        // Twin J_2(-2) blocks around a positive eigenvalue.
        std::mt19937_64 rng(59);
        std::vector<RealBlockSpec> blocks;
        blocks.push_back({RealBlockSpec::Kind::real_eigen, cdouble(5, 0), 1, -1});
        blocks.push_back({RealBlockSpec::Kind::real_eigen, cdouble(-2, 0), 2, -1});
        blocks.push_back({RealBlockSpec::Kind::real_eigen, cdouble(-2, 0), 2, -1});
        const RealMatrix r = testsup::random_basis(rng, 5, 0.2);
        const RealJordanDecomposition d = testsup::make_decomposition(r, blocks);
        const RealJordanDecomposition paired = negative_pairing(d, 2);
        REQUIRE(paired.blocks.size() == 2);
        CHECK(paired.blocks[0].kind == RealBlockSpec::Kind::real_eigen);
        CHECK(paired.blocks[1].kind == RealBlockSpec::Kind::complex_pair);
        CHECK(paired.blocks[1].lambda == cdouble(-2, 0));
        CHECK(paired.blocks[1].size == 2);
        CHECK(paired.residual <= 1e-9 * std::max(1.0, max_abs_norm(paired.a)));
    }
}
