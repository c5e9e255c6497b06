#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "support.hpp"

using namespace pfr;

namespace {

bool spectra_match(std::vector<cdouble> got, std::vector<cdouble> want, double eps) {
    if (got.size() != want.size()) return false;
    for (const cdouble& w : want) {
        auto it = std::min_element(got.begin(), got.end(), [&](cdouble a, cdouble b) {
            return std::abs(a - w) < std::abs(b - w);
        });
        if (it == got.end() || std::abs(*it - w) > eps) return false;
        got.erase(it);
    }
    return true;
}

}  // namespace

TEST_CASE("schur of a diagonal matrix preserves the diagonal") {
    ComplexMatrix a(3, 3);
    a(0, 0) = cdouble(2, 0);
    a(1, 1) = cdouble(-1, 0);
    a(2, 2) = cdouble(0.5, 0);
    const SchurResult res = complex_schur(a);
    CHECK(spectra_match(res.eigenvalues(), {{2, 0}, {-1, 0}, {0.5, 0}}, 1e-12));
}

TEST_CASE("schur recovers the paper spectrum and is a unitary similarity") {
    const RealMatrix a = testsup::load("ex31_A.txt");
    const ComplexMatrix ac = complexify(a);
    const SchurResult res = complex_schur(ac);
    // The defective 1 +- i pair splits by ~sqrt(eps * scale); the simple
    // eigenvalue is fully accurate.
    CHECK(spectra_match(res.eigenvalues(), {{10, 0}, {1, 1}, {1, 1}, {1, -1}, {1, -1}}, 5e-7));
    bool found_ten = false;
    for (const cdouble& z : res.eigenvalues())
        if (std::abs(z - cdouble(10, 0)) <= 1e-8) found_ten = true;
    CHECK(found_ten);

    // Q unitary, T triangular, Q T Q^* = A.
    CHECK(max_abs_norm(conj_transpose(res.q) * res.q - ComplexMatrix::identity(5)) <= 1e-10);
    for (std::size_t i = 1; i < 5; ++i)
        for (std::size_t j = 0; j < i; ++j) CHECK(std::abs(res.t(i, j)) == 0.0);
    CHECK(max_abs_norm(res.q * res.t * conj_transpose(res.q) - ac) <= 1e-9 * max_abs_norm(a));
}

TEST_CASE("schur of a rotation-scale block finds 1 +- i") {
    const SchurResult res = complex_schur(complexify(RealMatrix(2, 2, {1, 1, -1, 1})));
    CHECK(spectra_match(res.eigenvalues(), {{1, 1}, {1, -1}}, 1e-12));
}

TEST_CASE("schur handles defective blocks") {
    ComplexMatrix a(3, 3);
    for (int i = 0; i < 3; ++i) {
        a(i, i) = 2.0;
        if (i < 2) a(i, i + 1) = 1.0;
    }
    const SchurResult res = complex_schur(a);
    CHECK(spectra_match(res.eigenvalues(), {{2, 0}, {2, 0}, {2, 0}}, 1e-5));
}

TEST_CASE("clustering the paper spectrum") {
    const SpectrumSummary s =
        cluster_eigenvalues({{10, 0}, {1, 1}, {1, 1}, {1, -1}, {1, -1}}, 1e-6);
    CHECK(s.s == 3);
    CHECK(s.r1 == 1);
    CHECK(s.r2 == 0);
    CHECK(s.c == 1);
    CHECK(s.distinct[0].value == cdouble(10, 0));
    CHECK(s.distinct[1].value == cdouble(1, 1));
    CHECK(s.distinct[2].value == cdouble(1, -1));
    CHECK(s.distinct[1].multiplicity == 2);
}

TEST_CASE("clustering merges repeats and splits signs") {
    const SpectrumSummary rep = cluster_eigenvalues({{1, 0}, {1, 1e-9}, {1, -1e-9}}, 1e-6);
    CHECK(rep.s == 1);
    CHECK(rep.distinct[0].multiplicity == 3);
    CHECK(rep.r1 == 1);

    const SpectrumSummary two = cluster_eigenvalues({{-2, 0}, {3, 0}}, 1e-6);
    CHECK(two.s == 2);
    CHECK(two.r1 == 1);
    CHECK(two.r2 == 1);
    CHECK(two.c == 0);
    CHECK(two.distinct[0].value == cdouble(3, 0));  // descending reals
}

TEST_CASE("clustering snaps near-zero values and forces conjugacy") {
    const SpectrumSummary s = cluster_eigenvalues({{1e-9, 0}, {2, 1}, {2 + 1e-9, -1}}, 1e-6);
    CHECK(s.zeros == 1);
    CHECK(s.c == 1);
    CHECK(s.distinct[1].value == std::conj(s.distinct[2].value));
}

TEST_CASE("jordan structure of a semisimple repeated eigenvalue") {
    SpectrumSummary s = cluster_eigenvalues({{5, 0}, {5, 0}, {5, 0}}, 1e-6);
    RealMatrix d5(3, 3);
    for (int i = 0; i < 3; ++i) d5(i, i) = 5.0;
    const JordanStructure js = jordan_structure(complexify(d5), s);
    CHECK(js.blocks[0] == std::vector<int>{1, 1, 1});
    CHECK(s.distinct[0].index == 1);
    CHECK(s.t == 3);
}

TEST_CASE("jordan structure of the paper matrices") {
    {
        const SpectralAnalysis an = analyze_spectrum(testsup::load("ex31_A.txt"));
        const int id = an.summary.find(cdouble(1, 1), 1e-6);
        REQUIRE(id >= 0);
        CHECK(an.structure.blocks[id] == std::vector<int>{2});
        CHECK(an.summary.distinct[id].index == 2);
    }
    {
        const SpectralAnalysis an = analyze_spectrum(testsup::load("ex32_A.txt"));
        const int id = an.summary.find(cdouble(1, 1), 1e-6);
        REQUIRE(id >= 0);
        CHECK(an.structure.blocks[id] == std::vector<int>{2, 2});
    }
}

TEST_CASE("structure recovery on randomly assembled matrices") {
    std::mt19937_64 rng(41);
    for (int rep = 0; rep < 25; ++rep) {
        std::uniform_int_distribution<int> nblocks(1, 2);
        std::uniform_int_distribution<int> bsize(1, 2);
        const std::vector<double> lambdas{3.0, 1.0, -2.0};
        std::vector<std::vector<int>> want(lambdas.size());
        int n = 0;
        for (std::size_t i = 0; i < lambdas.size(); ++i) {
            const int blocks = nblocks(rng);
            for (int b = 0; b < blocks && n + 2 <= 8; ++b) {
                const int k = bsize(rng);
                want[i].push_back(k);
                n += k;
            }
            std::sort(want[i].begin(), want[i].end(), std::greater<int>());
        }
        RealMatrix j(static_cast<std::size_t>(n), static_cast<std::size_t>(n));
        std::size_t off = 0;
        for (std::size_t i = 0; i < lambdas.size(); ++i)
            for (int k : want[i]) {
                for (int b = 0; b < k; ++b) {
                    j(off + b, off + b) = lambdas[i];
                    if (b + 1 < k) j(off + b, off + b + 1) = 1.0;
                }
                off += static_cast<std::size_t>(k);
            }
        const RealMatrix r = testsup::random_basis(rng, static_cast<std::size_t>(n), 0.2);
        const RealMatrix a = r * j * inverse(r);
        const SpectralAnalysis an = analyze_spectrum(a);
        for (std::size_t i = 0; i < lambdas.size(); ++i) {
            if (want[i].empty()) continue;
            const int id = an.summary.find(cdouble(lambdas[i], 0), 1e-5);
            REQUIRE(id >= 0);
            CHECK(an.structure.blocks[id] == want[i]);
        }
    }
}

TEST_CASE("ascent sequence anchors") {
    CHECK(ascent_sequence(RealMatrix(2, 2, {1, 1, 1, 0})).d == std::vector<int>{0, 0});
    CHECK(ascent_sequence(RealMatrix(2, 2, {0, 1, 0, 0})).d == std::vector<int>{1, 1});
    CHECK(ascent_sequence(RealMatrix(3, 3)).d == std::vector<int>{3, 0, 0});
}

TEST_CASE("ascent sequence equals the conjugate partition of zero blocks") {
    std::mt19937_64 rng(43);
    for (int rep = 0; rep < 20; ++rep) {
        std::uniform_int_distribution<int> npart(1, 4);
        std::uniform_int_distribution<int> bsize(1, 3);
        std::vector<int> sizes;
        int n = 0;
        const int parts = npart(rng);
        for (int i = 0; i < parts && n + 3 <= 7; ++i) {
            const int k = bsize(rng);
            sizes.push_back(k);
            n += k;
        }
        const RealMatrix j = testsup::nilpotent_jordan(sizes);
        const std::size_t total = j.rows() + 1;
        RealMatrix full(total, total);
        full.place(0, 0, j);
        full(total - 1, total - 1) = 4.0;
        const RealMatrix r = testsup::random_basis(rng, total, 0.2);
        const RealMatrix a = r * full * inverse(r);

        const AscentSequence direct = ascent_sequence(a);
        const AscentSequence structural =
            ascent_from_nilpotent_blocks(sizes, static_cast<int>(total));
        CHECK(direct.d == structural.d);
    }
}

TEST_CASE("p-th root existence from the ascent window condition") {
    CHECK(pth_root_exists(RealMatrix(2, 2, {1, 1, 1, 0}), 2));
    CHECK(pth_root_exists(testsup::load("ex31_A.txt"), 5));
    CHECK_FALSE(pth_root_exists(RealMatrix(2, 2, {0, 1, 0, 0}), 2));
    CHECK(pth_root_exists(RealMatrix(3, 3), 2));
}

TEST_CASE("root existence agrees with the exhaustive structural oracle") {
    for (int n = 1; n <= 6; ++n)
        for (const std::vector<int>& target : testsup::partitions(n))
            for (int p = 2; p <= 3; ++p) {
                const RealMatrix a = testsup::nilpotent_jordan(target);
                const bool numeric = pth_root_exists(a, p);
                const bool oracle = testsup::nilpotent_root_exists_oracle(target, p);
                CHECK(numeric == oracle);
            }
}

TEST_CASE("real root existence adds the negative-block pairing condition") {
    CHECK_FALSE(real_pth_root_exists(RealMatrix(1, 1, {-1}), 2));
    CHECK(real_pth_root_exists(RealMatrix(2, 2, {-1, 0, 0, -1}), 2));
    CHECK(real_pth_root_exists(RealMatrix(2, 2, {-1, 0, 0, -1}), 3));
    const RealMatrix j2(2, 2, {-1, 1, 0, -1});
    CHECK_FALSE(real_pth_root_exists(j2, 2));
    CHECK(real_pth_root_exists(j2, 3));
}
