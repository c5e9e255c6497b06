#pragma once

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "pfr/enumroots.hpp"
#include "pfr/io.hpp"
#include "pfr/perron.hpp"

namespace testsup {

inline std::string data_path(const std::string& name) {
    return std::string(PFR_TEST_DATA_DIR) + "/" + name;
}

inline pfr::RealMatrix load(const std::string& name) {
    return pfr::read_matrix_file(data_path(name));
}

inline double diff_norm(const pfr::RealMatrix& a, const pfr::RealMatrix& b) {
    return pfr::max_abs_norm(a - b);
}

inline pfr::RealMatrix random_matrix(std::mt19937_64& rng, std::size_t n, double lo, double hi) {
    std::uniform_real_distribution<double> dist(lo, hi);
    pfr::RealMatrix m(n, n);
    for (std::size_t i = 0; i < m.size(); ++i) m.data()[i] = dist(rng);
    return m;
}

// Well-conditioned random basis: identity plus a small perturbation.
inline pfr::RealMatrix random_basis(std::mt19937_64& rng, std::size_t n, double spread = 0.3) {
    std::uniform_real_distribution<double> dist(-spread, spread);
    pfr::RealMatrix r = pfr::RealMatrix::identity(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) r(i, j) += dist(rng);
    return r;
}

// Decomposition assembled directly from a block list and a basis; the
// ground truth for tests that must not depend on the numerical Jordan path.
inline pfr::RealJordanDecomposition make_decomposition(const pfr::RealMatrix& r,
                                                       std::vector<pfr::RealBlockSpec> blocks) {
    pfr::RealJordanDecomposition d;
    d.r = r;
    d.r_inv = pfr::inverse(r);
    d.blocks = std::move(blocks);
    // Synthesize the matrix and summary through the factorization entry
    // point so invariants are validated once.
    pfr::RealJordanDecomposition tmp;
    tmp.blocks = d.blocks;
    tmp.a = pfr::RealMatrix(r.rows(), r.rows());
    std::size_t offset = 0;
    for (const pfr::RealBlockSpec& b : d.blocks) {
        if (b.kind == pfr::RealBlockSpec::Kind::real_eigen) {
            for (int i = 0; i < b.size; ++i) {
                tmp.a(offset + i, offset + i) = b.lambda.real();
                if (i + 1 < b.size) tmp.a(offset + i, offset + i + 1) = 1.0;
            }
        } else {
            tmp.a.place(offset, offset, pfr::complex_pair_block(b.lambda, b.size));
        }
        offset += b.rows();
    }
    const pfr::RealMatrix a = r * tmp.a * d.r_inv;
    return pfr::decomposition_from_factorization(a, r, d.blocks, pfr::Tolerance{1e-7, 1e-7});
}

// Random primitive (entrywise positive) nonsingular matrix with a spectrum
// that is unambiguous for clustering: eigenvalue gaps and imaginary parts
// stay well clear of the cluster threshold.
inline pfr::RealMatrix random_primitive(std::mt19937_64& rng, std::size_t n) {
    for (int attempt = 0; attempt < 200; ++attempt) {
        pfr::RealMatrix a = random_matrix(rng, n, 0.05, 1.0);
        const double cluster_eps = 1e-6 * std::max(1.0, pfr::max_abs_norm(a));
        try {
            const pfr::SchurResult schur = pfr::complex_schur(pfr::complexify(a));
            const std::vector<pfr::cdouble> eigs = schur.eigenvalues();
            bool ok = true;
            for (std::size_t i = 0; i < eigs.size() && ok; ++i) {
                const double im = std::abs(eigs[i].imag());
                if (im > cluster_eps / 10.0 && im < cluster_eps * 10.0) ok = false;
                if (std::abs(eigs[i]) < 1e-3) ok = false;  // nearly singular
                for (std::size_t j = i + 1; j < eigs.size() && ok; ++j) {
                    const double gap = std::abs(eigs[i] - eigs[j]);
                    if (gap > cluster_eps / 10.0 && gap < cluster_eps * 100.0) ok = false;
                }
            }
            if (ok && pfr::is_nonsingular(a)) return a;
        } catch (const pfr::numerical_error&) {
        }
    }
    throw std::runtime_error("random_primitive: generation failed");
}

// All partitions of n, descending parts.
inline std::vector<std::vector<int>> partitions(int n) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    auto rec = [&](auto&& self, int rest, int maxpart) -> void {
        if (rest == 0) {
            out.push_back(cur);
            return;
        }
        for (int k = std::min(rest, maxpart); k >= 1; --k) {
            cur.push_back(k);
            self(self, rest - k, k);
            cur.pop_back();
        }
    };
    rec(rec, n, n);
    return out;
}

// Jordan structure of J_k(0)^p: k splits into p parts as evenly as possible
// (zero parts dropped).
inline std::vector<int> nilpotent_power_split(int k, int p) {
    std::vector<int> parts;
    const int q = k / p, r = k % p;
    for (int i = 0; i < r; ++i) parts.push_back(q + 1);
    for (int i = r; i < p && q > 0; ++i) parts.push_back(q);
    return parts;
}

// Exhaustive structural oracle: does any nilpotent Jordan structure of the
// same order p-th-power onto the target structure?
inline bool nilpotent_root_exists_oracle(const std::vector<int>& target, int p) {
    int n = 0;
    for (int k : target) n += k;
    std::vector<int> want = target;
    std::sort(want.begin(), want.end(), std::greater<int>());
    for (const std::vector<int>& mu : partitions(n)) {
        std::vector<int> split;
        for (int k : mu) {
            const std::vector<int> parts = nilpotent_power_split(k, p);
            split.insert(split.end(), parts.begin(), parts.end());
        }
        std::sort(split.begin(), split.end(), std::greater<int>());
        if (split == want) return true;
    }
    return false;
}

// Nilpotent Jordan matrix with the given block sizes.
inline pfr::RealMatrix nilpotent_jordan(const std::vector<int>& sizes) {
    int n = 0;
    for (int k : sizes) n += k;
    pfr::RealMatrix m(static_cast<std::size_t>(n), static_cast<std::size_t>(n));
    std::size_t off = 0;
    for (int k : sizes) {
        for (int i = 0; i + 1 < k; ++i) m(off + i, off + i + 1) = 1.0;
        off += static_cast<std::size_t>(k);
    }
    return m;
}

}  // namespace testsup
