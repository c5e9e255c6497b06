#pragma once

#include <vector>

#include "pfr/eigen.hpp"
#include "pfr/matrix.hpp"

namespace pfr {

// One diagonal block of the real Jordan form: either a k x k Jordan block
// J_k(lambda) with lambda real, or a 2k x 2k block C_k(lambda) built from
// 2x2 rotation-scale cells.  C-blocks normally carry Im(lambda) > 0; a real
// negative lambda appears after pairing twin negative Jordan blocks.
struct RealBlockSpec {
    enum class Kind { real_eigen, complex_pair };
    Kind kind = Kind::real_eigen;
    cdouble lambda;
    int size = 0;      // k
    int eigen_id = -1; // index into SpectrumSummary::distinct (Im > 0 member for pairs)

    int rows() const { return kind == Kind::real_eigen ? size : 2 * size; }
};

struct RealJordanDecomposition {
    RealMatrix a;  // the decomposed matrix
    RealMatrix r;
    RealMatrix r_inv;
    std::vector<RealBlockSpec> blocks;  // real blocks first, then pair blocks
    SpectrumSummary summary;
    double residual = 0.0;  // max-entry norm of a - r J r^{-1}
    bool from_factorization = false;

    std::size_t n() const { return a.rows(); }
    RealMatrix jordan_matrix() const;
    bool derogatory() const;
    bool singular() const;
};

// J_k(lambda) over the complex field.
ComplexMatrix jordan_block(cdouble lambda, int k);

// The 2k x 2k block with C(lambda) = [[Re, Im], [-Im, Re]] cells on the
// diagonal and I_2 on the block superdiagonal.
RealMatrix complex_pair_block(cdouble lambda, int k);

// S_k = direct sum of k copies of S = [[-i, -i], [1, -1]]; conjugates
// C_k(lambda) to D_k(lambda) = diag-pair form.
ComplexMatrix pairing_similarity(int k);
ComplexMatrix pairing_similarity_inverse(int k);  // exact, (1/2)[[i, 1], [i, -1]] cells

// Columns e_1, e_3, ..., e_{2k-1}, e_2, e_4, ..., e_{2k}; P_k^T D_k P_k
// splits the pair block into J_k(lambda) ⊕ J_k(conj lambda).
RealMatrix interleave_permutation(int k);

RealJordanDecomposition real_jordan_decompose(const RealMatrix& a, const Tolerance& tol = {},
                                              const SpectralOptions& opts = {});

// Builds the decomposition from an externally supplied factorization; the
// reconstruction residual is validated, nothing is recomputed.
RealJordanDecomposition decomposition_from_factorization(const RealMatrix& a, const RealMatrix& r,
                                                         std::vector<RealBlockSpec> blocks,
                                                         const Tolerance& tol = {});

// For even p, rewrites twin negative-eigenvalue Jordan blocks J_k ⊕ J_k as
// pair blocks C_k(lambda) and moves them to the pair section, adjusting r
// by the corresponding orthogonal column transform.  Odd p returns the
// decomposition unchanged; an unpairable negative block throws.
RealJordanDecomposition negative_pairing(const RealJordanDecomposition& d, int p);

}  // namespace pfr
