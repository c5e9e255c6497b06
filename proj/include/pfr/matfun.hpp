#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "pfr/rjcf.hpp"

namespace pfr {

// Branch choice per block of a RealJordanDecomposition: one index for each
// real-eigenvalue block, an index pair for each C-block.  Primary
// assignments use the same choice on every block sharing an eigenvalue.
struct BranchAssignment {
    std::vector<int> real_indices;
    std::vector<std::pair<int, int>> pair_indices;
    int p = 2;
    bool primary = true;
};

// Free parameter of a nonprimary family: a real nonsingular matrix
// commuting with the block realization J.
struct CommutantParameter {
    RealMatrix u;
    std::uint64_t seed = 0;
    int basis_dimension = 0;  // dimension of the commutant that was sampled
};

struct RootReport {
    ComplexMatrix x;        // the root as computed
    RealMatrix x_real;      // truncated real form; valid only when is_real
    BranchAssignment assignment;
    double residual = 0.0;  // max-entry norm of x^p - a, recomputed
    bool is_real = false;
    bool is_eventually_positive = false;
    std::optional<int> positivity_witness;  // power index when certified
    bool is_eventually_stochastic = false;
};

// Upper-triangular Toeplitz block f_j(J_k(lambda)) with entries
// f_j^{(d)}(lambda) / d! on the d-th superdiagonal.
ComplexMatrix branch_on_jordan_block(cdouble lambda, int size, int p, int j);

struct PairBlockResult {
    bool is_real = false;
    RealMatrix real_block;     // valid when is_real
    ComplexMatrix block;       // always valid
};

// S_k P_k [f_{j1}(J_k(lambda)) ⊕ f_{j2}(J_k(conj lambda))] P_k^T S_k^{-1}.
// Flagged real when the applicable conjugacy condition holds (j1 + j2 = 0
// mod p off the real axis, j1 + j2 = p - 1 for negative real lambda) and
// the numerical imaginary residue is below threshold.
PairBlockResult branch_pair_on_complex_block(cdouble lambda, int k, int p,
                                             std::pair<int, int> pair);

RootReport assemble_primary_root(const RealJordanDecomposition& d, const BranchAssignment& a,
                                 const Tolerance& tol = {});

RootReport assemble_nonprimary_root(const RealJordanDecomposition& d, const BranchAssignment& a,
                                    const CommutantParameter& u, const Tolerance& tol = {});

// Seeded random element of the commutant of d's block realization, found
// from the null space of the Sylvester operator; retries up to 16 draws for
// nonsingularity.
CommutantParameter sample_commutant(const RealJordanDecomposition& d, std::uint64_t seed,
                                    const Tolerance& tol = {});

struct SingularRootOutcome {
    bool nonsingular_passthrough = false;  // input had no zero eigenvalue
    bool root_exists = false;
    bool constructed = false;
    std::optional<RootReport> root;  // witness root when constructed
};

// Existence (ascent condition of the singular part) and, when every
// singular block is 1x1, a constructed root that is zero on the singular
// part and uses real-preferring branches elsewhere.
SingularRootOutcome singular_root_report(const RealJordanDecomposition& d, int p,
                                         const Tolerance& tol = {});

// True when some eigenvalue receives two different branch choices (the
// nonprimary witness of the classification).
bool assignment_is_nonprimary(const RealJordanDecomposition& d, const BranchAssignment& a);

// Valid branch choices, per distinct real eigenvalue, that keep the block
// real: {0} and p/2 for positive lambda, the middle branch for negative
// lambda with odd p.  force_principal pins the choice to {0}.
std::vector<int> real_branch_choices(double lambda, int p, bool force_principal);

// The p real-producing pairs for a C-block: (0,0) and (j, p-j).
std::vector<std::pair<int, int>> conjugate_pair_choices(int p);

// The p pairs with j1 + j2 = p - 1, for paired negative-eigenvalue blocks.
std::vector<std::pair<int, int>> negative_axis_pair_choices(int p);

}  // namespace pfr
