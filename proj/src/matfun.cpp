#include "pfr/matfun.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "pfr/branches.hpp"
#include "pfr/perron.hpp"
#include "pfr/svd.hpp"

namespace pfr {

ComplexMatrix branch_on_jordan_block(cdouble lambda, int size, int p, int j) {
    if (size < 1) throw dimension_error("block size must be positive");
    if (lambda == cdouble{0.0, 0.0}) throw error("p-th root branches are undefined at the origin");
    ComplexMatrix f(size, size);
    double factorial = 1.0;
    std::vector<cdouble> diag(size);
    for (int d = 0; d < size; ++d) {
        if (d > 0) factorial *= d;
        diag[d] = branch_derivative(lambda, p, j, d) / factorial;
    }
    for (int i = 0; i < size; ++i)
        for (int d = 0; i + d < size; ++d) f(i, i + d) = diag[d];
    return f;
}

PairBlockResult branch_pair_on_complex_block(cdouble lambda, int k, int p,
                                             std::pair<int, int> pair) {
    if (lambda == cdouble{0.0, 0.0}) throw error("p-th root branches are undefined at the origin");
    const auto [j1, j2] = pair;
    const ComplexMatrix f1 = branch_on_jordan_block(lambda, k, p, j1);
    const ComplexMatrix f2 = branch_on_jordan_block(std::conj(lambda), k, p, j2);
    ComplexMatrix middle(2 * k, 2 * k);
    middle.place(0, 0, f1);
    middle.place(k, k, f2);
    const ComplexMatrix pk = complexify(interleave_permutation(k));
    const ComplexMatrix combined = pairing_similarity(k) * pk * middle * transpose(pk) *
                                   pairing_similarity_inverse(k);

    PairBlockResult out;
    out.block = combined;
    const bool condition = (lambda.imag() == 0.0 && lambda.real() < 0.0)
                               ? negative_axis_branch_condition(j1, j2, p)
                               : conjugate_branch_condition(j1, j2, p);
    const double imag_residue = max_imag_abs(combined);
    if (condition && imag_residue <= 1e-12 * std::max(1.0, max_abs_norm(combined))) {
        out.is_real = true;
        out.real_block = real_part(combined);
    }
    return out;
}

std::vector<int> real_branch_choices(double lambda, int p, bool force_principal) {
    if (p < 2) throw error("p must exceed 1");
    if (lambda == 0.0) throw error("p-th root branches are undefined at the origin");
    if (force_principal) return {0};
    std::vector<int> out;
    for (int j = 0; j < p; ++j)
        if (real_branch_for_real_eigenvalue(lambda, p, j)) out.push_back(j);
    return out;
}

std::vector<std::pair<int, int>> conjugate_pair_choices(int p) {
    if (p < 2) throw error("p must exceed 1");
    std::vector<std::pair<int, int>> out;
    out.emplace_back(0, 0);
    for (int j = 1; j < p; ++j) out.emplace_back(j, p - j);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::pair<int, int>> negative_axis_pair_choices(int p) {
    if (p < 2) throw error("p must exceed 1");
    std::vector<std::pair<int, int>> out;
    for (int j = 0; j < p; ++j) out.emplace_back(j, p - 1 - j);
    return out;
}

namespace {

void check_assignment_shape(const RealJordanDecomposition& d, const BranchAssignment& a) {
    std::size_t reals = 0, pairs = 0;
    for (const RealBlockSpec& b : d.blocks)
        (b.kind == RealBlockSpec::Kind::real_eigen ? reals : pairs) += 1;
    if (a.real_indices.size() != reals || a.pair_indices.size() != pairs)
        throw dimension_error("assignment does not match the block layout");
    if (a.p < 2) throw error("p must exceed 1");
    for (int j : a.real_indices)
        if (j < 0 || j >= a.p) throw error("branch index out of range");
    for (auto [j1, j2] : a.pair_indices)
        if (j1 < 0 || j1 >= a.p || j2 < 0 || j2 >= a.p) throw error("branch index out of range");
}

// True when some eigenvalue receives two different branch choices.
bool has_nonprimary_witness(const RealJordanDecomposition& d, const BranchAssignment& a) {
    std::size_t ri = 0, pi = 0;
    std::vector<std::pair<int, int>> real_choice;   // eigen_id -> j
    std::vector<std::pair<int, std::pair<int, int>>> pair_choice;
    for (const RealBlockSpec& b : d.blocks) {
        if (b.kind == RealBlockSpec::Kind::real_eigen) {
            const int j = a.real_indices[ri++];
            for (const auto& [id, seen] : real_choice)
                if (id == b.eigen_id && seen != j) return true;
            real_choice.emplace_back(b.eigen_id, j);
        } else {
            const auto pr = a.pair_indices[pi++];
            if (b.lambda.imag() == 0.0 && pr.first != pr.second)
                return true;  // twin block: both halves carry the same eigenvalue
            for (const auto& [id, seen] : pair_choice)
                if (id == b.eigen_id && seen != pr) return true;
            pair_choice.emplace_back(b.eigen_id, pr);
        }
    }
    return false;
}

// Block-diagonal middle factor with per-block branch choices; real branches
// are predicted from the branch conditions, never assumed from numerics.
struct Middle {
    ComplexMatrix f;
    bool predicted_real = true;
};

Middle middle_factor(const RealJordanDecomposition& d, const BranchAssignment& a,
                     bool allow_zero_blocks) {
    check_assignment_shape(d, a);
    Middle mid;
    mid.f = ComplexMatrix(d.n(), d.n());
    std::size_t offset = 0, ri = 0, pi = 0;
    for (const RealBlockSpec& b : d.blocks) {
        if (b.kind == RealBlockSpec::Kind::real_eigen) {
            const int j = a.real_indices[ri++];
            if (b.lambda == cdouble{0.0, 0.0}) {
                if (!allow_zero_blocks || b.size != 1)
                    throw numerical_error("cannot take branch of a singular block");
                // Zero 1x1 block: the root entry is zero.
            } else {
                mid.f.place(offset, offset, branch_on_jordan_block(b.lambda, b.size, a.p, j));
                mid.predicted_real =
                    mid.predicted_real && real_branch_for_real_eigenvalue(b.lambda.real(), a.p, j);
            }
            offset += b.size;
        } else {
            const PairBlockResult pr = branch_pair_on_complex_block(b.lambda, b.size, a.p,
                                                                    a.pair_indices[pi++]);
            mid.f.place(offset, offset, pr.block);
            mid.predicted_real = mid.predicted_real && pr.is_real;
            offset += 2 * static_cast<std::size_t>(b.size);
        }
    }
    return mid;
}

RootReport finish_report(const RealJordanDecomposition& d, const BranchAssignment& a,
                         const ComplexMatrix& x, bool predicted_real, const Tolerance& tol) {
    RootReport rep;
    rep.assignment = a;
    rep.x = x;
    const double imag_residue = max_imag_abs(x);
    rep.is_real = predicted_real && imag_residue <= 1e-12 * std::max(1.0, max_abs_norm(x));
    if (rep.is_real) {
        rep.x_real = real_part(x);
        rep.residual = max_abs_norm(
            matrix_power(rep.x_real, static_cast<unsigned long long>(a.p)) - d.a);
        rep.is_eventually_positive = is_eventually_positive(rep.x_real, tol);
        if (rep.is_eventually_positive) {
            const PowerIndexResult idx =
                power_index(rep.x_real, default_power_cap(rep.x_real.rows()), tol);
            if (idx.verdict == PowerIndexResult::Verdict::found)
                rep.positivity_witness = idx.witness_exponent;
            bool unit_rows = true;
            for (double s : row_sums(rep.x_real))
                if (std::abs(s - 1.0) > tol.abs_eps) unit_rows = false;
            rep.is_eventually_stochastic = unit_rows;
        }
    } else {
        rep.residual = max_abs_norm(matrix_power(x, static_cast<unsigned long long>(a.p)) -
                                    complexify(d.a));
    }
    return rep;
}

void check_primary_consistency(const RealJordanDecomposition& d, const BranchAssignment& a) {
    if (has_nonprimary_witness(d, a))
        throw error("assignment gives one eigenvalue two different branches; not primary");
}

}  // namespace

bool assignment_is_nonprimary(const RealJordanDecomposition& d, const BranchAssignment& a) {
    check_assignment_shape(d, a);
    return has_nonprimary_witness(d, a);
}

RootReport assemble_primary_root(const RealJordanDecomposition& d, const BranchAssignment& a,
                                 const Tolerance& tol) {
    if (d.singular()) throw numerical_error("primary assembly requires a nonsingular matrix");
    if (!a.primary) throw error("assignment is not flagged primary");
    check_primary_consistency(d, a);
    const Middle mid = middle_factor(d, a, false);
    const ComplexMatrix x = complexify(d.r) * mid.f * complexify(d.r_inv);
    return finish_report(d, a, x, mid.predicted_real, tol);
}

RootReport assemble_nonprimary_root(const RealJordanDecomposition& d, const BranchAssignment& a,
                                    const CommutantParameter& u, const Tolerance& tol) {
    if (d.singular()) throw numerical_error("nonprimary assembly requires a nonsingular matrix");
    if (!d.derogatory()) throw numerical_error("nonprimary roots require a derogatory matrix");
    if (!has_nonprimary_witness(d, a))
        throw error("assignment is primary: every eigenvalue gets one branch");
    if (u.u.rows() != d.n() || !u.u.square())
        throw dimension_error("commutant parameter has the wrong order");
    const RealMatrix j = d.jordan_matrix();
    const double commute_residual = max_abs_norm(u.u * j - j * u.u);
    if (commute_residual > 1e-10 * std::max(1.0, max_abs_norm(u.u) * max_abs_norm(j)))
        throw numerical_error("u does not commute with the block realization (residual " +
                              std::to_string(commute_residual) + ")");
    if (!is_nonsingular(u.u, tol)) throw numerical_error("commutant parameter is singular");

    const Middle mid = middle_factor(d, a, false);
    const ComplexMatrix uc = complexify(u.u);
    const ComplexMatrix uc_inv = complexify(inverse(u.u, tol));
    const ComplexMatrix x = complexify(d.r) * uc * mid.f * uc_inv * complexify(d.r_inv);
    return finish_report(d, a, x, mid.predicted_real, tol);
}

CommutantParameter sample_commutant(const RealJordanDecomposition& d, std::uint64_t seed,
                                    const Tolerance& tol) {
    const std::size_t n = d.n();
    const RealMatrix j = d.jordan_matrix();

    // Null space of the Sylvester operator kron(J^T, I) - kron(I, J) acting
    // on column-stacked u.
    const std::size_t nn = n * n;
    RealMatrix op(nn, nn);
    const RealMatrix jt = transpose(j);
    for (std::size_t bi = 0; bi < n; ++bi)
        for (std::size_t bj = 0; bj < n; ++bj) {
            const double w = jt(bi, bj);
            if (w != 0.0)
                for (std::size_t i = 0; i < n; ++i) op(bi * n + i, bj * n + i) += w;
        }
    for (std::size_t bi = 0; bi < n; ++bi)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t l = 0; l < n; ++l) op(bi * n + i, bi * n + l) -= j(i, l);

    const RealMatrix basis = null_space_basis(op, 1e-10);
    if (basis.empty()) throw numerical_error("commutant null space is empty");
    const std::size_t dim = basis.cols();

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (int attempt = 0; attempt < 16; ++attempt) {
        std::vector<double> coeff(dim);
        for (double& c : coeff) c = gauss(rng);
        RealMatrix u(n, n);
        for (std::size_t col = 0; col < dim; ++col)
            for (std::size_t idx = 0; idx < nn; ++idx) {
                const std::size_t ui = idx % n;   // column-stacked
                const std::size_t uj = idx / n;
                u(ui, uj) += coeff[col] * basis(idx, col);
            }
        const double scale = max_abs_norm(u);
        if (scale == 0.0) continue;
        for (std::size_t i = 0; i < u.size(); ++i) u.data()[i] /= scale;
        if (is_nonsingular(u, tol)) {
            CommutantParameter out;
            out.u = std::move(u);
            out.seed = seed;
            out.basis_dimension = static_cast<int>(dim);
            return out;
        }
    }
    throw numerical_error("failed to draw a nonsingular commutant element after 16 tries "
                          "(basis dimension " + std::to_string(dim) + ")");
}

SingularRootOutcome singular_root_report(const RealJordanDecomposition& d, int p,
                                         const Tolerance& tol) {
    if (p < 2) throw error("p must exceed 1");
    SingularRootOutcome out;
    if (!d.singular()) {
        out.nonsingular_passthrough = true;
        out.root_exists = true;
        return out;
    }
    std::vector<int> zero_sizes;
    for (const RealBlockSpec& b : d.blocks)
        if (b.lambda == cdouble{0.0, 0.0}) zero_sizes.push_back(b.size);
    const AscentSequence seq = ascent_from_nilpotent_blocks(
        zero_sizes, std::accumulate(zero_sizes.begin(), zero_sizes.end(), 0));
    out.root_exists = ascent_admits_pth_root(seq, p);
    if (!out.root_exists) return out;

    const bool zero_part_is_zero_matrix =
        std::all_of(zero_sizes.begin(), zero_sizes.end(), [](int k) { return k == 1; });
    if (!zero_part_is_zero_matrix) return out;  // existence verdict only

    // Real-preferring branch selection on the nonzero blocks.
    BranchAssignment a;
    a.p = p;
    a.primary = true;
    for (const RealBlockSpec& b : d.blocks) {
        if (b.kind == RealBlockSpec::Kind::real_eigen) {
            if (b.lambda == cdouble{0.0, 0.0}) {
                a.real_indices.push_back(0);  // placeholder; block maps to zero
            } else {
                const std::vector<int> choices = real_branch_choices(b.lambda.real(), p, false);
                a.real_indices.push_back(choices.empty() ? 0 : choices.front());
            }
        } else {
            a.pair_indices.emplace_back(0, 0);
        }
    }
    const Middle mid = middle_factor(d, a, true);
    const ComplexMatrix x = complexify(d.r) * mid.f * complexify(d.r_inv);
    out.root = finish_report(d, a, x, mid.predicted_real, tol);
    out.constructed = true;
    return out;
}

}  // namespace pfr
