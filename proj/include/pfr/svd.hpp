#pragma once

#include <vector>

#include "pfr/matrix.hpp"

namespace pfr {

// Singular values (descending) and right singular vectors of a dense
// matrix, computed by one-sided Jacobi rotations.  Adequate for the small
// orders this library targets; sigma.size() == a.cols().
template <class T>
struct Svd {
    std::vector<double> sigma;
    Mat<T> v;  // unitary, columns aligned with sigma
};

template <class T>
Svd<T> jacobi_svd(const Mat<T>& a, int max_sweeps = 60);

// Number of sigma strictly above rank_eps * sigma_max; sigma <= threshold
// counts as zero.
int svd_rank(const std::vector<double>& sigma, double rank_eps);

template <class T>
int rank_of(const Mat<T>& a, double rank_eps);

// Orthonormal basis of the null space (columns); may have zero columns
// when the matrix has full column rank.
template <class T>
Mat<T> null_space_basis(const Mat<T>& a, double rank_eps);

// Minimal-norm least-squares solution of a x = b via the pseudo-inverse.
template <class T>
std::vector<T> pinv_solve(const Mat<T>& a, const std::vector<T>& b, double rank_eps);

// Modified Gram-Schmidt with one reorthogonalization pass; columns whose
// remainder is below drop_eps (relative to the original column norm) are
// dropped.
template <class T>
Mat<T> orthonormal_columns(const Mat<T>& a, double drop_eps = 1e-10);

// v minus its projection onto the span of the (orthonormal) basis columns.
template <class T>
std::vector<T> project_out(const Mat<T>& basis, std::vector<T> v);

}  // namespace pfr
