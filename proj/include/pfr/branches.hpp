#pragma once

#include "pfr/common.hpp"

namespace pfr {

// Scalar branches of the p-th root.  With z = r exp(i theta), r > 0 and
// theta in (-pi, pi], the (j+1)-st branch is
//
//     f_j(z) = r^{1/p} exp(i (theta + 2 pi j) / p),    j = 0, ..., p-1,
//
// so f_0 is the principal branch and f_j^p = z for every j.  Negative reals
// sit on theta = +pi.

// Throws pfr::error for z = 0 or out-of-range j/p.
cdouble branch_value(cdouble z, int p, int j);

// k-th derivative of f_j:
//   f_j^{(k)}(z) = p^{-k} prod_{i=0}^{k-1} (1 - i p)
//                  * r^{(1-kp)/p} exp(i [2 pi j + theta (1 - kp)] / p),
// with the empty product for k = 0.  k is capped at 64; the coefficient
// grows factorially and nothing at this library's scale needs more.
cdouble branch_derivative(cdouble z, int p, int j, int k);

// f_j^{(k)}(z) == conj(f_{j'}^{(k)}(conj z)) for Im z != 0 exactly when
// j + j' = 0 (mod p), i.e. j = j' = 0 or j = p - j'.
bool conjugate_branch_condition(int j, int j_prime, int p);

// On the negative real axis (z = r exp(i pi)) the analogous identity
// f_j^{(k)}(z) == conj(f_{j'}^{(k)}(z)) holds exactly when j + j' = p - 1.
bool negative_axis_branch_condition(int j, int j_prime, int p);

// True when f_j(lambda) is real for real nonzero lambda: j = 0 or j = p/2
// for positive lambda, j = (p-1)/2 with odd p for negative lambda.  All
// derivatives of the branch are then real as well.
bool real_branch_for_real_eigenvalue(double lambda, int p, int j);

}  // namespace pfr
