#include "pfr/branches.hpp"

#include <cmath>

namespace pfr {

namespace {

void check_args(cdouble z, int p, int j) {
    if (p < 2) throw error("p must exceed 1");
    if (j < 0 || j >= p) throw error("branch index out of range");
    if (z == cdouble{0.0, 0.0}) throw error("p-th root branches are undefined at the origin");
}

}  // namespace

cdouble branch_value(cdouble z, int p, int j) {
    check_args(z, p, j);
    const Polar polar = polar_of(z);
    const double root_r = std::pow(polar.r, 1.0 / p);
    const double angle = (polar.theta + 2.0 * M_PI * j) / p;
    return std::polar(root_r, angle);
}

cdouble branch_derivative(cdouble z, int p, int j, int k) {
    check_args(z, p, j);
    if (k < 0) throw error("derivative order must be nonnegative");
    if (k > 64) throw error("derivative order capped at 64");
    const Polar polar = polar_of(z);
    double coeff = 1.0;
    for (int i = 0; i < k; ++i) coeff *= (1.0 - i * p) / p;
    const double power = (1.0 - static_cast<double>(k) * p) / p;
    const double mag = std::pow(polar.r, power);
    const double angle = (2.0 * M_PI * j + polar.theta * (1.0 - static_cast<double>(k) * p)) / p;
    return coeff * std::polar(mag, angle);
}

bool conjugate_branch_condition(int j, int j_prime, int p) {
    if (p < 2) throw error("p must exceed 1");
    if (j < 0 || j >= p || j_prime < 0 || j_prime >= p) throw error("branch index out of range");
    return (j + j_prime) % p == 0;
}

bool negative_axis_branch_condition(int j, int j_prime, int p) {
    if (p < 2) throw error("p must exceed 1");
    if (j < 0 || j >= p || j_prime < 0 || j_prime >= p) throw error("branch index out of range");
    return j + j_prime == p - 1;
}

bool real_branch_for_real_eigenvalue(double lambda, int p, int j) {
    if (p < 2) throw error("p must exceed 1");
    if (j < 0 || j >= p) throw error("branch index out of range");
    if (lambda == 0.0) throw error("p-th root branches are undefined at the origin");
    if (lambda > 0.0) return j == 0 || (p % 2 == 0 && 2 * j == p);
    return p % 2 == 1 && 2 * j == p - 1;
}

}  // namespace pfr
