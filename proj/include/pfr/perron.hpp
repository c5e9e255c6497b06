#pragma once

#include <vector>

#include "pfr/eigen.hpp"
#include "pfr/matrix.hpp"

namespace pfr {

// Spectral-radius facts needed for the strong Perron-Frobenius property.
// Vectors are unit 1-norm; an empty vector means rho is not an eigenvalue.
struct PerronReport {
    double rho = 0.0;
    bool rho_is_eigenvalue = false;
    bool rho_positive = false;
    bool rho_simple = false;
    bool rho_dominant = false;
    std::vector<double> right_vector;
    std::vector<double> left_vector;
    bool right_positive = false;
    bool left_positive = false;
};

PerronReport spectral_radius_data(const RealMatrix& a, const Tolerance& tol = {},
                                  const SpectralOptions& opts = {});

// rho > 0, rho a simple strictly dominant eigenvalue with an entrywise
// positive right eigenvector.
bool has_strong_pf_property(const RealMatrix& a, const Tolerance& tol = {},
                            const SpectralOptions& opts = {});

// Both a and its transpose have the strong Perron-Frobenius property.
bool is_eventually_positive(const RealMatrix& a, const Tolerance& tol = {},
                            const SpectralOptions& opts = {});

struct PowerIndexResult {
    enum class Verdict { found, exceeded_cap };
    Verdict verdict = Verdict::exceeded_cap;
    int witness_exponent = -1;  // valid when verdict == found
    int cap_used = 0;
};

// Smallest k <= cap with a^k entrywise positive, confirmed on a window of n
// further powers.  Powers are rescaled each step; positivity is unaffected.
PowerIndexResult power_index(const RealMatrix& a, int cap, const Tolerance& tol = {});

// max(n^2 - 2n + 2, 4 n^2).
int default_power_cap(std::size_t n);

// Nonnegative input only (tiny negatives are clamped); decided by the power
// test with the sharp n^2 - 2n + 2 cap.
bool is_primitive(const RealMatrix& a, const Tolerance& tol = {});

bool is_stochastic(const RealMatrix& a, const Tolerance& tol = {});

// Eventually positive with unit row sums; the row sums of the witness power
// are verified as well when one is found within cap.
bool is_eventually_stochastic(const RealMatrix& a, const Tolerance& tol = {}, int cap = 0);

}  // namespace pfr
