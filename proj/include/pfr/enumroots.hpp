#pragma once

#include <cstdint>
#include <vector>

#include "pfr/matfun.hpp"

namespace pfr {

struct RootCatalog {
    unsigned long long primary_total = 0;  // p^s, saturating
    unsigned long long real_primary_count = 0;
    unsigned long long ev_positive_primary_count = 0;
    std::vector<BranchAssignment> assignments;  // accepted, canonical order
    std::vector<RootReport> roots;              // parallel to assignments
    bool derogatory = false;
    bool nonprimary_available = false;
};

unsigned long long saturating_pow(unsigned long long base, unsigned exponent);

// 2^{r1} p^c for even p with r2 = 0, zero for even p with r2 > 0, p^c for
// odd p.  Requires a nonsingular spectrum.
unsigned long long count_real_primary(const SpectrumSummary& summary, int p);

// Same shape with the dominant eigenvalue's branch pinned: 2^{r1-1} p^c /
// 0 / p^c.  Requires r1 >= 1, which every matrix with the strong
// Perron-Frobenius property has.
unsigned long long count_ev_positive_primary(const SpectrumSummary& summary, int p);

// All eventually positive primary roots: dominant block principal, other
// real blocks 0 (or p/2 for even p), pair blocks (0,0) or (j, p-j).  Every
// root is assembled and re-certified; a count that disagrees with the
// formula is an error, not a warning.
RootCatalog enumerate_ev_positive_primary(const RealJordanDecomposition& d, int p,
                                          const Tolerance& tol = {});

// All real primary roots (dominant branch not pinned).
RootCatalog enumerate_real_primary(const RealJordanDecomposition& d, int p,
                                   const Tolerance& tol = {});

// Sampled members of the nonprimary family of one rule-conforming
// assignment, one per seed.
std::vector<RootReport> enumerate_nonprimary_family(const RealJordanDecomposition& d, int p,
                                                    const BranchAssignment& assignment,
                                                    const std::vector<std::uint64_t>& seeds,
                                                    const Tolerance& tol = {});

// Real roots of a matrix with negative eigenvalues and even p, reached by
// pairing twin negative blocks into C-blocks; these are nonprimary.
std::vector<RootReport> enumerate_real_paired_roots(const RealJordanDecomposition& d, int p,
                                                    const Tolerance& tol = {});

}  // namespace pfr
