#pragma once

#include <vector>

#include "pfr/matrix.hpp"

namespace pfr {

// Numerical policy for spectral computations.  The paper-scale defaults
// separate integer-derived spectra by many orders of magnitude; all of them
// can be tightened or relaxed per call.
struct SpectralOptions {
    double cluster_eps_scale = 1e-6;  // cluster_eps = scale * max(1, max_abs_norm(a))
    double rank_eps = 1e-10;          // sigma <= rank_eps * sigma_max counts as zero
    // Machine-level deflation keeps the backward error small enough that
    // defective eigenvalues split by ~sqrt(eps * scale), well inside the
    // clustering threshold.
    double qr_deflation_eps = 5e-16;
    int qr_iterations_per_n = 50;
};

struct SchurResult {
    ComplexMatrix q;  // unitary
    ComplexMatrix t;  // upper triangular, eigenvalues on the diagonal
    int iterations = 0;

    std::vector<cdouble> eigenvalues() const;
};

// Hessenberg reduction followed by shifted QR with Wilkinson shifts.
SchurResult complex_schur(const ComplexMatrix& a, const Tolerance& tol = {},
                          const SpectralOptions& opts = {});

struct DistinctEigenvalue {
    cdouble value;
    int multiplicity = 0;
    int index = 0;  // size of the largest Jordan block; 0 until structure is known
};

// Distinct eigenvalues with the counts used by the root-count formulas.
// Conjugate-pair members are listed back to back, the Im > 0 one first;
// real values precede pairs and are sorted descending.
struct SpectrumSummary {
    std::vector<DistinctEigenvalue> distinct;
    int n = 0;     // matrix order
    int s = 0;     // number of distinct eigenvalues (pair members count separately)
    int t = 0;     // total Jordan block count; 0 until structure is known
    int r1 = 0;    // distinct positive real eigenvalues
    int r2 = 0;    // distinct negative real eigenvalues
    int c = 0;     // distinct conjugate pairs
    int zeros = 0; // 1 when zero is an eigenvalue

    bool has_zero() const { return zeros > 0; }
    int find(cdouble value, double eps) const;  // index into distinct, or -1
};

// Greedy merge of a raw eigenvalue list.  Values within cluster_eps are
// united transitively; near-real representatives snap to the real axis and
// conjugate pairs are forced exactly conjugate.
SpectrumSummary cluster_eigenvalues(const std::vector<cdouble>& raw, double cluster_eps);

struct JordanStructure {
    // blocks[i]: Jordan block sizes of distinct eigenvalue i, descending;
    // parallel to SpectrumSummary::distinct.
    std::vector<std::vector<int>> blocks;

    int total_blocks() const;
};

// Rank tests on powers of (a - lambda I); fills in the eigenvalue indices
// and the block count of the summary.
JordanStructure jordan_structure(const ComplexMatrix& a, SpectrumSummary& summary,
                                 const SpectralOptions& opts = {});

struct SpectralAnalysis {
    SpectrumSummary summary;
    JordanStructure structure;
};

SpectralAnalysis analyze_spectrum(const RealMatrix& a, const Tolerance& tol = {},
                                  const SpectralOptions& opts = {});

struct AscentSequence {
    std::vector<int> d;  // d[i-1] = dim null(a^i) - dim null(a^{i-1})
};

AscentSequence ascent_sequence(const RealMatrix& a, const SpectralOptions& opts = {});

// Ascent sequence of a nilpotent matrix given its Jordan block sizes
// (conjugate-partition counts); exact, no numerics.
AscentSequence ascent_from_nilpotent_blocks(const std::vector<int>& sizes, int n);

// At most one element strictly inside every window (p nu, p (nu + 1)).
bool ascent_admits_pth_root(const AscentSequence& seq, int p);

bool pth_root_exists(const RealMatrix& a, int p, const SpectralOptions& opts = {});

// Additionally requires, for even p, an even number of Jordan blocks of
// each size for every negative eigenvalue.
bool real_pth_root_exists(const RealMatrix& a, int p, const Tolerance& tol = {},
                          const SpectralOptions& opts = {});

}  // namespace pfr
