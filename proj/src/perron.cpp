#include "pfr/perron.hpp"

#include <algorithm>
#include <cmath>

#include "pfr/svd.hpp"

namespace pfr {

namespace {

constexpr double kDominanceMargin = 1e-8;

struct VectorFacts {
    std::vector<double> v;  // unit 1-norm, sign fixed
    bool positive = false;
};

// Eigenvector of a real simple-ish eigenvalue rho; sign decisions use the
// largest-magnitude component, the stored sign convention uses the first
// component above noise.
VectorFacts eigenvector_facts(const RealMatrix& a, double rho, const Tolerance& tol,
                              const SpectralOptions& opts) {
    VectorFacts out;
    RealMatrix m = a;
    for (std::size_t i = 0; i < a.rows(); ++i) m(i, i) -= rho;
    const double scale = std::max(1.0, max_abs_norm(m));
    for (std::size_t i = 0; i < m.size(); ++i) m.data()[i] /= scale;
    const RealMatrix basis = null_space_basis(m, opts.rank_eps);
    if (basis.empty()) return out;
    std::vector<double> v(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) v[i] = basis(i, 0);

    double biggest = 0.0;
    std::size_t arg_biggest = 0;
    for (std::size_t i = 0; i < v.size(); ++i)
        if (std::abs(v[i]) > biggest) {
            biggest = std::abs(v[i]);
            arg_biggest = i;
        }
    if (biggest == 0.0) return out;
    const double sign = v[arg_biggest] > 0.0 ? 1.0 : -1.0;
    out.positive = true;
    for (double& x : v) {
        x *= sign;
        if (x <= tol.abs_eps) out.positive = false;
    }
    // Stored convention: first component above noise is positive.
    for (double x : v) {
        if (std::abs(x) > 1e-14 * biggest) {
            if (x < 0.0)
                for (double& y : v) y = -y;
            break;
        }
    }
    double one_norm = 0.0;
    for (double x : v) one_norm += std::abs(x);
    for (double& x : v) x /= one_norm;
    out.v = std::move(v);
    return out;
}

}  // namespace

PerronReport spectral_radius_data(const RealMatrix& a, const Tolerance& tol,
                                  const SpectralOptions& opts) {
    if (!a.square()) throw dimension_error("spectral radius requires a square matrix");
    const double cluster_eps = opts.cluster_eps_scale * std::max(1.0, max_abs_norm(a));
    const SchurResult schur = complex_schur(complexify(a), tol, opts);
    const SpectrumSummary summary = cluster_eigenvalues(schur.eigenvalues(), cluster_eps);

    PerronReport rep;
    for (const DistinctEigenvalue& ev : summary.distinct)
        rep.rho = std::max(rep.rho, std::abs(ev.value));
    if (rep.rho <= tol.abs_eps) throw numerical_error("spectral radius is zero to tolerance");

    int rho_id = -1;
    for (std::size_t i = 0; i < summary.distinct.size(); ++i) {
        const DistinctEigenvalue& ev = summary.distinct[i];
        if (ev.value.imag() == 0.0 && ev.value.real() > 0.0 &&
            std::abs(ev.value.real() - rep.rho) <= cluster_eps) {
            rho_id = static_cast<int>(i);
            break;
        }
    }
    rep.rho_positive = rep.rho > tol.abs_eps;
    if (rho_id < 0) return rep;  // rho is not itself a (positive real) eigenvalue

    rep.rho_is_eigenvalue = true;
    rep.rho = summary.distinct[rho_id].value.real();
    rep.rho_simple = summary.distinct[rho_id].multiplicity == 1;
    rep.rho_dominant = true;
    for (std::size_t i = 0; i < summary.distinct.size(); ++i) {
        if (static_cast<int>(i) == rho_id) continue;
        if (std::abs(summary.distinct[i].value) > rep.rho * (1.0 - kDominanceMargin))
            rep.rho_dominant = false;
    }

    VectorFacts right = eigenvector_facts(a, rep.rho, tol, opts);
    VectorFacts left = eigenvector_facts(transpose(a), rep.rho, tol, opts);
    rep.right_vector = std::move(right.v);
    rep.left_vector = std::move(left.v);
    rep.right_positive = right.positive;
    rep.left_positive = left.positive;
    return rep;
}

bool has_strong_pf_property(const RealMatrix& a, const Tolerance& tol,
                            const SpectralOptions& opts) {
    PerronReport rep;
    try {
        rep = spectral_radius_data(a, tol, opts);
    } catch (const numerical_error&) {
        return false;  // zero spectral radius
    }
    return rep.rho_positive && rep.rho_is_eigenvalue && rep.rho_simple && rep.rho_dominant &&
           rep.right_positive;
}

bool is_eventually_positive(const RealMatrix& a, const Tolerance& tol,
                            const SpectralOptions& opts) {
    return has_strong_pf_property(a, tol, opts) && has_strong_pf_property(transpose(a), tol, opts);
}

int default_power_cap(std::size_t n) {
    const long long nn = static_cast<long long>(n);
    return static_cast<int>(std::max(nn * nn - 2 * nn + 2, 4 * nn * nn));
}

PowerIndexResult power_index(const RealMatrix& a, int cap, const Tolerance& tol) {
    if (!a.square()) throw dimension_error("power index requires a square matrix");
    if (cap < 1) throw error("power index cap must be at least 1");
    const std::size_t n = a.rows();
    PowerIndexResult res;
    res.cap_used = cap;

    RealMatrix base = a;
    const double base_scale = max_abs_norm(a);
    if (base_scale > 0.0)
        for (std::size_t i = 0; i < base.size(); ++i) base.data()[i] /= base_scale;

    RealMatrix p = RealMatrix::identity(n);
    int candidate = -1;
    int confirmed = 0;
    const int window = static_cast<int>(n);
    for (int k = 0; k <= cap + window; ++k) {
        if (k > 0) {
            p = p * base;
            const double s = max_abs_norm(p);
            if (s == 0.0) {
                candidate = -1;  // power collapsed to zero: nothing beyond is positive
                break;
            }
            for (std::size_t i = 0; i < p.size(); ++i) p.data()[i] /= s;
        }
        const bool positive = min_entry(p) > tol.abs_eps;
        if (candidate < 0) {
            if (positive && k <= cap) {
                candidate = k;
                confirmed = 0;
            }
        } else if (positive) {
            if (++confirmed >= window) {
                res.verdict = PowerIndexResult::Verdict::found;
                res.witness_exponent = candidate;
                return res;
            }
        } else {
            candidate = -1;  // positivity did not persist; keep searching
            confirmed = 0;
        }
    }
    if (candidate >= 0) {
        // Positive through the end of the scan; accept the candidate.
        res.verdict = PowerIndexResult::Verdict::found;
        res.witness_exponent = candidate;
    }
    return res;
}

bool is_primitive(const RealMatrix& a, const Tolerance& tol) {
    if (!a.square()) throw dimension_error("primitivity requires a square matrix");
    RealMatrix clamped = a;
    for (std::size_t i = 0; i < clamped.size(); ++i) {
        if (clamped.data()[i] < -tol.abs_eps)
            throw numerical_error("primitivity test requires a nonnegative matrix");
        if (clamped.data()[i] < 0.0) clamped.data()[i] = 0.0;
    }
    const long long nn = static_cast<long long>(a.rows());
    const int cap = static_cast<int>(std::max(1LL, nn * nn - 2 * nn + 2));
    const PowerIndexResult res = power_index(clamped, cap, tol);
    return res.verdict == PowerIndexResult::Verdict::found;
}

bool is_stochastic(const RealMatrix& a, const Tolerance& tol) {
    if (!a.square()) return false;
    if (min_entry(a) < -tol.abs_eps) return false;
    for (double s : row_sums(a))
        if (std::abs(s - 1.0) > tol.abs_eps) return false;
    return true;
}

bool is_eventually_stochastic(const RealMatrix& a, const Tolerance& tol, int cap) {
    if (!a.square()) return false;
    for (double s : row_sums(a))
        if (std::abs(s - 1.0) > tol.abs_eps) return false;
    if (!is_eventually_positive(a, tol)) return false;
    // Row sums of powers are then 1 automatically; spot-check the witness
    // exponent when the power scan finds one.
    const int use_cap = cap > 0 ? cap : default_power_cap(a.rows());
    const PowerIndexResult res = power_index(a, use_cap, tol);
    if (res.verdict == PowerIndexResult::Verdict::found && res.witness_exponent > 0) {
        const RealMatrix pk = matrix_power(a, static_cast<unsigned long long>(res.witness_exponent));
        for (double s : row_sums(pk))
            if (std::abs(s - 1.0) > tol.abs_eps * static_cast<double>(a.rows())) return false;
    }
    return true;
}

}  // namespace pfr
