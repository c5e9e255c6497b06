#include "pfr/eigen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "pfr/svd.hpp"

namespace pfr {

std::vector<cdouble> SchurResult::eigenvalues() const {
    std::vector<cdouble> out(t.rows());
    for (std::size_t i = 0; i < t.rows(); ++i) out[i] = t(i, i);
    return out;
}

namespace {

cdouble unit_phase(cdouble v) {
    const double m = std::abs(v);
    return m == 0.0 ? cdouble{1.0, 0.0} : v / m;
}

// Rotation [[c, s], [-conj(s), c]] with c real that zeroes g against f.
struct Givens {
    double c = 1.0;
    cdouble s{0.0, 0.0};
};

Givens make_givens(cdouble f, cdouble g) {
    Givens rot;
    const double fa = std::abs(f), ga = std::abs(g);
    if (ga == 0.0) return rot;
    if (fa == 0.0) {
        rot.c = 0.0;
        rot.s = unit_phase(std::conj(g));
        return rot;
    }
    const double h = std::hypot(fa, ga);
    rot.c = fa / h;
    rot.s = (f / fa) * std::conj(g) / h;
    return rot;
}

void rotate_rows(ComplexMatrix& m, std::size_t r1, std::size_t r2, const Givens& g) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
        const cdouble a = m(r1, j), b = m(r2, j);
        m(r1, j) = g.c * a + g.s * b;
        m(r2, j) = -std::conj(g.s) * a + g.c * b;
    }
}

void rotate_cols(ComplexMatrix& m, std::size_t c1, std::size_t c2, const Givens& g) {
    for (std::size_t i = 0; i < m.rows(); ++i) {
        const cdouble a = m(i, c1), b = m(i, c2);
        m(i, c1) = g.c * a + std::conj(g.s) * b;
        m(i, c2) = -g.s * a + g.c * b;
    }
}

// Eigenvalue of [[a, b], [c, d]] closer to d.
cdouble wilkinson_shift(cdouble a, cdouble b, cdouble c, cdouble d) {
    const cdouble tr = a + d;
    const cdouble det = a * d - b * c;
    const cdouble disc = std::sqrt(tr * tr - 4.0 * det);
    const cdouble mu1 = 0.5 * (tr + disc);
    const cdouble mu2 = 0.5 * (tr - disc);
    return std::abs(mu1 - d) < std::abs(mu2 - d) ? mu1 : mu2;
}

void hessenberg_reduce(ComplexMatrix& h, ComplexMatrix& q) {
    const std::size_t n = h.rows();
    for (std::size_t col = 0; col + 2 < n; ++col) {
        double xnorm = 0.0;
        for (std::size_t i = col + 1; i < n; ++i) xnorm += std::norm(h(i, col));
        xnorm = std::sqrt(xnorm);
        if (xnorm == 0.0) continue;
        std::vector<cdouble> v(n, cdouble{});
        const cdouble alpha = -unit_phase(h(col + 1, col)) * xnorm;
        for (std::size_t i = col + 1; i < n; ++i) v[i] = h(i, col);
        v[col + 1] -= alpha;
        double vnorm = 0.0;
        for (std::size_t i = col + 1; i < n; ++i) vnorm += std::norm(v[i]);
        vnorm = std::sqrt(vnorm);
        if (vnorm == 0.0) continue;
        for (std::size_t i = col + 1; i < n; ++i) v[i] /= vnorm;
        // h <- (I - 2 v v^H) h
        for (std::size_t j = 0; j < n; ++j) {
            cdouble dot{};
            for (std::size_t i = col + 1; i < n; ++i) dot += std::conj(v[i]) * h(i, j);
            dot *= 2.0;
            for (std::size_t i = col + 1; i < n; ++i) h(i, j) -= dot * v[i];
        }
        // h <- h (I - 2 v v^H)
        for (std::size_t i = 0; i < n; ++i) {
            cdouble dot{};
            for (std::size_t j = col + 1; j < n; ++j) dot += h(i, j) * v[j];
            dot *= 2.0;
            for (std::size_t j = col + 1; j < n; ++j) h(i, j) -= dot * std::conj(v[j]);
        }
        // q <- q (I - 2 v v^H)
        for (std::size_t i = 0; i < n; ++i) {
            cdouble dot{};
            for (std::size_t j = col + 1; j < n; ++j) dot += q(i, j) * v[j];
            dot *= 2.0;
            for (std::size_t j = col + 1; j < n; ++j) q(i, j) -= dot * std::conj(v[j]);
        }
    }
}

}  // namespace

SchurResult complex_schur(const ComplexMatrix& a, const Tolerance&, const SpectralOptions& opts) {
    if (!a.square()) throw dimension_error("schur requires a square matrix");
    const std::size_t n = a.rows();
    SchurResult res;
    res.t = a;
    res.q = ComplexMatrix::identity(n);
    if (n == 1) return res;

    hessenberg_reduce(res.t, res.q);
    ComplexMatrix& h = res.t;
    ComplexMatrix& q = res.q;

    const int cap = opts.qr_iterations_per_n * static_cast<int>(n);
    std::size_t hi = n - 1;
    int stagnation = 0;
    while (true) {
        // Deflate converged trailing eigenvalues.
        bool deflated = true;
        while (deflated && hi > 0) {
            deflated = false;
            const double bound =
                opts.qr_deflation_eps * (std::abs(h(hi - 1, hi - 1)) + std::abs(h(hi, hi)));
            if (std::abs(h(hi, hi - 1)) <= bound) {
                h(hi, hi - 1) = 0.0;
                --hi;
                stagnation = 0;
                deflated = true;
            }
        }
        if (hi == 0) break;

        // Active window [lo, hi].
        std::size_t lo = hi;
        while (lo > 0) {
            const double bound =
                opts.qr_deflation_eps * (std::abs(h(lo - 1, lo - 1)) + std::abs(h(lo, lo)));
            if (std::abs(h(lo, lo - 1)) <= bound) {
                h(lo, lo - 1) = 0.0;
                break;
            }
            --lo;
        }

        if (++res.iterations > cap)
            throw numerical_error("qr iteration did not converge within " + std::to_string(cap) +
                                  " iterations");
        ++stagnation;
        cdouble mu;
        if (stagnation % 20 == 0) {
            mu = h(hi, hi) + 0.75 * std::abs(h(hi, hi - 1));
        } else {
            mu = wilkinson_shift(h(hi - 1, hi - 1), h(hi - 1, hi), h(hi, hi - 1), h(hi, hi));
        }

        // Single-shift bulge chase over the window.
        cdouble x = h(lo, lo) - mu;
        cdouble z = h(lo + 1, lo);
        for (std::size_t k = lo; k < hi; ++k) {
            const Givens rot = make_givens(x, z);
            rotate_rows(h, k, k + 1, rot);
            rotate_cols(h, k, k + 1, rot);
            rotate_cols(q, k, k + 1, rot);
            if (k + 1 < hi) {
                x = h(k + 1, k);
                z = h(k + 2, k);
            }
        }
    }

    // The iteration drives subdiagonals below the deflation threshold; clear
    // the strict lower triangle so t is exactly upper triangular.
    for (std::size_t i = 1; i < n; ++i)
        for (std::size_t j = 0; j < i; ++j) h(i, j) = 0.0;
    return res;
}

int SpectrumSummary::find(cdouble value, double eps) const {
    int best = -1;
    double best_dist = eps;
    for (std::size_t i = 0; i < distinct.size(); ++i) {
        const double d = std::abs(distinct[i].value - value);
        if (d <= best_dist) {
            best_dist = d;
            best = static_cast<int>(i);
        }
    }
    return best;
}

SpectrumSummary cluster_eigenvalues(const std::vector<cdouble>& raw, double cluster_eps) {
    const std::size_t n = raw.size();
    SpectrumSummary out;
    out.n = static_cast<int>(n);
    if (n == 0) return out;

    // Transitive union of values within cluster_eps of each other.
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    auto find_root = [&](std::size_t i) {
        while (parent[i] != i) i = parent[i] = parent[parent[i]];
        return i;
    };
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (std::abs(raw[i] - raw[j]) <= cluster_eps) parent[find_root(i)] = find_root(j);

    struct Cluster {
        cdouble rep;
        int count = 0;
    };
    std::vector<Cluster> clusters;
    std::vector<int> cluster_of(n, -1);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t root = find_root(i);
        if (cluster_of[root] < 0) {
            cluster_of[root] = static_cast<int>(clusters.size());
            clusters.push_back({});
        }
        Cluster& cl = clusters[cluster_of[root]];
        cl.rep += raw[i];
        cl.count += 1;
    }
    for (Cluster& cl : clusters) cl.rep /= static_cast<double>(cl.count);

    // A chain-merged cluster wider than 2 eps means some member sat within
    // eps of two groups that are not close to each other.
    for (std::size_t i = 0; i < n; ++i) {
        const Cluster& cl = clusters[cluster_of[find_root(i)]];
        if (std::abs(raw[i] - cl.rep) > 2.0 * cluster_eps)
            throw numerical_error("ambiguous eigenvalue clustering near " +
                                  std::to_string(cl.rep.real()) + "+" +
                                  std::to_string(cl.rep.imag()) + "i");
    }

    // Snap near-real and near-zero representatives.
    for (Cluster& cl : clusters) {
        if (std::abs(cl.rep.imag()) <= cluster_eps) cl.rep = cdouble(cl.rep.real(), 0.0);
        if (std::abs(cl.rep) <= cluster_eps) cl.rep = cdouble(0.0, 0.0);
    }

    std::vector<Cluster> reals, pos_imag, neg_imag;
    for (const Cluster& cl : clusters) {
        if (cl.rep.imag() == 0.0)
            reals.push_back(cl);
        else if (cl.rep.imag() > 0.0)
            pos_imag.push_back(cl);
        else
            neg_imag.push_back(cl);
    }

    std::sort(reals.begin(), reals.end(),
              [](const Cluster& a, const Cluster& b) { return a.rep.real() > b.rep.real(); });
    std::sort(pos_imag.begin(), pos_imag.end(), [](const Cluster& a, const Cluster& b) {
        if (a.rep.real() != b.rep.real()) return a.rep.real() > b.rep.real();
        return a.rep.imag() > b.rep.imag();
    });

    for (const Cluster& cl : reals) {
        out.distinct.push_back({cl.rep, cl.count, 0});
        if (cl.rep.real() > 0.0)
            ++out.r1;
        else if (cl.rep.real() < 0.0)
            ++out.r2;
        else
            ++out.zeros;
    }

    // Match conjugate pairs exactly; representatives are averaged so the
    // stored pair is exactly conjugate.
    std::vector<bool> used(neg_imag.size(), false);
    for (const Cluster& top : pos_imag) {
        int match = -1;
        double best = 2.0 * cluster_eps;
        for (std::size_t j = 0; j < neg_imag.size(); ++j) {
            if (used[j]) continue;
            const double dist = std::abs(std::conj(top.rep) - neg_imag[j].rep);
            if (dist <= best) {
                best = dist;
                match = static_cast<int>(j);
            }
        }
        if (match < 0 || neg_imag[match].count != top.count)
            throw numerical_error("unpaired complex eigenvalue near " +
                                  std::to_string(top.rep.real()) + "+" +
                                  std::to_string(top.rep.imag()) + "i");
        used[match] = true;
        const cdouble rep = 0.5 * (top.rep + std::conj(neg_imag[match].rep));
        out.distinct.push_back({rep, top.count, 0});
        out.distinct.push_back({std::conj(rep), top.count, 0});
        ++out.c;
    }
    for (std::size_t j = 0; j < neg_imag.size(); ++j)
        if (!used[j])
            throw numerical_error("unpaired complex eigenvalue near " +
                                  std::to_string(neg_imag[j].rep.real()) + "+" +
                                  std::to_string(neg_imag[j].rep.imag()) + "i");

    out.s = static_cast<int>(out.distinct.size());
    int total = 0;
    for (const DistinctEigenvalue& ev : out.distinct) total += ev.multiplicity;
    if (total != out.n) throw numerical_error("clustering lost multiplicity");
    return out;
}

int JordanStructure::total_blocks() const {
    int t = 0;
    for (const auto& b : blocks) t += static_cast<int>(b.size());
    return t;
}

JordanStructure jordan_structure(const ComplexMatrix& a, SpectrumSummary& summary,
                                 const SpectralOptions& opts) {
    if (!a.square()) throw dimension_error("jordan structure requires a square matrix");
    JordanStructure js;
    js.blocks.resize(summary.distinct.size());
    for (std::size_t idx = 0; idx < summary.distinct.size(); ++idx) {
        DistinctEigenvalue& ev = summary.distinct[idx];
        ComplexMatrix m = a;
        for (std::size_t i = 0; i < m.rows(); ++i) m(i, i) -= ev.value;
        const double scale = std::max(1.0, max_abs_norm(m));
        for (std::size_t i = 0; i < m.size(); ++i) m.data()[i] /= scale;

        // w_k = rank(m^{k-1}) - rank(m^k) counts blocks of size >= k.
        std::vector<int> w;
        ComplexMatrix power = ComplexMatrix::identity(m.rows());
        int prev_rank = static_cast<int>(m.rows());
        int accounted = 0;
        for (int k = 1; k <= ev.multiplicity && accounted < ev.multiplicity; ++k) {
            power = power * m;
            const double pscale = max_abs_norm(power);
            if (pscale > 0.0) {
                for (std::size_t i = 0; i < power.size(); ++i) power.data()[i] /= pscale;
            }
            const int rk = rank_of(power, opts.rank_eps);
            const int wk = prev_rank - rk;
            if (wk < 0 || (!w.empty() && wk > w.back()))
                throw numerical_error("inconsistent rank sequence for eigenvalue " +
                                      std::to_string(ev.value.real()) + "+" +
                                      std::to_string(ev.value.imag()) + "i");
            w.push_back(wk);
            accounted += wk;
            prev_rank = rk;
        }
        if (accounted != ev.multiplicity)
            throw numerical_error("rank data does not match multiplicity for eigenvalue " +
                                  std::to_string(ev.value.real()) + "+" +
                                  std::to_string(ev.value.imag()) + "i");
        std::vector<int>& sizes = js.blocks[idx];
        for (int k = static_cast<int>(w.size()); k >= 1; --k) {
            const int next = (k < static_cast<int>(w.size())) ? w[k] : 0;
            const int exact = w[k - 1] - next;
            for (int b = 0; b < exact; ++b) sizes.push_back(k);
        }
        std::sort(sizes.begin(), sizes.end(), std::greater<int>());
        ev.index = sizes.empty() ? 0 : sizes.front();
    }
    summary.t = js.total_blocks();
    return js;
}

SpectralAnalysis analyze_spectrum(const RealMatrix& a, const Tolerance& tol,
                                  const SpectralOptions& opts) {
    if (!a.square()) throw dimension_error("spectral analysis requires a square matrix");
    const double cluster_eps = opts.cluster_eps_scale * std::max(1.0, max_abs_norm(a));
    const ComplexMatrix ac = complexify(a);
    const SchurResult schur = complex_schur(ac, tol, opts);
    SpectralAnalysis out;
    out.summary = cluster_eigenvalues(schur.eigenvalues(), cluster_eps);
    out.structure = jordan_structure(ac, out.summary, opts);
    return out;
}

AscentSequence ascent_sequence(const RealMatrix& a, const SpectralOptions& opts) {
    if (!a.square()) throw dimension_error("ascent sequence requires a square matrix");
    const std::size_t n = a.rows();
    AscentSequence seq;
    seq.d.assign(n, 0);
    RealMatrix b = a;
    const double scale = std::max(1.0, max_abs_norm(a));
    for (std::size_t i = 0; i < b.size(); ++i) b.data()[i] /= scale;

    RealMatrix power = RealMatrix::identity(n);
    int prev_nullity = 0;
    for (std::size_t i = 1; i <= n; ++i) {
        power = power * b;
        const double pscale = max_abs_norm(power);
        if (pscale > 0.0)
            for (std::size_t j = 0; j < power.size(); ++j) power.data()[j] /= pscale;
        const int nullity = static_cast<int>(n) - rank_of(power, opts.rank_eps);
        seq.d[i - 1] = nullity - prev_nullity;
        if (nullity == prev_nullity) break;  // null spaces have stabilized
        prev_nullity = nullity;
    }
    return seq;
}

AscentSequence ascent_from_nilpotent_blocks(const std::vector<int>& sizes, int n) {
    AscentSequence seq;
    seq.d.assign(static_cast<std::size_t>(n), 0);
    for (int i = 1; i <= n; ++i) {
        int count = 0;
        for (int sz : sizes)
            if (sz >= i) ++count;
        seq.d[i - 1] = count;
    }
    return seq;
}

bool ascent_admits_pth_root(const AscentSequence& seq, int p) {
    if (p < 2) throw error("p must exceed 1");
    int max_d = 0;
    for (int d : seq.d) max_d = std::max(max_d, d);
    for (int nu = 0; nu * p <= max_d; ++nu) {
        int inside = 0;
        for (int d : seq.d)
            if (d > nu * p && d < (nu + 1) * p) ++inside;
        if (inside > 1) return false;
    }
    return true;
}

bool pth_root_exists(const RealMatrix& a, int p, const SpectralOptions& opts) {
    return ascent_admits_pth_root(ascent_sequence(a, opts), p);
}

bool real_pth_root_exists(const RealMatrix& a, int p, const Tolerance& tol,
                          const SpectralOptions& opts) {
    if (!pth_root_exists(a, p, opts)) return false;
    if (p % 2 == 1) return true;
    const SpectralAnalysis analysis = analyze_spectrum(a, tol, opts);
    for (std::size_t i = 0; i < analysis.summary.distinct.size(); ++i) {
        const DistinctEigenvalue& ev = analysis.summary.distinct[i];
        if (ev.value.imag() != 0.0 || ev.value.real() >= 0.0) continue;
        // Count blocks of each size; all counts must be even.
        const std::vector<int>& sizes = analysis.structure.blocks[i];
        for (std::size_t j = 0; j < sizes.size();) {
            std::size_t k = j;
            while (k < sizes.size() && sizes[k] == sizes[j]) ++k;
            if ((k - j) % 2 != 0) return false;
            j = k;
        }
    }
    return true;
}

}  // namespace pfr
