#include "pfr/svd.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace pfr {

namespace {

template <class T>
T unit_phase(T v) {
    const double m = std::abs(v);
    return m == 0.0 ? T{1} : v / m;
}

template <class T>
T dot_conj(const Mat<T>& w, std::size_t p, std::size_t q) {
    T acc{};
    for (std::size_t i = 0; i < w.rows(); ++i) {
        if constexpr (std::is_same_v<T, cdouble>)
            acc += std::conj(w(i, p)) * w(i, q);
        else
            acc += w(i, p) * w(i, q);
    }
    return acc;
}

}  // namespace

template <class T>
Svd<T> jacobi_svd(const Mat<T>& a, int max_sweeps) {
    if (a.empty()) return Svd<T>{};
    const std::size_t n = a.cols();
    Mat<T> w = a;
    Mat<T> v = Mat<T>::identity(n);
    std::vector<double> col_sq(n, 0.0);
    for (std::size_t j = 0; j < n; ++j) col_sq[j] = std::real(dot_conj(w, j, j));

    const double ortho_eps = 1e-14;
    bool rotated = true;
    int sweep = 0;
    while (rotated) {
        if (++sweep > max_sweeps) throw numerical_error("jacobi svd failed to converge");
        rotated = false;
        // Columns at rounding-noise scale are converged null directions;
        // rotating against them regenerates noise correlations forever.
        double max_sq = 0.0;
        for (double v : col_sq) max_sq = std::max(max_sq, v);
        const double zero_sq = 1e-30 * max_sq;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const T apq = dot_conj(w, p, q);
                const double app = col_sq[p], aqq = col_sq[q];
                if (app <= zero_sq || aqq <= zero_sq) continue;
                const double off = std::abs(apq);
                if (off <= ortho_eps * std::sqrt(app * aqq) || off == 0.0) continue;
                rotated = true;
                // Zero the (p,q) Gram entry: rotate against the phase-aligned
                // column pair, then fold the phase into the q side.
                const T phase = unit_phase(apq);
                const double tau = (aqq - app) / (2.0 * off);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                const T conj_phase = [&] {
                    if constexpr (std::is_same_v<T, cdouble>)
                        return std::conj(phase);
                    else
                        return phase;
                }();
                for (std::size_t i = 0; i < w.rows(); ++i) {
                    const T wp = w(i, p), wq = w(i, q);
                    w(i, p) = c * wp - (s * conj_phase) * wq;
                    w(i, q) = s * wp + (c * conj_phase) * wq;
                }
                for (std::size_t i = 0; i < n; ++i) {
                    const T vp = v(i, p), vq = v(i, q);
                    v(i, p) = c * vp - (s * conj_phase) * vq;
                    v(i, q) = s * vp + (c * conj_phase) * vq;
                }
                col_sq[p] = std::real(dot_conj(w, p, p));
                col_sq[q] = std::real(dot_conj(w, q, q));
            }
        }
    }

    Svd<T> out;
    out.sigma.resize(n);
    for (std::size_t j = 0; j < n; ++j) out.sigma[j] = std::sqrt(std::max(0.0, col_sq[j]));
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return out.sigma[x] > out.sigma[y]; });
    std::vector<double> sorted_sigma(n);
    Mat<T> sorted_v(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        sorted_sigma[j] = out.sigma[order[j]];
        for (std::size_t i = 0; i < n; ++i) sorted_v(i, j) = v(i, order[j]);
    }
    out.sigma = std::move(sorted_sigma);
    out.v = std::move(sorted_v);
    return out;
}

template Svd<double> jacobi_svd(const Mat<double>&, int);
template Svd<cdouble> jacobi_svd(const Mat<cdouble>&, int);

int svd_rank(const std::vector<double>& sigma, double rank_eps) {
    if (sigma.empty()) return 0;
    const double threshold = rank_eps * sigma.front();
    int rank = 0;
    for (double s : sigma)
        if (s > threshold && s > 0.0) ++rank;
    return rank;
}

template <class T>
int rank_of(const Mat<T>& a, double rank_eps) {
    return svd_rank(jacobi_svd(a).sigma, rank_eps);
}

template int rank_of(const Mat<double>&, double);
template int rank_of(const Mat<cdouble>&, double);

template <class T>
Mat<T> null_space_basis(const Mat<T>& a, double rank_eps) {
    const Svd<T> svd = jacobi_svd(a);
    const int rank = svd_rank(svd.sigma, rank_eps);
    const std::size_t n = a.cols();
    const std::size_t nullity = n - static_cast<std::size_t>(rank);
    if (nullity == 0) return Mat<T>();
    Mat<T> basis(n, nullity);
    for (std::size_t j = 0; j < nullity; ++j)
        for (std::size_t i = 0; i < n; ++i) basis(i, j) = svd.v(i, rank + j);
    return basis;
}

template Mat<double> null_space_basis(const Mat<double>&, double);
template Mat<cdouble> null_space_basis(const Mat<cdouble>&, double);

template <class T>
std::vector<T> pinv_solve(const Mat<T>& a, const std::vector<T>& b, double rank_eps) {
    if (a.rows() != b.size()) throw dimension_error("right-hand side length does not match");
    const Svd<T> svd = jacobi_svd(a);
    const int rank = svd_rank(svd.sigma, rank_eps);
    std::vector<T> x(a.cols(), T{});
    for (int j = 0; j < rank; ++j) {
        // u_j = a v_j / sigma_j, so the coefficient is (u_j^H b) / sigma_j.
        T coeff{};
        for (std::size_t i = 0; i < a.rows(); ++i) {
            T wij{};
            for (std::size_t l = 0; l < a.cols(); ++l) wij += a(i, l) * svd.v(l, j);
            if constexpr (std::is_same_v<T, cdouble>)
                coeff += std::conj(wij) * b[i];
            else
                coeff += wij * b[i];
        }
        coeff /= svd.sigma[j] * svd.sigma[j];
        for (std::size_t i = 0; i < a.cols(); ++i) x[i] += svd.v(i, j) * coeff;
    }
    return x;
}

template std::vector<double> pinv_solve(const Mat<double>&, const std::vector<double>&, double);
template std::vector<cdouble> pinv_solve(const Mat<cdouble>&, const std::vector<cdouble>&, double);

template <class T>
Mat<T> orthonormal_columns(const Mat<T>& a, double drop_eps) {
    if (a.empty()) return a;
    const std::size_t m = a.rows();
    std::vector<std::vector<T>> kept;
    for (std::size_t j = 0; j < a.cols(); ++j) {
        std::vector<T> v(m);
        double orig = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            v[i] = a(i, j);
            orig += std::norm(v[i]);
        }
        orig = std::sqrt(orig);
        if (orig == 0.0) continue;
        for (int pass = 0; pass < 2; ++pass) {
            for (const auto& u : kept) {
                T proj{};
                for (std::size_t i = 0; i < m; ++i) {
                    if constexpr (std::is_same_v<T, cdouble>)
                        proj += std::conj(u[i]) * v[i];
                    else
                        proj += u[i] * v[i];
                }
                for (std::size_t i = 0; i < m; ++i) v[i] -= proj * u[i];
            }
        }
        double rem = 0.0;
        for (std::size_t i = 0; i < m; ++i) rem += std::norm(v[i]);
        rem = std::sqrt(rem);
        if (rem <= drop_eps * orig) continue;
        for (std::size_t i = 0; i < m; ++i) v[i] /= rem;
        kept.push_back(std::move(v));
    }
    if (kept.empty()) return Mat<T>();
    Mat<T> out(m, kept.size());
    for (std::size_t j = 0; j < kept.size(); ++j)
        for (std::size_t i = 0; i < m; ++i) out(i, j) = kept[j][i];
    return out;
}

template Mat<double> orthonormal_columns(const Mat<double>&, double);
template Mat<cdouble> orthonormal_columns(const Mat<cdouble>&, double);

template <class T>
std::vector<T> project_out(const Mat<T>& basis, std::vector<T> v) {
    if (basis.empty()) return v;
    if (basis.rows() != v.size()) throw dimension_error("basis/vector dimensions do not match");
    for (int pass = 0; pass < 2; ++pass) {
        for (std::size_t j = 0; j < basis.cols(); ++j) {
            T proj{};
            for (std::size_t i = 0; i < v.size(); ++i) {
                if constexpr (std::is_same_v<T, cdouble>)
                    proj += std::conj(basis(i, j)) * v[i];
                else
                    proj += basis(i, j) * v[i];
            }
            for (std::size_t i = 0; i < v.size(); ++i) v[i] -= proj * basis(i, j);
        }
    }
    return v;
}

template std::vector<double> project_out(const Mat<double>&, std::vector<double>);
template std::vector<cdouble> project_out(const Mat<cdouble>&, std::vector<cdouble>);

}  // namespace pfr
