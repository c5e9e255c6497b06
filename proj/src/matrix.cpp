#include "pfr/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "pfr/kernels.hpp"

namespace pfr {

namespace {

bool finite_scalar(double x) { return std::isfinite(x); }
bool finite_scalar(cdouble z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

void require_same_shape(std::size_t ar, std::size_t ac, std::size_t br, std::size_t bc) {
    if (ar != br || ac != bc) throw dimension_error("matrix shapes differ");
}

}  // namespace

template <class T>
Mat<T>::Mat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), entries_(rows * cols, T{}) {
    if (rows == 0 || cols == 0) throw dimension_error("matrix dimensions must be positive");
}

template <class T>
Mat<T>::Mat(std::size_t rows, std::size_t cols, std::vector<T> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
    if (rows == 0 || cols == 0) throw dimension_error("matrix dimensions must be positive");
    if (entries_.size() != rows * cols) throw dimension_error("entry count does not match dimensions");
    if (!all_finite()) throw numerical_error("matrix has a non-finite entry");
}

template <class T>
Mat<T> Mat<T>::identity(std::size_t n) {
    Mat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T{1};
    return m;
}

template <class T>
void Mat<T>::place(std::size_t i0, std::size_t j0, const Mat& block) {
    if (i0 + block.rows() > rows_ || j0 + block.cols() > cols_)
        throw dimension_error("block does not fit at the requested offset");
    for (std::size_t i = 0; i < block.rows(); ++i)
        for (std::size_t j = 0; j < block.cols(); ++j) (*this)(i0 + i, j0 + j) = block(i, j);
}

template <class T>
bool Mat<T>::all_finite() const {
    return std::all_of(entries_.begin(), entries_.end(), [](T v) { return finite_scalar(v); });
}

template class Mat<double>;
template class Mat<cdouble>;

RealMatrix operator*(const RealMatrix& a, const RealMatrix& b) {
    if (a.cols() != b.rows()) throw dimension_error("inner dimensions do not match");
    RealMatrix c(a.rows(), b.cols());
    kernels::ops().gemm(a.data(), b.data(), c.data(), a.rows(), a.cols(), b.cols());
    return c;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols() != b.rows()) throw dimension_error("inner dimensions do not match");
    ComplexMatrix c(a.rows(), b.cols());
    const std::size_t m = a.rows(), k = a.cols(), n = b.cols();
    for (std::size_t i = 0; i < m; ++i) {
        cdouble* ci = c.data() + i * n;
        const cdouble* ai = a.data() + i * k;
        for (std::size_t l = 0; l < k; ++l) {
            const cdouble ail = ai[l];
            const cdouble* bl = b.data() + l * n;
            for (std::size_t j = 0; j < n; ++j) ci[j] += ail * bl[j];
        }
    }
    return c;
}

template <class T>
Mat<T> operator+(const Mat<T>& a, const Mat<T>& b) {
    require_same_shape(a.rows(), a.cols(), b.rows(), b.cols());
    Mat<T> c(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.size(); ++i) c.data()[i] = a.data()[i] + b.data()[i];
    return c;
}

template <class T>
Mat<T> operator-(const Mat<T>& a, const Mat<T>& b) {
    require_same_shape(a.rows(), a.cols(), b.rows(), b.cols());
    Mat<T> c(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.size(); ++i) c.data()[i] = a.data()[i] - b.data()[i];
    return c;
}

template <class T>
Mat<T> operator*(T s, const Mat<T>& a) {
    Mat<T> c(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.size(); ++i) c.data()[i] = s * a.data()[i];
    return c;
}

template Mat<double> operator+(const Mat<double>&, const Mat<double>&);
template Mat<cdouble> operator+(const Mat<cdouble>&, const Mat<cdouble>&);
template Mat<double> operator-(const Mat<double>&, const Mat<double>&);
template Mat<cdouble> operator-(const Mat<cdouble>&, const Mat<cdouble>&);
template Mat<double> operator*(double, const Mat<double>&);
template Mat<cdouble> operator*(cdouble, const Mat<cdouble>&);

namespace {

template <class T>
double mag(T v) {
    return std::abs(v);
}

// In-place partial-pivot LU.  Returns the pivot row order and the smallest
// pivot magnitude seen.
template <class T>
double lu_factor(Mat<T>& a, std::vector<std::size_t>& perm) {
    const std::size_t n = a.rows();
    perm.resize(n);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    double min_pivot = std::numeric_limits<double>::infinity();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t best = col;
        double best_mag = mag(a(col, col));
        for (std::size_t i = col + 1; i < n; ++i) {
            const double m = mag(a(i, col));
            if (m > best_mag) {
                best_mag = m;
                best = i;
            }
        }
        if (best != col) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a(col, j), a(best, j));
            std::swap(perm[col], perm[best]);
        }
        min_pivot = std::min(min_pivot, best_mag);
        if (best_mag == 0.0) continue;  // exactly singular; caller decides
        const T inv_p = T{1} / a(col, col);
        for (std::size_t i = col + 1; i < n; ++i) {
            const T f = a(i, col) * inv_p;
            a(i, col) = f;
            for (std::size_t j = col + 1; j < n; ++j) a(i, j) -= f * a(col, j);
        }
    }
    return min_pivot;
}

}  // namespace

template <class T>
Mat<T> inverse(const Mat<T>& a, const Tolerance& tol) {
    if (!a.square()) throw dimension_error("inverse requires a square matrix");
    const std::size_t n = a.rows();
    Mat<T> lu = a;
    std::vector<std::size_t> perm;
    const double min_pivot = lu_factor(lu, perm);
    const double threshold = tol.scaled(max_abs_norm(a));
    if (min_pivot <= threshold)
        throw numerical_error("matrix is singular to tolerance (pivot " + std::to_string(min_pivot) + ")");
    Mat<T> inv(n, n);
    std::vector<T> x(n);
    for (std::size_t rhs = 0; rhs < n; ++rhs) {
        // Solve L y = P e_rhs, then U x = y.
        for (std::size_t i = 0; i < n; ++i) {
            T y = (perm[i] == rhs) ? T{1} : T{0};
            for (std::size_t j = 0; j < i; ++j) y -= lu(i, j) * x[j];
            x[i] = y;
        }
        for (std::size_t ii = n; ii-- > 0;) {
            T y = x[ii];
            for (std::size_t j = ii + 1; j < n; ++j) y -= lu(ii, j) * x[j];
            x[ii] = y / lu(ii, ii);
        }
        for (std::size_t i = 0; i < n; ++i) inv(i, rhs) = x[i];
    }
    return inv;
}

template Mat<double> inverse(const Mat<double>&, const Tolerance&);
template Mat<cdouble> inverse(const Mat<cdouble>&, const Tolerance&);

template <class T>
bool is_nonsingular(const Mat<T>& a, const Tolerance& tol) {
    if (!a.square()) throw dimension_error("nonsingularity requires a square matrix");
    Mat<T> lu = a;
    std::vector<std::size_t> perm;
    const double min_pivot = lu_factor(lu, perm);
    return min_pivot > tol.scaled(max_abs_norm(a));
}

template bool is_nonsingular(const Mat<double>&, const Tolerance&);
template bool is_nonsingular(const Mat<cdouble>&, const Tolerance&);

template <class T>
Mat<T> matrix_power(const Mat<T>& a, unsigned long long k) {
    if (!a.square()) throw dimension_error("power requires a square matrix");
    Mat<T> result = Mat<T>::identity(a.rows());
    Mat<T> base = a;
    while (k > 0) {
        if (k & 1ULL) result = result * base;
        k >>= 1ULL;
        if (k > 0) base = base * base;
    }
    return result;
}

template Mat<double> matrix_power(const Mat<double>&, unsigned long long);
template Mat<cdouble> matrix_power(const Mat<cdouble>&, unsigned long long);

double max_abs_norm(const RealMatrix& a) { return kernels::ops().max_abs(a.data(), a.size()); }

double max_abs_norm(const ComplexMatrix& a) {
    double m = 0.0;
    for (const cdouble& v : a.entries()) m = std::max(m, std::abs(v));
    return m;
}

double min_entry(const RealMatrix& a) { return kernels::ops().min_entry(a.data(), a.size()); }

bool is_entrywise_positive(const RealMatrix& a, const Tolerance& tol) {
    return min_entry(a) > tol.abs_eps;
}

template <class T>
Mat<T> transpose(const Mat<T>& a) {
    Mat<T> t(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
    return t;
}

template Mat<double> transpose(const Mat<double>&);
template Mat<cdouble> transpose(const Mat<cdouble>&);

ComplexMatrix conj_transpose(const ComplexMatrix& a) {
    ComplexMatrix t(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = std::conj(a(i, j));
    return t;
}

ComplexMatrix complexify(const RealMatrix& a) {
    ComplexMatrix c(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.size(); ++i) c.data()[i] = a.data()[i];
    return c;
}

RealMatrix real_part(const ComplexMatrix& a) {
    RealMatrix r(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.size(); ++i) r.data()[i] = a.data()[i].real();
    return r;
}

double max_imag_abs(const ComplexMatrix& a) {
    double m = 0.0;
    for (const cdouble& v : a.entries()) m = std::max(m, std::abs(v.imag()));
    return m;
}

std::vector<double> mat_vec(const RealMatrix& a, const std::vector<double>& v) {
    if (a.cols() != v.size()) throw dimension_error("matrix-vector dimensions do not match");
    std::vector<double> out(a.rows(), 0.0);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        double acc = 0.0;
        for (std::size_t j = 0; j < a.cols(); ++j) acc += a(i, j) * v[j];
        out[i] = acc;
    }
    return out;
}

std::vector<double> row_sums(const RealMatrix& a) {
    std::vector<double> out(a.rows(), 0.0);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        double acc = 0.0;
        for (std::size_t j = 0; j < a.cols(); ++j) acc += a(i, j);
        out[i] = acc;
    }
    return out;
}

}  // namespace pfr
