#pragma once

#include <cstddef>
#include <vector>

#include "pfr/common.hpp"

namespace pfr {

// Dense row-major matrix over double or std::complex<double>.  Dimensions
// are fixed at construction; entries of value-constructed matrices are
// checked finite.  All operations below are pure and values are safe to
// share across threads once built.
template <class T>
class Mat {
  public:
    Mat() = default;  // empty 0x0 sentinel
    Mat(std::size_t rows, std::size_t cols);  // zero-filled
    Mat(std::size_t rows, std::size_t cols, std::vector<T> entries);

    static Mat identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t size() const { return entries_.size(); }
    bool square() const { return rows_ == cols_; }
    bool empty() const { return entries_.empty(); }

    T& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }

    T* data() { return entries_.data(); }
    const T* data() const { return entries_.data(); }
    const std::vector<T>& entries() const { return entries_; }

    // Writes `block` with its (0,0) entry at (i0,j0); must fit.
    void place(std::size_t i0, std::size_t j0, const Mat& block);

    bool all_finite() const;

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> entries_;
};

using RealMatrix = Mat<double>;
using ComplexMatrix = Mat<cdouble>;

RealMatrix operator*(const RealMatrix& a, const RealMatrix& b);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

template <class T>
Mat<T> operator+(const Mat<T>& a, const Mat<T>& b);
template <class T>
Mat<T> operator-(const Mat<T>& a, const Mat<T>& b);
template <class T>
Mat<T> operator*(T s, const Mat<T>& a);

// B with ||a B - I|| small; partial-pivot LU.  Throws numerical_error when
// the smallest pivot falls below tol.scaled(max_abs_norm(a)).
template <class T>
Mat<T> inverse(const Mat<T>& a, const Tolerance& tol = {});

template <class T>
bool is_nonsingular(const Mat<T>& a, const Tolerance& tol = {});

// a^k by repeated squaring; a^0 = I.
template <class T>
Mat<T> matrix_power(const Mat<T>& a, unsigned long long k);

// Max-entry norm max_ij |a_ij|.
double max_abs_norm(const RealMatrix& a);
double max_abs_norm(const ComplexMatrix& a);

double min_entry(const RealMatrix& a);

// Every entry strictly above tol.abs_eps.
bool is_entrywise_positive(const RealMatrix& a, const Tolerance& tol = {});

template <class T>
Mat<T> transpose(const Mat<T>& a);
ComplexMatrix conj_transpose(const ComplexMatrix& a);

ComplexMatrix complexify(const RealMatrix& a);
RealMatrix real_part(const ComplexMatrix& a);
double max_imag_abs(const ComplexMatrix& a);

std::vector<double> mat_vec(const RealMatrix& a, const std::vector<double>& v);
std::vector<double> row_sums(const RealMatrix& a);

}  // namespace pfr
