// Small dense matrices over double or Rational. Dimensions here never exceed
// a handful of rows, so a simple vector-backed layout with Gaussian
// elimination is all that is needed.
#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "kvlab/rational.hpp"

namespace kvlab {

template <class T>
class Mat {
public:
    Mat() : rows_(0), cols_(0) {}
    Mat(std::size_t rows, std::size_t cols, T fill = T(0))
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    static Mat identity(std::size_t n) {
        Mat m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    friend Mat operator+(const Mat& a, const Mat& b) {
        Mat r = a;
        for (std::size_t i = 0; i < r.data_.size(); ++i) r.data_[i] += b.data_[i];
        return r;
    }
    friend Mat operator-(const Mat& a, const Mat& b) {
        Mat r = a;
        for (std::size_t i = 0; i < r.data_.size(); ++i) r.data_[i] -= b.data_[i];
        return r;
    }
    friend Mat operator*(const Mat& a, const Mat& b) {
        if (a.cols_ != b.rows_) throw std::invalid_argument("Mat: size mismatch");
        Mat r(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                T aik = a(i, k);
                if (scalar_is_zero(aik)) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) r(i, j) += aik * b(k, j);
            }
        return r;
    }
    friend Mat operator*(const T& s, const Mat& a) {
        Mat r = a;
        for (auto& v : r.data_) v = s * v;
        return r;
    }

    std::vector<T> apply(const std::vector<T>& x) const {
        if (x.size() != cols_) throw std::invalid_argument("Mat::apply: size mismatch");
        std::vector<T> y(rows_, T(0));
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) y[i] += (*this)(i, j) * x[j];
        return y;
    }

    T det() const {
        if (rows_ != cols_) throw std::invalid_argument("Mat::det: not square");
        Mat a = *this;
        T d(1);
        for (std::size_t k = 0; k < rows_; ++k) {
            std::size_t p = a.pivot_row(k);
            if (scalar_is_zero(a(p, k))) return T(0);
            if (p != k) {
                a.swap_rows(p, k);
                d = -d;
            }
            d *= a(k, k);
            for (std::size_t i = k + 1; i < rows_; ++i) {
                T f = a(i, k) / a(k, k);
                for (std::size_t j = k; j < cols_; ++j) a(i, j) -= f * a(k, j);
            }
        }
        return d;
    }

    // Solves A x = b for each column of b; throws on a singular pivot.
    Mat solve(const Mat& b) const {
        if (rows_ != cols_ || b.rows_ != rows_)
            throw std::invalid_argument("Mat::solve: size mismatch");
        Mat a = *this;
        Mat rhs = b;
        for (std::size_t k = 0; k < rows_; ++k) {
            std::size_t p = a.pivot_row(k);
            if (scalar_is_zero(a(p, k))) throw std::domain_error("Mat::solve: singular matrix");
            if (p != k) {
                a.swap_rows(p, k);
                rhs.swap_rows(p, k);
            }
            for (std::size_t i = k + 1; i < rows_; ++i) {
                T f = a(i, k) / a(k, k);
                if (scalar_is_zero(f)) continue;
                for (std::size_t j = k; j < cols_; ++j) a(i, j) -= f * a(k, j);
                for (std::size_t j = 0; j < rhs.cols_; ++j) rhs(i, j) -= f * rhs(k, j);
            }
        }
        Mat x(rows_, rhs.cols_);
        for (std::size_t jc = 0; jc < rhs.cols_; ++jc)
            for (std::size_t ii = rows_; ii-- > 0;) {
                T s = rhs(ii, jc);
                for (std::size_t j = ii + 1; j < cols_; ++j) s -= a(ii, j) * x(j, jc);
                x(ii, jc) = s / a(ii, ii);
            }
        return x;
    }

    Mat inverse() const { return solve(identity(rows_)); }

    friend bool operator==(const Mat& a, const Mat& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

private:
    std::size_t pivot_row(std::size_t k) const {
        if constexpr (std::is_floating_point_v<T>) {
            std::size_t p = k;
            T best = std::abs((*this)(k, k));
            for (std::size_t i = k + 1; i < rows_; ++i)
                if (std::abs((*this)(i, k)) > best) {
                    best = std::abs((*this)(i, k));
                    p = i;
                }
            return p;
        } else {
            for (std::size_t i = k; i < rows_; ++i)
                if (!scalar_is_zero((*this)(i, k))) return i;
            return k;
        }
    }

    void swap_rows(std::size_t i, std::size_t j) {
        for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(i, c), (*this)(j, c));
    }

    std::size_t rows_, cols_;
    std::vector<T> data_;
};

template <class T>
Mat<double> to_double_mat(const Mat<T>& m) {
    Mat<double> r(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = scalar_to_double(m(i, j));
    return r;
}

}  // namespace kvlab
