// Copyright 2026 The Morita Tori Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cassert>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

#include "morita/errors.hpp"
#include "morita/rational.hpp"

namespace morita {

/// Dense row-major matrix over an exact ring. Empty shapes (0xm, mx0) are
/// ordinary values; every operation below accepts them.
template <typename T>
class Matrix {
   public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {
    }
    Matrix(std::initializer_list<std::initializer_list<T>> init) {
        rows_ = init.size();
        cols_ = rows_ == 0 ? 0 : init.begin()->size();
        data_.reserve(rows_ * cols_);
        for (const auto &row : init) {
            if (row.size() != cols_) {
                throw MoritaError(ErrorCode::ShapeMismatch, "ragged matrix literal");
            }
            for (const auto &v : row) {
                data_.push_back(v);
            }
        }
    }

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; i++) {
            m(i, i) = 1;
        }
        return m;
    }
    static Matrix zero(std::size_t rows, std::size_t cols) {
        return Matrix(rows, cols);
    }
    static Matrix diagonal(const std::vector<T> &entries) {
        Matrix m(entries.size(), entries.size());
        for (std::size_t i = 0; i < entries.size(); i++) {
            m(i, i) = entries[i];
        }
        return m;
    }

    std::size_t rows() const noexcept {
        return rows_;
    }
    std::size_t cols() const noexcept {
        return cols_;
    }
    bool is_square() const noexcept {
        return rows_ == cols_;
    }
    bool empty() const noexcept {
        return data_.empty();
    }

    T &operator()(std::size_t i, std::size_t j) {
        assert(i < rows_ && j < cols_);
        return data_[i * cols_ + j];
    }
    const T &operator()(std::size_t i, std::size_t j) const {
        assert(i < rows_ && j < cols_);
        return data_[i * cols_ + j];
    }

    bool is_zero() const {
        for (const auto &v : data_) {
            if (v != 0) {
                return false;
            }
        }
        return true;
    }

    bool is_skew() const {
        if (!is_square()) {
            return false;
        }
        for (std::size_t i = 0; i < rows_; i++) {
            for (std::size_t j = i; j < cols_; j++) {
                if ((*this)(i, j) != -(*this)(j, i)) {
                    return false;
                }
            }
        }
        return true;
    }

    Matrix transpose() const {
        Matrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; i++) {
            for (std::size_t j = 0; j < cols_; j++) {
                t(j, i) = (*this)(i, j);
            }
        }
        return t;
    }

    Matrix block(std::size_t r0, std::size_t c0, std::size_t h, std::size_t w) const {
        if (r0 + h > rows_ || c0 + w > cols_) {
            throw MoritaError(ErrorCode::ShapeMismatch, "block out of range");
        }
        Matrix b(h, w);
        for (std::size_t i = 0; i < h; i++) {
            for (std::size_t j = 0; j < w; j++) {
                b(i, j) = (*this)(r0 + i, c0 + j);
            }
        }
        return b;
    }

    void set_block(std::size_t r0, std::size_t c0, const Matrix &b) {
        if (r0 + b.rows() > rows_ || c0 + b.cols() > cols_) {
            throw MoritaError(ErrorCode::ShapeMismatch, "set_block out of range");
        }
        for (std::size_t i = 0; i < b.rows(); i++) {
            for (std::size_t j = 0; j < b.cols(); j++) {
                (*this)(r0 + i, c0 + j) = b(i, j);
            }
        }
    }

    Matrix column(std::size_t j) const {
        return block(0, j, rows_, 1);
    }
    Matrix row(std::size_t i) const {
        return block(i, 0, 1, cols_);
    }

    void swap_rows(std::size_t a, std::size_t b) {
        if (a == b) {
            return;
        }
        for (std::size_t j = 0; j < cols_; j++) {
            std::swap((*this)(a, j), (*this)(b, j));
        }
    }
    void swap_cols(std::size_t a, std::size_t b) {
        if (a == b) {
            return;
        }
        for (std::size_t i = 0; i < rows_; i++) {
            std::swap((*this)(i, a), (*this)(i, b));
        }
    }
    /// row[dst] += factor * row[src]
    void add_row_multiple(std::size_t dst, std::size_t src, const T &factor) {
        if (factor == 0) {
            return;
        }
        for (std::size_t j = 0; j < cols_; j++) {
            (*this)(dst, j) += factor * (*this)(src, j);
        }
    }
    /// col[dst] += factor * col[src]
    void add_col_multiple(std::size_t dst, std::size_t src, const T &factor) {
        if (factor == 0) {
            return;
        }
        for (std::size_t i = 0; i < rows_; i++) {
            (*this)(i, dst) += factor * (*this)(i, src);
        }
    }
    void negate_row(std::size_t i) {
        for (std::size_t j = 0; j < cols_; j++) {
            (*this)(i, j) = -(*this)(i, j);
        }
    }
    void negate_col(std::size_t j) {
        for (std::size_t i = 0; i < rows_; i++) {
            (*this)(i, j) = -(*this)(i, j);
        }
    }

    const std::vector<T> &data() const noexcept {
        return data_;
    }

    friend bool operator==(const Matrix &a, const Matrix &b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

    Matrix &operator+=(const Matrix &o) {
        require_same_shape(o);
        for (std::size_t i = 0; i < data_.size(); i++) {
            data_[i] += o.data_[i];
        }
        return *this;
    }
    Matrix &operator-=(const Matrix &o) {
        require_same_shape(o);
        for (std::size_t i = 0; i < data_.size(); i++) {
            data_[i] -= o.data_[i];
        }
        return *this;
    }
    Matrix &operator*=(const T &s) {
        for (auto &v : data_) {
            v *= s;
        }
        return *this;
    }

    friend Matrix operator+(Matrix a, const Matrix &b) {
        a += b;
        return a;
    }
    friend Matrix operator-(Matrix a, const Matrix &b) {
        a -= b;
        return a;
    }
    friend Matrix operator-(Matrix a) {
        for (auto &v : a.data_) {
            v = -v;
        }
        return a;
    }
    friend Matrix operator*(Matrix a, const T &s) {
        a *= s;
        return a;
    }
    friend Matrix operator*(const T &s, Matrix a) {
        a *= s;
        return a;
    }
    friend Matrix operator*(const Matrix &a, const Matrix &b) {
        if (a.cols_ != b.rows_) {
            throw MoritaError(ErrorCode::ShapeMismatch,
                              "product of " + a.shape_string() + " and " + b.shape_string());
        }
        Matrix c(a.rows_, b.cols_);
        T tmp;
        for (std::size_t i = 0; i < a.rows_; i++) {
            for (std::size_t k = 0; k < a.cols_; k++) {
                const T &aik = a(i, k);
                if (aik == 0) {
                    continue;
                }
                for (std::size_t j = 0; j < b.cols_; j++) {
                    tmp = aik * b(k, j);
                    c(i, j) += tmp;
                }
            }
        }
        return c;
    }

    std::string shape_string() const {
        return std::to_string(rows_) + "x" + std::to_string(cols_);
    }

   private:
    void require_same_shape(const Matrix &o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_) {
            throw MoritaError(ErrorCode::ShapeMismatch, shape_string() + " vs " + o.shape_string());
        }
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

using IntMatrix = Matrix<Integer>;
using RatMatrix = Matrix<Rational>;

template <typename T>
Matrix<T> hstack(std::initializer_list<Matrix<T>> parts) {
    std::size_t rows = parts.size() == 0 ? 0 : parts.begin()->rows();
    std::size_t cols = 0;
    for (const auto &p : parts) {
        if (p.rows() != rows) {
            throw MoritaError(ErrorCode::ShapeMismatch, "hstack row mismatch");
        }
        cols += p.cols();
    }
    Matrix<T> out(rows, cols);
    std::size_t c = 0;
    for (const auto &p : parts) {
        out.set_block(0, c, p);
        c += p.cols();
    }
    return out;
}

template <typename T>
Matrix<T> vstack(std::initializer_list<Matrix<T>> parts) {
    std::size_t cols = parts.size() == 0 ? 0 : parts.begin()->cols();
    std::size_t rows = 0;
    for (const auto &p : parts) {
        if (p.cols() != cols) {
            throw MoritaError(ErrorCode::ShapeMismatch, "vstack column mismatch");
        }
        rows += p.rows();
    }
    Matrix<T> out(rows, cols);
    std::size_t r = 0;
    for (const auto &p : parts) {
        out.set_block(r, 0, p);
        r += p.rows();
    }
    return out;
}

template <typename T>
Matrix<T> block_diag(std::initializer_list<Matrix<T>> parts) {
    std::size_t rows = 0, cols = 0;
    for (const auto &p : parts) {
        rows += p.rows();
        cols += p.cols();
    }
    Matrix<T> out(rows, cols);
    std::size_t r = 0, c = 0;
    for (const auto &p : parts) {
        out.set_block(r, c, p);
        r += p.rows();
        c += p.cols();
    }
    return out;
}

/// [[A, B], [C, D]] for conformable blocks.
template <typename T>
Matrix<T> assemble(const Matrix<T> &a, const Matrix<T> &b, const Matrix<T> &c, const Matrix<T> &d) {
    return vstack<T>({hstack<T>({a, b}), hstack<T>({c, d})});
}

RatMatrix to_rational(const IntMatrix &m);
/// Nullopt when some entry has a denominator other than 1.
std::optional<IntMatrix> to_integer(const RatMatrix &m);
bool is_integral(const RatMatrix &m);

/// Entry-wise "p/q" strings, one bracketed row per line; used for witnesses.
std::string format_matrix(const RatMatrix &m);
std::string format_matrix(const IntMatrix &m);

}  // namespace morita
