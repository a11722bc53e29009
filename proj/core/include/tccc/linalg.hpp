#pragma once

#include "tccc/rational.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace tccc {

/// Dense row-major matrix over the rationals.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    static Matrix identity(std::size_t n);
    static Matrix zero(std::size_t rows, std::size_t cols) { return Matrix(rows, cols); }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    bool is_zero() const;
    Matrix transpose() const;

    friend Matrix operator*(const Matrix& a, const Matrix& b);
    friend Matrix operator+(const Matrix& a, const Matrix& b);
    friend Matrix operator-(const Matrix& a, const Matrix& b);
    friend Matrix operator*(const Rational& s, const Matrix& a);
    friend bool operator==(const Matrix& a, const Matrix& b) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rational> data_;
};

std::size_t rank(const Matrix& m);

/// One solution of a x = b, if any.
std::optional<std::vector<Rational>> solve(const Matrix& a, const std::vector<Rational>& b);

/// Basis of the right kernel {x : a x = 0}.
std::vector<std::vector<Rational>> kernel_basis(const Matrix& a);

/// Sparse rows for rank computations. Columns need not be sorted on input.
struct SparseEntry {
    std::uint32_t col;
    Rational value;
};
using SparseRow = std::vector<SparseEntry>;

/// Exact rank by fraction-free sparse elimination. Rows are scaled to
/// integers first; a 64-bit path is tried before falling back to GMP.
std::size_t sparse_rank(std::vector<SparseRow> rows);

/// Same, for rows whose entries are already small integers.
struct SparseIntEntry {
    std::uint32_t col;
    std::int64_t value;
};
using SparseIntRow = std::vector<SparseIntEntry>;
std::size_t sparse_rank(std::vector<SparseIntRow> rows);

using IntegerMatrix = std::vector<std::vector<Integer>>;

/// Smith normal form u * a * v = s with u, v unimodular.
struct SmithForm {
    IntegerMatrix u;
    IntegerMatrix v;
    IntegerMatrix s;
    std::size_t rank = 0;
};
SmithForm smith_normal_form(const IntegerMatrix& a);

/// Nonzero diagonal entries of the Smith form (all positive).
std::vector<Integer> elementary_divisors(const IntegerMatrix& a);

/// An integer vector m with a m = b, if one exists.
std::optional<std::vector<Integer>> integer_solution(const IntegerMatrix& a, const std::vector<Rational>& b);

} // namespace tccc
