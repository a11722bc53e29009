#include "tccc/linalg.hpp"

#include "tccc/errors.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <utility>

namespace tccc {

Matrix Matrix::identity(std::size_t n)
{
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        m(i, i) = 1;
    return m;
}

bool Matrix::is_zero() const
{
    return std::all_of(data_.begin(), data_.end(), [](const Rational& x) { return x == 0; });
}

Matrix Matrix::transpose() const
{
    Matrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c)
            t(c, r) = (*this)(r, c);
    return t;
}

Matrix operator*(const Matrix& a, const Matrix& b)
{
    if (a.cols_ != b.rows_)
        throw Error("matrix product: shape mismatch");
    Matrix out(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
        for (std::size_t k = 0; k < a.cols_; ++k) {
            const Rational& x = a(i, k);
            if (x == 0)
                continue;
            for (std::size_t j = 0; j < b.cols_; ++j) {
                const Rational& y = b(k, j);
                if (y != 0)
                    out(i, j) += x * y;
            }
        }
    }
    return out;
}

Matrix operator+(const Matrix& a, const Matrix& b)
{
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
        throw Error("matrix sum: shape mismatch");
    Matrix out = a;
    for (std::size_t i = 0; i < out.data_.size(); ++i)
        out.data_[i] += b.data_[i];
    return out;
}

Matrix operator-(const Matrix& a, const Matrix& b)
{
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
        throw Error("matrix difference: shape mismatch");
    Matrix out = a;
    for (std::size_t i = 0; i < out.data_.size(); ++i)
        out.data_[i] -= b.data_[i];
    return out;
}

Matrix operator*(const Rational& s, const Matrix& a)
{
    Matrix out = a;
    for (auto& x : out.data_)
        x *= s;
    return out;
}

std::size_t rank(const Matrix& m)
{
    std::vector<SparseRow> rows;
    rows.reserve(m.rows());
    for (std::size_t r = 0; r < m.rows(); ++r) {
        SparseRow row;
        for (std::size_t c = 0; c < m.cols(); ++c)
            if (m(r, c) != 0)
                row.push_back({static_cast<std::uint32_t>(c), m(r, c)});
        if (!row.empty())
            rows.push_back(std::move(row));
    }
    return sparse_rank(std::move(rows));
}

namespace {

// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> rref(Matrix& a, std::vector<Rational>* rhs)
{
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < a.cols() && row < a.rows(); ++col) {
        std::size_t p = row;
        while (p < a.rows() && a(p, col) == 0)
            ++p;
        if (p == a.rows())
            continue;
        if (p != row) {
            for (std::size_t c = 0; c < a.cols(); ++c)
                std::swap(a(p, c), a(row, c));
            if (rhs)
                std::swap((*rhs)[p], (*rhs)[row]);
        }
        const Rational inv = 1 / a(row, col);
        for (std::size_t c = col; c < a.cols(); ++c)
            a(row, c) *= inv;
        if (rhs)
            (*rhs)[row] *= inv;
        for (std::size_t r = 0; r < a.rows(); ++r) {
            if (r == row || a(r, col) == 0)
                continue;
            const Rational f = a(r, col);
            for (std::size_t c = col; c < a.cols(); ++c)
                a(r, c) -= f * a(row, c);
            if (rhs)
                (*rhs)[r] -= f * (*rhs)[row];
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

} // namespace

std::optional<std::vector<Rational>> solve(const Matrix& a, const std::vector<Rational>& b)
{
    if (b.size() != a.rows())
        throw Error("solve: shape mismatch");
    Matrix work = a;
    std::vector<Rational> rhs = b;
    const auto pivots = rref(work, &rhs);
    for (std::size_t r = pivots.size(); r < work.rows(); ++r)
        if (rhs[r] != 0)
            return std::nullopt;
    std::vector<Rational> x(a.cols());
    for (std::size_t i = 0; i < pivots.size(); ++i)
        x[pivots[i]] = rhs[i];
    return x;
}

std::vector<std::vector<Rational>> kernel_basis(const Matrix& a)
{
    Matrix work = a;
    const auto pivots = rref(work, nullptr);
    std::vector<bool> is_pivot(a.cols(), false);
    for (auto p : pivots)
        is_pivot[p] = true;
    std::vector<std::vector<Rational>> basis;
    for (std::size_t free = 0; free < a.cols(); ++free) {
        if (is_pivot[free])
            continue;
        std::vector<Rational> v(a.cols());
        v[free] = 1;
        for (std::size_t i = 0; i < pivots.size(); ++i)
            v[pivots[i]] = -work(i, free);
        basis.push_back(std::move(v));
    }
    return basis;
}

// ---------------------------------------------------------------------------
// Sparse fraction-free elimination.

namespace {

struct Overflow {};

struct Int64Ops {
    using T = std::int64_t;
    static constexpr T limit = std::numeric_limits<T>::max() / 4;

    static T mul(T a, T b)
    {
        T r;
        if (__builtin_mul_overflow(a, b, &r) || r > limit || r < -limit)
            throw Overflow{};
        return r;
    }
    static T sub(T a, T b)
    {
        T r;
        if (__builtin_sub_overflow(a, b, &r) || r > limit || r < -limit)
            throw Overflow{};
        return r;
    }
    static T gcd(T a, T b) { return std::gcd(a, b); }
    static bool is_zero(T a) { return a == 0; }
    static bool negative(T a) { return a < 0; }
};

struct GmpOps {
    using T = Integer;
    static T mul(const T& a, const T& b) { return a * b; }
    static T sub(const T& a, const T& b) { return a - b; }
    static T gcd(const T& a, const T& b) { return boost::multiprecision::gcd(a, b); }
    static bool is_zero(const T& a) { return a == 0; }
    static bool negative(const T& a) { return a < 0; }
};

template <class Ops>
using Row = std::vector<std::pair<std::uint32_t, typename Ops::T>>;

template <class Ops>
void make_primitive(Row<Ops>& row)
{
    if (row.empty())
        return;
    typename Ops::T g = 0;
    for (const auto& e : row) {
        g = Ops::gcd(g, e.second);
        if (g == 1)
            break;
    }
    const bool flip = Ops::negative(row.front().second);
    if (g != 1 || flip) {
        for (auto& e : row) {
            e.second = e.second / g;
            if (flip)
                e.second = -e.second;
        }
    }
}

template <class Ops>
std::size_t eliminate(std::vector<Row<Ops>> rows)
{
    using T = typename Ops::T;
    std::uint32_t max_col = 0;
    for (auto& row : rows) {
        std::sort(row.begin(), row.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
        if (!row.empty())
            max_col = std::max(max_col, row.back().first);
    }
    std::sort(rows.begin(), rows.end(), [](const auto& x, const auto& y) { return x.size() < y.size(); });

    constexpr std::size_t none = std::numeric_limits<std::size_t>::max();
    std::vector<std::size_t> pivot_of(static_cast<std::size_t>(max_col) + 1, none);
    std::vector<Row<Ops>> pivots;
    Row<Ops> scratch;
    for (auto& row : rows) {
        make_primitive<Ops>(row);
        while (!row.empty()) {
            const std::uint32_t lead = row.front().first;
            const std::size_t pi = pivot_of[lead];
            if (pi == none) {
                pivot_of[lead] = pivots.size();
                pivots.push_back(std::move(row));
                break;
            }
            const Row<Ops>& p = pivots[pi];
            T a = p.front().second;
            T b = row.front().second;
            const T g = Ops::gcd(a, b);
            a = a / g;
            b = b / g;
            // row <- a * row - b * p
            scratch.clear();
            std::size_t i = 0, j = 0;
            while (i < row.size() || j < p.size()) {
                if (j == p.size() || (i < row.size() && row[i].first < p[j].first)) {
                    scratch.emplace_back(row[i].first, Ops::mul(a, row[i].second));
                    ++i;
                } else if (i == row.size() || p[j].first < row[i].first) {
                    scratch.emplace_back(p[j].first, -Ops::mul(b, p[j].second));
                    ++j;
                } else {
                    T v = Ops::sub(Ops::mul(a, row[i].second), Ops::mul(b, p[j].second));
                    if (!Ops::is_zero(v))
                        scratch.emplace_back(row[i].first, std::move(v));
                    ++i;
                    ++j;
                }
            }
            std::swap(row, scratch);
            make_primitive<Ops>(row);
        }
    }
    return pivots.size();
}

} // namespace

std::size_t sparse_rank(std::vector<SparseIntRow> rows)
{
    std::vector<Row<Int64Ops>> small;
    small.reserve(rows.size());
    bool fits = true;
    for (const auto& row : rows) {
        Row<Int64Ops> r;
        r.reserve(row.size());
        for (const auto& e : row) {
            if (e.value == 0)
                continue;
            if (e.value > Int64Ops::limit || e.value < -Int64Ops::limit)
                fits = false;
            r.emplace_back(e.col, e.value);
        }
        if (!r.empty())
            small.push_back(std::move(r));
    }
    if (fits) {
        try {
            return eliminate<Int64Ops>(small);
        } catch (const Overflow&) {
        }
    }
    std::vector<Row<GmpOps>> big;
    big.reserve(small.size());
    for (const auto& row : small) {
        Row<GmpOps> r;
        r.reserve(row.size());
        for (const auto& e : row)
            r.emplace_back(e.first, Integer(e.second));
        big.push_back(std::move(r));
    }
    return eliminate<GmpOps>(std::move(big));
}

std::size_t sparse_rank(std::vector<SparseRow> rows)
{
    std::vector<Row<GmpOps>> big;
    big.reserve(rows.size());
    bool fits = true;
    for (const auto& row : rows) {
        Integer scale = 1;
        for (const auto& e : row)
            if (e.value != 0)
                scale = boost::multiprecision::lcm(scale, denominator_of(e.value));
        Row<GmpOps> r;
        for (const auto& e : row) {
            if (e.value == 0)
                continue;
            Integer v = numerator_of(e.value) * (scale / denominator_of(e.value));
            if (boost::multiprecision::abs(v) > Int64Ops::limit)
                fits = false;
            r.emplace_back(e.col, std::move(v));
        }
        if (!r.empty())
            big.push_back(std::move(r));
    }
    if (fits) {
        std::vector<Row<Int64Ops>> small;
        small.reserve(big.size());
        for (const auto& row : big) {
            Row<Int64Ops> r;
            r.reserve(row.size());
            for (const auto& e : row)
                r.emplace_back(e.first, e.second.convert_to<std::int64_t>());
            small.push_back(std::move(r));
        }
        try {
            return eliminate<Int64Ops>(std::move(small));
        } catch (const Overflow&) {
        }
    }
    return eliminate<GmpOps>(std::move(big));
}

// ---------------------------------------------------------------------------
// Smith normal form.

namespace {

IntegerMatrix identity_int(std::size_t n)
{
    IntegerMatrix m(n, std::vector<Integer>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
        m[i][i] = 1;
    return m;
}

void swap_rows(IntegerMatrix& m, std::size_t a, std::size_t b)
{
    if (a != b)
        std::swap(m[a], m[b]);
}

void swap_cols(IntegerMatrix& m, std::size_t a, std::size_t b)
{
    if (a == b)
        return;
    for (auto& row : m)
        std::swap(row[a], row[b]);
}

// row[target] += f * row[source]
void add_row(IntegerMatrix& m, std::size_t target, std::size_t source, const Integer& f)
{
    for (std::size_t c = 0; c < m[target].size(); ++c)
        m[target][c] += f * m[source][c];
}

void add_col(IntegerMatrix& m, std::size_t target, std::size_t source, const Integer& f)
{
    for (auto& row : m)
        row[target] += f * row[source];
}

} // namespace

SmithForm smith_normal_form(const IntegerMatrix& a)
{
    const std::size_t rows = a.size();
    const std::size_t cols = rows == 0 ? 0 : a.front().size();
    SmithForm f{identity_int(rows), identity_int(cols), a, 0};
    auto& s = f.s;

    std::size_t t = 0;
    while (t < rows && t < cols) {
        // smallest nonzero entry of the trailing block goes to (t, t)
        std::size_t bi = rows, bj = cols;
        for (std::size_t i = t; i < rows; ++i)
            for (std::size_t j = t; j < cols; ++j)
                if (s[i][j] != 0 && (bi == rows || abs(s[i][j]) < abs(s[bi][bj]))) {
                    bi = i;
                    bj = j;
                }
        if (bi == rows)
            break;
        swap_rows(s, t, bi);
        swap_rows(f.u, t, bi);
        swap_cols(s, t, bj);
        swap_cols(f.v, t, bj);

        for (;;) {
            bool clean = true;
            for (std::size_t i = t + 1; i < rows; ++i) {
                if (s[i][t] == 0)
                    continue;
                const Integer q = s[i][t] / s[t][t];
                add_row(s, i, t, -q);
                add_row(f.u, i, t, -q);
                if (s[i][t] != 0)
                    clean = false;
            }
            for (std::size_t j = t + 1; j < cols; ++j) {
                if (s[t][j] == 0)
                    continue;
                const Integer q = s[t][j] / s[t][t];
                add_col(s, j, t, -q);
                add_col(f.v, j, t, -q);
                if (s[t][j] != 0)
                    clean = false;
            }
            if (!clean) {
                std::size_t bi2 = t, bj2 = t;
                for (std::size_t i = t + 1; i < rows; ++i)
                    if (s[i][t] != 0 && abs(s[i][t]) < abs(s[bi2][bj2])) {
                        bi2 = i;
                        bj2 = t;
                    }
                for (std::size_t j = t + 1; j < cols; ++j)
                    if (s[t][j] != 0 && abs(s[t][j]) < abs(s[bi2][bj2])) {
                        bi2 = t;
                        bj2 = j;
                    }
                swap_rows(s, t, bi2);
                swap_rows(f.u, t, bi2);
                swap_cols(s, t, bj2);
                swap_cols(f.v, t, bj2);
                continue;
            }
            // divisibility of the trailing block by the pivot
            std::size_t bad = rows;
            for (std::size_t i = t + 1; i < rows && bad == rows; ++i)
                for (std::size_t j = t + 1; j < cols; ++j)
                    if (s[i][j] % s[t][t] != 0) {
                        bad = i;
                        break;
                    }
            if (bad == rows)
                break;
            add_row(s, t, bad, Integer(1));
            add_row(f.u, t, bad, Integer(1));
        }
        if (s[t][t] < 0) {
            for (auto& x : s[t])
                x = -x;
            for (auto& x : f.u[t])
                x = -x;
        }
        ++t;
    }
    f.rank = t;
    return f;
}

std::vector<Integer> elementary_divisors(const IntegerMatrix& a)
{
    const SmithForm f = smith_normal_form(a);
    std::vector<Integer> out;
    for (std::size_t i = 0; i < f.rank; ++i)
        out.push_back(f.s[i][i]);
    return out;
}

std::optional<std::vector<Integer>> integer_solution(const IntegerMatrix& a, const std::vector<Rational>& b)
{
    const std::size_t rows = a.size();
    if (b.size() != rows)
        throw Error("integer_solution: shape mismatch");
    const std::size_t cols = rows == 0 ? 0 : a.front().size();
    const SmithForm f = smith_normal_form(a);
    std::vector<Rational> ub(rows, Rational(0));
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t k = 0; k < rows; ++k)
            if (f.u[i][k] != 0)
                ub[i] += Rational(f.u[i][k]) * b[k];
    std::vector<Integer> y(cols, Integer(0));
    for (std::size_t i = 0; i < rows; ++i) {
        if (i < f.rank) {
            const Rational q = ub[i] / Rational(f.s[i][i]);
            if (!is_integer(q))
                return std::nullopt;
            y[i] = numerator_of(q);
        } else if (ub[i] != 0) {
            return std::nullopt;
        }
    }
    std::vector<Integer> m(cols, Integer(0));
    for (std::size_t i = 0; i < cols; ++i)
        for (std::size_t k = 0; k < cols; ++k)
            m[i] += f.v[i][k] * y[k];
    return m;
}

} // namespace tccc
