/**
 * Sparse exact-rational matrices, column-major: each column is a sorted
 * (row, value) list with no explicit zeros.  Differentials are assembled
 * column-by-column from basis images, so columns are the unit of work.
 */

#ifndef BRKZ_MATRIX_HPP
#define BRKZ_MATRIX_HPP

#include <algorithm>
#include <stdexcept>
#include <string>
#include <vector>

#include "rational.hpp"

namespace brkz::exactla {

struct RationalMatrix {
    int rows = 0, cols = 0;
    std::vector<std::vector<std::pair<int, Rational>>> col;   // col[j]: sorted by row

    RationalMatrix() = default;
    RationalMatrix(int r, int c) : rows(r), cols(c), col(c) {}

    static RationalMatrix identity(int n)
    {
        RationalMatrix m(n, n);
        for (int i = 0; i < n; ++i) m.col[i].push_back({i, Rational(1)});
        return m;
    }

    static RationalMatrix zero(int r, int c) { return RationalMatrix(r, c); }

    void add_entry(int r, int c, const Rational& v)
    {
        if (r < 0 || r >= rows || c < 0 || c >= cols) throw std::out_of_range("matrix index");
        if (v == 0) return;
        auto& cl = col[c];
        auto it = std::lower_bound(cl.begin(), cl.end(), r,
                                   [](const auto& e, int row) { return e.first < row; });
        if (it != cl.end() && it->first == r) {
            it->second += v;
            if (it->second == 0) cl.erase(it);
        } else {
            cl.insert(it, {r, v});
        }
    }

    Rational at(int r, int c) const
    {
        for (const auto& [i, v] : col[c])
            if (i == r) return v;
        return Rational(0);
    }

    long long nnz() const
    {
        long long n = 0;
        for (const auto& cl : col) n += (long long)cl.size();
        return n;
    }

    bool is_zero() const { return nnz() == 0; }

    bool operator==(const RationalMatrix& o) const
    {
        return rows == o.rows && cols == o.cols && col == o.col;
    }

    RationalMatrix transpose() const
    {
        RationalMatrix t(cols, rows);
        for (int j = 0; j < cols; ++j)
            for (const auto& [i, v] : col[j])
                t.col[i].push_back({j, v});
        return t;   // built in ascending j per row: already sorted
    }

    RationalMatrix operator*(const RationalMatrix& b) const
    {
        if (cols != b.rows) throw std::invalid_argument("matrix product shape mismatch");
        RationalMatrix p(rows, b.cols);
        std::vector<Rational> acc(rows, Rational(0));
        std::vector<int> touched;
        for (int j = 0; j < b.cols; ++j) {
            touched.clear();
            for (const auto& [k, bv] : b.col[j])
                for (const auto& [i, av] : col[k]) {
                    if (acc[i] == 0) touched.push_back(i);
                    acc[i] += av * bv;
                }
            std::sort(touched.begin(), touched.end());
            for (int i : touched) {
                if (acc[i] != 0) p.col[j].push_back({i, acc[i]});
                acc[i] = 0;
            }
        }
        return p;
    }

    RationalMatrix operator+(const RationalMatrix& b) const
    {
        if (rows != b.rows || cols != b.cols) throw std::invalid_argument("matrix sum shape mismatch");
        RationalMatrix s(rows, cols);
        for (int j = 0; j < cols; ++j) {
            auto &x = col[j], &y = b.col[j];
            size_t i = 0, k = 0;
            while (i < x.size() || k < y.size()) {
                if (k == y.size() || (i < x.size() && x[i].first < y[k].first)) s.col[j].push_back(x[i++]);
                else if (i == x.size() || y[k].first < x[i].first) s.col[j].push_back(y[k++]);
                else {
                    Rational v = x[i].second + y[k].second;
                    if (v != 0) s.col[j].push_back({x[i].first, v});
                    ++i; ++k;
                }
            }
        }
        return s;
    }

    RationalMatrix scaled(const Rational& c) const
    {
        RationalMatrix s = *this;
        if (c == 0) return RationalMatrix(rows, cols);
        for (auto& cl : s.col)
            for (auto& e : cl) e.second *= c;
        return s;
    }

    RationalMatrix operator-(const RationalMatrix& b) const { return *this + b.scaled(Rational(-1)); }

    std::vector<Rational> apply(const std::vector<Rational>& x) const
    {
        if ((int)x.size() != cols) throw std::invalid_argument("vector length mismatch");
        std::vector<Rational> y(rows, Rational(0));
        for (int j = 0; j < cols; ++j) {
            if (x[j] == 0) continue;
            for (const auto& [i, v] : col[j]) y[i] += v * x[j];
        }
        return y;
    }

    Rational trace() const
    {
        Rational t = 0;
        int n = std::min(rows, cols);
        for (int j = 0; j < n; ++j) t += at(j, j);
        return t;
    }

    void set_column(int j, const std::vector<Rational>& v)
    {
        col[j].clear();
        for (int i = 0; i < rows; ++i)
            if (v[i] != 0) col[j].push_back({i, v[i]});
    }

    std::vector<Rational> column_dense(int j) const
    {
        std::vector<Rational> v(rows, Rational(0));
        for (const auto& [i, val] : col[j]) v[i] = val;
        return v;
    }

    /** Horizontal concatenation [A | B]. */
    static RationalMatrix hcat(const RationalMatrix& a, const RationalMatrix& b)
    {
        if (a.rows != b.rows) throw std::invalid_argument("hcat row mismatch");
        RationalMatrix m(a.rows, a.cols + b.cols);
        for (int j = 0; j < a.cols; ++j) m.col[j] = a.col[j];
        for (int j = 0; j < b.cols; ++j) m.col[a.cols + j] = b.col[j];
        return m;
    }

    RationalMatrix select_columns(const std::vector<int>& idx) const
    {
        RationalMatrix m(rows, (int)idx.size());
        for (size_t k = 0; k < idx.size(); ++k) m.col[k] = col[idx[k]];
        return m;
    }

    std::string to_string() const
    {
        std::string s;
        for (int i = 0; i < rows; ++i) {
            for (int j = 0; j < cols; ++j)
                s += rational_to_string(at(i, j)) + (j + 1 < cols ? "\t" : "");
            s += "\n";
        }
        return s;
    }
};

/** Kronecker product; column (i, j) of the result is a_col_i (x) b_col_j. */
inline RationalMatrix kronecker(const RationalMatrix& a, const RationalMatrix& b)
{
    RationalMatrix m(a.rows * b.rows, a.cols * b.cols);
    for (int i = 0; i < a.cols; ++i)
        for (int j = 0; j < b.cols; ++j) {
            auto& out = m.col[i * b.cols + j];
            for (const auto& [ra, va] : a.col[i])
                for (const auto& [rb, vb] : b.col[j]) out.push_back({ra * b.rows + rb, va * vb});
        }
    return m;
}

} // namespace brkz::exactla

#endif
