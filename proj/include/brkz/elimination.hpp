/**
 * Exact elimination: fraction-free (Bareiss) rank with Markowitz-count
 * pivoting on integer-scaled copies, rational echelon solves for kernel and
 * image bases, and a mod-p rank pre-pass.  The Bareiss sweep updates every
 * active row each step, which keeps all intermediate divisions exact.
 */

#ifndef BRKZ_ELIMINATION_HPP
#define BRKZ_ELIMINATION_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "matrix.hpp"

namespace brkz::exactla {

namespace detail {

/** Row-sparse integer copy; each row scaled by the lcm of its denominators. */
inline std::vector<std::map<int, Integer>> integer_rows(const RationalMatrix& m)
{
    std::vector<std::map<int, Integer>> out(m.rows);
    std::vector<Integer> scale(m.rows, Integer(1));
    for (int j = 0; j < m.cols; ++j)
        for (const auto& [i, v] : m.col[j])
            scale[i] = boost::multiprecision::lcm(scale[i], Integer(denominator(v)));
    for (int j = 0; j < m.cols; ++j)
        for (const auto& [i, v] : m.col[j])
            out[i][j] = Integer(numerator(v)) * (scale[i] / Integer(denominator(v)));
    return out;
}

} // namespace detail

/** Exact rank by fraction-free elimination, pivot chosen by Markowitz count. */
inline int rank(const RationalMatrix& m)
{
    auto rows = detail::integer_rows(m);
    std::vector<char> row_done(m.rows, 0);
    std::vector<int> col_count(m.cols, 0);
    for (int i = 0; i < m.rows; ++i)
        for (const auto& [j, v] : rows[i]) col_count[j]++;

    Integer prev_pivot = 1;
    int r = 0;
    for (;;) {
        int pr = -1, pc = -1;
        long long best = -1;
        for (int i = 0; i < m.rows; ++i) {
            if (row_done[i] || rows[i].empty()) continue;
            long long rc = (long long)rows[i].size() - 1;
            for (const auto& [j, v] : rows[i]) {
                long long score = rc * (col_count[j] - 1);
                if (best < 0 || score < best) { best = score; pr = i; pc = j; }
            }
            if (best == 0) break;
        }
        if (pr < 0) break;

        const Integer pivot = rows[pr][pc];
        const std::map<int, Integer> prow = rows[pr];
        for (int i = 0; i < m.rows; ++i) {
            if (i == pr || row_done[i] || rows[i].empty()) continue;
            auto it = rows[i].find(pc);
            const Integer fi = (it == rows[i].end()) ? Integer(0) : it->second;
            std::map<int, Integer> updated;
            auto pi = prow.begin();
            auto xi = rows[i].begin();
            // a_ij <- (a_ij * pivot - a_ic * a_rj) / prev_pivot over the union support
            while (pi != prow.end() || xi != rows[i].end()) {
                int jj;
                Integer xv = 0, pv = 0;
                if (xi == rows[i].end() || (pi != prow.end() && pi->first < xi->first)) {
                    jj = pi->first; pv = pi->second; ++pi;
                } else if (pi == prow.end() || xi->first < pi->first) {
                    jj = xi->first; xv = xi->second; ++xi;
                } else {
                    jj = xi->first; xv = xi->second; pv = pi->second; ++pi; ++xi;
                }
                Integer nv = (xv * pivot - fi * pv) / prev_pivot;
                bool had = (xv != 0), has = (nv != 0) && jj != pc;
                if (has) updated[jj] = nv;
                if (had && !has) col_count[jj]--;
                if (!had && has) col_count[jj]++;
            }
            rows[i] = std::move(updated);
        }
        for (const auto& [j, v] : prow) col_count[j]--;
        rows[pr].clear();
        row_done[pr] = 1;
        prev_pivot = pivot;
        ++r;
    }
    return r;
}

/** Proper row echelon over the rationals; pivot rows keep their leading columns. */
struct Echelon {
    std::vector<std::map<int, Rational>> rows;
    std::vector<std::pair<int, int>> pivots;   // (row, col) in ascending column order
    std::vector<char> is_pivot_col;
};

inline Echelon echelon_form(const RationalMatrix& m)
{
    Echelon e;
    e.rows.assign(m.rows, {});
    for (int j = 0; j < m.cols; ++j)
        for (const auto& [i, v] : m.col[j]) e.rows[i][j] = v;
    e.is_pivot_col.assign(m.cols, 0);
    std::vector<char> row_used(m.rows, 0);
    for (int j = 0; j < m.cols; ++j) {
        int pr = -1;
        size_t best = 0;
        for (int i = 0; i < m.rows; ++i) {
            if (row_used[i]) continue;
            auto it = e.rows[i].find(j);
            if (it == e.rows[i].end()) continue;
            if (pr < 0 || e.rows[i].size() < best) { pr = i; best = e.rows[i].size(); }
        }
        if (pr < 0) continue;
        row_used[pr] = 1;
        e.pivots.push_back({pr, j});
        e.is_pivot_col[j] = 1;
        const Rational pv = e.rows[pr][j];
        const std::map<int, Rational> prow = e.rows[pr];
        for (int i = 0; i < m.rows; ++i) {
            if (row_used[i]) continue;
            auto it = e.rows[i].find(j);
            if (it == e.rows[i].end()) continue;
            Rational f = it->second / pv;
            for (const auto& [jj, vv] : prow) {
                auto& cell = e.rows[i][jj];
                cell -= f * vv;
                if (cell == 0) e.rows[i].erase(jj);
            }
        }
    }
    return e;
}

/** Columns of m forming a basis of its column space (original columns at pivot indices). */
inline RationalMatrix image_basis(const RationalMatrix& m)
{
    Echelon e = echelon_form(m);
    std::vector<int> idx;
    for (auto& [r, c] : e.pivots) idx.push_back(c);
    std::sort(idx.begin(), idx.end());
    return m.select_columns(idx);
}

/** Basis of ker(m): one column per free column, filled by back-substitution. */
inline RationalMatrix kernel_basis(const RationalMatrix& m)
{
    Echelon e = echelon_form(m);
    std::vector<int> free_cols;
    for (int j = 0; j < m.cols; ++j)
        if (!e.is_pivot_col[j]) free_cols.push_back(j);
    RationalMatrix k(m.cols, (int)free_cols.size());
    std::vector<Rational> x(m.cols);
    for (size_t f = 0; f < free_cols.size(); ++f) {
        std::fill(x.begin(), x.end(), Rational(0));
        x[free_cols[f]] = 1;
        for (auto it = e.pivots.rbegin(); it != e.pivots.rend(); ++it) {
            auto [pr, pc] = *it;
            Rational acc = 0;
            for (const auto& [jj, vv] : e.rows[pr])
                if (jj > pc) acc += vv * x[jj];
            x[pc] = -acc / e.rows[pr].at(pc);
        }
        for (int j = 0; j < m.cols; ++j)
            if (x[j] != 0) k.add_entry(j, (int)f, x[j]);
    }
    return k;
}

/**
 * Reusable exact solver for A x = b with fixed A.  The constructor reduces
 * [A | I] to reduced row echelon form once; each solve is a sparse transform
 * of b plus a consistency check, with no further elimination.
 */
class Solver {
public:
    explicit Solver(const RationalMatrix& a) : rows_(a.rows), cols_(a.cols)
    {
        // rows of [A | I]: A-part keyed by 0..cols-1, I-part keyed by cols..cols+rows-1
        u_.assign(a.rows, {});
        for (int j = 0; j < a.cols; ++j)
            for (const auto& [i, v] : a.col[j]) u_[i][j] = v;
        for (int i = 0; i < a.rows; ++i) u_[i][a.cols + i] = 1;

        std::vector<char> row_used(a.rows, 0);
        for (int j = 0; j < a.cols; ++j) {
            int pr = -1;
            size_t best = 0;
            for (int i = 0; i < a.rows; ++i) {
                if (row_used[i]) continue;
                auto it = u_[i].find(j);
                if (it == u_[i].end()) continue;
                if (pr < 0 || u_[i].size() < best) { pr = i; best = u_[i].size(); }
            }
            if (pr < 0) continue;
            row_used[pr] = 1;
            pivots_.push_back({pr, j});
            // scale pivot row to leading 1, then clear column j everywhere else
            Rational pv = u_[pr][j];
            for (auto& [jj, vv] : u_[pr]) vv /= pv;
            const std::map<int, Rational> prow = u_[pr];
            for (int i = 0; i < a.rows; ++i) {
                if (i == pr) continue;
                auto it = u_[i].find(j);
                if (it == u_[i].end()) continue;
                Rational f = it->second;
                for (const auto& [jj, vv] : prow) {
                    auto& cell = u_[i][jj];
                    cell -= f * vv;
                    if (cell == 0) u_[i].erase(jj);
                }
            }
        }
        pivot_row_.assign(a.rows, 0);
        for (auto [pr, pc] : pivots_) pivot_row_[pr] = 1;
    }

    int rank() const { return (int)pivots_.size(); }

    /** Coordinates x with A x = b, or nullopt if b is outside the column space. */
    std::optional<std::vector<Rational>> solve(const std::vector<Rational>& b) const
    {
        if ((int)b.size() != rows_) throw std::invalid_argument("rhs length mismatch");
        // transformed rhs entry for row i: sum_k T[i][k] b[k] via the I-part keys
        std::vector<Rational> x(cols_, Rational(0));
        for (int i = 0; i < rows_; ++i) {
            Rational c = 0;
            auto it = u_[i].lower_bound(cols_);
            for (; it != u_[i].end(); ++it) {
                const Rational& bk = b[it->first - cols_];
                if (bk != 0) c += it->second * bk;
            }
            if (pivot_row_[i]) continue;     // handled below; defer to pivot pass
            if (c != 0) return std::nullopt; // inconsistent: zero row with nonzero rhs
        }
        for (auto [pr, pc] : pivots_) {
            Rational c = 0;
            auto it = u_[pr].lower_bound(cols_);
            for (; it != u_[pr].end(); ++it) {
                const Rational& bk = b[it->first - cols_];
                if (bk != 0) c += it->second * bk;
            }
            x[pc] = c;   // RREF with free variables pinned to zero
        }
        return x;
    }

    /** Membership test that also returns coordinates; verifies A x = b exactly. */
    std::optional<std::vector<Rational>> solve_checked(const RationalMatrix& a,
                                                       const std::vector<Rational>& b) const
    {
        auto x = solve(b);
        if (!x) return std::nullopt;
        auto ax = a.apply(*x);
        for (int i = 0; i < rows_; ++i)
            if (ax[i] != b[i]) return std::nullopt;
        return x;
    }

private:
    int rows_, cols_;
    std::vector<std::map<int, Rational>> u_;
    std::vector<std::pair<int, int>> pivots_;
    std::vector<char> pivot_row_;
};

/** Rank modulo a prime (fast probabilistic pre-pass; exact result is authoritative). */
inline int rank_mod_p(const RationalMatrix& m, uint64_t p)
{
    std::vector<std::map<int, uint64_t>> rows(m.rows);
    auto mod = [&](const Integer& z) -> uint64_t {
        Integer r = z % Integer(p);
        if (r < 0) r += p;
        return (uint64_t)r;
    };
    auto inv = [&](uint64_t a) -> uint64_t {
        uint64_t r = 1, b = a, e = p - 2;
        while (e) {
            if (e & 1) r = (uint64_t)((__uint128_t)r * b % p);
            b = (uint64_t)((__uint128_t)b * b % p);
            e >>= 1;
        }
        return r;
    };
    for (int j = 0; j < m.cols; ++j)
        for (const auto& [i, v] : m.col[j]) {
            uint64_t num = mod(Integer(numerator(v)));
            uint64_t den = mod(Integer(denominator(v)));
            if (den == 0) return -1;   // prime divides a denominator: caller retries
            uint64_t e = (uint64_t)((__uint128_t)num * inv(den) % p);
            if (e) rows[i][j] = e;
        }
    int r = 0;
    std::vector<char> used(m.rows, 0);
    for (int j = 0; j < m.cols; ++j) {
        int pr = -1;
        for (int i = 0; i < m.rows; ++i)
            if (!used[i] && rows[i].count(j)) { pr = i; break; }
        if (pr < 0) continue;
        used[pr] = 1;
        ++r;
        uint64_t pv_inv = inv(rows[pr][j]);
        const std::map<int, uint64_t> prow = rows[pr];
        for (int i = 0; i < m.rows; ++i) {
            if (used[i]) continue;
            auto it = rows[i].find(j);
            if (it == rows[i].end()) continue;
            uint64_t f = (uint64_t)((__uint128_t)it->second * pv_inv % p);
            for (const auto& [jj, vv] : prow) {
                uint64_t sub = (uint64_t)((__uint128_t)f * vv % p);
                auto& cell = rows[i][jj];
                cell = (cell + p - sub) % p;
                if (cell == 0) rows[i].erase(jj);
            }
        }
    }
    return r;
}

} // namespace brkz::exactla

#endif
