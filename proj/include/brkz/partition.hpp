/**
 * Integer partitions: conjugates, hook lengths, enumeration, the Frobenius
 * condition cutting out Q1(2n), and the "(a,b,c)" display form used in
 * reports.  Partitions are weakly decreasing lists of positive parts.
 */

#ifndef BRKZ_PARTITION_HPP
#define BRKZ_PARTITION_HPP

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "rational.hpp"

namespace brkz::symrep {

struct Partition {
    std::vector<int> parts;

    Partition() = default;
    explicit Partition(std::vector<int> p) : parts(std::move(p))
    {
        for (size_t i = 0; i < parts.size(); ++i) {
            if (parts[i] <= 0) throw std::invalid_argument("nonpositive part");
            if (i && parts[i] > parts[i - 1]) throw std::invalid_argument("parts not sorted");
        }
    }

    int n() const { int s = 0; for (int p : parts) s += p; return s; }
    int length() const { return (int)parts.size(); }
    bool operator==(const Partition&) const = default;
    auto operator<=>(const Partition&) const = default;

    Partition conjugate() const
    {
        std::vector<int> c;
        for (int i = 0; !parts.empty() && parts[0] > i; ++i) {
            int cnt = 0;
            for (int p : parts) cnt += (p > i);
            c.push_back(cnt);
        }
        return Partition(c);
    }

    /** Exact dimension of the Specht module S_lambda (hook-length formula). */
    Integer specht_dimension() const
    {
        Partition conj = conjugate();
        Integer hooks = 1;
        for (int i = 0; i < length(); ++i)
            for (int j = 0; j < parts[i]; ++j)
                hooks *= (parts[i] - j) + (conj.parts[j] - i) - 1;
        Integer f = factorial(n());
        return f / hooks;
    }

    std::string to_string() const
    {
        std::string s = "(";
        for (int i = 0; i < length(); ++i) {
            if (i) s += ",";
            s += std::to_string(parts[i]);
        }
        return s + ")";
    }
};

inline std::vector<Partition> partitions_of(int n)
{
    std::vector<Partition> out;
    std::vector<int> cur;
    std::function<void(int, int)> rec = [&](int rest, int maxpart) {
        if (rest == 0) { out.push_back(Partition(cur)); return; }
        for (int p = std::min(rest, maxpart); p >= 1; --p) {
            cur.push_back(p);
            rec(rest - p, p);
            cur.pop_back();
        }
    };
    rec(n, n < 1 ? 1 : n);
    return out;   // lexicographically decreasing-first order; stable for reports
}

/**
 * Frobenius test for Q1(2n): arm length equals leg length plus one on every
 * diagonal cell, i.e. lambda_i - i = lambda'_i - i + 1 whenever lambda'_i >= i
 * (1-indexed).  These index the Schur constituents of Lambda^n(S^2).
 */
inline bool in_q1(const Partition& lam)
{
    Partition conj = lam.conjugate();
    for (int i = 1; i <= lam.length(); ++i) {
        int li  = lam.parts[i - 1];
        int ci  = (i - 1 < conj.length()) ? conj.parts[i - 1] : 0;
        if (ci >= i && li - i != ci - i + 1) return false;
        if (ci < i) break;  // diagonal exhausted
    }
    return true;
}

inline std::vector<Partition> q1_partitions(int two_n)
{
    if (two_n < 0 || two_n % 2 != 0) throw std::invalid_argument("q1_partitions needs an even argument");
    std::vector<Partition> out;
    for (const Partition& lam : partitions_of(two_n))
        if (in_q1(lam)) out.push_back(lam);
    return out;
}

/** Partitions with every column length even (constituents of S^n(Lambda^2)). */
inline bool all_columns_even(const Partition& lam)
{
    for (int p : lam.conjugate().parts)
        if (p % 2) return false;
    return true;
}

} // namespace brkz::symrep

#endif
