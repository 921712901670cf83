/**
 * Symmetric-group character machinery: Murnaghan-Nakayama evaluation through
 * beta numbers, conjugacy-class sizes, multiplicities of irreducibles in
 * characters given by traces, isotypic projectors, and multiplicities of
 * irreducibles in twisted characters induced from the hyperoctahedral group.
 */

#ifndef BRKZ_CHARACTERS_HPP
#define BRKZ_CHARACTERS_HPP

#include <functional>
#include <map>
#include <mutex>
#include <numeric>
#include <vector>

#include "errors.hpp"
#include "matrix.hpp"
#include "partition.hpp"
#include "permutation.hpp"
#include "rational.hpp"
#include "twist.hpp"
#include "wreath.hpp"

namespace brkz::symrep {

using CycleType = std::vector<int>;   // parts sorted descending, summing to n

/** All cycle types of the symmetric group on n letters. */
inline std::vector<CycleType> cycle_types_of(int n)
{
    std::vector<CycleType> out;
    for (const Partition& p : partitions_of(n)) out.push_back(p.parts);
    return out;
}

/** Size of the conjugacy class with the given cycle type: n! / prod k^{m_k} m_k!. */
inline Integer class_size(const CycleType& ct)
{
    int n = std::accumulate(ct.begin(), ct.end(), 0);
    Integer z = 1;
    std::map<int, int> mult;
    for (int k : ct) mult[k]++;
    for (auto [k, m] : mult) {
        for (int i = 0; i < m; ++i) z *= k;
        z *= factorial(m);
    }
    return factorial(n) / z;
}

namespace detail {

/** Beta set of lam with fixed length len: {lam_i + (len - i)} for i = 1..len. */
inline std::vector<int> beta_set(const Partition& lam, int len)
{
    std::vector<int> b;
    for (int i = 0; i < len; ++i) {
        int part = i < (int)lam.parts.size() ? lam.parts[i] : 0;
        b.push_back(part + (len - 1 - i));
    }
    std::sort(b.begin(), b.end());
    return b;
}

inline long long mn_recurse(std::vector<int> beta, const CycleType& ct, size_t idx,
                            std::map<std::pair<std::vector<int>, size_t>, long long>& memo)
{
    if (idx == ct.size()) return 1;   // beta is by then the staircase of the empty shape
    auto key = std::make_pair(beta, idx);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;

    const int r = ct[idx];
    long long total = 0;
    for (size_t k = 0; k < beta.size(); ++k) {
        int target = beta[k] - r;
        if (target < 0) continue;
        if (std::binary_search(beta.begin(), beta.end(), target)) continue;
        // rim hook removal: sign is (-1)^(number of beta entries passed over)
        int passed = 0;
        for (int b : beta)
            if (b > target && b < beta[k]) ++passed;
        std::vector<int> next = beta;
        next[k] = target;
        std::sort(next.begin(), next.end());
        long long sub = mn_recurse(std::move(next), ct, idx + 1, memo);
        total += (passed & 1) ? -sub : sub;
    }
    memo[key] = total;
    return total;
}

} // namespace detail

/** Value of the irreducible character chi_lam on the class of cycle type ct. */
inline long long irreducible_character(const Partition& lam, const CycleType& ct)
{
    int n = std::accumulate(ct.begin(), ct.end(), 0);
    if (lam.n() != n)
        throw validation_error("irreducible_character: |lambda| != sum of cycle type");
    std::map<std::pair<std::vector<int>, size_t>, long long> memo;
    int len = std::max<int>(1, (int)lam.parts.size());
    return detail::mn_recurse(detail::beta_set(lam, len), ct, 0, memo);
}

/**
 * Decomposition of a character given by its trace on each conjugacy class:
 * multiplicity of S_lam is (1/n!) sum_ct |class| * trace(ct) * chi_lam(ct).
 * Traces must come from an actual representation, so each multiplicity is
 * checked to be a nonnegative integer.
 */
inline std::map<Partition, long long>
decompose_character(int n, const std::function<Rational(const CycleType&)>& trace_at)
{
    std::vector<CycleType> types = cycle_types_of(n);
    std::vector<Rational> traces;
    traces.reserve(types.size());
    for (const auto& ct : types) traces.push_back(trace_at(ct));

    std::map<Partition, long long> out;
    const Integer order = factorial(n);
    for (const Partition& lam : partitions_of(n)) {
        Rational acc = 0;
        for (size_t k = 0; k < types.size(); ++k)
            acc += Rational(class_size(types[k])) * traces[k]
                 * Rational(irreducible_character(lam, types[k]));
        Rational mult = acc / Rational(order);
        if (denominator(mult) != 1 || numerator(mult) < 0)
            throw invariant_error("decompose_character: multiplicity of " + lam.to_string()
                                  + " is " + rational_to_string(mult));
        long long m = (long long)numerator(mult);
        if (m) out[lam] = m;
    }
    return out;
}

/**
 * Isotypic projector onto the S_lam-part of a representation given by its
 * matrices: (dim lam / n!) sum_g chi_lam(g) rho(g).
 */
inline exactla::RationalMatrix
isotypic_projector(const Partition& lam, int n,
                   const std::function<exactla::RationalMatrix(const Permutation&)>& rho)
{
    const int d = rho(Permutation(n)).rows;
    exactla::RationalMatrix sum(d, d);
    for_each_permutation(n, [&](const Permutation& g) {
        long long chi = irreducible_character(lam, g.cycle_type());
        if (chi == 0) return;
        sum = sum + rho(g).scaled(Rational(chi));
    });
    Rational c = Rational(lam.specht_dimension()) / Rational(factorial(n));
    return sum.scaled(c);
}

/**
 * Multiplicity of S_lam (|lam| = 2t) in the induction to S_2t of the rank-one
 * twisted character of the hyperoctahedral group S_2 wr S_t.  Class sums of
 * the twisted character are cached per (t, twist).
 */
inline long long induced_multiplicity(const Partition& lam, const TwistSignature& tw)
{
    if (lam.n() % 2 != 0)
        throw validation_error("induced_multiplicity: |lambda| must be even");
    const int t = lam.n() / 2;
    if (t > 7)
        throw cap_error("induced_multiplicity: t > 7 unsupported");
    if (t == 0) return 1;

    static std::map<std::pair<int, int>, std::map<CycleType, long long>> cache;
    static std::mutex cache_mutex;
    const int twkey = (tw.direction_minus ? 2 : 0) | (tw.order_minus ? 1 : 0);

    std::map<CycleType, long long> class_sums;
    {
        std::lock_guard<std::mutex> lock(cache_mutex);
        auto it = cache.find({t, twkey});
        if (it != cache.end()) class_sums = it->second;
    }
    if (class_sums.empty()) {
        for_each_wreath_element(t, [&](const WreathElement& w) {
            class_sums[w.to_permutation().cycle_type()] += w.twist_character(tw);
        });
        std::lock_guard<std::mutex> lock(cache_mutex);
        cache[{t, twkey}] = class_sums;
    }

    Rational acc = 0;
    for (const auto& [ct, a] : class_sums)
        if (a) acc += Rational(a) * Rational(irreducible_character(lam, ct));
    Integer order = factorial(t);
    order <<= t;   // |S_2 wr S_t| = 2^t t!
    Rational mult = acc / Rational(order);
    if (denominator(mult) != 1 || numerator(mult) < 0)
        throw invariant_error("induced_multiplicity: non-integral result for "
                              + lam.to_string());
    return (long long)numerator(mult);
}

} // namespace brkz::symrep

#endif
