/**
 * The upward Brauer category ub and its four twisted linearizations.  A
 * morphism m -> n is an injection plus a perfect matching (chords) on the
 * complement of its image; standard form orients every chord (min,max) and
 * sorts chords by first endpoint.  Twists sign chord flips and/or chord
 * reorderings.  The downward category db is ub with arrows reversed, and FB
 * sits inside db via alpha -> alpha^{-1}; composition follows the ordered
 * category FIord-ev by concatenating transported complement orders.
 * Points are 0-based internally, 1-based in printed output.
 */

#ifndef BRKZ_BRAUER_HPP
#define BRKZ_BRAUER_HPP

#include <map>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "permutation.hpp"
#include "rational.hpp"
#include "twist.hpp"

namespace brkz::brauer {

using symrep::Permutation;

struct BrauerMorphism {
    int m = 0, n = 0;
    std::vector<int> injection;                  // images of 0..m-1 in {0..n-1}
    std::vector<std::pair<int, int>> chords;     // standard form on the complement

    int t() const { return (int)chords.size(); }
    bool operator==(const BrauerMorphism&) const = default;
    auto operator<=>(const BrauerMorphism&) const = default;

    /** Injection values and chord endpoints must partition {0..n-1}. */
    void validate() const
    {
        if (m < 0 || n < 0 || (int)injection.size() != m || n != m + 2 * t())
            throw validation_error("brauer: size mismatch");
        std::vector<char> seen(n, 0);
        auto mark = [&](int v) {
            if (v < 0 || v >= n || seen[v]) throw validation_error("brauer: not a partition of points");
            seen[v] = 1;
        };
        for (int v : injection) mark(v);
        for (auto [a, b] : chords) { mark(a); mark(b); }
    }

    bool is_standard() const
    {
        for (size_t k = 0; k < chords.size(); ++k) {
            if (chords[k].first >= chords[k].second) return false;
            if (k && chords[k - 1].first >= chords[k].first) return false;
        }
        return true;
    }

    std::string to_string() const
    {
        std::string s = "[" + std::to_string(m) + "->" + std::to_string(n) + "]";
        for (int v : injection) s += " " + std::to_string(v + 1);
        if (!chords.empty()) {
            s += " ;";
            for (auto [a, b] : chords)
                s += " (" + std::to_string(a + 1) + "-" + std::to_string(b + 1) + ")";
        }
        return s;
    }
};

/**
 * Standard form of a decorated diagram: orient each chord (min,max), sign
 * per flip when the twist signs directions, then sort chords by first
 * endpoint, sign per reordering parity when the twist signs orderings.
 */
inline std::pair<int, BrauerMorphism> normalize(BrauerMorphism raw, const TwistSignature& tw)
{
    int sign = 1;
    for (auto& [a, b] : raw.chords)
        if (a > b) {
            std::swap(a, b);
            if (tw.direction_minus) sign = -sign;
        }
    if (tw.order_minus) {
        for (size_t i = 0; i < raw.chords.size(); ++i)
            for (size_t j = i + 1; j < raw.chords.size(); ++j)
                if (raw.chords[i].first > raw.chords[j].first) sign = -sign;
    }
    std::sort(raw.chords.begin(), raw.chords.end());
    raw.validate();
    return {sign, std::move(raw)};
}

/** Formal rational combination of standard-form morphisms sharing (m,n,twist). */
struct TwistedElement {
    int m = 0, n = 0;
    TwistSignature twist;
    std::map<BrauerMorphism, Rational> terms;

    TwistedElement() = default;
    TwistedElement(int m_, int n_, TwistSignature tw) : m(m_), n(n_), twist(tw) {}

    static TwistedElement basis_element(const BrauerMorphism& x, TwistSignature tw)
    {
        x.validate();
        if (!x.is_standard()) throw validation_error("brauer: basis element not standard");
        TwistedElement e(x.m, x.n, tw);
        e.terms[x] = 1;
        return e;
    }

    /** Accumulate coeff times the normalization of a raw diagram. */
    void add_raw(const Rational& coeff, BrauerMorphism raw)
    {
        if (coeff == 0) return;
        if (raw.m != m || raw.n != n) throw validation_error("brauer: term shape mismatch");
        auto [s, std_form] = normalize(std::move(raw), twist);
        auto& c = terms[std_form];
        c += coeff * s;
        if (c == 0) terms.erase(std_form);
    }

    bool is_zero() const { return terms.empty(); }
    bool operator==(const TwistedElement& o) const
    {
        return m == o.m && n == o.n && twist == o.twist && terms == o.terms;
    }

    TwistedElement operator+(const TwistedElement& o) const
    {
        if (m != o.m || n != o.n || !(twist == o.twist))
            throw validation_error("brauer: sum shape/twist mismatch");
        TwistedElement r = *this;
        for (const auto& [x, c] : o.terms) {
            auto& v = r.terms[x];
            v += c;
            if (v == 0) r.terms.erase(x);
        }
        return r;
    }

    TwistedElement scaled(const Rational& c) const
    {
        TwistedElement r(m, n, twist);
        if (c == 0) return r;
        for (const auto& [x, v] : terms) r.terms[x] = v * c;
        return r;
    }

    std::string to_string() const
    {
        if (terms.empty()) return "0";
        std::string s;
        for (const auto& [x, c] : terms) {
            if (!s.empty()) s += " + ";
            s += rational_to_string(c) + "*" + x.to_string();
        }
        return s;
    }
};

/**
 * Composition g o f of basis diagrams through FIord-ev: injections compose,
 * and the complement order is f's complement transported by g followed by
 * g's own complement, re-paired into chords and normalized.
 */
inline TwistedElement compose(const TwistedElement& g, const TwistedElement& f)
{
    if (!(g.twist == f.twist)) throw validation_error("brauer: compose twist mismatch");
    if (f.n != g.m) throw validation_error("brauer: compose size mismatch");
    TwistedElement out(f.m, g.n, g.twist);
    for (const auto& [gd, gc] : g.terms)
        for (const auto& [fd, fc] : f.terms) {
            BrauerMorphism raw;
            raw.m = f.m;
            raw.n = g.n;
            for (int i = 0; i < f.m; ++i) raw.injection.push_back(gd.injection[fd.injection[i]]);
            for (auto [a, b] : fd.chords)
                raw.chords.push_back({gd.injection[a], gd.injection[b]});
            for (auto [a, b] : gd.chords) raw.chords.push_back({a, b});
            out.add_raw(gc * fc, std::move(raw));
        }
    return out;
}

enum class Side { left, right };

/**
 * Left action of S_n by postcomposition, right action of S_m by
 * precomposition (the op-side action; FB embeds in db via alpha^{-1}).
 */
inline TwistedElement act(const Permutation& perm, const TwistedElement& x, Side side)
{
    TwistedElement out(x.m, x.n, x.twist);
    if (side == Side::left) {
        if (perm.n() != x.n) throw validation_error("brauer: left action size mismatch");
        for (const auto& [d, c] : x.terms) {
            BrauerMorphism raw = d;
            for (int& v : raw.injection) v = perm(v);
            for (auto& [a, b] : raw.chords) { a = perm(a); b = perm(b); }
            out.add_raw(c, std::move(raw));
        }
    } else {
        if (perm.n() != x.m) throw validation_error("brauer: right action size mismatch");
        for (const auto& [d, c] : x.terms) {
            BrauerMorphism raw = d;
            for (int i = 0; i < x.m; ++i) raw.injection[i] = d.injection[perm(i)];
            out.add_raw(c, std::move(raw));
        }
    }
    return out;
}

namespace detail {

inline void matchings_rec(std::vector<int>& points, std::vector<char>& used,
                          std::vector<std::pair<int, int>>& cur,
                          std::vector<std::vector<std::pair<int, int>>>& out)
{
    size_t a = 0;
    while (a < points.size() && used[a]) ++a;
    if (a == points.size()) { out.push_back(cur); return; }
    used[a] = 1;
    for (size_t b = a + 1; b < points.size(); ++b) {
        if (used[b]) continue;
        used[b] = 1;
        cur.push_back({points[a], points[b]});
        matchings_rec(points, used, cur, out);
        cur.pop_back();
        used[b] = 0;
    }
    used[a] = 0;
}

} // namespace detail

/** All perfect matchings of a sorted point set, in standard form. */
inline std::vector<std::vector<std::pair<int, int>>> perfect_matchings(std::vector<int> points)
{
    if (points.size() % 2) return {};
    std::vector<std::vector<std::pair<int, int>>> out;
    std::vector<char> used(points.size(), 0);
    std::vector<std::pair<int, int>> cur;
    detail::matchings_rec(points, used, cur, out);
    return out;
}

/**
 * The standard basis of hom_ub(m,n): injections times matchings on the
 * complement; empty unless n-m is even.  |ub(m,n)| = C(n,m) m! (n-m-1)!!.
 * Cached for n up to the configured cap.
 */
inline const std::vector<BrauerMorphism>& hom_basis(int m, int n)
{
    constexpr int cache_cap = 12;
    if (m < 0 || n < 0) throw validation_error("brauer: negative size");
    if (n > cache_cap + 2) throw cap_error("brauer: hom_basis beyond supported size");

    static std::map<std::pair<int, int>, std::vector<BrauerMorphism>> cache;
    static std::mutex cache_mutex;
    std::lock_guard<std::mutex> lock(cache_mutex);
    auto it = cache.find({m, n});
    if (it != cache.end()) return it->second;

    std::vector<BrauerMorphism> basis;
    if (n >= m && (n - m) % 2 == 0) {
        // ordered m-subsets of {0..n-1}
        std::vector<int> inj;
        std::vector<char> used(n, 0);
        auto rec = [&](auto&& self) -> void {
            if ((int)inj.size() == m) {
                std::vector<int> comp;
                for (int v = 0; v < n; ++v)
                    if (!used[v]) comp.push_back(v);
                for (auto& chords : perfect_matchings(comp)) {
                    BrauerMorphism d;
                    d.m = m; d.n = n; d.injection = inj; d.chords = chords;
                    basis.push_back(std::move(d));
                }
                return;
            }
            for (int v = 0; v < n; ++v) {
                if (used[v]) continue;
                used[v] = 1;
                inj.push_back(v);
                self(self);
                inj.pop_back();
                used[v] = 0;
            }
        };
        rec(rec);
        std::sort(basis.begin(), basis.end());
    }
    return cache.emplace(std::make_pair(m, n), std::move(basis)).first->second;
}

/** Index lookup of a standard-form diagram inside hom_basis(m,n). */
inline int hom_basis_index(const BrauerMorphism& d)
{
    const auto& basis = hom_basis(d.m, d.n);
    auto it = std::lower_bound(basis.begin(), basis.end(), d);
    if (it == basis.end() || !(*it == d))
        throw invariant_error("brauer: diagram not found in basis");
    return (int)(it - basis.begin());
}

/** The degree-one generator iota_k: k -> k+2, appending the chord (k, k+1). */
inline TwistedElement iota(int k, TwistSignature tw)
{
    BrauerMorphism d;
    d.m = k;
    d.n = k + 2;
    for (int i = 0; i < k; ++i) d.injection.push_back(i);
    d.chords.push_back({k, k + 1});
    return TwistedElement::basis_element(d, tw);
}

/** The bijection pi (on n points) as the chord-free element of hom(n,n). */
inline TwistedElement bijection_element(const Permutation& pi, TwistSignature tw)
{
    BrauerMorphism d;
    d.m = d.n = pi.n();
    d.injection = pi.images;
    return TwistedElement::basis_element(d, tw);
}

} // namespace brkz::brauer

#endif
