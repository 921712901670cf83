/**
 * Permutations of {0..n-1}: composition, sign, cycle type, adjacent-
 * transposition words, and enumeration helpers.  Convention: perm[i] is the
 * image of i, and (f*g)(i) = f(g(i)) (functions compose right-to-left).
 */

#ifndef BRKZ_PERMUTATION_HPP
#define BRKZ_PERMUTATION_HPP

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace brkz::symrep {

struct Permutation {
    std::vector<int> images;

    Permutation() = default;
    explicit Permutation(int n) : images(n) { std::iota(images.begin(), images.end(), 0); }
    explicit Permutation(std::vector<int> im) : images(std::move(im))
    {
        std::vector<char> seen(images.size(), 0);
        for (int v : images) {
            if (v < 0 || v >= (int)images.size() || seen[v])
                throw std::invalid_argument("not a bijection");
            seen[v] = 1;
        }
    }

    int n() const { return (int)images.size(); }
    int operator()(int i) const { return images[i]; }
    bool operator==(const Permutation& o) const = default;
    auto operator<=>(const Permutation& o) const = default;

    Permutation inverse() const
    {
        std::vector<int> inv(images.size());
        for (int i = 0; i < n(); ++i) inv[images[i]] = i;
        Permutation p; p.images = std::move(inv); return p;
    }

    /** Composition as functions: (*this after g). */
    Permutation operator*(const Permutation& g) const
    {
        if (n() != g.n()) throw std::invalid_argument("size mismatch");
        std::vector<int> im(images.size());
        for (int i = 0; i < n(); ++i) im[i] = images[g.images[i]];
        Permutation p; p.images = std::move(im); return p;
    }

    int sign() const
    {
        std::vector<char> seen(images.size(), 0);
        int parity = 0;
        for (int i = 0; i < n(); ++i) {
            if (seen[i]) continue;
            int len = 0;
            for (int j = i; !seen[j]; j = images[j]) { seen[j] = 1; ++len; }
            parity ^= (len - 1) & 1;
        }
        return parity ? -1 : 1;
    }

    /** Cycle lengths, weakly decreasing. */
    std::vector<int> cycle_type() const
    {
        std::vector<char> seen(images.size(), 0);
        std::vector<int> type;
        for (int i = 0; i < n(); ++i) {
            if (seen[i]) continue;
            int len = 0;
            for (int j = i; !seen[j]; j = images[j]) { seen[j] = 1; ++len; }
            type.push_back(len);
        }
        std::sort(type.rbegin(), type.rend());
        return type;
    }
};

inline Permutation adjacent_transposition(int n, int i)
{
    Permutation p(n);
    std::swap(p.images[i], p.images[i + 1]);
    return p;
}

inline Permutation transposition(int n, int a, int b)
{
    Permutation p(n);
    std::swap(p.images[a], p.images[b]);
    return p;
}

/**
 * Word [i1,...,ik] with perm = s_{i1} * s_{i2} * ... * s_{ik} (rightmost
 * factor applied first).  Obtained by sorting the image list with adjacent
 * swaps; length is the inversion number.
 */
inline std::vector<int> adjacent_word(const Permutation& p)
{
    std::vector<int> w;
    std::vector<int> a = p.images;
    for (int pass = (int)a.size(); pass > 1; --pass) {
        bool moved = false;
        for (int i = 0; i + 1 < (int)a.size(); ++i) {
            if (a[i] > a[i + 1]) { std::swap(a[i], a[i + 1]); w.push_back(i); moved = true; }
        }
        if (!moved) break;
    }
    // sorting p by swaps s_{i} on the left yields id = s_{ik}..s_{i1} p,
    // hence p = s_{i1}..s_{ik} after reversing the collected list.
    std::reverse(w.begin(), w.end());
    return w;
}

/** Canonical representative of a cycle type: cycles laid out consecutively. */
inline Permutation class_representative(const std::vector<int>& cycle_type)
{
    int n = 0;
    for (int c : cycle_type) n += c;
    std::vector<int> im(n);
    int base = 0;
    for (int c : cycle_type) {
        for (int j = 0; j < c; ++j) im[base + j] = base + (j + 1) % c;
        base += c;
    }
    Permutation p; p.images = std::move(im); return p;
}

template <typename F>
inline void for_each_permutation(int n, F&& f)
{
    std::vector<int> im(n);
    std::iota(im.begin(), im.end(), 0);
    do {
        Permutation p; p.images = im;
        f(p);
    } while (std::next_permutation(im.begin(), im.end()));
}

} // namespace brkz::symrep

#endif
