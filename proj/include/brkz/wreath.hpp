/**
 * Elements of the hyperoctahedral group S_2 wr S_t acting on 2t points in t
 * blocks {2i, 2i+1}: per-block flips plus a block permutation, with the
 * normalization elements tau_i, rho_j, psi_{i1,i2} of the wreath
 * normalization lemma.  Embedding convention: block i maps to block
 * block_perm(i), and a set flip bit on the *target* block swaps its two
 * points, so (eps; pi) = prod tau_b^{eps_b} * (block embedding of pi).
 */

#ifndef BRKZ_WREATH_HPP
#define BRKZ_WREATH_HPP

#include <stdexcept>
#include <vector>

#include "permutation.hpp"
#include "twist.hpp"

namespace brkz::symrep {

struct WreathElement {
    std::vector<int> flips;     // one bit per block, indexed by target block
    Permutation block_perm;

    WreathElement() = default;
    explicit WreathElement(int t) : flips(t, 0), block_perm(t) {}
    WreathElement(std::vector<int> f, Permutation bp) : flips(std::move(f)), block_perm(std::move(bp))
    {
        if ((int)flips.size() != block_perm.n()) throw std::invalid_argument("flip/block size mismatch");
    }

    int t() const { return (int)flips.size(); }
    bool operator==(const WreathElement&) const = default;

    Permutation to_permutation() const
    {
        std::vector<int> im(2 * t());
        for (int i = 0; i < t(); ++i) {
            int b = block_perm(i);
            im[2 * i]     = 2 * b + (flips[b] ? 1 : 0);
            im[2 * i + 1] = 2 * b + (flips[b] ? 0 : 1);
        }
        return Permutation(im);
    }

    int flip_count() const { int c = 0; for (int f : flips) c += f; return c; }

    /** Character value of the rank-one twist module at this element. */
    int twist_character(const TwistSignature& tw) const
    {
        int v = 1;
        if (tw.direction_minus && (flip_count() & 1)) v = -v;
        if (tw.order_minus) v *= block_perm.sign();
        return v;
    }
};

/** Recover (flips; block_perm) from a block-respecting permutation of 2t points. */
inline WreathElement wreath_from_permutation(const Permutation& p)
{
    if (p.n() % 2) throw std::invalid_argument("odd size");
    int t = p.n() / 2;
    std::vector<int> blocks(t), flips(t, 0);
    for (int i = 0; i < t; ++i) {
        int a = p(2 * i), b = p(2 * i + 1);
        if (a / 2 != b / 2) throw std::invalid_argument("not block-respecting");
        blocks[i] = a / 2;
        flips[a / 2] = (a % 2 == 1);
    }
    return WreathElement(std::move(flips), Permutation(std::move(blocks)));
}

inline WreathElement wreath_compose(const WreathElement& a, const WreathElement& b)
{
    return wreath_from_permutation(a.to_permutation() * b.to_permutation());
}

inline WreathElement wreath_inverse(const WreathElement& a)
{
    return wreath_from_permutation(a.to_permutation().inverse());
}

/** tau_i: flip block i (0-indexed), identity block permutation. */
inline WreathElement wreath_tau(int t, int i)
{
    WreathElement w(t);
    w.flips[i] = 1;
    return w;
}

/** rho_j: the shuffle with t-1 -> j and order-preserving on the rest (0-indexed blocks). */
inline WreathElement wreath_rho(int t, int j)
{
    WreathElement w(t);
    std::vector<int> im;
    for (int b = 0; b < t; ++b) if (b != j) im.push_back(b);
    im.push_back(j);
    // im as images: position t-1 -> j; positions 0..t-2 -> blocks != j in order
    w.block_perm = Permutation(im);
    return w;
}

/** psi_{i1,i2}: t-2 -> i1, t-1 -> i2, order-preserving elsewhere (0-indexed). */
inline WreathElement wreath_psi(int t, int i1, int i2)
{
    if (i1 == i2) throw std::invalid_argument("psi needs distinct blocks");
    WreathElement w(t);
    std::vector<int> im;
    for (int b = 0; b < t; ++b) if (b != i1 && b != i2) im.push_back(b);
    im.push_back(i1);
    im.push_back(i2);
    w.block_perm = Permutation(im);
    return w;
}

template <typename F>
inline void for_each_wreath_element(int t, F&& f)
{
    for_each_permutation(t, [&](const Permutation& pi) {
        for (unsigned mask = 0; mask < (1u << t); ++mask) {
            WreathElement w(t);
            w.block_perm = pi;
            for (int i = 0; i < t; ++i) w.flips[i] = (mask >> i) & 1;
            f(w);
        }
    });
}

} // namespace brkz::symrep

#endif
