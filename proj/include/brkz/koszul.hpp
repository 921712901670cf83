/**
 * Koszul complexes over the twisted Brauer categories: the unit complexes
 * witnessing Koszulness, the Ext- and Tor-side complexes attached to an
 * odot-power module of a cyclic operad, and their homology as explicit
 * symmetric-group representations.  Coinvariants are realized by averaging
 * idempotents; every differential is checked against d^2 = 0 and residual
 * equivariance, and independent composition oracles are provided.
 */

#ifndef BRKZ_KOSZUL_HPP
#define BRKZ_KOSZUL_HPP

#include <algorithm>
#include <atomic>
#include <chrono>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "brauer.hpp"
#include "characters.hpp"
#include "cyclic.hpp"
#include "elimination.hpp"
#include "errors.hpp"
#include "fbmodule.hpp"
#include "homology.hpp"
#include "matrix.hpp"
#include "partition.hpp"
#include "permutation.hpp"
#include "twist.hpp"

namespace brkz::koszul {

using brauer::BrauerMorphism;
using brauer::TwistedElement;
using exactla::RationalMatrix;
using exactla::Solver;
using exactla::SubquotientBasis;
using symrep::CycleType;
using symrep::Partition;
using symrep::Permutation;

inline constexpr int default_arity_cap = 10;
inline constexpr int hard_arity_cap = 14;

/**
 * The two dualizing complexes.  kminus pairs the exterior odot module with
 * (-;+)-twisted diagram chords (direction signs); kplus pairs the symmetric
 * module with (+;-)-twisted chords (order signs).
 */
enum class KFlavor { kminus, kplus };
enum class KSide { ext, tor };
enum class UnitSide { plus, minus };

inline TwistSignature diagram_twist(KFlavor f)
{
    return f == KFlavor::kminus ? twist_mp : twist_pm;
}

inline cyclic::OdotFlavor module_flavor(KFlavor f)
{
    return f == KFlavor::kminus ? cyclic::OdotFlavor::exterior : cyclic::OdotFlavor::symmetric;
}

inline void check_arity_cap(int n)
{
    if (n > hard_arity_cap)
        throw cap_error("koszul: arity " + std::to_string(n) + " exceeds the hard cap "
                        + std::to_string(hard_arity_cap));
}

/** Type-erased twisted db-module: the structure the complexes consume. */
struct ModuleView {
    std::function<int(int)> dim;                                   // arity -> dimension
    std::function<RationalMatrix(int, const Permutation&)> act;    // left action on M(arity)
    std::function<RationalMatrix(int, int, int)> generator;        // (arity,u,v): M(arity) -> M(arity-2)
};

/** View of an odot-power module; the module must outlive the view. */
inline ModuleView odot_view(const cyclic::OdotModule& m)
{
    ModuleView v;
    v.dim = [&m](int n) { return m.dim(n); };
    v.act = [&m](int n, const Permutation& p) { return m.act(n, p); };
    v.generator = [&m](int n, int u, int w) { return m.generator(n, u, w); };
    return v;
}

/**
 * A bounded complex of rational vector spaces.  Homological: diffs[i] maps
 * index i+1 to index i; cohomological: diffs[i] maps index i to index i+1.
 * gen_actions[i], when present, holds the residual adjacent-transposition
 * actions s_0, s_1, ... on the term at index i.
 */
struct ChainComplex {
    bool cohomological = false;
    int lowest = 0;
    std::vector<int> dims;
    std::vector<std::vector<std::string>> labels;
    std::vector<std::vector<RationalMatrix>> gen_actions;
    std::vector<RationalMatrix> diffs;

    int size() const { return (int)dims.size(); }

    void validate() const
    {
        if (!labels.empty() && labels.size() != dims.size())
            throw validation_error("chain complex: label blocks do not match terms");
        for (size_t i = 0; i < labels.size(); ++i)
            if ((int)labels[i].size() != dims[i])
                throw validation_error("chain complex: label count mismatch");
        if (!gen_actions.empty() && gen_actions.size() != dims.size())
            throw validation_error("chain complex: action blocks do not match terms");
        for (size_t i = 0; i < gen_actions.size(); ++i)
            for (const auto& g : gen_actions[i])
                if (g.rows != dims[i] || g.cols != dims[i])
                    throw validation_error("chain complex: action shape mismatch");
        if (dims.empty() ? !diffs.empty() : diffs.size() != dims.size() - 1)
            throw validation_error("chain complex: differential count mismatch");
        for (size_t i = 0; i < diffs.size(); ++i) {
            int src = cohomological ? (int)i : (int)i + 1;
            int tgt = cohomological ? (int)i + 1 : (int)i;
            if (diffs[i].rows != dims[tgt] || diffs[i].cols != dims[src])
                throw validation_error("chain complex: differential shape mismatch");
        }
        for (size_t i = 0; i + 1 < diffs.size(); ++i) {
            RationalMatrix sq = cohomological ? diffs[i + 1] * diffs[i] : diffs[i] * diffs[i + 1];
            if (!sq.is_zero()) throw invariant_error("chain complex: d∘d != 0");
        }
        if (!gen_actions.empty())
            for (size_t i = 0; i < diffs.size(); ++i) {
                int src = cohomological ? (int)i : (int)i + 1;
                int tgt = cohomological ? (int)i + 1 : (int)i;
                for (size_t k = 0; k < gen_actions[src].size(); ++k)
                    if (!(gen_actions[tgt][k] * diffs[i] == diffs[i] * gen_actions[src][k]))
                        throw invariant_error("chain complex: differential not equivariant");
            }
    }

    /** Residual action of an arbitrary permutation, via its adjacent word. */
    RationalMatrix action_of(int index, const Permutation& p) const
    {
        RationalMatrix m = RationalMatrix::identity(dims[index]);
        for (int k : symrep::adjacent_word(p)) m = gen_actions[index][k] * m;
        return m;
    }

    std::vector<int> homology_dims() const
    {
        std::vector<int> rk(diffs.size());
        for (size_t i = 0; i < diffs.size(); ++i) rk[i] = exactla::rank(diffs[i]);
        std::vector<int> h(dims.size());
        for (size_t i = 0; i < dims.size(); ++i) {
            h[i] = dims[i];
            if (i > 0) h[i] -= rk[i - 1];
            if (i < diffs.size()) h[i] -= rk[i];
        }
        return h;
    }
};

/** Homology at one index, as explicit cycle/boundary bases. */
inline SubquotientBasis homology_at(const ChainComplex& c, int index)
{
    const int n = c.dims[index];
    RationalMatrix d_in(n, 0), d_out(0, n);
    if (c.cohomological) {
        if (index > 0) d_in = c.diffs[index - 1];
        if (index < (int)c.diffs.size()) d_out = c.diffs[index];
    } else {
        if (index < (int)c.diffs.size()) d_in = c.diffs[index];
        if (index > 0) d_out = c.diffs[index - 1];
    }
    return exactla::homology(d_in, d_out);
}

/** Euler characteristic of chain groups must match that of homology. */
inline void check_euler(const ChainComplex& c)
{
    std::vector<int> h = c.homology_dims();
    long long a = 0, b = 0;
    for (size_t i = 0; i < c.dims.size(); ++i) {
        int s = i % 2 ? -1 : 1;
        a += s * c.dims[i];
        b += s * h[i];
    }
    if (a != b) throw invariant_error("chain complex: Euler characteristic mismatch");
}

// ---------------------------------------------------------------------------
// Unit complexes: red/black chord recoloring on hom diagrams.
// ---------------------------------------------------------------------------

/**
 * The unit complex evaluated at (U, X): the term indexed by s has basis the
 * diagrams of ub(X, U) with (s - X)/2 of their chords colored red, and the
 * differential recolors one red chord black.  On the plus side the sign is
 * the red removal sign; on the minus side the black insertion sign.
 * Homological, index (s - X)/2; empty when the parities differ.
 */
inline ChainComplex unit_complex(int points_u, int points_x, UnitSide side)
{
    if (points_u < 0 || points_x < 0) throw validation_error("unit complex: negative size");
    check_arity_cap(points_u);
    ChainComplex c;
    c.cohomological = false;
    if ((points_u - points_x) % 2 || points_u < points_x) return c;

    const std::vector<BrauerMorphism>& diagrams = brauer::hom_basis(points_x, points_u);
    const int chords = (points_u - points_x) / 2;
    // term index i collects the masks with i red chords, per diagram
    std::vector<std::vector<int>> masks(chords + 1);
    for (int m = 0; m < (1 << chords); ++m) masks[__builtin_popcount((unsigned)m)].push_back(m);

    for (int i = 0; i <= chords; ++i) {
        c.dims.push_back((int)(diagrams.size() * masks[i].size()));
        c.labels.emplace_back();
        for (const auto& d : diagrams)
            for (int m : masks[i]) {
                std::string red = "{";
                for (int p = 0; p < chords; ++p)
                    if (m >> p & 1) red += (red.size() > 1 ? "," : "") + std::to_string(p);
                c.labels.back().push_back(d.to_string() + " red" + red + "}");
            }
    }
    for (int i = 1; i <= chords; ++i) {
        std::map<int, int> lower;
        for (size_t k = 0; k < masks[i - 1].size(); ++k) lower[masks[i - 1][k]] = (int)k;
        RationalMatrix d(c.dims[i - 1], c.dims[i]);
        for (size_t dia = 0; dia < diagrams.size(); ++dia)
            for (size_t k = 0; k < masks[i].size(); ++k) {
                int m = masks[i][k];
                int col = (int)(dia * masks[i].size() + k);
                for (int p = 0; p < chords; ++p) {
                    if (!(m >> p & 1)) continue;
                    int reds_below = __builtin_popcount((unsigned)(m & ((1 << p) - 1)));
                    int sign;
                    if (side == UnitSide::plus) sign = reds_below % 2 ? -1 : 1;
                    else {
                        int blacks_below = p - reds_below;
                        sign = blacks_below % 2 ? -1 : 1;
                    }
                    int row = (int)(dia * masks[i - 1].size()) + lower.at(m & ~(1 << p));
                    d.add_entry(row, col, Rational(sign));
                }
            }
        c.diffs.push_back(std::move(d));
    }
    c.validate();
    return c;
}

// ---------------------------------------------------------------------------
// Ext-side complexes.
// ---------------------------------------------------------------------------

/**
 * One ext-side chain group at evaluation l: the coinvariants
 * ub_tw(a, l) ⊗_{S_a} M(a) on the orbit basis (the precomposition action on
 * injections is free): an a-subset S of [l], a standard matching on the
 * complement, and an M(a)-basis vector.
 */
struct ExtTerm {
    int l = 0;
    int arity = 0;
    int mdim = 0;
    std::vector<std::pair<std::vector<int>, std::vector<std::pair<int, int>>>> diagrams;
    std::map<std::pair<std::vector<int>, std::vector<std::pair<int, int>>>, int> index;

    int dim() const { return (int)diagrams.size() * mdim; }

    int slot(const std::vector<int>& subset, const std::vector<std::pair<int, int>>& ch) const
    {
        auto it = index.find({subset, ch});
        if (it == index.end()) throw invariant_error("ext term: unknown diagram");
        return it->second;
    }
};

struct ExtComplex {
    KFlavor flavor = KFlavor::kminus;
    int l = 0;
    std::vector<ExtTerm> terms;   // index = cohomological degree, arity l - 2*index
    ChainComplex complex;
};

inline ExtTerm ext_term(const ModuleView& m, int l, int arity)
{
    ExtTerm t;
    t.l = l;
    t.arity = arity;
    t.mdim = m.dim(arity);
    for (const auto& subset : fbmod::detail::subsets_of_size(l, arity)) {
        std::vector<int> rest;
        for (int p = 0, q = 0; p < l; ++p) {
            if (q < arity && subset[q] == p) { ++q; continue; }
            rest.push_back(p);
        }
        for (const auto& ch : brauer::perfect_matchings(rest)) {
            t.index[{subset, ch}] = (int)t.diagrams.size();
            t.diagrams.push_back({subset, ch});
        }
    }
    return t;
}

/**
 * Residual S_l action on an ext term: relabel the diagram, normalize its
 * chords in the diagram twist, and push the induced injection-sorting
 * permutation into the module factor.
 */
inline RationalMatrix ext_term_action(const ModuleView& m, KFlavor flavor, const ExtTerm& t,
                                      const Permutation& sigma)
{
    const TwistSignature tw = diagram_twist(flavor);
    RationalMatrix out(t.dim(), t.dim());
    for (size_t dia = 0; dia < t.diagrams.size(); ++dia) {
        const auto& [subset, ch] = t.diagrams[dia];
        BrauerMorphism raw;
        raw.m = t.arity;
        raw.n = t.l;
        for (int v : subset) raw.injection.push_back(sigma(v));
        for (auto [a, b] : ch) raw.chords.push_back({sigma(a), sigma(b)});
        auto [sign, std_form] = brauer::normalize(raw, tw);
        std::vector<int> sorted = std_form.injection;
        std::sort(sorted.begin(), sorted.end());
        std::vector<int> pi(t.arity);
        for (int i = 0; i < t.arity; ++i)
            pi[i] = (int)(std::lower_bound(sorted.begin(), sorted.end(), std_form.injection[i])
                          - sorted.begin());
        RationalMatrix a = m.act(t.arity, Permutation(pi));
        int row0 = t.slot(sorted, std_form.chords) * t.mdim;
        for (int j = 0; j < t.mdim; ++j)
            for (const auto& [i, v] : a.col[j])
                out.add_entry(row0 + i, (int)dia * t.mdim + j, sign < 0 ? -v : v);
    }
    return out;
}

/**
 * Ext-side complex at evaluation l: cohomological, term c in arity l - 2c.
 * The differential inserts the chord {S_i, S_j} with the insertion sign on
 * the order-twisted side and applies the module generator.
 */
inline ExtComplex ext_complex(const ModuleView& m, KFlavor flavor, int l)
{
    if (l < 0) throw validation_error("ext complex: negative evaluation");
    check_arity_cap(l);
    ExtComplex ec;
    ec.flavor = flavor;
    ec.l = l;
    ec.complex.cohomological = true;

    for (int arity = l; arity >= 0; arity -= 2) ec.terms.push_back(ext_term(m, l, arity));
    for (const auto& t : ec.terms) {
        ec.complex.dims.push_back(t.dim());
        ec.complex.labels.emplace_back();
        for (const auto& [subset, ch] : t.diagrams)
            for (int j = 0; j < t.mdim; ++j) {
                std::string s = "{";
                for (size_t q = 0; q < subset.size(); ++q)
                    s += (q ? "," : "") + std::to_string(subset[q]);
                s += "}";
                for (auto [a, b] : ch)
                    s += "(" + std::to_string(a) + "," + std::to_string(b) + ")";
                ec.complex.labels.back().push_back(s + "#" + std::to_string(j));
            }
        std::vector<RationalMatrix> gens;
        for (int k = 0; k + 1 < l; ++k)
            gens.push_back(ext_term_action(m, flavor, t, symrep::adjacent_transposition(l, k)));
        ec.complex.gen_actions.push_back(std::move(gens));
    }

    const bool order_signs = diagram_twist(flavor).order_minus;
    for (size_t c = 0; c + 1 < ec.terms.size(); ++c) {
        const ExtTerm& src = ec.terms[c];
        const ExtTerm& tgt = ec.terms[c + 1];
        RationalMatrix d(tgt.dim(), src.dim());
        for (size_t dia = 0; dia < src.diagrams.size(); ++dia) {
            const auto& [subset, ch] = src.diagrams[dia];
            for (int i = 0; i < src.arity; ++i)
                for (int j = i + 1; j < src.arity; ++j) {
                    int u = subset[i], v = subset[j];
                    std::vector<int> sub2;
                    for (int x : subset)
                        if (x != u && x != v) sub2.push_back(x);
                    // new chord enters the list before the existing ones; the
                    // sort to standard position passes the chords below u
                    int below = 0;
                    for (auto [a, b] : ch)
                        if (a < u) ++below;
                    int sign = (order_signs && below % 2) ? -1 : 1;
                    std::vector<std::pair<int, int>> ch2 = ch;
                    ch2.insert(ch2.begin() + below, {u, v});
                    RationalMatrix g = m.generator(src.arity, i, j);
                    int row0 = tgt.slot(sub2, ch2) * tgt.mdim;
                    int col0 = (int)dia * src.mdim;
                    for (int q = 0; q < src.mdim; ++q)
                        for (const auto& [r, val] : g.col[q])
                            d.add_entry(row0 + r, col0 + q, sign < 0 ? -val : val);
                }
        }
        ec.complex.diffs.push_back(std::move(d));
    }
    ec.complex.validate();
    return ec;
}

/**
 * The same ext differential built independently: compose the decorated
 * diagram with the one-chord coevaluation diagram d_{i,j} in the twisted
 * category and read the slot and sign off the normalized result.
 */
inline RationalMatrix ext_differential_by_composition(const ModuleView& m, const ExtComplex& ec,
                                                      int index)
{
    const TwistSignature tw = diagram_twist(ec.flavor);
    const ExtTerm& src = ec.terms[index];
    const ExtTerm& tgt = ec.terms[index + 1];
    RationalMatrix d(tgt.dim(), src.dim());
    for (size_t dia = 0; dia < src.diagrams.size(); ++dia) {
        const auto& [subset, ch] = src.diagrams[dia];
        BrauerMorphism f{src.arity, src.l, subset, ch};
        TwistedElement fe = TwistedElement::basis_element(f, tw);
        for (int i = 0; i < src.arity; ++i)
            for (int j = i + 1; j < src.arity; ++j) {
                BrauerMorphism dij;
                dij.m = src.arity - 2;
                dij.n = src.arity;
                for (int x = 0; x < src.arity; ++x)
                    if (x != i && x != j) dij.injection.push_back(x);
                dij.chords = {{i, j}};
                TwistedElement comp = brauer::compose(fe, TwistedElement::basis_element(dij, tw));
                RationalMatrix g = m.generator(src.arity, i, j);
                for (const auto& [diag, coeff] : comp.terms) {
                    std::vector<int> sorted = diag.injection;   // order-preserving composite
                    int row0 = tgt.slot(sorted, diag.chords) * tgt.mdim;
                    for (int q = 0; q < src.mdim; ++q)
                        for (const auto& [r, val] : g.col[q])
                            d.add_entry(row0 + r, (int)dia * src.mdim + q, val * coeff);
                }
            }
    }
    return d;
}

// ---------------------------------------------------------------------------
// Tor-side complexes.
// ---------------------------------------------------------------------------

/**
 * One tor-side chain group at evaluation l: the coinvariants
 * ub_tw(l, s)^♯ ⊗_{S_s} M(s).  The postcomposition action on the dual
 * diagram basis is transitive with hyperoctahedral stabilizer H, so the
 * term is the image of the averaging idempotent for the sign character H
 * inherits from the twist: chord flips on the direction-twisted side,
 * block transpositions on the order-twisted side.
 */
struct TorTerm {
    int l = 0;
    int arity = 0;
    RationalMatrix idem;    // on M(arity)
    RationalMatrix basis;   // ambient x dim, spans im(idem)
    std::optional<Solver> solver;

    int dim() const { return basis.cols; }

    std::vector<Rational> coords(const std::vector<Rational>& ambient) const
    {
        auto x = solver->solve(ambient);
        if (!x) throw invariant_error("tor term: vector leaves the idempotent image");
        return *x;
    }
};

/** The stabilizer permutation for flip bits and block permutation pi. */
inline Permutation hyperoctahedral_element(int l, int x, unsigned bits, const std::vector<int>& pi)
{
    std::vector<int> im(l + 2 * x);
    for (int i = 0; i < l; ++i) im[i] = i;
    for (int p = 0; p < x; ++p) {
        bool flip = bits >> p & 1;
        im[l + 2 * p] = l + 2 * pi[p] + (flip ? 1 : 0);
        im[l + 2 * p + 1] = l + 2 * pi[p] + (flip ? 0 : 1);
    }
    return Permutation(im);
}

inline TorTerm tor_term(const ModuleView& m, KFlavor flavor, int l, int arity)
{
    TorTerm t;
    t.l = l;
    t.arity = arity;
    const int x = (arity - l) / 2;
    const int md = m.dim(arity);
    const TwistSignature tw = diagram_twist(flavor);

    RationalMatrix sum(md, md);
    long long order = 0;
    std::vector<int> pi(x);
    for (int p = 0; p < x; ++p) pi[p] = p;
    do {
        int inv = 0;
        for (int a = 0; a < x; ++a)
            for (int b = a + 1; b < x; ++b)
                if (pi[a] > pi[b]) ++inv;
        for (unsigned bits = 0; bits < (1u << x); ++bits) {
            int sign = 1;
            if (tw.direction_minus && __builtin_popcount(bits) % 2) sign = -sign;
            if (tw.order_minus && inv % 2) sign = -sign;
            sum = sum + m.act(arity, hyperoctahedral_element(l, x, bits, pi)).scaled(Rational(sign));
            ++order;
        }
    } while (std::next_permutation(pi.begin(), pi.end()));

    t.idem = sum.scaled(Rational(1) / Rational(order));
    if (!(t.idem * t.idem == t.idem)) throw invariant_error("tor term: averaging is not idempotent");
    t.basis = exactla::image_basis(t.idem);
    t.solver.emplace(t.basis);
    return t;
}

/**
 * Tor-side complex at evaluation l: homological, term k in arity l + 2k up
 * to the arity cap.  The differential contracts one canonical chord pair
 * (l+2p, l+2p+1) with the removal sign on the order-twisted side, then
 * projects back to the idempotent image.
 */
struct TorComplex {
    KFlavor flavor = KFlavor::kminus;
    int l = 0;
    int arity_cap = default_arity_cap;
    std::vector<TorTerm> terms;   // index = homological degree, arity l + 2*index
    ChainComplex complex;
};

inline RationalMatrix tor_ambient_differential(const ModuleView& m, KFlavor flavor, int l,
                                               int arity)
{
    const int x = (arity - l) / 2;
    const bool order_signs = diagram_twist(flavor).order_minus;
    RationalMatrix d(m.dim(arity - 2), m.dim(arity));
    for (int p = 0; p < x; ++p) {
        // the contracted chord leaves the list from position p of x
        int sign = (order_signs && (x - 1 - p) % 2) ? -1 : 1;
        d = d + m.generator(arity, l + 2 * p, l + 2 * p + 1).scaled(Rational(sign));
    }
    return d;
}

inline TorComplex tor_complex(const ModuleView& m, KFlavor flavor, int l, int arity_cap)
{
    if (l < 0) throw validation_error("tor complex: negative evaluation");
    if (arity_cap < l) throw validation_error("tor complex: arity cap below evaluation");
    check_arity_cap(arity_cap);
    TorComplex tc;
    tc.flavor = flavor;
    tc.l = l;
    tc.arity_cap = arity_cap;
    tc.complex.cohomological = false;

    for (int arity = l; arity <= arity_cap; arity += 2)
        tc.terms.push_back(tor_term(m, flavor, l, arity));
    for (const auto& t : tc.terms) {
        tc.complex.dims.push_back(t.dim());
        tc.complex.labels.emplace_back();
        for (int j = 0; j < t.dim(); ++j)
            tc.complex.labels.back().push_back("s=" + std::to_string(t.arity) + "#"
                                               + std::to_string(j));
        std::vector<RationalMatrix> gens;
        for (int k = 0; k + 1 < l; ++k) {
            std::vector<int> im(t.arity);
            for (int i = 0; i < t.arity; ++i) im[i] = i;
            std::swap(im[k], im[k + 1]);
            RationalMatrix a = m.act(t.arity, Permutation(im));
            RationalMatrix rho(t.dim(), t.dim());
            for (int j = 0; j < t.dim(); ++j) {
                std::vector<Rational> c = t.coords(a.apply(t.basis.column_dense(j)));
                for (int i = 0; i < t.dim(); ++i)
                    if (c[i] != 0) rho.add_entry(i, j, c[i]);
            }
            gens.push_back(std::move(rho));
        }
        tc.complex.gen_actions.push_back(std::move(gens));
    }

    for (size_t k = 0; k + 1 < tc.terms.size(); ++k) {
        const TorTerm& src = tc.terms[k + 1];
        const TorTerm& tgt = tc.terms[k];
        RationalMatrix amb = tor_ambient_differential(m, flavor, l, src.arity);
        RationalMatrix d(tgt.dim(), src.dim());
        for (int j = 0; j < src.dim(); ++j) {
            std::vector<Rational> img =
                tgt.idem.apply(amb.apply(src.basis.column_dense(j)));
            std::vector<Rational> c = tgt.coords(img);
            for (int i = 0; i < tgt.dim(); ++i)
                if (c[i] != 0) d.add_entry(i, j, c[i]);
        }
        tc.complex.diffs.push_back(std::move(d));
    }
    tc.complex.validate();
    return tc;
}

/**
 * Transport permutation of a standard diagram h in ub(l, s): the unique
 * sigma with sigma . h0 = h as decorated diagrams, where h0 is the canonical
 * diagram (identity injection, chords (l,l+1),(l+2,l+3),...).  With the
 * standard chord order and directions no twist sign occurs.
 */
inline Permutation diagram_transport(const BrauerMorphism& h)
{
    std::vector<int> im(h.n);
    for (int i = 0; i < h.m; ++i) im[i] = h.injection[i];
    for (int p = 0; p < h.t(); ++p) {
        im[h.m + 2 * p] = h.chords[p].first;
        im[h.m + 2 * p + 1] = h.chords[p].second;
    }
    return Permutation(im);
}

/**
 * Coinvariant representative of h^♯ ⊗ v in the idempotent image:
 * e · act(transport(h)^{-1}) v.
 */
inline std::vector<Rational> tor_project(const ModuleView& m, const TorTerm& t,
                                         const BrauerMorphism& h, const std::vector<Rational>& v)
{
    RationalMatrix a = m.act(t.arity, diagram_transport(h).inverse());
    return t.idem.apply(a.apply(v));
}

/**
 * Oracle for the tor differential: on the free model
 * ub_tw(l,s)^♯ ⊗ M(s) the differential is the transpose of postcomposition
 * by the coevaluation diagrams tensored with the module generators; it must
 * agree with the idempotent-model differential after projection.  Checks
 * every free basis vector h^♯ ⊗ v; throws on any mismatch.
 */
inline void check_tor_free_model(const ModuleView& m, const TorComplex& tc, int index)
{
    const TorTerm& src = tc.terms[index + 1];
    const TorTerm& tgt = tc.terms[index];
    const TwistSignature tw = diagram_twist(tc.flavor);
    const int s = src.arity;
    const std::vector<BrauerMorphism>& high = brauer::hom_basis(tc.l, s);
    const std::vector<BrauerMorphism>& low = brauer::hom_basis(tc.l, s - 2);

    // postcomposition matrices: column h' of P_{i,j} holds d_{i,j} ∘ h'
    RationalMatrix amb = tor_ambient_differential(m, tc.flavor, tc.l, s);
    for (const auto& h : high) {
        TwistedElement he = TwistedElement::basis_element(h, tw);
        for (int vcol = 0; vcol < m.dim(s); ++vcol) {
            std::vector<Rational> v(m.dim(s), Rational(0));
            v[vcol] = 1;
            // model side: project, then the model differential
            std::vector<Rational> lhs = tgt.idem.apply(amb.apply(tor_project(m, src, h, v)));
            // free side: all coevaluation pairs, then project each term
            std::vector<Rational> rhs(m.dim(s - 2), Rational(0));
            for (int i = 0; i < s; ++i)
                for (int j = i + 1; j < s; ++j) {
                    BrauerMorphism dij;
                    dij.m = s - 2;
                    dij.n = s;
                    for (int y = 0; y < s; ++y)
                        if (y != i && y != j) dij.injection.push_back(y);
                    dij.chords = {{i, j}};
                    RationalMatrix g = m.generator(s, i, j);
                    std::vector<Rational> gv = g.apply(v);
                    for (const auto& hp : low) {
                        TwistedElement comp =
                            brauer::compose(TwistedElement::basis_element(dij, tw),
                                            TwistedElement::basis_element(hp, tw));
                        auto it = comp.terms.find(h);
                        if (it == comp.terms.end()) continue;
                        std::vector<Rational> pr = tor_project(m, tgt, hp, gv);
                        for (size_t r = 0; r < rhs.size(); ++r) rhs[r] += it->second * pr[r];
                    }
                }
            if (lhs != rhs) throw invariant_error("tor free model: differential mismatch");
        }
    }
}

// ---------------------------------------------------------------------------
// Canonical inclusions: the ub-action on Ext and the torsion test on Tor.
// ---------------------------------------------------------------------------

/**
 * Chain map of postcomposition with the canonical inclusion l -> l + 2d on
 * ext terms: append the tail chords (l,l+1),...  All coefficients are +1:
 * the appended chords sort last and keep their directions.  Maps source
 * degree c to target degree c + d (the arities agree).
 */
inline RationalMatrix canonical_inclusion_chain(const ExtComplex& src, int index,
                                                const ExtComplex& tgt)
{
    if (tgt.l < src.l || (tgt.l - src.l) % 2)
        throw validation_error("canonical inclusion: bad target evaluation");
    const int d = (tgt.l - src.l) / 2;
    const ExtTerm& a = src.terms[index];
    const ExtTerm& b = tgt.terms[index + d];
    if (a.arity != b.arity) throw invariant_error("canonical inclusion: arity mismatch");
    RationalMatrix t(b.dim(), a.dim());
    for (size_t dia = 0; dia < a.diagrams.size(); ++dia) {
        auto [subset, ch] = a.diagrams[dia];
        for (int p = src.l; p < tgt.l; p += 2) ch.push_back({p, p + 1});
        int row0 = b.slot(subset, ch) * b.mdim;
        for (int q = 0; q < a.mdim; ++q) t.add_entry(row0 + q, (int)dia * a.mdim + q, Rational(1));
    }
    return t;
}

/**
 * The ub-action on Ext classes: the canonical inclusion descended to
 * homology.  h_src must be the homology of src at `index`, h_tgt of tgt at
 * index + (tgt.l - src.l)/2.
 */
inline RationalMatrix ub_action_on_ext(const ExtComplex& src, int index,
                                       const SubquotientBasis& h_src, const ExtComplex& tgt,
                                       const SubquotientBasis& h_tgt)
{
    return exactla::induced_map_on_homology(h_src, h_tgt,
                                            canonical_inclusion_chain(src, index, tgt));
}

/**
 * Chain map dual to precomposition with the canonical inclusion on tor
 * terms: degree k at evaluation l maps to degree k - d at evaluation l + 2d,
 * so iterating it annihilates every class.  Built from the free model: sum
 * over the diagrams x' in ub(l + 2d, s) whose composite with the inclusion
 * hits the canonical diagram, projected to the idempotent image.
 */
inline RationalMatrix tor_inclusion_chain(const ModuleView& m, const TorComplex& src, int index,
                                          const TorComplex& tgt)
{
    if (tgt.l < src.l || (tgt.l - src.l) % 2)
        throw validation_error("tor inclusion: bad target evaluation");
    const int d = (tgt.l - src.l) / 2;
    if (index - d < 0) {
        const TorTerm& a = src.terms[index];
        return RationalMatrix(0, a.dim());
    }
    const TorTerm& a = src.terms[index];
    const TorTerm& b = tgt.terms[index - d];
    if (a.arity != b.arity) throw invariant_error("tor inclusion: arity mismatch");
    const TwistSignature tw = diagram_twist(src.flavor);

    BrauerMorphism inc;
    inc.m = src.l;
    inc.n = tgt.l;
    for (int i = 0; i < src.l; ++i) inc.injection.push_back(i);
    for (int p = src.l; p < tgt.l; p += 2) inc.chords.push_back({p, p + 1});
    TwistedElement ie = TwistedElement::basis_element(inc, tw);

    BrauerMorphism h0;
    h0.m = src.l;
    h0.n = a.arity;
    for (int i = 0; i < src.l; ++i) h0.injection.push_back(i);
    for (int p = src.l; p < a.arity; p += 2) h0.chords.push_back({p, p + 1});

    RationalMatrix t(b.dim(), a.dim());
    for (const auto& xp : brauer::hom_basis(tgt.l, a.arity)) {
        TwistedElement comp = brauer::compose(TwistedElement::basis_element(xp, tw), ie);
        auto it = comp.terms.find(h0);
        if (it == comp.terms.end()) continue;
        RationalMatrix act = m.act(a.arity, diagram_transport(xp).inverse());
        for (int j = 0; j < a.dim(); ++j) {
            std::vector<Rational> img =
                b.idem.apply(act.apply(a.basis.column_dense(j)));
            std::vector<Rational> c = b.coords(img);
            for (int i = 0; i < b.dim(); ++i)
                if (c[i] != 0) t.add_entry(i, j, c[i] * it->second);
        }
    }
    return t;
}

// ---------------------------------------------------------------------------
// Chain-group decompositions and homology reports.
// ---------------------------------------------------------------------------

/**
 * Littlewood-Richardson coefficient via characters:
 * c^lam_{mu nu} = <chi_lam restricted, chi_mu x chi_nu>.
 */
inline long long littlewood_richardson(const Partition& lam, const Partition& mu,
                                       const Partition& nu)
{
    int a = mu.n(), b = nu.n();
    if (lam.n() != a + b) return 0;
    Rational acc(0);
    for (const auto& ct1 : symrep::cycle_types_of(a))
        for (const auto& ct2 : symrep::cycle_types_of(b)) {
            CycleType joint = ct1;
            joint.insert(joint.end(), ct2.begin(), ct2.end());
            std::sort(joint.rbegin(), joint.rend());
            Rational term = Rational(symrep::class_size(ct1)) * Rational(symrep::class_size(ct2));
            term *= Rational(symrep::irreducible_character(mu, ct1));
            term *= Rational(symrep::irreducible_character(nu, ct2));
            term *= Rational(symrep::irreducible_character(lam, joint));
            acc += term;
        }
    acc /= Rational(factorial(a)) * Rational(factorial(b));
    if (denominator(acc) != 1 || acc < 0)
        throw invariant_error("littlewood_richardson: non-integral coefficient");
    return numerator(acc).convert_to<long long>();
}

/**
 * Multiplicity of S_lam in the degree-c ext chain group at evaluation l for
 * the trivial one-dimensional coefficient algebra, predicted by the
 * induced-character model: the module factor carries the order (kminus) or
 * trivial (kplus) hyperoctahedral character, the diagram factor the
 * direction (kminus) or order (kplus) one, glued by Littlewood-Richardson.
 * Independent of the chain-level construction; used as an oracle.
 */
inline long long ext_chain_multiplicity_kid(KFlavor flavor, int l, int degree,
                                            const Partition& lam)
{
    const int arity = l - 2 * degree;
    if (arity < 0) return 0;
    const TwistSignature module_tw =
        flavor == KFlavor::kminus ? twist_pm : twist_pp;
    const TwistSignature chord_tw = diagram_twist(flavor);
    long long total = 0;
    for (const auto& mu : symrep::partitions_of(arity)) {
        long long mm = symrep::induced_multiplicity(mu, module_tw);
        if (!mm) continue;
        for (const auto& nu : symrep::partitions_of(l - arity)) {
            long long nn = symrep::induced_multiplicity(nu, chord_tw);
            if (!nn) continue;
            total += mm * nn * littlewood_richardson(lam, mu, nu);
        }
    }
    return total;
}

struct HomologyEntry {
    int degree = 0;
    int dim = 0;
    bool complete = true;
    std::map<Partition, long long> decomposition;
};

struct HomologyReport {
    std::string object;
    std::vector<HomologyEntry> entries;
    double seconds = 0;
};

/**
 * Homology of every term with Specht decomposition under the residual S_n
 * action (n = residual points; pass 0 to skip decomposition).  Entries at
 * index >= incomplete_from are marked incomplete: their incoming
 * differential lies beyond the arity cap.
 */
inline HomologyReport homology_report(const ChainComplex& c, int residual_n, std::string object,
                                      int incomplete_from = -1)
{
    auto t0 = std::chrono::steady_clock::now();
    HomologyReport rep;
    rep.object = std::move(object);
    for (int i = 0; i < c.size(); ++i) {
        SubquotientBasis h = homology_at(c, i);
        HomologyEntry e;
        e.degree = c.lowest + i;
        e.dim = h.dim();
        e.complete = incomplete_from < 0 || i < incomplete_from;
        if (residual_n > 0 && !c.gen_actions.empty() && e.dim > 0) {
            e.decomposition = symrep::decompose_character(
                residual_n, [&](const CycleType& ct) {
                    return exactla::trace_on_homology(
                        h, c.action_of(i, symrep::class_representative(ct)));
                });
            Integer total = 0;
            for (const auto& [lam, mult] : e.decomposition)
                total += Integer(mult) * lam.specht_dimension();
            if (total != e.dim)
                throw invariant_error("homology report: multiplicities do not add up");
        }
        rep.entries.push_back(std::move(e));
    }
    rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

/** The named complex constructor: one evaluated Koszul complex. */
inline ChainComplex koszul_differential(const ModuleView& m, KFlavor flavor, int eval_at,
                                        KSide side, int arity_cap = default_arity_cap)
{
    if (side == KSide::ext) return ext_complex(m, flavor, eval_at).complex;
    return tor_complex(m, flavor, eval_at, arity_cap).complex;
}

struct ExtTorReport {
    std::vector<HomologyReport> ext;
    std::vector<HomologyReport> tor;
};

/**
 * Ext and Tor of the odot-power module of a cyclic operad over the twisted
 * Brauer category, evaluated at 2, 4, ..., l_max: flavor even is the
 * exterior/(-;+) pair, odd the symmetric/(+;-) pair.  Tor terms run to the
 * arity cap n_max; the top tor degree of each object is reported as
 * incomplete.  Objects are processed by a worker pool; the merge order is
 * fixed, so reports are deterministic for any thread count.
 */
enum class ReportFlavor { even, odd };

inline ExtTorReport ext_tor_report(const cyclic::CyclicOperadData& c, ReportFlavor flavor,
                                   int l_max, int n_max = default_arity_cap, int threads = 1)
{
    if (l_max > hard_arity_cap || n_max > hard_arity_cap)
        throw cap_error("ext_tor_report: bound exceeds the hard cap "
                        + std::to_string(hard_arity_cap));
    if (l_max < 2 || n_max < l_max) throw validation_error("ext_tor_report: bad bounds");
    const KFlavor kf = flavor == ReportFlavor::even ? KFlavor::kminus : KFlavor::kplus;
    cyclic::OdotModule mod(c, module_flavor(kf));
    ModuleView view = odot_view(mod);

    std::vector<int> ls;
    for (int l = 2; l <= l_max; l += 2) ls.push_back(l);
    ExtTorReport out;
    out.ext.resize(ls.size());
    out.tor.resize(ls.size());

    struct Job {
        int l;
        bool is_ext;
        HomologyReport* slot;
    };
    std::vector<Job> jobs;
    for (size_t i = 0; i < ls.size(); ++i) {
        jobs.push_back({ls[i], true, &out.ext[i]});
        jobs.push_back({ls[i], false, &out.tor[i]});
    }

    auto run = [&](const Job& j) {
        std::string object = "2n=" + std::to_string(j.l);
        if (j.is_ext) {
            ExtComplex ec = ext_complex(view, kf, j.l);
            check_euler(ec.complex);
            *j.slot = homology_report(ec.complex, j.l, object);
        } else {
            TorComplex tc = tor_complex(view, kf, j.l, n_max);
            check_euler(tc.complex);
            *j.slot = homology_report(tc.complex, j.l, object, tc.complex.size() - 1);
        }
    };

    if (threads <= 1) {
        for (const auto& j : jobs) run(j);
        return out;
    }
    std::atomic<size_t> next{0};
    std::vector<std::exception_ptr> errors(jobs.size());
    std::vector<std::thread> pool;
    for (int w = 0; w < threads; ++w)
        pool.emplace_back([&] {
            for (size_t i = next++; i < jobs.size(); i = next++)
                try {
                    run(jobs[i]);
                } catch (...) {
                    errors[i] = std::current_exception();
                }
        });
    for (auto& th : pool) th.join();
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);
    return out;
}

} // namespace brkz::koszul

#endif
