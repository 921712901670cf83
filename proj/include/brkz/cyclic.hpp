/**
 * Finite-dimensional cyclic operads: algebras with involution and the operads
 * they generate, generic composition tables with exhaustive axiom checks, the
 * induced structure morphisms on odot powers, and the resulting
 * downward-Brauer generator actions on labeled chord bases.
 */

#ifndef BRKZ_CYCLIC_HPP
#define BRKZ_CYCLIC_HPP

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "brkz/brauer.hpp"
#include "brkz/elimination.hpp"
#include "brkz/errors.hpp"
#include "brkz/fbmodule.hpp"
#include "brkz/matrix.hpp"
#include "brkz/permutation.hpp"
#include "brkz/wreath.hpp"

namespace brkz::cyclic {

using exactla::kronecker;
using exactla::RationalMatrix;
using fbmod::FBMap;
using fbmod::FBModule;
using fbmod::OdotFlavor;
using fbmod::OdotOrbitBasis;
using symrep::Permutation;
using symrep::WreathElement;

/**
 * Associative algebra with an anti-involution, given by structure constants:
 * e_i e_j = sum_k mult[i][j][k] e_k.
 */
struct AlgebraWithInvolution {
    int dim = 0;
    std::vector<std::vector<std::vector<Rational>>> mult;
    RationalMatrix sigma{0, 0};
    bool unital = false;
    std::vector<Rational> unit;
    std::vector<std::string> names;   // optional basis names

    std::vector<Rational> product(const std::vector<Rational>& x,
                                  const std::vector<Rational>& y) const
    {
        std::vector<Rational> out(dim, Rational(0));
        for (int i = 0; i < dim; ++i) {
            if (x[i] == 0) continue;
            for (int j = 0; j < dim; ++j) {
                if (y[j] == 0) continue;
                for (int k = 0; k < dim; ++k) out[k] += x[i] * y[j] * mult[i][j][k];
            }
        }
        return out;
    }

    std::vector<Rational> apply_sigma(const std::vector<Rational>& x) const
    {
        std::vector<Rational> out(dim, Rational(0));
        for (int j = 0; j < dim; ++j) {
            if (x[j] == 0) continue;
            for (const auto& [i, v] : sigma.col[j]) out[i] += v * x[j];
        }
        return out;
    }

    std::vector<Rational> basis_vector(int i) const
    {
        std::vector<Rational> e(dim, Rational(0));
        e[i] = 1;
        return e;
    }

    /** Throws validation_error naming the first violated identity. */
    void validate() const
    {
        if (dim < 0) throw validation_error("algebra: negative dimension");
        if ((int)mult.size() != dim) throw validation_error("algebra: mult table size");
        for (const auto& row : mult) {
            if ((int)row.size() != dim) throw validation_error("algebra: mult table size");
            for (const auto& entry : row)
                if ((int)entry.size() != dim) throw validation_error("algebra: mult table size");
        }
        if (sigma.rows != dim || sigma.cols != dim)
            throw validation_error("algebra: sigma shape");
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j)
                for (int k = 0; k < dim; ++k)
                    if (product(product(basis_vector(i), basis_vector(j)), basis_vector(k)) !=
                        product(basis_vector(i), product(basis_vector(j), basis_vector(k))))
                        throw validation_error("algebra: associativity fails at (" +
                                               std::to_string(i) + "," + std::to_string(j) + "," +
                                               std::to_string(k) + ")");
        if (!(sigma * sigma == RationalMatrix::identity(dim)))
            throw validation_error("algebra: sigma^2 != id");
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j)
                if (apply_sigma(product(basis_vector(i), basis_vector(j))) !=
                    product(apply_sigma(basis_vector(j)), apply_sigma(basis_vector(i))))
                    throw validation_error("algebra: sigma(ab) != sigma(b)sigma(a) at (" +
                                           std::to_string(i) + "," + std::to_string(j) + ")");
        if (unital) {
            if ((int)unit.size() != dim) throw validation_error("algebra: unit vector size");
            for (int i = 0; i < dim; ++i) {
                if (product(unit, basis_vector(i)) != basis_vector(i))
                    throw validation_error("algebra: 1*e_" + std::to_string(i) + " != e_" +
                                           std::to_string(i));
                if (product(basis_vector(i), unit) != basis_vector(i))
                    throw validation_error("algebra: e_" + std::to_string(i) + "*1 != e_" +
                                           std::to_string(i));
            }
            if (apply_sigma(unit) != unit) throw validation_error("algebra: sigma(1) != 1");
        }
    }
};

/** The initial unital algebra with involution (Q, Id). */
inline AlgebraWithInvolution alg_rational()
{
    AlgebraWithInvolution b;
    b.dim = 1;
    b.mult = {{{Rational(1)}}};
    b.sigma = RationalMatrix::identity(1);
    b.unital = true;
    b.unit = {Rational(1)};
    b.names = {"1"};
    return b;
}

/** Dual numbers Q[x]/x^2 with sigma = Id; basis (1, x). */
inline AlgebraWithInvolution alg_dual_numbers()
{
    AlgebraWithInvolution b;
    b.dim = 2;
    auto c = [](int i, int j) {
        std::vector<Rational> v(2, Rational(0));
        if (i + j < 2) v[i + j] = 1;
        return v;
    };
    b.mult = {{c(0, 0), c(0, 1)}, {c(1, 0), c(1, 1)}};
    b.sigma = RationalMatrix::identity(2);
    b.unital = true;
    b.unit = {Rational(1), Rational(0)};
    b.names = {"1", "x"};
    return b;
}

/** Group algebra Q[Z/2] with sigma = group inversion; basis (e, g). */
inline AlgebraWithInvolution alg_group_z2()
{
    AlgebraWithInvolution b;
    b.dim = 2;
    auto c = [](int k) {
        std::vector<Rational> v(2, Rational(0));
        v[k] = 1;
        return v;
    };
    b.mult = {{c(0), c(1)}, {c(1), c(0)}};
    b.sigma = RationalMatrix::identity(2);   // inversion fixes both group elements
    b.unital = true;
    b.unit = {Rational(1), Rational(0)};
    b.names = {"e", "g"};
    return b;
}

/**
 * Cyclic operad presented by per-arity spaces with their group actions and
 * the normalized contraction tables comp[(m,n)]: C(m) (x) C(n) -> C(m+n-2),
 * gluing the last input of the first factor to the first input of the second.
 * Column index of e_i (x) e_j is i*dim(n)+j.
 */
struct CyclicOperadData {
    FBModule underlying;
    std::map<std::pair<int, int>, RationalMatrix> comp;

    int dim(int n) const { return underlying.dim(n); }

    std::vector<int> support() const
    {
        std::vector<int> s;
        for (const auto& [n, d] : underlying.dims)
            if (d > 0) s.push_back(n);
        return s;
    }

    RationalMatrix comp_or_zero(int m, int n) const
    {
        auto it = comp.find({m, n});
        if (it != comp.end()) return it->second;
        return RationalMatrix(dim(m + n - 2), dim(m) * dim(n));
    }

    /** Apply the normalized contraction to a pair of coordinate vectors. */
    std::vector<Rational> compose(int m, int n, const std::vector<Rational>& x,
                                  const std::vector<Rational>& y) const
    {
        int dn = dim(n), dt = dim(m + n - 2);
        std::vector<Rational> out(dt, Rational(0));
        auto it = comp.find({m, n});
        if (it == comp.end()) return out;
        for (int i = 0; i < dim(m); ++i) {
            if (x[i] == 0) continue;
            for (int j = 0; j < dn; ++j) {
                if (y[j] == 0) continue;
                for (const auto& [k, v] : it->second.col[i * dn + j]) out[k] += v * x[i] * y[j];
            }
        }
        return out;
    }

    /**
     * Contraction gluing input a of an m-ary operation to input b of an n-ary
     * one, derived from the normalized table by equivariance.  Result
     * coordinates are ordered (first factor minus a, second factor minus b).
     */
    RationalMatrix derived_iota(int m, int n, int a, int b) const
    {
        // transition to the basis order with a last in the first factor
        std::vector<int> ta(m), tb(n);
        for (int k = 0; k < m; ++k) ta[k] = k < a ? k : k == a ? m - 1 : k - 1;
        for (int k = 0; k < n; ++k) tb[k] = k < b ? k + 1 : k == b ? 0 : k;
        return comp_or_zero(m, n) * kronecker(underlying.action(m, Permutation(ta)),
                                              underlying.action(n, Permutation(tb)));
    }

    /** Throws naming the first violated identity; exhaustive at supported arities. */
    void validate() const
    {
        underlying.validate();
        if (dim(0) != 0) throw validation_error("cyclic operad: C(0) != 0");
        auto sup = support();
        for (const auto& [key, mat] : comp) {
            auto [m, n] = key;
            if (dim(m) == 0 || dim(n) == 0 || m + n - 2 < 0)
                throw validation_error("cyclic operad: comp at unsupported pair (" +
                                       std::to_string(m) + "," + std::to_string(n) + ")");
            if (mat.rows != dim(m + n - 2) || mat.cols != dim(m) * dim(n))
                throw validation_error("cyclic operad: comp shape at (" + std::to_string(m) +
                                       "," + std::to_string(n) + ")");
        }
        // stabilizer equivariance on generators: permutations fixing the glued
        // inputs act through the block permutation of the result
        for (int m : sup)
            for (int n : sup) {
                int r = m + n - 2;
                if (dim(r) == 0) continue;
                RationalMatrix c = comp_or_zero(m, n);
                RationalMatrix im = RationalMatrix::identity(dim(m));
                RationalMatrix in = RationalMatrix::identity(dim(n));
                for (int i = 0; i + 1 <= m - 2; ++i)
                    if (!(c * kronecker(underlying.action(m, symrep::adjacent_transposition(m, i)),
                                        in) ==
                          underlying.action(r, symrep::adjacent_transposition(r, i)) * c))
                        throw validation_error("cyclic operad: equivariance fails at (" +
                                              std::to_string(m) + "," + std::to_string(n) +
                                              ") generator s_" + std::to_string(i));
                for (int j = 1; j + 1 <= n - 1; ++j)
                    if (!(c * kronecker(im,
                                        underlying.action(n, symrep::adjacent_transposition(n, j))) ==
                          underlying.action(r, symrep::adjacent_transposition(r, m - 2 + j)) * c))
                        throw validation_error("cyclic operad: equivariance fails at (" +
                                              std::to_string(m) + "," + std::to_string(n) +
                                              ") second-factor generator s_" + std::to_string(j));
            }
        // cyclic consistency: contracting (a of x) with (b of y) agrees with
        // contracting (b of y) with (a of x) up to reordering the result
        for (int m : sup)
            for (int n : sup) {
                int r = m + n - 2;
                if (dim(r) == 0) continue;
                // coordinate reorder from (second minus b, first minus a) order
                std::vector<int> rot(r);
                for (int p = 0; p < r; ++p) rot[p] = p < n - 1 ? m - 1 + p : p - (n - 1);
                RationalMatrix rotm = underlying.action(r, Permutation(rot));
                // tensor swap C(m) (x) C(n) -> C(n) (x) C(m)
                RationalMatrix swap(dim(n) * dim(m), dim(m) * dim(n));
                for (int i = 0; i < dim(m); ++i)
                    for (int j = 0; j < dim(n); ++j)
                        swap.add_entry(j * dim(m) + i, i * dim(n) + j, Rational(1));
                for (int a = 0; a < m; ++a)
                    for (int b = 0; b < n; ++b)
                        if (!(derived_iota(m, n, a, b) == rotm * derived_iota(n, m, b, a) * swap))
                            throw validation_error(
                                "cyclic operad: contraction symmetry fails at (" +
                                std::to_string(m) + "," + std::to_string(n) + ") inputs (" +
                                std::to_string(a) + "," + std::to_string(b) + ")");
            }
        // associativity of chained normalized contractions
        for (int m : sup)
            for (int n : sup) {
                if (n < 2) continue;
                for (int p : sup) {
                    int r = m + n + p - 4;
                    if (r < 0 || dim(r) == 0) continue;
                    RationalMatrix lhs = comp_or_zero(m + n - 2, p) *
                                         kronecker(comp_or_zero(m, n),
                                                   RationalMatrix::identity(dim(p)));
                    RationalMatrix rhs = comp_or_zero(m, n + p - 2) *
                                         kronecker(RationalMatrix::identity(dim(m)),
                                                   comp_or_zero(n, p));
                    if (!(lhs == rhs))
                        throw validation_error("cyclic operad: associativity fails at (" +
                                              std::to_string(m) + "," + std::to_string(n) + "," +
                                              std::to_string(p) + ")");
                }
            }
    }
};

/** The cyclic operad supported on 2 attached to an algebra with involution. */
inline CyclicOperadData operad_from_involutive_algebra(const AlgebraWithInvolution& b)
{
    b.validate();
    CyclicOperadData c;
    if (b.dim == 0) return c;
    c.underlying.dims[2] = b.dim;
    c.underlying.gens[2] = {b.sigma};
    std::vector<std::string> lbl(b.dim);
    for (int i = 0; i < b.dim; ++i)
        lbl[i] = i < (int)b.names.size() ? b.names[i] : "e" + std::to_string(i);
    c.underlying.labels[2] = lbl;
    RationalMatrix m(b.dim, b.dim * b.dim);
    for (int i = 0; i < b.dim; ++i)
        for (int j = 0; j < b.dim; ++j)
            for (int k = 0; k < b.dim; ++k)
                if (b.mult[i][j][k] != 0) m.add_entry(k, i * b.dim + j, b.mult[i][j][k]);
    c.comp[{2, 2}] = std::move(m);
    return c;
}

/** Truncated commutative cyclic operad: trivial line in each arity 3..max. */
inline CyclicOperadData com_geq3(int max_arity)
{
    CyclicOperadData c;
    for (int n = 3; n <= max_arity; ++n) {
        c.underlying.dims[n] = 1;
        c.underlying.gens[n] = std::vector<RationalMatrix>(n - 1, RationalMatrix::identity(1));
        c.underlying.labels[n] = {"1"};
    }
    for (int m = 3; m <= max_arity; ++m)
        for (int n = 3; n <= max_arity; ++n)
            if (m + n - 2 <= max_arity) c.comp[{m, n}] = RationalMatrix::identity(1);
    return c;
}

/** Subobject supported on arities >= k; compositions into killed arities vanish. */
inline CyclicOperadData truncate_below(const CyclicOperadData& c, int k)
{
    CyclicOperadData out;
    for (const auto& [n, d] : c.underlying.dims) {
        if (n < k || d == 0) continue;
        out.underlying.dims[n] = d;
        if (c.underlying.gens.count(n)) out.underlying.gens[n] = c.underlying.gens.at(n);
        if (c.underlying.labels.count(n)) out.underlying.labels[n] = c.underlying.labels.at(n);
    }
    for (const auto& [key, mat] : c.comp) {
        auto [m, n] = key;
        if (m >= k && n >= k && m + n - 2 >= k) out.comp[key] = mat;
    }
    return out;
}

/**
 * Kernel of an algebra augmentation, as a non-unital algebra with involution.
 * aug must be an algebra map to the ground field compatible with sigma.
 */
inline AlgebraWithInvolution augmentation_ideal(const AlgebraWithInvolution& b,
                                                const std::vector<Rational>& aug)
{
    b.validate();
    if ((int)aug.size() != b.dim) throw validation_error("augmentation: functional size");
    auto value = [&](const std::vector<Rational>& x) {
        Rational s = 0;
        for (int i = 0; i < b.dim; ++i) s += aug[i] * x[i];
        return s;
    };
    for (int i = 0; i < b.dim; ++i)
        for (int j = 0; j < b.dim; ++j)
            if (value(b.product(b.basis_vector(i), b.basis_vector(j))) != aug[i] * aug[j])
                throw validation_error("augmentation: not multiplicative at (" +
                                       std::to_string(i) + "," + std::to_string(j) + ")");
    for (int i = 0; i < b.dim; ++i)
        if (value(b.apply_sigma(b.basis_vector(i))) != aug[i])
            throw validation_error("augmentation: not sigma-invariant");
    if (b.unital && value(b.unit) != 1) throw validation_error("augmentation: aug(1) != 1");

    RationalMatrix row(1, b.dim);
    for (int i = 0; i < b.dim; ++i)
        if (aug[i] != 0) row.add_entry(0, i, aug[i]);
    RationalMatrix basis = exactla::kernel_basis(row);
    exactla::Solver coords(basis);
    auto in_ideal = [&](const std::vector<Rational>& x) {
        auto sol = coords.solve_checked(basis, x);
        if (!sol) throw invariant_error("augmentation: product left the ideal");
        return *sol;
    };

    AlgebraWithInvolution out;
    out.dim = basis.cols;
    out.mult.assign(out.dim, std::vector<std::vector<Rational>>(out.dim));
    for (int i = 0; i < out.dim; ++i)
        for (int j = 0; j < out.dim; ++j)
            out.mult[i][j] =
                in_ideal(b.product(basis.column_dense(i), basis.column_dense(j)));
    out.sigma = RationalMatrix(out.dim, out.dim);
    for (int j = 0; j < out.dim; ++j) {
        auto v = in_ideal(b.apply_sigma(basis.column_dense(j)));
        for (int i = 0; i < out.dim; ++i)
            if (v[i] != 0) out.sigma.add_entry(i, j, v[i]);
    }
    return out;
}

/**
 * Case analysis for a node pair of a decorated chord diagram, with the wreath
 * element normalizing the diagram so that the pair lands in the final
 * positions.  Chord k of the diagram is the ordered pair chords[k].
 */
struct NormalizedPair {
    bool cross = false;       // false: the pair is a chord; true: two distinct chords
    WreathElement w;          // alpha (chord case) or beta (cross case)
};

inline NormalizedPair wreath_normalize(const std::vector<std::pair<int, int>>& chords, int u,
                                       int v)
{
    int t = (int)chords.size();
    if (u == v) throw validation_error("wreath_normalize: equal nodes");
    int iu = -1, iv = -1;
    for (int k = 0; k < t; ++k) {
        if (chords[k].first == u || chords[k].second == u) iu = k;
        if (chords[k].first == v || chords[k].second == v) iv = k;
    }
    if (iu < 0 || iv < 0) throw validation_error("wreath_normalize: node not in diagram");
    NormalizedPair out;
    if (iu == iv) {
        int eps = chords[iu].first == u ? 0 : 1;
        out.cross = false;
        out.w = symrep::wreath_rho(t, iu);
        out.w.flips[iu] = eps;
    } else {
        int eu = chords[iu].second == u ? 0 : 1;
        int ev = chords[iv].first == v ? 0 : 1;
        out.cross = true;
        out.w = symrep::wreath_psi(t, iu, iv);
        out.w.flips[iu] = eu;
        out.w.flips[iv] = ev;
    }
    return out;
}

/**
 * Matrix of the Brauer generator g_{u,v} (0-based, u < v) on the labeled
 * chord basis of the odot power at arity 2t, for an operad supported on 2.
 * Zero on diagrams where {u,v} is a chord; otherwise concatenates the two
 * chords through u and v, multiplying their labels.  Exterior flavor carries
 * the chord-order sign.
 */
inline RationalMatrix module_action(const CyclicOperadData& c, OdotFlavor flavor, int u, int v,
                                    int two_t)
{
    if (c.support() != std::vector<int>{2})
        throw validation_error("module_action: operad not supported on 2");
    if (two_t < 2 || two_t % 2) throw validation_error("module_action: arity must be even");
    int t = two_t / 2;
    if (!(0 <= u && u < v && v < two_t)) throw validation_error("module_action: bad node pair");
    const FBModule& f = c.underlying;
    int db = f.dim(2);
    const RationalMatrix& sig = f.gens.at(2)[0];
    bool ext = flavor == OdotFlavor::exterior;
    OdotOrbitBasis src(f, t, two_t, ext);
    OdotOrbitBasis tgt(f, t - 1, two_t - 2, ext);
    RationalMatrix m(tgt.dim(), src.dim());
    for (int col = 0; col < src.dim(); ++col) {
        const auto& e = src.basis[col];
        int iu = -1, iv = -1;
        for (int k = 0; k < t; ++k) {
            if (e.parts[k][0] == u || e.parts[k][1] == u) iu = k;
            if (e.parts[k][0] == v || e.parts[k][1] == v) iv = k;
        }
        if (iu == iv) continue;
        int pu = e.parts[iu][0] == u ? e.parts[iu][1] : e.parts[iu][0];
        int pv = e.parts[iv][0] == v ? e.parts[iv][1] : e.parts[iv][0];
        // glued labels, with sigma when the endpoint sits at the wrong slot
        int eu = e.parts[iu][1] == u ? 0 : 1;
        int ev = e.parts[iv][0] == v ? 0 : 1;
        std::vector<Rational> a(db, Rational(0)), bb(db, Rational(0));
        if (eu) a = sig.column_dense(e.idx[iu]); else a[e.idx[iu]] = 1;
        if (ev) bb = sig.column_dense(e.idx[iv]); else bb[e.idx[iv]] = 1;
        std::vector<Rational> prod = c.compose(2, 2, a, bb);
        Rational sign(1);
        if (ext) sign = Rational(symrep::wreath_psi(t, iu, iv).block_perm.sign());
        // concatenated chord, re-directed if needed
        int x = pu, y = pv;
        if (x > y) {
            std::swap(x, y);
            std::vector<Rational> flipped(db, Rational(0));
            for (int j = 0; j < db; ++j) {
                if (prod[j] == 0) continue;
                for (const auto& [i, w] : sig.col[j]) flipped[i] += w * prod[j];
            }
            prod = std::move(flipped);
        }
        // surviving chords in order, new chord inserted at its sorted slot
        std::vector<std::pair<std::vector<int>, int>> rest;
        for (int k = 0; k < t; ++k)
            if (k != iu && k != iv) rest.push_back({e.parts[k], e.idx[k]});
        int pos = 0;
        while (pos < (int)rest.size() && rest[pos].first[0] < x) ++pos;
        if (ext && ((int)rest.size() - pos) % 2) sign = -sign;
        // relabel the surviving points order-preservingly
        std::vector<int> keep;
        for (int p = 0; p < two_t; ++p)
            if (p != u && p != v) keep.push_back(p);
        auto rank = [&](int p) {
            return (int)(std::lower_bound(keep.begin(), keep.end(), p) - keep.begin());
        };
        OdotOrbitBasis::Elt img;
        for (int k = 0; k < pos; ++k)
            img.parts.push_back({rank(rest[k].first[0]), rank(rest[k].first[1])});
        img.parts.push_back({rank(x), rank(y)});
        for (int k = pos; k < (int)rest.size(); ++k)
            img.parts.push_back({rank(rest[k].first[0]), rank(rest[k].first[1])});
        for (int j = 0; j < db; ++j) {
            if (prod[j] == 0) continue;
            img.idx.clear();
            for (int k = 0; k < pos; ++k) img.idx.push_back(rest[k].second);
            img.idx.push_back(j);
            for (int k = pos; k < (int)rest.size(); ++k) img.idx.push_back(rest[k].second);
            m.add_entry(tgt.index.at(img), col, sign * prod[j]);
        }
    }
    return m;
}

/**
 * Component at the 2-subset {z1 < z2} of the structure morphism psi/xi on the
 * t-th odot power at the given arity, for any cyclic operad.  The target is
 * the (t-1)-st odot power on the remaining points, relabeled
 * order-preservingly.  Built from the coproduct, the normalized contraction
 * on two factors, and the product.
 */
inline RationalMatrix structure_component(const CyclicOperadData& c, OdotFlavor flavor, int t,
                                          int arity, int z1, int z2)
{
    if (!(0 <= z1 && z1 < z2 && z2 < arity))
        throw validation_error("structure_component: bad node pair");
    if (t < 1) throw validation_error("structure_component: power must be positive");
    const FBModule& f = c.underlying;
    bool ext = flavor == OdotFlavor::exterior;
    OdotOrbitBasis src(f, t, arity, ext);
    OdotOrbitBasis tgt(f, t - 1, arity - 2, ext);
    RationalMatrix out(tgt.dim(), src.dim());
    if (t < 2) return out;

    std::vector<int> keep;
    for (int p = 0; p < arity; ++p)
        if (p != z1 && p != z2) keep.push_back(p);
    auto rank = [&](int p) {
        return (int)(std::lower_bound(keep.begin(), keep.end(), p) - keep.begin());
    };

    for (int col = 0; col < src.dim(); ++col) {
        const auto& e = src.basis[col];
        int i = -1, j = -1;
        for (int k = 0; k < t; ++k) {
            if (std::binary_search(e.parts[k].begin(), e.parts[k].end(), z1)) i = k;
            if (std::binary_search(e.parts[k].begin(), e.parts[k].end(), z2)) j = k;
        }
        if (i == j) continue;
        int m = (int)e.parts[i].size(), n = (int)e.parts[j].size();
        // coproduct sign: unshuffle moving factor i to the next-to-last slot
        // and factor j to the last
        Rational sign(1);
        if (ext) sign = Rational(symrep::wreath_psi(t, i, j).block_perm.sign());
        // transition to orders with z1 last in factor i and z2 first in factor j
        int a = (int)(std::find(e.parts[i].begin(), e.parts[i].end(), z1) - e.parts[i].begin());
        int b = (int)(std::find(e.parts[j].begin(), e.parts[j].end(), z2) - e.parts[j].begin());
        std::vector<Rational> w =
            c.compose(m, n,
                      f.action(m, Permutation([&] {
                                   std::vector<int> im(m);
                                   for (int k = 0; k < m; ++k)
                                       im[k] = k < a ? k : k == a ? m - 1 : k - 1;
                                   return im;
                               }()))
                          .column_dense(e.idx[i]),
                      f.action(n, Permutation([&] {
                                   std::vector<int> im(n);
                                   for (int k = 0; k < n; ++k) im[k] = k < b ? k + 1 : k == b ? 0 : k;
                                   return im;
                               }()))
                          .column_dense(e.idx[j]));
        // new part and the transition from (U_i minus z1, U_j minus z2) order
        // to its sorted order
        std::vector<int> wset;
        for (int p : e.parts[i])
            if (p != z1) wset.push_back(p);
        std::vector<int> phi = wset;
        for (int p : e.parts[j])
            if (p != z2) {
                wset.push_back(p);
                phi.push_back(p);
            }
        std::sort(wset.begin(), wset.end());
        std::vector<int> t3(phi.size());
        for (size_t k = 0; k < phi.size(); ++k)
            t3[k] = (int)(std::lower_bound(wset.begin(), wset.end(), phi[k]) - wset.begin());
        if (m + n - 2 > 0 && f.dim(m + n - 2) > 0) {
            RationalMatrix canon = f.action(m + n - 2, Permutation(t3));
            std::vector<Rational> wc(f.dim(m + n - 2), Rational(0));
            for (int q = 0; q < (int)w.size(); ++q) {
                if (w[q] == 0) continue;
                for (const auto& [r, vv] : canon.col[q]) wc[r] += vv * w[q];
            }
            w = std::move(wc);
        }
        if (f.dim(m + n - 2) == 0) continue;
        // insert the new part at its sorted slot among the survivors
        std::vector<std::pair<std::vector<int>, int>> rest;
        for (int k = 0; k < t; ++k)
            if (k != i && k != j) rest.push_back({e.parts[k], e.idx[k]});
        int pos = 0;
        while (pos < (int)rest.size() && rest[pos].first[0] < wset[0]) ++pos;
        if (ext && ((int)rest.size() - pos) % 2) sign = -sign;
        OdotOrbitBasis::Elt img;
        for (int k = 0; k < pos; ++k) {
            std::vector<int> part;
            for (int p : rest[k].first) part.push_back(rank(p));
            img.parts.push_back(std::move(part));
        }
        {
            std::vector<int> part;
            for (int p : wset) part.push_back(rank(p));
            img.parts.push_back(std::move(part));
        }
        for (int k = pos; k < (int)rest.size(); ++k) {
            std::vector<int> part;
            for (int p : rest[k].first) part.push_back(rank(p));
            img.parts.push_back(std::move(part));
        }
        for (int q = 0; q < (int)w.size(); ++q) {
            if (w[q] == 0) continue;
            img.idx.clear();
            for (int k = 0; k < pos; ++k) img.idx.push_back(rest[k].second);
            img.idx.push_back(q);
            for (int k = pos; k < (int)rest.size(); ++k) img.idx.push_back(rest[k].second);
            out.add_entry(tgt.index.at(img), col, sign * w[q]);
        }
    }
    return out;
}

/** Direct sum of odot powers up to an arity bound, with per-arity block offsets. */
struct GradedOdotStar {
    FBModule module;
    std::map<int, std::vector<std::pair<int, int>>> blocks;   // arity -> (power, offset)
};

inline GradedOdotStar odot_star(const CyclicOperadData& c, OdotFlavor flavor, int arity_bound)
{
    if (arity_bound > 12) throw cap_error("odot_star: arity bound exceeds 12");
    GradedOdotStar out;
    bool ext = flavor == OdotFlavor::exterior;
    for (int n = 0; n <= arity_bound; ++n) {
        int offset = 0;
        for (int t = 0; t <= n || t == 0; ++t) {
            OdotOrbitBasis ob(c.underlying, t, n, ext);
            if (ob.dim() == 0) continue;
            out.blocks[n].push_back({t, offset});
            offset += ob.dim();
            if (out.module.dims.count(n) == 0) {
                out.module.dims[n] = 0;
                out.module.gens[n] =
                    std::vector<RationalMatrix>(std::max(0, n - 1), RationalMatrix(0, 0));
                out.module.labels[n] = {};
            }
            out.module.dims[n] += ob.dim();
            for (int k = 0; k + 1 < n; ++k) {
                RationalMatrix g = ob.action(symrep::adjacent_transposition(n, k));
                RationalMatrix& acc = out.module.gens[n][k];
                RationalMatrix sum(acc.rows + g.rows, acc.cols + g.cols);
                for (int jj = 0; jj < acc.cols; ++jj) sum.col[jj] = acc.col[jj];
                for (int jj = 0; jj < g.cols; ++jj)
                    for (const auto& [r, v] : g.col[jj])
                        sum.add_entry(acc.rows + r, acc.cols + jj, v);
                acc = std::move(sum);
            }
            for (int k = 0; k < ob.dim(); ++k)
                out.module.labels[n].push_back("t=" + std::to_string(t) + " " + ob.label(k));
        }
    }
    return out;
}

/** The structure morphism psi (symmetric) or xi (exterior) as a degreewise map. */
struct StructureMorphism {
    FBModule source, target;
    FBMap map;
};

inline StructureMorphism structure_morphism(const CyclicOperadData& c, OdotFlavor flavor,
                                            int arity_bound)
{
    StructureMorphism out;
    GradedOdotStar s = odot_star(c, flavor, arity_bound);
    out.source = s.module;
    out.target = fbmod::day_convolve(
        s.module, flavor == OdotFlavor::exterior ? fbmod::fb_sgn(2) : fbmod::fb_triv(2));
    for (int n = 0; n <= arity_bound; ++n) {
        int sd = out.source.dim(n), td = out.target.dim(n);
        if (sd == 0) continue;
        RationalMatrix m(td, sd);
        if (n >= 2 && td > 0) {
            int df = out.source.dim(n - 2);
            auto zsets = fbmod::detail::subsets_of_size(n, n - 2);
            std::map<std::vector<int>, int> block_of;
            for (int bi = 0; bi < (int)zsets.size(); ++bi) block_of[zsets[bi]] = bi;
            for (const auto& [t, off] : s.blocks.at(n)) {
                if (t < 2) continue;
                // offset of the (t-1)-block at arity n-2
                int toff = -1;
                if (s.blocks.count(n - 2))
                    for (const auto& [t2, o2] : s.blocks.at(n - 2))
                        if (t2 == t - 1) toff = o2;
                if (toff < 0) continue;
                for (int z1 = 0; z1 < n; ++z1)
                    for (int z2 = z1 + 1; z2 < n; ++z2) {
                        RationalMatrix comp = structure_component(c, flavor, t, n, z1, z2);
                        if (comp.is_zero()) continue;
                        std::vector<int> sset;
                        for (int p = 0; p < n; ++p)
                            if (p != z1 && p != z2) sset.push_back(p);
                        int base = block_of.at(sset) * df + toff;
                        for (int jj = 0; jj < comp.cols; ++jj)
                            for (const auto& [r, v] : comp.col[jj])
                                m.add_entry(base + r, off + jj, v);
                    }
            }
        }
        out.map.comp[n] = std::move(m);
    }
    return out;
}

/**
 * The odot-power module of an operad supported on 2, with cached bases,
 * generator matrices, and the induced action of arbitrary standard diagrams
 * of the upward Brauer category read as downward morphisms.
 */
class OdotModule {
public:
    OdotModule(CyclicOperadData c, OdotFlavor flavor) : c_(std::move(c)), flavor_(flavor)
    {
        if (c_.support() != std::vector<int>{2})
            throw validation_error("odot module: operad not supported on 2");
    }

    const CyclicOperadData& operad() const { return c_; }
    OdotFlavor flavor() const { return flavor_; }

    const OdotOrbitBasis& basis(int arity) const
    {
        if (arity < 0 || arity % 2) throw validation_error("odot module: arity must be even");
        std::lock_guard<std::mutex> lock(mu_);
        auto it = bases_.find(arity);
        if (it == bases_.end())
            it = bases_
                     .emplace(arity, OdotOrbitBasis(c_.underlying, arity / 2, arity,
                                                    flavor_ == OdotFlavor::exterior))
                     .first;
        return it->second;
    }

    int dim(int arity) const { return arity % 2 ? 0 : basis(arity).dim(); }

    RationalMatrix act(int arity, const Permutation& p) const { return basis(arity).action(p); }

    const RationalMatrix& generator(int arity, int u, int v) const
    {
        std::lock_guard<std::mutex> lock(mu_);
        auto key = std::make_tuple(arity, u, v);
        auto it = gens_.find(key);
        if (it == gens_.end())
            it = gens_.emplace(key, module_action(c_, flavor_, u, v, arity)).first;
        return it->second;
    }

    /** Action of a standard diagram d in ub(m, n), as a matrix M(n) -> M(m). */
    RationalMatrix diagram(const brauer::BrauerMorphism& d) const
    {
        std::vector<int> im(d.n);
        for (int i = 0; i < d.m; ++i) im[i] = d.injection[i];
        for (int j = 0; j < d.t(); ++j) {
            im[d.m + 2 * j] = d.chords[j].first;
            im[d.m + 2 * j + 1] = d.chords[j].second;
        }
        RationalMatrix m = act(d.n, Permutation(im).inverse());
        for (int k = d.n - 2; k >= d.m; k -= 2) m = generator(k + 2, k, k + 1) * m;
        return m;
    }

    /** Linear extension over a twisted element in ub(m, n). */
    RationalMatrix element(const brauer::TwistedElement& x) const
    {
        RationalMatrix m(dim(x.m), dim(x.n));
        for (const auto& [d, coeff] : x.terms) m = m + diagram(d).scaled(coeff);
        return m;
    }

private:
    CyclicOperadData c_;
    OdotFlavor flavor_;
    mutable std::mutex mu_;
    mutable std::map<int, OdotOrbitBasis> bases_;
    mutable std::map<std::tuple<int, int, int>, RationalMatrix> gens_;
};

/** Labeled chord basis of the odot power at arity 2t for a support-2 operad. */
struct LabeledChordBasis {
    OdotOrbitBasis ob;

    LabeledChordBasis(const CyclicOperadData& c, OdotFlavor flavor, int t)
        : ob(c.underlying, t, 2 * t, flavor == OdotFlavor::exterior)
    {
        if (c.support() != std::vector<int>{2})
            throw validation_error("labeled chord basis: operad not supported on 2");
    }

    int dim() const { return ob.dim(); }

    std::vector<std::pair<int, int>> chords(int k) const
    {
        std::vector<std::pair<int, int>> out;
        for (const auto& p : ob.basis[k].parts) out.push_back({p[0], p[1]});
        return out;
    }

    const std::vector<int>& labels(int k) const { return ob.basis[k].idx; }

    std::string to_string(int k) const
    {
        const auto& e = ob.basis[k];
        std::string s;
        for (size_t j = 0; j < e.parts.size(); ++j)
            s += "(" + std::to_string(e.parts[j][0] + 1) + "-" +
                 std::to_string(e.parts[j][1] + 1) + ")";
        s += "|";
        const auto* lbl = ob.base.labels.count(2) ? &ob.base.labels.at(2) : nullptr;
        for (size_t j = 0; j < e.idx.size(); ++j)
            s += (j ? "," : "") +
                 (lbl ? (*lbl)[e.idx[j]] : "e" + std::to_string(e.idx[j]));
        return s;
    }
};

} // namespace brkz::cyclic

#endif
