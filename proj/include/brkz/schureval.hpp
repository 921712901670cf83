/*
 * Schur-functor evaluation of FB-modules at bilinear vector spaces:
 * coinvariant bases of V^{otimes n} tensor_{S_n} M(n), the contraction
 * differential of a twisted-db module, the Conant-Vogtmann Lie algebra of
 * an algebra with involution with its Chevalley-Eilenberg complex as an
 * independent oracle, and symplectic tensor invariants.
 */

#ifndef BRKZ_SCHUREVAL_HPP
#define BRKZ_SCHUREVAL_HPP

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "characters.hpp"
#include "cyclic.hpp"
#include "elimination.hpp"
#include "errors.hpp"
#include "fbmodule.hpp"
#include "matrix.hpp"
#include "partition.hpp"
#include "permutation.hpp"
#include "rational.hpp"

namespace brkz::schureval {

using exactla::RationalMatrix;
using exactla::Solver;
using symrep::Partition;
using symrep::Permutation;

inline constexpr int max_space_dim = 6;
inline constexpr int max_tensor_power = 8;

inline void check_caps(int dim_v, int power)
{
    if (dim_v > max_space_dim)
        throw cap_error("schureval: space dimension " + std::to_string(dim_v)
                        + " exceeds the cap " + std::to_string(max_space_dim));
    if (power > max_tensor_power)
        throw cap_error("schureval: tensor power " + std::to_string(power)
                        + " exceeds the cap " + std::to_string(max_tensor_power));
}

// ---------------------------------------------------------------------------
// Bilinear spaces.
// ---------------------------------------------------------------------------

enum class FormKind { symplectic, orthogonal };

struct BilinearSpace {
    int dim = 0;
    FormKind kind = FormKind::symplectic;
    RationalMatrix form_matrix;

    void validate() const
    {
        if (dim < 0 || form_matrix.rows != dim || form_matrix.cols != dim)
            throw validation_error("bilinear space: form shape mismatch");
        if (kind == FormKind::symplectic && dim % 2)
            throw validation_error("bilinear space: symplectic dimension must be even");
        const int sign = kind == FormKind::symplectic ? -1 : 1;
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j)
                if (form_matrix.at(i, j) != Rational(sign) * form_matrix.at(j, i))
                    throw validation_error("bilinear space: form has the wrong symmetry");
        if (exactla::rank(form_matrix) != dim)
            throw validation_error("bilinear space: form is degenerate");
    }
};

/** Standard symplectic space: omega(x_i, x_{i+n}) = 1 for 0 <= i < n = dim/2. */
inline BilinearSpace symplectic_space(int dim)
{
    if (dim < 0 || dim % 2) throw validation_error("symplectic space: dimension must be even");
    BilinearSpace v;
    v.dim = dim;
    v.kind = FormKind::symplectic;
    v.form_matrix = RationalMatrix(dim, dim);
    for (int i = 0; i < dim / 2; ++i) {
        v.form_matrix.add_entry(i, i + dim / 2, Rational(1));
        v.form_matrix.add_entry(i + dim / 2, i, Rational(-1));
    }
    v.validate();
    return v;
}

/** Orthogonal space with an orthonormal basis: the identity form. */
inline BilinearSpace orthogonal_space(int dim)
{
    if (dim < 0) throw validation_error("orthogonal space: negative dimension");
    BilinearSpace v;
    v.dim = dim;
    v.kind = FormKind::orthogonal;
    v.form_matrix = RationalMatrix::identity(dim);
    v.validate();
    return v;
}

// ---------------------------------------------------------------------------
// Coinvariant bases: (V^{otimes n} tensor M(n))_{S_n} on the orbit basis of
// sorted words.  Each sorted word w contributes the coinvariants of M(n)
// under the Young subgroup permuting equal letters, realized as the image
// of the averaging idempotent.
// ---------------------------------------------------------------------------

struct SchurTerm {
    int n = 0;
    int dim_v = 0;
    int mdim = 0;
    int dim = 0;
    std::vector<std::vector<int>> words;    // sorted orbit representatives
    std::map<std::vector<int>, int> index;  // word -> slot
    std::vector<RationalMatrix> idem;       // averaging idempotent on M(n), per word
    std::vector<RationalMatrix> basis;      // mdim x d_w, spans im(idem)
    std::vector<int> offset;                // first coordinate of each word block
    std::vector<std::optional<Solver>> solvers;   // absent when the stabilizer is trivial

    /** Coordinates of the class of (word slot w, ambient M(n) vector y). */
    std::vector<Rational> coords(int w, const std::vector<Rational>& y) const
    {
        std::vector<Rational> py = idem[w].apply(y);
        if (!solvers[w]) return py;
        auto x = solvers[w]->solve(py);
        if (!x) throw invariant_error("schur term: projected vector left the image");
        return *x;
    }
};

namespace detail {

/** Average of the action over S_{[a,b)}, by coset recursion. */
inline RationalMatrix
block_average(const std::function<RationalMatrix(const Permutation&)>& act, int n, int mdim,
              int a, int b)
{
    RationalMatrix avg = RationalMatrix::identity(mdim);
    for (int k = a + 1; k < b; ++k) {
        // coset representatives move position k to each slot i <= k
        RationalMatrix sum = RationalMatrix::identity(mdim);
        for (int i = a; i < k; ++i) {
            std::vector<int> im(n);
            for (int j = 0; j < n; ++j) im[j] = j;
            for (int j = i; j < k; ++j) im[j] = j + 1;
            im[k] = i;
            sum = sum + act(Permutation(im));
        }
        avg = sum.scaled(Rational(1, k - a + 1)) * avg;
    }
    return avg;
}

inline void sorted_words(int dim_v, int n, std::vector<int>& w,
                         std::vector<std::vector<int>>& out)
{
    if ((int)w.size() == n) {
        out.push_back(w);
        return;
    }
    for (int c = w.empty() ? 0 : w.back(); c < dim_v; ++c) {
        w.push_back(c);
        sorted_words(dim_v, n, w, out);
        w.pop_back();
    }
}

inline SchurTerm
schur_term(const std::function<int(int)>& dim, const std::function<RationalMatrix(int, const Permutation&)>& act,
           int dim_v, int n)
{
    check_caps(dim_v, n);
    if (dim_v < 0 || n < 0) throw validation_error("schur term: negative size");
    SchurTerm t;
    t.n = n;
    t.dim_v = dim_v;
    t.mdim = dim(n);
    if (t.mdim == 0) return t;
    std::vector<int> scratch;
    sorted_words(dim_v, n, scratch, t.words);

    auto act_n = [&](const Permutation& p) { return act(n, p); };
    for (const auto& w : t.words) {
        t.index[w] = (int)t.idem.size();
        // block structure of equal letters
        RationalMatrix e = RationalMatrix::identity(t.mdim);
        bool trivial = true;
        for (int a = 0; a < n;) {
            int b = a;
            while (b < n && w[b] == w[a]) ++b;
            if (b - a > 1) {
                e = block_average(act_n, n, t.mdim, a, b) * e;
                trivial = false;
            }
            a = b;
        }
        t.offset.push_back(t.dim);
        if (trivial) {
            t.idem.push_back(std::move(e));
            t.basis.push_back(RationalMatrix::identity(t.mdim));
            t.solvers.emplace_back();
            t.dim += t.mdim;
            continue;
        }
        if (!(e * e == e)) throw invariant_error("schur term: averaging is not idempotent");
        RationalMatrix img = exactla::image_basis(e);
        t.dim += img.cols;
        t.solvers.emplace_back(img.cols ? std::optional<Solver>(Solver(img)) : std::nullopt);
        t.idem.push_back(std::move(e));
        t.basis.push_back(std::move(img));
    }

    // cross-check against the character formula for dim (V^{otimes n} tensor M)_{S_n}
    Rational total(0);
    for (const auto& ct : symrep::cycle_types_of(n)) {
        Rational tr = act(n, symrep::class_representative(ct)).trace();
        Rational vpow(1);
        for (size_t c = 0; c < ct.size(); ++c) vpow *= Rational(dim_v);
        total += Rational(symrep::class_size(ct)) * vpow * tr;
    }
    total /= Rational(factorial(n));
    if (total != Rational(t.dim))
        throw invariant_error("schur term: dimension disagrees with the character formula");
    return t;
}

} // namespace detail

/** Evaluation of a plain FB-module at a vector space, one polynomial degree. */
inline SchurTerm schur_evaluate(const fbmod::FBModule& f, int dim_v, int degree)
{
    return detail::schur_term([&](int n) { return f.dim(n); },
                              [&](int n, const Permutation& p) { return f.action(n, p); },
                              dim_v, degree);
}

inline SchurTerm schur_evaluate(const cyclic::OdotModule& m, int dim_v, int degree)
{
    return detail::schur_term([&](int n) { return m.dim(n); },
                              [&](int n, const Permutation& p) { return m.act(n, p); },
                              dim_v, degree);
}

// ---------------------------------------------------------------------------
// Evaluated complexes.
// ---------------------------------------------------------------------------

/**
 * A homologically indexed complex of evaluated terms: index i has polynomial
 * degree parity + 2i, and diffs[i] maps index i+1 to index i (contraction
 * drops the polynomial degree by two).
 */
struct EvaluatedComplex {
    std::vector<int> dims;
    std::vector<RationalMatrix> diffs;
    std::vector<SchurTerm> terms;   // empty for complexes not built by evaluation

    int size() const { return (int)dims.size(); }

    void validate() const
    {
        if (dims.empty() ? !diffs.empty() : diffs.size() != dims.size() - 1)
            throw validation_error("evaluated complex: differential count mismatch");
        for (size_t i = 0; i < diffs.size(); ++i)
            if (diffs[i].rows != dims[i] || diffs[i].cols != dims[i + 1])
                throw validation_error("evaluated complex: differential shape mismatch");
        for (size_t i = 0; i + 1 < diffs.size(); ++i)
            if (!(diffs[i] * diffs[i + 1]).is_zero())
                throw invariant_error("evaluated complex: d o d != 0");
    }

    std::vector<int> homology_dims() const
    {
        std::vector<int> rk(diffs.size());
        for (size_t i = 0; i < diffs.size(); ++i) rk[i] = exactla::rank(diffs[i]);
        std::vector<int> h(dims.size());
        for (size_t i = 0; i < dims.size(); ++i) {
            h[i] = dims[i];
            if (i < diffs.size()) h[i] -= rk[i];
            if (i > 0) h[i] -= rk[i - 1];
        }
        return h;
    }
};

/**
 * The contraction differential of a twisted-db module evaluated at a
 * bilinear space: d(w tensor m) = sum over slot pairs u < v of
 * form(w_u, w_v) . (w drop u,v) tensor g_{u,v} m.  The module flavor must
 * match the form: exterior pairs with symplectic, symmetric with orthogonal.
 */
inline EvaluatedComplex contraction_differential(const cyclic::OdotModule& m,
                                                 const BilinearSpace& v, int top_degree)
{
    v.validate();
    check_caps(v.dim, top_degree);
    if (top_degree < 0) throw validation_error("contraction differential: negative degree");
    const bool exterior = m.flavor() == cyclic::OdotFlavor::exterior;
    if (exterior != (v.kind == FormKind::symplectic))
        throw validation_error("contraction differential: module flavor does not match the form");

    EvaluatedComplex c;
    for (int n = top_degree % 2; n <= top_degree; n += 2)
        c.terms.push_back(schur_evaluate(m, v.dim, n));
    for (const SchurTerm& t : c.terms) c.dims.push_back(t.dim);

    for (size_t i = 0; i + 1 < c.terms.size(); ++i) {
        const SchurTerm& src = c.terms[i + 1];
        const SchurTerm& tgt = c.terms[i];
        RationalMatrix d(tgt.dim, src.dim);
        if (src.dim && tgt.dim) {
            const int n = src.n;
            for (size_t w = 0; w < src.words.size(); ++w) {
                const std::vector<int>& word = src.words[w];
                for (int u = 0; u < n; ++u)
                    for (int vv = u + 1; vv < n; ++vv) {
                        Rational cf = v.form_matrix.at(word[u], word[vv]);
                        if (cf == 0) continue;
                        std::vector<int> rest;
                        for (int j = 0; j < n; ++j)
                            if (j != u && j != vv) rest.push_back(word[j]);
                        const int wt = tgt.index.at(rest);
                        const RationalMatrix& g = m.generator(n, u, vv);
                        for (int col = 0; col < src.basis[w].cols; ++col) {
                            std::vector<Rational> y =
                                g.apply(src.basis[w].column_dense(col));
                            std::vector<Rational> x = tgt.coords(wt, y);
                            for (size_t r = 0; r < x.size(); ++r)
                                if (x[r] != 0)
                                    d.add_entry(tgt.offset[wt] + (int)r,
                                                src.offset[w] + col, cf * x[r]);
                        }
                    }
            }
        }
        c.diffs.push_back(std::move(d));
    }
    c.validate();
    return c;
}

// ---------------------------------------------------------------------------
// The Conant-Vogtmann Lie algebra and its Chevalley-Eilenberg complex.
// ---------------------------------------------------------------------------

/**
 * sp_{(V,omega)}(B,sigma) = V^{otimes 2} tensor_{S_2} B, realized inside
 * V tensor V tensor B as the image of (1 + swap tensor sigma)/2, with the
 * bracket assembled from the algebra product and the symplectic form.
 */
struct LieAlgebra {
    int dim = 0;
    int dim_v = 0;
    int dim_b = 0;
    RationalMatrix basis;   // ambient (dim_v^2 * dim_b) x dim
    std::vector<std::vector<std::vector<Rational>>> bracket;   // structure constants
};

inline LieAlgebra conant_vogtmann_lie(const cyclic::AlgebraWithInvolution& b,
                                      const BilinearSpace& v)
{
    v.validate();
    b.validate();
    if (v.kind != FormKind::symplectic || v.dim < 2)
        throw validation_error("conant_vogtmann_lie: need a symplectic space of dimension >= 2");
    const int d = v.dim, nb = b.dim, amb = d * d * nb;
    auto slot = [&](int v1, int v2, int be) { return (v1 * d + v2) * nb + be; };

    LieAlgebra g;
    g.dim_v = d;
    g.dim_b = nb;
    RationalMatrix idem(amb, amb);
    for (int v1 = 0; v1 < d; ++v1)
        for (int v2 = 0; v2 < d; ++v2)
            for (int be = 0; be < nb; ++be) {
                idem.add_entry(slot(v1, v2, be), slot(v1, v2, be), Rational(1, 2));
                for (int k = 0; k < nb; ++k) {
                    Rational s = b.sigma.at(k, be);
                    if (s != 0)
                        idem.add_entry(slot(v2, v1, k), slot(v1, v2, be), s / Rational(2));
                }
            }
    if (!(idem * idem == idem)) throw invariant_error("conant_vogtmann_lie: bad idempotent");
    g.basis = exactla::image_basis(idem);
    g.dim = g.basis.cols;
    Solver solver(g.basis);

    // bracket of unit tensors:
    // [v1 v2 (x) be, w1 w2 (x) ga] = om(v2,w1) v1 w2 (x) be.ga
    //                              + om(v1,w1) v2 w2 (x) sigma(be).ga
    //                              + om(v2,w2) v1 w1 (x) be.sigma(ga)
    //                              + om(v1,w2) v2 w1 (x) sigma(be).sigma(ga)
    auto mul_into = [&](int x, int y, int be, int ga, const Rational& cf,
                        std::vector<Rational>& out, bool sb, bool sg) {
        for (int bb = 0; bb < nb; ++bb) {
            Rational cb = sb ? b.sigma.at(bb, be) : (bb == be ? Rational(1) : Rational(0));
            if (cb == 0) continue;
            for (int gg = 0; gg < nb; ++gg) {
                Rational cg = sg ? b.sigma.at(gg, ga) : (gg == ga ? Rational(1) : Rational(0));
                if (cg == 0) continue;
                for (int k = 0; k < nb; ++k) {
                    const Rational& mk = b.mult[bb][gg][k];
                    if (mk != 0) out[slot(x, y, k)] += cf * cb * cg * mk;
                }
            }
        }
    };

    g.bracket.assign(g.dim, std::vector<std::vector<Rational>>(
                                g.dim, std::vector<Rational>(g.dim, Rational(0))));
    for (int i = 0; i < g.dim; ++i)
        for (int j = 0; j < g.dim; ++j) {
            std::vector<Rational> out(amb, Rational(0));
            for (const auto& [ra, ca] : g.basis.col[i]) {
                int be = ra % nb, v2 = (ra / nb) % d, v1 = ra / (nb * d);
                for (const auto& [rb, cb] : g.basis.col[j]) {
                    int ga = rb % nb, w2 = (rb / nb) % d, w1 = rb / (nb * d);
                    Rational cf = ca * cb;
                    Rational om;
                    om = v.form_matrix.at(v2, w1);
                    if (om != 0) mul_into(v1, w2, be, ga, cf * om, out, false, false);
                    om = v.form_matrix.at(v1, w1);
                    if (om != 0) mul_into(v2, w2, be, ga, cf * om, out, true, false);
                    om = v.form_matrix.at(v2, w2);
                    if (om != 0) mul_into(v1, w1, be, ga, cf * om, out, false, true);
                    om = v.form_matrix.at(v1, w2);
                    if (om != 0) mul_into(v2, w1, be, ga, cf * om, out, true, true);
                }
            }
            auto x = solver.solve(idem.apply(out));
            if (!x) throw invariant_error("conant_vogtmann_lie: bracket left the image");
            g.bracket[i][j] = *x;
        }

    // antisymmetry and the Jacobi identity, exactly
    for (int i = 0; i < g.dim; ++i)
        for (int j = 0; j < g.dim; ++j)
            for (int k = 0; k < g.dim; ++k)
                if (g.bracket[i][j][k] + g.bracket[j][i][k] != 0)
                    throw invariant_error("conant_vogtmann_lie: bracket is not antisymmetric");
    for (int i = 0; i < g.dim; ++i)
        for (int j = i + 1; j < g.dim; ++j)
            for (int k = j + 1; k < g.dim; ++k)
                for (int l = 0; l < g.dim; ++l) {
                    Rational s(0);
                    for (int mm = 0; mm < g.dim; ++mm)
                        s += g.bracket[i][j][mm] * g.bracket[mm][k][l]
                           + g.bracket[j][k][mm] * g.bracket[mm][i][l]
                           + g.bracket[k][i][mm] * g.bracket[mm][j][l];
                    if (s != 0)
                        throw invariant_error("conant_vogtmann_lie: Jacobi identity fails");
                }
    return g;
}

/**
 * The Chevalley-Eilenberg complex of a Lie algebra on the subset basis of
 * Lambda^* g.  A nonnegative max_degree truncates the exterior degree.
 */
inline EvaluatedComplex chevalley_eilenberg(const LieAlgebra& g, int max_degree = -1)
{
    const int top = max_degree < 0 ? g.dim : std::min(g.dim, max_degree);
    EvaluatedComplex c;
    std::vector<std::vector<std::vector<int>>> subsets(top + 1);
    for (int k = 0; k <= top; ++k) {
        subsets[k] = fbmod::detail::subsets_of_size(g.dim, k);
        c.dims.push_back((int)subsets[k].size());
    }
    for (int k = 1; k <= top; ++k) {
        std::map<std::vector<int>, int> lower;
        for (size_t i = 0; i < subsets[k - 1].size(); ++i) lower[subsets[k - 1][i]] = (int)i;
        RationalMatrix d(c.dims[k - 1], c.dims[k]);
        for (size_t ci = 0; ci < subsets[k].size(); ++ci) {
            const std::vector<int>& s = subsets[k][ci];
            for (int a = 0; a < k; ++a)
                for (int bpos = a + 1; bpos < k; ++bpos) {
                    int sign_ab = (a + bpos) % 2 ? -1 : 1;
                    std::vector<int> rest;
                    for (int j = 0; j < k; ++j)
                        if (j != a && j != bpos) rest.push_back(s[j]);
                    const auto& br = g.bracket[s[a]][s[bpos]];
                    for (int mm = 0; mm < g.dim; ++mm) {
                        if (br[mm] == 0) continue;
                        if (std::binary_search(rest.begin(), rest.end(), mm)) continue;
                        std::vector<int> tgt = rest;
                        auto pos = std::lower_bound(tgt.begin(), tgt.end(), mm);
                        int ins = (int)(pos - tgt.begin());
                        tgt.insert(pos, mm);
                        int sign = (ins % 2 ? -sign_ab : sign_ab);
                        d.add_entry(lower.at(tgt), (int)ci, Rational(sign) * br[mm]);
                    }
                }
        }
        c.diffs.push_back(std::move(d));
    }
    c.validate();
    return c;
}

/**
 * Independent oracle: the Chevalley-Eilenberg complex of the Lie algebra
 * sp_{(V,omega)}(B,sigma), built without the Brauer category machinery.
 */
inline EvaluatedComplex ce_oracle(const cyclic::AlgebraWithInvolution& b, const BilinearSpace& v,
                                  int max_degree = -1)
{
    return chevalley_eilenberg(conant_vogtmann_lie(b, v), max_degree);
}

// ---------------------------------------------------------------------------
// Symplectic invariants of tensor powers.
// ---------------------------------------------------------------------------

/**
 * dim of the Sp(V)-invariants of V^{otimes n}: the weight-zero words for the
 * standard Cartan subalgebra intersected with the kernels of the simple
 * raising operators of sp(V).
 */
inline long long symplectic_invariants_dim(int n, const BilinearSpace& v)
{
    if (v.kind != FormKind::symplectic)
        throw validation_error("symplectic_invariants_dim: space is not symplectic");
    v.validate();
    check_caps(v.dim, n);
    if (n < 0) throw validation_error("symplectic_invariants_dim: negative power");
    if (n == 0) return 1;
    if (n % 2 || v.dim == 0) return 0;
    const int m = v.dim / 2;

    // letters 0..m-1 are e_i (weight +eps_i), m..2m-1 are f_i (weight -eps_i)
    std::vector<std::vector<int>> words;
    std::map<std::vector<int>, int> index;
    std::vector<int> w(n, 0), wt(m, 0);
    while (true) {
        std::fill(wt.begin(), wt.end(), 0);
        for (int c : w) wt[c % m] += c < m ? 1 : -1;
        if (std::all_of(wt.begin(), wt.end(), [](int x) { return x == 0; })) {
            index[w] = (int)words.size();
            words.push_back(w);
        }
        int j = n - 1;
        while (j >= 0 && w[j] == 2 * m - 1) w[j--] = 0;
        if (j < 0) break;
        ++w[j];
    }

    // current invariant candidate space, as coordinates on the weight-zero words
    RationalMatrix space = RationalMatrix::identity((int)words.size());
    for (int t = 0; t < m && space.cols; ++t) {
        // simple raising: t < m-1: e_{t+1} -> e_t, f_t -> -f_{t+1}; long root: f_{m-1} -> e_{m-1}
        std::map<std::vector<int>, int> rows;
        std::vector<std::tuple<int, int, int>> entries;   // row, col, sign
        for (size_t wi = 0; wi < words.size(); ++wi)
            for (int s = 0; s < n; ++s) {
                int c = words[wi][s], nc = -1, sign = 1;
                if (t + 1 < m) {
                    if (c == t + 1) nc = t;
                    else if (c == m + t) {
                        nc = m + t + 1;
                        sign = -1;
                    }
                } else if (c == 2 * m - 1)
                    nc = m - 1;
                if (nc < 0) continue;
                std::vector<int> tw = words[wi];
                tw[s] = nc;
                auto [it, fresh] = rows.emplace(std::move(tw), (int)rows.size());
                entries.emplace_back(it->second, (int)wi, sign);
            }
        RationalMatrix x((int)rows.size(), (int)words.size());
        for (auto [r, c, s] : entries) x.add_entry(r, c, Rational(s));
        space = space * exactla::kernel_basis(x * space);
    }
    return space.cols;
}

/** Dimension of the Schur functor S_lam(W) for dim W = d (hook content formula). */
inline long long schur_gl_dimension(const Partition& lam, int d)
{
    if (lam.length() > d) return 0;
    Rational out(1);
    for (int i = 0; i < lam.length(); ++i)
        for (int j = 0; j < lam.parts[i]; ++j) {
            int arm = lam.parts[i] - j - 1;
            int leg = 0;
            for (int r = i + 1; r < lam.length(); ++r) leg += lam.parts[r] > j;
            out *= Rational(d + j - i, arm + leg + 1);
        }
    if (denominator(out) != 1)
        throw invariant_error("schur_gl_dimension: non-integral hook content product");
    return numerator(out).convert_to<long long>();
}

} // namespace brkz::schureval

#endif
