/**
 * Homology of a two-step complex over the rationals.  A SubquotientBasis
 * stores explicit cycle and boundary bases; construction checks that the
 * composite differential vanishes and that every boundary lies in the cycle
 * space by an exact membership test.  Chain maps induce endomorphisms of the
 * subquotient via coordinate solves in a completed basis.
 */

#ifndef BRKZ_HOMOLOGY_HPP
#define BRKZ_HOMOLOGY_HPP

#include <vector>

#include "elimination.hpp"
#include "errors.hpp"
#include "matrix.hpp"

namespace brkz::exactla {

struct SubquotientBasis {
    int ambient_dim = 0;
    RationalMatrix cycles;       // ambient x z, columns span ker(d_out)
    RationalMatrix boundaries;   // ambient x b, columns span im(d_in)

    int dim() const { return cycles.cols - boundaries.cols; }
};

/**
 * Homology at the middle of  C_in --d_in--> C --d_out--> C_out.
 * d_in has ambient rows, d_out has ambient columns.
 */
inline SubquotientBasis homology(const RationalMatrix& d_in, const RationalMatrix& d_out)
{
    if (d_in.rows != d_out.cols)
        throw validation_error("homology: d_in codomain and d_out domain differ");
    if (!(d_out * d_in).is_zero())
        throw invariant_error("homology: d_out * d_in != 0");

    SubquotientBasis h;
    h.ambient_dim = d_in.rows;
    h.cycles = kernel_basis(d_out);
    h.boundaries = image_basis(d_in);

    // exact membership: every boundary column solved in the cycle basis
    Solver in_cycles(h.cycles);
    for (int j = 0; j < h.boundaries.cols; ++j)
        if (!in_cycles.solve(h.boundaries.column_dense(j)))
            throw invariant_error("homology: boundary not contained in cycles");
    if (h.dim() < 0)
        throw invariant_error("homology: negative dimension");
    return h;
}

/**
 * Indices (into the cycle columns) completing the boundary basis to a basis
 * of the cycle space.  Deterministic: echelon pivots of [B | Z] past B.
 */
inline std::vector<int> homology_representative_columns(const SubquotientBasis& h)
{
    RationalMatrix bz = RationalMatrix::hcat(h.boundaries, h.cycles);
    Echelon e = echelon_form(bz);
    std::vector<int> sel;
    for (auto [r, c] : e.pivots)
        if (c >= h.boundaries.cols) sel.push_back(c - h.boundaries.cols);
    std::sort(sel.begin(), sel.end());
    if ((int)sel.size() != h.dim())
        throw invariant_error("homology: representative completion has wrong size");
    return sel;
}

/**
 * Matrix of the endomorphism induced on H by a chain map g (ambient square
 * matrix commuting with the differentials).  Representatives are the
 * selected cycle columns; g of each is re-expressed in [boundaries | reps]
 * and the boundary part discarded.
 */
inline RationalMatrix induced_action_on_homology(const SubquotientBasis& h,
                                                 const RationalMatrix& g)
{
    if (g.rows != h.ambient_dim || g.cols != h.ambient_dim)
        throw validation_error("induced_action_on_homology: shape mismatch");
    const int hd = h.dim();
    RationalMatrix out(hd, hd);
    if (hd == 0) return out;

    std::vector<int> sel = homology_representative_columns(h);
    RationalMatrix reps = h.cycles.select_columns(sel);
    RationalMatrix basis = RationalMatrix::hcat(h.boundaries, reps);
    Solver solver(basis);
    const int b = h.boundaries.cols;
    for (int j = 0; j < hd; ++j) {
        std::vector<Rational> gz = g.apply(reps.column_dense(j));
        auto x = solver.solve(gz);
        if (!x)
            throw invariant_error("induced_action_on_homology: image leaves cycle space");
        for (int i = 0; i < hd; ++i)
            if ((*x)[b + i] != 0) out.add_entry(i, j, (*x)[b + i]);
    }
    return out;
}

/** Trace of the induced endomorphism; convenience for character computations. */
inline Rational trace_on_homology(const SubquotientBasis& h, const RationalMatrix& g)
{
    return induced_action_on_homology(h, g).trace();
}

/**
 * Matrix of a chain map between two different complexes on homology,
 * tgt.dim() x src.dim().  The image of each source representative must lie
 * in the target cycle space; a failed solve means the caller paired spaces
 * the map does not connect.
 */
inline RationalMatrix induced_map_on_homology(const SubquotientBasis& src,
                                              const SubquotientBasis& tgt,
                                              const RationalMatrix& g)
{
    if (g.rows != tgt.ambient_dim || g.cols != src.ambient_dim)
        throw validation_error("induced_map_on_homology: shape mismatch");
    RationalMatrix out(tgt.dim(), src.dim());
    if (src.dim() == 0) return out;

    RationalMatrix src_reps = src.cycles.select_columns(homology_representative_columns(src));
    RationalMatrix tgt_reps = tgt.cycles.select_columns(homology_representative_columns(tgt));
    Solver solver(RationalMatrix::hcat(tgt.boundaries, tgt_reps));
    const int b = tgt.boundaries.cols;
    for (int j = 0; j < src.dim(); ++j) {
        std::vector<Rational> gz = g.apply(src_reps.column_dense(j));
        auto x = solver.solve(gz);
        if (!x) throw validation_error("induced_map_on_homology: class not a cycle");
        for (int i = 0; i < tgt.dim(); ++i)
            if ((*x)[b + i] != 0) out.add_entry(i, j, (*x)[b + i]);
    }
    return out;
}

} // namespace brkz::exactla

#endif
