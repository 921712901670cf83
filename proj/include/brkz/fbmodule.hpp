/**
 * FB-modules: finitely supported sequences of symmetric-group
 * representations, presented by dimensions and adjacent-transposition
 * matrices per arity.  Provides Day convolution, duals, symmetric and
 * exterior odot-powers (free-orbit basis when F(0) = 0, idempotent image in
 * general), and equivariant maps.  Subsets and decompositions are indexed by
 * sorted 0-based point lists; identifications are order-preserving.
 */

#ifndef BRKZ_FBMODULE_HPP
#define BRKZ_FBMODULE_HPP

#include <map>
#include <string>
#include <vector>

#include "elimination.hpp"
#include "errors.hpp"
#include "matrix.hpp"
#include "permutation.hpp"
#include "rational.hpp"

namespace brkz::fbmod {

using exactla::RationalMatrix;
using symrep::Permutation;

struct FBModule {
    std::map<int, int> dims;                              // arity -> dim, nonzero only
    std::map<int, std::vector<RationalMatrix>> gens;      // arity -> matrices of s_0..s_{n-2}
    std::map<int, std::vector<std::string>> labels;       // optional basis labels

    int dim(int n) const
    {
        auto it = dims.find(n);
        return it == dims.end() ? 0 : it->second;
    }

    int max_arity() const { return dims.empty() ? -1 : dims.rbegin()->first; }

    /** Matrix of an arbitrary permutation, assembled from its adjacent word. */
    RationalMatrix action(int n, const Permutation& p) const
    {
        if (p.n() != n) throw validation_error("fbmod: permutation arity mismatch");
        if (dim(n) == 0) return RationalMatrix(0, 0);
        RationalMatrix m = RationalMatrix::identity(dim(n));
        for (int k : symrep::adjacent_word(p)) m = m * gens.at(n)[k];
        return m;
    }

    Rational character(int n, const std::vector<int>& cycle_type) const
    {
        return action(n, symrep::class_representative(cycle_type)).trace();
    }

    /** Involution and braid relations for every stored generator. */
    void validate() const
    {
        for (const auto& [n, d] : dims) {
            if (d < 0) throw validation_error("fbmod: negative dimension");
            const auto it = gens.find(n);
            int expect = std::max(0, n - 1);
            if ((it == gens.end() ? 0 : (int)it->second.size()) != expect)
                throw validation_error("fbmod: wrong generator count at arity " + std::to_string(n));
            if (it == gens.end()) continue;
            const auto& g = it->second;
            RationalMatrix id = RationalMatrix::identity(d);
            for (int k = 0; k < expect; ++k) {
                if (g[k].rows != d || g[k].cols != d)
                    throw validation_error("fbmod: generator shape mismatch");
                if (!(g[k] * g[k] == id))
                    throw invariant_error("fbmod: involution fails at arity " + std::to_string(n));
            }
            for (int k = 0; k + 1 < expect; ++k)
                if (!(g[k] * g[k + 1] * g[k] == g[k + 1] * g[k] * g[k + 1]))
                    throw invariant_error("fbmod: braid relation fails at arity " + std::to_string(n));
            for (int k = 0; k + 2 < expect; ++k)
                for (int l = k + 2; l < expect; ++l)
                    if (!(g[k] * g[l] == g[l] * g[k]))
                        throw invariant_error("fbmod: commutation fails at arity " + std::to_string(n));
        }
    }
};

/** The unit k_0: one-dimensional, concentrated in arity 0. */
inline FBModule fb_unit()
{
    FBModule f;
    f.dims[0] = 1;
    return f;
}

/** One-dimensional module concentrated in arity n with each s_k acting by eps. */
inline FBModule fb_rank_one(int n, int eps)
{
    FBModule f;
    f.dims[n] = 1;
    auto& g = f.gens[n];
    for (int k = 0; k + 1 < n; ++k) {
        RationalMatrix m(1, 1);
        m.add_entry(0, 0, eps);
        g.push_back(m);
    }
    return f;
}

inline FBModule fb_triv(int n) { return fb_rank_one(n, 1); }
inline FBModule fb_sgn(int n) { return fb_rank_one(n, -1); }

/** Degreewise dual: s_k is an involution, so dual action matrices transpose. */
inline FBModule dual(const FBModule& f)
{
    FBModule d;
    d.dims = f.dims;
    d.labels = f.labels;
    for (const auto& [n, g] : f.gens) {
        auto& dg = d.gens[n];
        for (const auto& m : g) dg.push_back(m.transpose());
    }
    return d;
}

namespace detail {

/** Sorted subsets of {0..n-1} of size k, lexicographic. */
inline std::vector<std::vector<int>> subsets_of_size(int n, int k)
{
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    auto rec = [&](auto&& self, int next) -> void {
        if ((int)cur.size() == k) { out.push_back(cur); return; }
        for (int v = next; v < n; ++v) {
            cur.push_back(v);
            self(self, v + 1);
            cur.pop_back();
        }
    };
    rec(rec, 0);
    return out;
}

} // namespace detail

/**
 * Day convolution: (F (.) G)(n) = sum over subsets S of F(|S|) (x) G(n-|S|),
 * blocks ordered by |S| then lexicographically, inner index F-major.
 */
inline FBModule day_convolve(const FBModule& f, const FBModule& g)
{
    FBModule out;
    int top = f.max_arity() + g.max_arity();
    if (f.dims.empty() || g.dims.empty()) return out;
    for (int n = 0; n <= top; ++n) {
        struct Block { std::vector<int> s; int df, dg, offset; };
        std::vector<Block> blocks;
        std::map<std::vector<int>, int> block_at;
        int total = 0;
        for (int k = 0; k <= n; ++k) {
            if (f.dim(k) == 0 || g.dim(n - k) == 0) continue;
            for (auto& s : detail::subsets_of_size(n, k)) {
                block_at[s] = (int)blocks.size();
                blocks.push_back({s, f.dim(k), g.dim(n - k), total});
                total += f.dim(k) * g.dim(n - k);
            }
        }
        if (total == 0) continue;
        out.dims[n] = total;
        auto& gen = out.gens[n];
        for (int sw = 0; sw + 1 < n; ++sw) {
            RationalMatrix m(total, total);
            for (const auto& b : blocks) {
                bool in_a = std::binary_search(b.s.begin(), b.s.end(), sw);
                bool in_b = std::binary_search(b.s.begin(), b.s.end(), sw + 1);
                if (in_a == in_b) {
                    // internal action on the containing factor
                    std::vector<int> comp;
                    if (!in_a)
                        for (int v = 0; v < n; ++v)
                            if (!std::binary_search(b.s.begin(), b.s.end(), v)) comp.push_back(v);
                    const std::vector<int>& part = in_a ? b.s : comp;
                    int pos = (int)(std::lower_bound(part.begin(), part.end(), sw) - part.begin());
                    const RationalMatrix& a = in_a ? f.gens.at((int)b.s.size())[pos]
                                                   : g.gens.at(n - (int)b.s.size())[pos];
                    for (int fi = 0; fi < b.df; ++fi)
                        for (int gi = 0; gi < b.dg; ++gi) {
                            int src = b.offset + fi * b.dg + gi;
                            if (in_a) {
                                for (const auto& [fo, c] : a.col[fi])
                                    m.add_entry(b.offset + fo * b.dg + gi, src, c);
                            } else {
                                for (const auto& [go, c] : a.col[gi])
                                    m.add_entry(b.offset + fi * b.dg + go, src, c);
                            }
                        }
                } else {
                    // the swap moves the subset; identification is order-preserving
                    std::vector<int> s2 = b.s;
                    for (int& v : s2) v = (v == sw ? sw + 1 : v == sw + 1 ? sw : v);
                    std::sort(s2.begin(), s2.end());
                    const Block& tgt = blocks[block_at.at(s2)];
                    for (int fi = 0; fi < b.df; ++fi)
                        for (int gi = 0; gi < b.dg; ++gi)
                            m.add_entry(tgt.offset + fi * b.dg + gi, b.offset + fi * b.dg + gi, 1);
                }
            }
            gen.push_back(std::move(m));
        }
    }
    return out;
}

/**
 * Free-orbit basis of F^{(.)n} coinvariants at one arity, for F(0) = 0:
 * one generator per unordered decomposition into n nonempty parts (canonical
 * order: ascending minima) and tensor index tuple.  Carries the transported
 * action of arbitrary space permutations; exterior flavor signs part
 * reorderings.
 */
struct OdotOrbitBasis {
    struct Elt {
        std::vector<std::vector<int>> parts;   // sorted parts, sorted by min
        std::vector<int> idx;                  // one F-basis index per part
        bool operator==(const Elt&) const = default;
        auto operator<=>(const Elt&) const = default;
    };

    FBModule base;
    int power = 0;
    int arity = 0;
    bool exterior = false;
    std::vector<Elt> basis;
    std::map<Elt, int> index;

    OdotOrbitBasis(const FBModule& f, int n, int arity_, bool ext)
        : base(f), power(n), arity(arity_), exterior(ext)
    {
        if (f.dim(0) != 0) throw validation_error("odot orbit basis requires F(0) = 0");
        std::vector<std::vector<int>> parts;
        std::vector<int> pool(arity);
        for (int i = 0; i < arity; ++i) pool[i] = i;
        enumerate_parts(pool, parts);
        for (auto& e : basis) index[e] = (int)(&e - basis.data());
    }

    int dim() const { return (int)basis.size(); }

    /** Image of basis element k under the space permutation g, as (index, coeff) pairs. */
    std::vector<std::pair<int, Rational>> act_on_element(const Permutation& g, int k) const
    {
        const Elt& e = basis[k];
        // map parts, recording internal position permutations
        std::vector<std::vector<int>> mapped(power);
        std::vector<Permutation> internal(power);
        for (int j = 0; j < power; ++j) {
            std::vector<int> img;
            for (int v : e.parts[j]) img.push_back(g(v));
            std::vector<int> sorted = img;
            std::sort(sorted.begin(), sorted.end());
            std::vector<int> pos(img.size());
            for (size_t a = 0; a < img.size(); ++a)
                pos[a] = (int)(std::lower_bound(sorted.begin(), sorted.end(), img[a]) - sorted.begin());
            mapped[j] = std::move(sorted);
            internal[j] = Permutation(pos);
        }
        // canonical re-ordering of parts by minimum
        std::vector<int> order(power);
        for (int j = 0; j < power; ++j) order[j] = j;
        std::sort(order.begin(), order.end(),
                  [&](int a, int b) { return mapped[a][0] < mapped[b][0]; });
        int sign = 1;
        if (exterior) {
            for (int a = 0; a < power; ++a)
                for (int b = a + 1; b < power; ++b)
                    if (order[a] > order[b]) sign = -sign;
        }
        // fold internal actions into target index combinations
        std::vector<std::pair<Rational, std::vector<int>>> partial = {{Rational(sign), {}}};
        for (int slot = 0; slot < power; ++slot) {
            int j = order[slot];
            RationalMatrix a = base.action((int)e.parts[j].size(), internal[j]);
            std::vector<std::pair<Rational, std::vector<int>>> next;
            for (auto& [c, tuple] : partial)
                for (const auto& [row, v] : a.col[e.idx[j]]) {
                    auto t2 = tuple;
                    t2.push_back(row);
                    next.push_back({c * v, std::move(t2)});
                }
            partial = std::move(next);
        }
        std::vector<std::pair<int, Rational>> out;
        for (auto& [c, tuple] : partial) {
            Elt img;
            for (int slot = 0; slot < power; ++slot) img.parts.push_back(mapped[order[slot]]);
            img.idx = tuple;
            out.push_back({index.at(img), c});
        }
        return out;
    }

    RationalMatrix action(const Permutation& g) const
    {
        RationalMatrix m(dim(), dim());
        for (int k = 0; k < dim(); ++k)
            for (auto& [row, c] : act_on_element(g, k)) m.add_entry(row, k, c);
        return m;
    }

    std::string label(int k) const
    {
        const Elt& e = basis[k];
        std::string s;
        for (int j = 0; j < power; ++j) {
            s += "(";
            for (size_t a = 0; a < e.parts[j].size(); ++a)
                s += (a ? "-" : "") + std::to_string(e.parts[j][a] + 1);
            s += ")";
        }
        s += "|";
        for (int j = 0; j < power; ++j) s += (j ? "," : "") + std::to_string(e.idx[j]);
        return s;
    }

private:
    void enumerate_parts(std::vector<int> pool, std::vector<std::vector<int>>& parts)
    {
        if ((int)parts.size() == power) {
            if (!pool.empty()) return;
            std::vector<std::vector<int>> tuples = {{}};
            for (auto& p : parts) {
                std::vector<std::vector<int>> next;
                for (auto& t : tuples)
                    for (int i = 0; i < base.dim((int)p.size()); ++i) {
                        auto t2 = t;
                        t2.push_back(i);
                        next.push_back(std::move(t2));
                    }
                tuples = std::move(next);
            }
            for (auto& t : tuples) basis.push_back({parts, t});
            return;
        }
        if (pool.empty()) return;
        // the next part contains the least remaining point, keeping canonical order
        int head = pool[0];
        std::vector<int> rest(pool.begin() + 1, pool.end());
        int remaining_parts = power - (int)parts.size() - 1;
        int max_size = (int)rest.size() - remaining_parts + 1;
        for (int size = 1; size <= max_size; ++size) {
            if (base.dim(size) == 0) continue;
            // choose size-1 further elements of rest
            std::vector<int> sel;
            auto rec = [&](auto&& self, int from) -> void {
                if ((int)sel.size() == size - 1) {
                    std::vector<int> part = {head};
                    for (int v : sel) part.push_back(rest[v]);
                    std::vector<int> pool2;
                    for (int v = 0; v < (int)rest.size(); ++v)
                        if (std::find(sel.begin(), sel.end(), v) == sel.end())
                            pool2.push_back(rest[v]);
                    parts.push_back(part);
                    enumerate_parts(pool2, parts);
                    parts.pop_back();
                    return;
                }
                for (int v = from; v < (int)rest.size(); ++v) {
                    sel.push_back(v);
                    self(self, v + 1);
                    sel.pop_back();
                }
            };
            rec(rec, 0);
        }
    }
};

enum class OdotFlavor { symmetric, exterior };

/**
 * S^{(.)n}(F) or Lambda^{(.)n}(F).  For F(0) = 0 the coinvariant free-orbit
 * basis is used directly; otherwise the module is realized as the image of
 * the (anti)symmetrization idempotent inside the iterated Day power.
 */
inline FBModule odot_power(const FBModule& f, int n, OdotFlavor flavor)
{
    if (n == 0) return fb_unit();
    if (n == 1) return f;
    const bool ext = (flavor == OdotFlavor::exterior);

    FBModule out;
    if (f.dim(0) == 0) {
        int top = f.max_arity() * n;
        for (int arity = 0; arity <= top; ++arity) {
            OdotOrbitBasis ob(f, n, arity, ext);
            if (ob.dim() == 0) continue;
            out.dims[arity] = ob.dim();
            auto& g = out.gens[arity];
            for (int k = 0; k + 1 < arity; ++k)
                g.push_back(ob.action(symrep::adjacent_transposition(arity, k)));
            auto& lab = out.labels[arity];
            for (int k = 0; k < ob.dim(); ++k) lab.push_back(ob.label(k));
        }
        return out;
    }

    // general path: the n-fold Day power built directly on ordered
    // decompositions (possibly empty parts), cut down by the factor
    // (anti)symmetrization idempotent
    struct Block { std::vector<std::vector<int>> parts; int offset; };
    int top = f.max_arity() * n;
    for (int arity = 0; arity <= top; ++arity) {
        std::vector<Block> blocks;
        std::map<std::vector<std::vector<int>>, int> block_at;
        std::vector<int> strides;
        int total = 0;
        std::vector<std::vector<int>> parts(n);
        auto place = [&](auto&& self, int point) -> void {
            if (point == arity) {
                int d = 1;
                for (auto& p : parts) d *= f.dim((int)p.size());
                if (d == 0) return;
                block_at[parts] = (int)blocks.size();
                blocks.push_back({parts, total});
                total += d;
                return;
            }
            for (int j = 0; j < n; ++j) {
                parts[j].push_back(point);
                self(self, point + 1);
                parts[j].pop_back();
            }
        };
        place(place, 0);
        if (total == 0) continue;

        auto tuple_offset = [&](const Block& b, const std::vector<int>& idx) {
            int off = 0;
            for (int j = 0; j < n; ++j) off = off * f.dim((int)b.parts[j].size()) + idx[j];
            return b.offset + off;
        };
        auto for_each_tuple = [&](const Block& b, auto&& fn) {
            std::vector<int> idx(n, 0);
            for (;;) {
                fn(idx);
                int j = n - 1;
                while (j >= 0 && ++idx[j] == f.dim((int)b.parts[j].size())) idx[j--] = 0;
                if (j < 0) break;
            }
        };

        // factor permutation matrices and the projector
        RationalMatrix proj(total, total);
        std::vector<Permutation> all;
        symrep::for_each_permutation(n, [&](const Permutation& p) { all.push_back(p); });
        for (const auto& pi : all) {
            int sgn = ext ? pi.sign() : 1;
            for (const auto& b : blocks) {
                std::vector<std::vector<int>> p2(n);
                for (int j = 0; j < n; ++j) p2[pi(j)] = b.parts[j];
                const Block& tgt = blocks[block_at.at(p2)];
                for_each_tuple(b, [&](const std::vector<int>& idx) {
                    std::vector<int> i2(n);
                    for (int j = 0; j < n; ++j) i2[pi(j)] = idx[j];
                    proj.add_entry(tuple_offset(tgt, i2), tuple_offset(b, idx),
                                   Rational(sgn, (long long)all.size()));
                });
            }
        }
        RationalMatrix image = exactla::image_basis(proj);
        if (image.cols == 0) continue;
        exactla::Solver coords(image);

        // space-level generator action on the flat basis
        auto space_gen = [&](int sw) {
            RationalMatrix m(total, total);
            for (const auto& b : blocks) {
                int owner = -1, other = -1;
                for (int j = 0; j < n; ++j) {
                    if (std::binary_search(b.parts[j].begin(), b.parts[j].end(), sw)) owner = j;
                    if (std::binary_search(b.parts[j].begin(), b.parts[j].end(), sw + 1)) other = j;
                }
                if (owner == other) {
                    int pos = (int)(std::lower_bound(b.parts[owner].begin(), b.parts[owner].end(), sw)
                                    - b.parts[owner].begin());
                    const RationalMatrix& a = f.gens.at((int)b.parts[owner].size())[pos];
                    for_each_tuple(b, [&](const std::vector<int>& idx) {
                        for (const auto& [row, c] : a.col[idx[owner]]) {
                            auto i2 = idx;
                            i2[owner] = row;
                            m.add_entry(tuple_offset(b, i2), tuple_offset(b, idx), c);
                        }
                    });
                } else {
                    auto p2 = b.parts;
                    for (int& v : p2[owner]) v = (v == sw ? sw + 1 : v);
                    for (int& v : p2[other]) v = (v == sw + 1 ? sw : v);
                    std::sort(p2[owner].begin(), p2[owner].end());
                    std::sort(p2[other].begin(), p2[other].end());
                    const Block& tgt = blocks[block_at.at(p2)];
                    for_each_tuple(b, [&](const std::vector<int>& idx) {
                        m.add_entry(tuple_offset(tgt, idx), tuple_offset(b, idx), 1);
                    });
                }
            }
            return m;
        };

        out.dims[arity] = image.cols;
        auto& g = out.gens[arity];
        for (int sw = 0; sw + 1 < arity; ++sw) {
            RationalMatrix moved = space_gen(sw) * image;
            RationalMatrix small(image.cols, image.cols);
            for (int j = 0; j < image.cols; ++j) {
                auto x = coords.solve(moved.column_dense(j));
                if (!x) throw invariant_error("odot_power: action leaves idempotent image");
                for (int i = 0; i < image.cols; ++i)
                    if ((*x)[i] != 0) small.add_entry(i, j, (*x)[i]);
            }
            g.push_back(std::move(small));
        }
    }
    return out;
}

/** Arity-wise direct sum; basis of a comes first at each arity. */
inline FBModule direct_sum(const FBModule& a, const FBModule& b)
{
    FBModule out;
    int top = std::max(a.max_arity(), b.max_arity());
    for (int n = 0; n <= top; ++n) {
        int da = a.dim(n), db = b.dim(n);
        if (da + db == 0) continue;
        out.dims[n] = da + db;
        auto& gen = out.gens[n];
        for (int k = 0; k + 1 < n; ++k) {
            RationalMatrix m(da + db, da + db);
            if (da)
                for (int j = 0; j < da; ++j)
                    for (const auto& [r, v] : a.gens.at(n)[k].col[j]) m.add_entry(r, j, v);
            if (db)
                for (int j = 0; j < db; ++j)
                    for (const auto& [r, v] : b.gens.at(n)[k].col[j]) m.add_entry(da + r, da + j, v);
            gen.push_back(std::move(m));
        }
        auto la = a.labels.count(n) ? a.labels.at(n) : std::vector<std::string>(da);
        auto lb = b.labels.count(n) ? b.labels.at(n) : std::vector<std::string>(db);
        la.insert(la.end(), lb.begin(), lb.end());
        out.labels[n] = std::move(la);
    }
    return out;
}

/** Degreewise equivariant map between FB-modules. */
struct FBMap {
    std::map<int, RationalMatrix> comp;   // arity -> matrix source(n) -> target(n)

    const RationalMatrix* at(int n) const
    {
        auto it = comp.find(n);
        return it == comp.end() ? nullptr : &it->second;
    }

    /** Exact equivariance check against both modules' generators. */
    void validate(const FBModule& src, const FBModule& tgt) const
    {
        for (const auto& [n, m] : comp) {
            if (m.cols != src.dim(n) || m.rows != tgt.dim(n))
                throw validation_error("fbmap: shape mismatch at arity " + std::to_string(n));
            if (m.rows == 0 || m.cols == 0) continue;
            for (int k = 0; k + 1 < n; ++k)
                if (!(m * src.gens.at(n)[k] == tgt.gens.at(n)[k] * m))
                    throw invariant_error("fbmap: equivariance fails at arity " + std::to_string(n));
        }
    }
};

} // namespace brkz::fbmod

#endif
