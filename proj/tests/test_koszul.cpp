// Tests for koszul.hpp: unit complexes of the twisted Brauer category,
// Ext- and Tor-side Koszul complexes of odot-power modules, canonical
// inclusions, and merged homology reports.
//
// Covered:
//   - unit complexes: frozen dimensions and homology for the small examples,
//     exactness below the top term for all sizes in the scanned range
//   - ext complexes over the trivial algebra, both flavors: frozen chain
//     dimensions, differential ranks, and Specht decompositions of homology
//   - the formula differential equals the one computed by composing basis
//     diagrams in the twisted category (on a zoo of coefficient algebras)
//   - chain-group decompositions match the induced-character model built
//     from Littlewood-Richardson coefficients; degree-zero terms are
//     multiplicity free
//   - tor complexes: acyclicity in complete degrees for unital algebras,
//     agreement with the free resolution, genuine homology for the
//     augmentation ideal of the dual numbers
//   - canonical inclusions are chain maps; induced maps on homology detect
//     non-torsion classes and annihilate classes pushed below degree zero
//   - ext_tor_report: deterministic across thread counts, cap and
//     validation errors, completeness flags

#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "brkz/koszul.hpp"

using namespace brkz;
using namespace brkz::koszul;
using cyclic::AlgebraWithInvolution;
using cyclic::CyclicOperadData;
using cyclic::OdotFlavor;
using cyclic::OdotModule;
using exactla::rank;
using symrep::CycleType;
using symrep::Partition;

namespace {

using Decomp = std::map<Partition, long long>;

CyclicOperadData op_trivial()
{
    return cyclic::operad_from_involutive_algebra(cyclic::alg_rational());
}

CyclicOperadData op_z2()
{
    return cyclic::operad_from_involutive_algebra(cyclic::alg_group_z2());
}

CyclicOperadData op_z3()
{
    AlgebraWithInvolution b;
    b.dim = 3;
    b.mult.assign(3, std::vector<std::vector<Rational>>(3, std::vector<Rational>(3, Rational(0))));
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) b.mult[i][j][(i + j) % 3] = 1;
    b.sigma = RationalMatrix(3, 3);
    b.sigma.add_entry(0, 0, 1);
    b.sigma.add_entry(2, 1, 1);
    b.sigma.add_entry(1, 2, 1);
    b.unital = true;
    b.unit = {Rational(1), Rational(0), Rational(0)};
    b.names = {"e", "g", "gg"};
    return cyclic::operad_from_involutive_algebra(b);
}

CyclicOperadData op_dual_ideal()
{
    return cyclic::operad_from_involutive_algebra(
        cyclic::augmentation_ideal(cyclic::alg_dual_numbers(), {Rational(1), Rational(0)}));
}

/** Specht decomposition of a full chain group under the residual action. */
Decomp chain_decomp(const ChainComplex& c, int index, int n)
{
    return symrep::decompose_character(n, [&](const CycleType& ct) {
        return c.action_of(index, symrep::class_representative(ct)).trace();
    });
}

std::vector<int> unit_h(int u, int x, UnitSide side)
{
    return unit_complex(u, x, side).homology_dims();
}

/** Entry-level equality of reports, ignoring the timing field. */
void require_same_report(const ExtTorReport& a, const ExtTorReport& b)
{
    REQUIRE(a.ext.size() == b.ext.size());
    REQUIRE(a.tor.size() == b.tor.size());
    auto same = [](const HomologyReport& x, const HomologyReport& y) {
        REQUIRE(x.object == y.object);
        REQUIRE(x.entries.size() == y.entries.size());
        for (size_t i = 0; i < x.entries.size(); ++i) {
            REQUIRE(x.entries[i].degree == y.entries[i].degree);
            REQUIRE(x.entries[i].dim == y.entries[i].dim);
            REQUIRE(x.entries[i].complete == y.entries[i].complete);
            REQUIRE(x.entries[i].decomposition == y.entries[i].decomposition);
        }
    };
    for (size_t i = 0; i < a.ext.size(); ++i) same(a.ext[i], b.ext[i]);
    for (size_t i = 0; i < a.tor.size(); ++i) same(a.tor[i], b.tor[i]);
}

} // namespace

TEST_CASE("unit complexes: frozen examples")
{
    for (UnitSide s : {UnitSide::plus, UnitSide::minus}) {
        REQUIRE(unit_complex(0, 0, s).dims == std::vector<int>{1});
        REQUIRE(unit_complex(2, 2, s).dims == std::vector<int>{2});
        REQUIRE(unit_h(2, 2, s) == std::vector<int>{2});
        REQUIRE(unit_complex(3, 3, s).dims == std::vector<int>{6});
        REQUIRE(unit_complex(4, 4, s).dims == std::vector<int>{24});
        REQUIRE(unit_complex(4, 2, s).dims == std::vector<int>{12, 12});
        REQUIRE(unit_h(4, 2, s) == std::vector<int>{0, 0});
        REQUIRE(unit_complex(3, 1, s).dims == std::vector<int>{3, 3});
        REQUIRE(unit_h(3, 1, s) == std::vector<int>{0, 0});
        // parity mismatch or more bottom than top points: no terms at all
        REQUIRE(unit_complex(3, 2, s).size() == 0);
        REQUIRE(unit_complex(2, 4, s).size() == 0);
    }
    REQUIRE(unit_complex(5, 3, UnitSide::plus).dims == std::vector<int>{60, 60});
    REQUIRE(unit_complex(6, 4, UnitSide::plus).dims == std::vector<int>{360, 360});
    REQUIRE(unit_complex(6, 2, UnitSide::plus).dims == std::vector<int>{90, 180, 90});

    ChainComplex c = unit_complex(4, 2, UnitSide::plus);
    REQUIRE(c.labels.size() == 2);
    REQUIRE(c.labels[1][0].find("red{") != std::string::npos);

    REQUIRE_THROWS_AS(unit_complex(16, 2, UnitSide::plus), cap_error);
    REQUIRE_THROWS_AS(unit_complex(-1, 1, UnitSide::plus), validation_error);
}

TEST_CASE("unit complexes are exact below the top across the scanned range")
{
    // equal sizes: a single term of dimension u!, all of it homology
    long long fact = 1;
    for (int u = 0; u <= 8; ++u) {
        if (u) fact *= u;
        REQUIRE(unit_h(u, u, UnitSide::plus) == std::vector<int>{(int)fact});
    }
    for (int u = 1; u <= 8; ++u)
        for (int x = u % 2; x < u; x += 2) {
            std::vector<int> h = unit_h(u, x, UnitSide::plus);
            REQUIRE(h == std::vector<int>(h.size(), 0));
        }
    // the minus side recolors with the complementary sign rule
    for (int u = 1; u <= 6; ++u)
        for (int x = u % 2; x < u; x += 2) {
            std::vector<int> h = unit_h(u, x, UnitSide::minus);
            REQUIRE(h == std::vector<int>(h.size(), 0));
        }
}

TEST_CASE("ext complexes over the trivial algebra: exterior flavor")
{
    CyclicOperadData c = op_trivial();
    OdotModule mod(c, OdotFlavor::exterior);
    ModuleView v = odot_view(mod);

    REQUIRE(ext_complex(v, KFlavor::kminus, 0).complex.dims == std::vector<int>{1});

    ExtComplex e2 = ext_complex(v, KFlavor::kminus, 2);
    REQUIRE(e2.complex.dims == std::vector<int>{1, 1});
    REQUIRE(rank(e2.complex.diffs[0]) == 0);
    HomologyReport r2 = homology_report(e2.complex, 2, "2n=2");
    REQUIRE(r2.entries[0].decomposition == Decomp{{Partition({2}), 1}});
    REQUIRE(r2.entries[1].decomposition == Decomp{{Partition({1, 1}), 1}});

    ExtComplex e4 = ext_complex(v, KFlavor::kminus, 4);
    REQUIRE(e4.complex.dims == std::vector<int>{3, 6, 3});
    REQUIRE(rank(e4.complex.diffs[0]) == 3);
    REQUIRE(rank(e4.complex.diffs[1]) == 0);
    HomologyReport r4 = homology_report(e4.complex, 4, "2n=4");
    REQUIRE(r4.entries[0].dim == 0);
    REQUIRE(r4.entries[1].decomposition == Decomp{{Partition({2, 1, 1}), 1}});
    REQUIRE(r4.entries[2].decomposition
            == Decomp{{Partition({1, 1, 1, 1}), 1}, {Partition({2, 2}), 1}});

    ExtComplex e6 = ext_complex(v, KFlavor::kminus, 6);
    REQUIRE(e6.complex.dims == std::vector<int>{15, 45, 45, 15});
    REQUIRE(rank(e6.complex.diffs[0]) == 10);
    REQUIRE(rank(e6.complex.diffs[1]) == 35);
    REQUIRE(rank(e6.complex.diffs[2]) == 0);
    HomologyReport r6 = homology_report(e6.complex, 6, "2n=6");
    REQUIRE(r6.entries[0].dim == 5);
    REQUIRE(r6.entries[0].decomposition == Decomp{{Partition({3, 3}), 1}});
    REQUIRE(r6.entries[1].dim == 0);
    REQUIRE(r6.entries[2].decomposition
            == Decomp{{Partition({2, 1, 1, 1, 1}), 1}, {Partition({2, 2, 2}), 1}});
    REQUIRE(r6.entries[3].decomposition
            == Decomp{{Partition({1, 1, 1, 1, 1, 1}), 1}, {Partition({2, 2, 1, 1}), 1},
                      {Partition({3, 3}), 1}});

    for (const ExtComplex* e : {&e2, &e4, &e6}) check_euler(e->complex);

    // labels name the subset, the chords, and the module basis slot
    REQUIRE(e2.complex.labels[0][0] == "{0,1}#0");

    REQUIRE(ext_complex(v, KFlavor::kminus, 8).complex.dims
            == std::vector<int>{105, 420, 630, 420, 105});
    REQUIRE_THROWS_AS(ext_complex(v, KFlavor::kminus, 16), cap_error);
    REQUIRE_THROWS_AS(ext_complex(v, KFlavor::kminus, -2), validation_error);
}

TEST_CASE("ext complexes over the trivial algebra: symmetric flavor")
{
    CyclicOperadData c = op_trivial();
    OdotModule mod(c, OdotFlavor::symmetric);
    ModuleView v = odot_view(mod);

    ExtComplex e2 = ext_complex(v, KFlavor::kplus, 2);
    REQUIRE(e2.complex.dims == std::vector<int>{1, 1});
    HomologyReport r2 = homology_report(e2.complex, 2, "2n=2");
    REQUIRE(r2.entries[0].decomposition == Decomp{{Partition({2}), 1}});
    REQUIRE(r2.entries[1].decomposition == Decomp{{Partition({2}), 1}});

    ExtComplex e4 = ext_complex(v, KFlavor::kplus, 4);
    REQUIRE(e4.complex.dims == std::vector<int>{3, 6, 3});
    HomologyReport r4 = homology_report(e4.complex, 4, "2n=4");
    REQUIRE(r4.entries[0].dim == 0);
    REQUIRE(r4.entries[1].decomposition == Decomp{{Partition({3, 1}), 1}});
    REQUIRE(r4.entries[2].decomposition == Decomp{{Partition({3, 1}), 1}});

    ExtComplex e6 = ext_complex(v, KFlavor::kplus, 6);
    REQUIRE(e6.complex.dims == std::vector<int>{15, 45, 45, 15});
    HomologyReport r6 = homology_report(e6.complex, 6, "2n=6");
    REQUIRE(r6.entries[0].dim == 0);
    REQUIRE(r6.entries[1].dim == 0);
    REQUIRE(r6.entries[2].decomposition
            == Decomp{{Partition({3, 3}), 1}, {Partition({4, 1, 1}), 1}});
    REQUIRE(r6.entries[3].decomposition
            == Decomp{{Partition({3, 3}), 1}, {Partition({4, 1, 1}), 1}});

    for (const ExtComplex* e : {&e2, &e4, &e6}) check_euler(e->complex);
}

TEST_CASE("ext differential agrees with composition in the twisted category")
{
    auto check = [](const CyclicOperadData& c, OdotFlavor of, KFlavor kf, int l_max) {
        OdotModule mod(c, of);
        ModuleView v = odot_view(mod);
        for (int l = 2; l <= l_max; l += 2) {
            ExtComplex e = ext_complex(v, kf, l);
            for (int i = 0; i + 1 < e.complex.size(); ++i)
                REQUIRE(ext_differential_by_composition(v, e, i) == e.complex.diffs[i]);
        }
    };
    CyclicOperadData triv = op_trivial();
    check(triv, OdotFlavor::exterior, KFlavor::kminus, 6);
    check(triv, OdotFlavor::symmetric, KFlavor::kplus, 6);
    CyclicOperadData z2 = op_z2();
    check(z2, OdotFlavor::exterior, KFlavor::kminus, 4);
    check(z2, OdotFlavor::symmetric, KFlavor::kplus, 4);
    CyclicOperadData z3 = op_z3();
    check(z3, OdotFlavor::exterior, KFlavor::kminus, 4);
    check(z3, OdotFlavor::symmetric, KFlavor::kplus, 4);
    CyclicOperadData di = op_dual_ideal();
    check(di, OdotFlavor::exterior, KFlavor::kminus, 4);
}

TEST_CASE("ext chain groups match the induced-character model")
{
    CyclicOperadData c = op_trivial();
    for (KFlavor f : {KFlavor::kminus, KFlavor::kplus}) {
        OdotModule mod(c, module_flavor(f));
        ModuleView v = odot_view(mod);
        for (int l = 2; l <= 6; l += 2) {
            ExtComplex e = ext_complex(v, f, l);
            for (int deg = 0; deg < e.complex.size(); ++deg) {
                Decomp dec = chain_decomp(e.complex, deg, l);
                for (const Partition& lam : symrep::partitions_of(l)) {
                    long long got = dec.count(lam) ? dec.at(lam) : 0;
                    REQUIRE(got == ext_chain_multiplicity_kid(f, l, deg, lam));
                }
            }
        }
    }
    // one larger spot check
    OdotModule mod(c, OdotFlavor::exterior);
    ModuleView v = odot_view(mod);
    ExtComplex e8 = ext_complex(v, KFlavor::kminus, 8);
    for (int deg : {0, 1}) {
        Decomp dec = chain_decomp(e8.complex, deg, 8);
        for (const Partition& lam : symrep::partitions_of(8)) {
            long long got = dec.count(lam) ? dec.at(lam) : 0;
            REQUIRE(got == ext_chain_multiplicity_kid(KFlavor::kminus, 8, deg, lam));
        }
    }
}

TEST_CASE("ext degree-zero chain groups are multiplicity free")
{
    CyclicOperadData c = op_trivial();
    for (KFlavor f : {KFlavor::kminus, KFlavor::kplus}) {
        OdotModule mod(c, module_flavor(f));
        ModuleView v = odot_view(mod);
        for (int l = 2; l <= 8; l += 2) {
            ExtComplex e = ext_complex(v, f, l);
            for (const auto& [lam, mult] : chain_decomp(e.complex, 0, l)) {
                INFO("flavor " << (f == KFlavor::kminus ? "-" : "+") << " l=" << l << " "
                               << lam.to_string());
                REQUIRE(mult == 1);
            }
        }
    }
}

TEST_CASE("ext homology for the group algebra of Z/2")
{
    CyclicOperadData c = op_z2();
    OdotModule mod(c, OdotFlavor::exterior);
    ModuleView v = odot_view(mod);

    ExtComplex e2 = ext_complex(v, KFlavor::kminus, 2);
    REQUIRE(e2.complex.dims == std::vector<int>{2, 1});
    HomologyReport r2 = homology_report(e2.complex, 2, "2n=2");
    REQUIRE(r2.entries[0].decomposition == Decomp{{Partition({2}), 2}});
    REQUIRE(r2.entries[1].decomposition == Decomp{{Partition({1, 1}), 1}});

    ExtComplex e4 = ext_complex(v, KFlavor::kminus, 4);
    REQUIRE(e4.complex.dims == std::vector<int>{12, 12, 3});
    HomologyReport r4 = homology_report(e4.complex, 4, "2n=4");
    REQUIRE(r4.entries[0].decomposition
            == Decomp{{Partition({2, 2}), 1}, {Partition({3, 1}), 1}, {Partition({4}), 1}});
    REQUIRE(r4.entries[1].decomposition == Decomp{{Partition({2, 1, 1}), 2}});
    REQUIRE(r4.entries[2].decomposition
            == Decomp{{Partition({1, 1, 1, 1}), 1}, {Partition({2, 2}), 1}});
    check_euler(e4.complex);
}

TEST_CASE("tor complexes over the trivial algebra are acyclic in complete degrees")
{
    CyclicOperadData c = op_trivial();
    OdotModule me(c, OdotFlavor::exterior), ms(c, OdotFlavor::symmetric);
    ModuleView ve = odot_view(me), vs = odot_view(ms);

    TorComplex tm = tor_complex(ve, KFlavor::kminus, 2, 8);
    REQUIRE(tm.complex.dims == std::vector<int>{1, 1, 1, 2});
    HomologyReport rm = homology_report(tm.complex, 2, "2n=2", tm.complex.size() - 1);
    REQUIRE(rm.entries[0].dim == 0);
    REQUIRE(rm.entries[1].dim == 0);
    REQUIRE(rm.entries[2].dim == 0);
    REQUIRE_FALSE(rm.entries[3].complete);
    REQUIRE(rm.entries[3].decomposition == Decomp{{Partition({2}), 1}});

    TorComplex tp = tor_complex(vs, KFlavor::kplus, 2, 8);
    REQUIRE(tp.complex.dims == std::vector<int>{1, 2, 2, 2});
    HomologyReport rp = homology_report(tp.complex, 2, "2n=2", tp.complex.size() - 1);
    for (int i = 0; i < 3; ++i) REQUIRE(rp.entries[i].dim == 0);
    REQUIRE_FALSE(rp.entries[3].complete);
    REQUIRE(rp.entries[3].decomposition == Decomp{{Partition({1, 1}), 1}});

    TorComplex tm4 = tor_complex(ve, KFlavor::kminus, 4, 8);
    REQUIRE(tm4.complex.dims == std::vector<int>{3, 6, 9});
    REQUIRE(tm4.complex.homology_dims() == std::vector<int>{0, 0, 6});
    TorComplex tp4 = tor_complex(vs, KFlavor::kplus, 4, 8);
    REQUIRE(tp4.complex.dims == std::vector<int>{3, 9, 15});
    REQUIRE(tp4.complex.homology_dims() == std::vector<int>{0, 0, 9});

    TorComplex tm6 = tor_complex(ve, KFlavor::kminus, 6, 8);
    REQUIRE(tm6.complex.dims == std::vector<int>{15, 45});
    HomologyReport rm6 = homology_report(tm6.complex, 6, "2n=6", tm6.complex.size() - 1);
    REQUIRE(rm6.entries[0].dim == 0);
    REQUIRE(rm6.entries[1].decomposition
            == Decomp{{Partition({3, 2, 1}), 1}, {Partition({4, 2}), 1},
                      {Partition({5, 1}), 1}});

    for (const TorComplex* t : {&tm, &tp, &tm4, &tp4, &tm6}) check_euler(t->complex);
    REQUIRE_THROWS_AS(tor_complex(ve, KFlavor::kminus, 4, 2), validation_error);
}

TEST_CASE("tor model matches the free resolution")
{
    auto check = [](const CyclicOperadData& c, OdotFlavor of, KFlavor kf, int l, int cap,
                    int idx_max) {
        OdotModule mod(c, of);
        ModuleView v = odot_view(mod);
        TorComplex t = tor_complex(v, kf, l, cap);
        for (int i = 0; i <= idx_max && i + 1 < t.complex.size(); ++i)
            REQUIRE_NOTHROW(check_tor_free_model(v, t, i));
    };
    CyclicOperadData triv = op_trivial();
    check(triv, OdotFlavor::exterior, KFlavor::kminus, 2, 8, 1);
    check(triv, OdotFlavor::symmetric, KFlavor::kplus, 2, 8, 1);
    check(triv, OdotFlavor::exterior, KFlavor::kminus, 4, 8, 0);
    CyclicOperadData di = op_dual_ideal();
    check(di, OdotFlavor::exterior, KFlavor::kminus, 2, 8, 1);
    CyclicOperadData z3 = op_z3();
    check(z3, OdotFlavor::exterior, KFlavor::kminus, 2, 6, 0);
    check(z3, OdotFlavor::symmetric, KFlavor::kplus, 2, 6, 0);
}

TEST_CASE("tor for the augmentation ideal of the dual numbers")
{
    CyclicOperadData c = op_dual_ideal();
    OdotModule me(c, OdotFlavor::exterior), ms(c, OdotFlavor::symmetric);
    ModuleView ve = odot_view(me), vs = odot_view(ms);

    TorComplex t2 = tor_complex(ve, KFlavor::kminus, 2, 8);
    REQUIRE(t2.complex.dims == std::vector<int>{1, 1, 1, 2});
    HomologyReport r2 = homology_report(t2.complex, 2, "2n=2", t2.complex.size() - 1);
    REQUIRE(r2.entries[0].decomposition == Decomp{{Partition({2}), 1}});
    REQUIRE(r2.entries[1].decomposition == Decomp{{Partition({2}), 1}});
    REQUIRE(r2.entries[2].decomposition == Decomp{{Partition({1, 1}), 1}});
    REQUIRE_FALSE(r2.entries[3].complete);
    REQUIRE(r2.entries[3].decomposition
            == Decomp{{Partition({1, 1}), 1}, {Partition({2}), 1}});

    TorComplex t4 = tor_complex(ve, KFlavor::kminus, 4, 8);
    REQUIRE(t4.complex.dims == std::vector<int>{3, 6, 9});
    HomologyReport r4 = homology_report(t4.complex, 4, "2n=4", t4.complex.size() - 1);
    REQUIRE(r4.entries[0].decomposition == Decomp{{Partition({3, 1}), 1}});
    REQUIRE(r4.entries[1].decomposition
            == Decomp{{Partition({2, 2}), 1}, {Partition({3, 1}), 1}, {Partition({4}), 1}});

    TorComplex s2 = tor_complex(vs, KFlavor::kplus, 2, 8);
    REQUIRE(s2.complex.dims == std::vector<int>{1, 2, 2, 2});
    HomologyReport q2 = homology_report(s2.complex, 2, "2n=2", s2.complex.size() - 1);
    REQUIRE(q2.entries[0].decomposition == Decomp{{Partition({2}), 1}});
    REQUIRE(q2.entries[1].decomposition == Decomp{{Partition({2}), 2}});
    REQUIRE(q2.entries[2].decomposition
            == Decomp{{Partition({1, 1}), 1}, {Partition({2}), 1}});

    for (const TorComplex* t : {&t2, &t4, &s2}) check_euler(t->complex);
}

TEST_CASE("tor inclusions: chain maps, annihilation, induced maps")
{
    CyclicOperadData c = op_dual_ideal();
    OdotModule mod(c, OdotFlavor::exterior);
    ModuleView v = odot_view(mod);
    TorComplex t2 = tor_complex(v, KFlavor::kminus, 2, 8);
    TorComplex t4 = tor_complex(v, KFlavor::kminus, 4, 8);

    // degree k at evaluation 2 lands in degree k-1 at evaluation 4
    for (int k = 2; k < t2.complex.size() && k - 1 < t4.complex.size(); ++k) {
        RationalMatrix a = tor_inclusion_chain(v, t2, k, t4);
        RationalMatrix b = tor_inclusion_chain(v, t2, k - 1, t4);
        REQUIRE(t4.complex.diffs[k - 2] * a == b * t2.complex.diffs[k - 1]);
    }
    // degree 0 is pushed below degree 0: annihilated
    RationalMatrix z = tor_inclusion_chain(v, t2, 0, t4);
    REQUIRE(z.rows == 0);
    REQUIRE(z.cols == t2.complex.dims[0]);
    // the degree-1 class survives this inclusion
    SubquotientBasis h1 = homology_at(t2.complex, 1);
    SubquotientBasis h0 = homology_at(t4.complex, 0);
    RationalMatrix ind =
        exactla::induced_map_on_homology(h1, h0, tor_inclusion_chain(v, t2, 1, t4));
    REQUIRE(ind.rows == 3);
    REQUIRE(ind.cols == 1);
    REQUIRE(rank(ind) == 1);

    // unital coefficients: the same chain-map identity holds
    CyclicOperadData triv = op_trivial();
    OdotModule tm(triv, OdotFlavor::exterior);
    ModuleView tv = odot_view(tm);
    TorComplex u2 = tor_complex(tv, KFlavor::kminus, 2, 8);
    TorComplex u4 = tor_complex(tv, KFlavor::kminus, 4, 8);
    for (int k = 2; k < u2.complex.size() && k - 1 < u4.complex.size(); ++k) {
        RationalMatrix a = tor_inclusion_chain(tv, u2, k, u4);
        RationalMatrix b = tor_inclusion_chain(tv, u2, k - 1, u4);
        REQUIRE(u4.complex.diffs[k - 2] * a == b * u2.complex.diffs[k - 1]);
    }
}

TEST_CASE("canonical inclusions on ext and non-torsion classes")
{
    CyclicOperadData c = op_trivial();
    OdotModule mod(c, OdotFlavor::exterior);
    ModuleView v = odot_view(mod);
    ExtComplex e2 = ext_complex(v, KFlavor::kminus, 2);
    ExtComplex e4 = ext_complex(v, KFlavor::kminus, 4);
    ExtComplex e6 = ext_complex(v, KFlavor::kminus, 6);

    // chain-map identity: degree c at 2n=l lands in degree c+d at 2n=l+2d
    auto chain_map = [](const ExtComplex& src, const ExtComplex& tgt) {
        int d = (tgt.l - src.l) / 2;
        for (int i = 0; i + 1 < src.complex.size(); ++i) {
            RationalMatrix a = canonical_inclusion_chain(src, i, tgt);
            RationalMatrix b = canonical_inclusion_chain(src, i + 1, tgt);
            REQUIRE(tgt.complex.diffs[i + d] * a == b * src.complex.diffs[i]);
        }
    };
    chain_map(e2, e4);
    chain_map(e2, e6);
    chain_map(e4, e6);

    SubquotientBasis h20 = homology_at(e2.complex, 0);
    // zero steps: the identity on homology
    REQUIRE(ub_action_on_ext(e2, 0, h20, e2, h20) == RationalMatrix::identity(h20.dim()));
    // one and two steps: the class at 2n=2 is non-torsion
    SubquotientBasis h41 = homology_at(e4.complex, 1);
    RationalMatrix m24 = ub_action_on_ext(e2, 0, h20, e4, h41);
    REQUIRE(m24.rows == 3);
    REQUIRE(m24.cols == 1);
    REQUIRE(rank(m24) == 1);
    SubquotientBasis h62 = homology_at(e6.complex, 2);
    RationalMatrix m26 = ub_action_on_ext(e2, 0, h20, e6, h62);
    REQUIRE(m26.rows == 10);
    REQUIRE(m26.cols == 1);
    REQUIRE(rank(m26) == 1);

    // a non-cycle cannot be pushed to homology
    SubquotientBasis fake;
    fake.ambient_dim = e4.complex.dims[0];
    fake.cycles = RationalMatrix::identity(fake.ambient_dim);
    fake.boundaries = RationalMatrix(fake.ambient_dim, 0);
    SubquotientBasis h61 = homology_at(e6.complex, 1);
    REQUIRE_THROWS_AS(
        exactla::induced_map_on_homology(fake, h61, canonical_inclusion_chain(e4, 0, e6)),
        validation_error);
}

TEST_CASE("merged ext/tor reports: content, determinism, caps")
{
    CyclicOperadData c = op_trivial();

    ExtTorReport even = ext_tor_report(c, ReportFlavor::even, 6, 8, 1);
    REQUIRE(even.ext.size() == 3);
    REQUIRE(even.tor.size() == 3);
    REQUIRE(even.ext[0].object == "2n=2");
    REQUIRE(even.ext[2].object == "2n=6");
    REQUIRE(even.ext[2].entries[0].decomposition == Decomp{{Partition({3, 3}), 1}});
    REQUIRE(even.ext[2].entries[2].decomposition
            == Decomp{{Partition({2, 1, 1, 1, 1}), 1}, {Partition({2, 2, 2}), 1}});
    for (const HomologyReport& r : even.ext)
        for (const HomologyEntry& e : r.entries) REQUIRE(e.complete);
    for (const HomologyReport& r : even.tor) {
        for (size_t i = 0; i + 1 < r.entries.size(); ++i) {
            REQUIRE(r.entries[i].complete);
            REQUIRE(r.entries[i].dim == 0);
        }
        REQUIRE_FALSE(r.entries.back().complete);
    }
    REQUIRE(even.tor[1].entries.back().dim == 6);
    REQUIRE(even.tor[2].entries.back().dim == 30);

    ExtTorReport even3 = ext_tor_report(c, ReportFlavor::even, 6, 8, 3);
    require_same_report(even, even3);

    ExtTorReport odd = ext_tor_report(c, ReportFlavor::odd, 4, 6, 2);
    REQUIRE(odd.ext.size() == 2);
    REQUIRE(odd.ext[0].entries[1].decomposition == Decomp{{Partition({2}), 1}});
    REQUIRE(odd.ext[1].entries[0].dim == 0);
    REQUIRE(odd.ext[1].entries[1].decomposition == Decomp{{Partition({3, 1}), 1}});
    REQUIRE(odd.ext[1].entries[2].decomposition == Decomp{{Partition({3, 1}), 1}});
    REQUIRE(odd.tor[0].entries.back().dim == 1);
    REQUIRE(odd.tor[1].entries.back().dim == 6);

    REQUIRE_THROWS_AS(ext_tor_report(c, ReportFlavor::even, 16, 16), cap_error);
    REQUIRE_THROWS_AS(ext_tor_report(c, ReportFlavor::even, 6, 4), validation_error);
    REQUIRE_THROWS_AS(ext_tor_report(c, ReportFlavor::even, 1, 8), validation_error);
}

TEST_CASE("koszul_differential dispatches to both sides")
{
    CyclicOperadData c = op_trivial();
    OdotModule me(c, OdotFlavor::exterior);
    ModuleView v = odot_view(me);
    ChainComplex ce = koszul_differential(v, KFlavor::kminus, 4, KSide::ext);
    REQUIRE(ce.cohomological);
    REQUIRE(ce.dims == ext_complex(v, KFlavor::kminus, 4).complex.dims);
    ChainComplex ct = koszul_differential(v, KFlavor::kminus, 2, KSide::tor, 8);
    REQUIRE_FALSE(ct.cohomological);
    REQUIRE(ct.dims == tor_complex(v, KFlavor::kminus, 2, 8).complex.dims);
}
