#include "oracles.hpp"

#include "tccc/cellular.hpp"
#include "tccc/errors.hpp"

#include <doctest.h>

#include <random>

using namespace tccc;

namespace {

RationalVector pt(std::vector<Rational> x) { return RationalVector(std::move(x)); }

ArrangementPtr line_with(std::vector<Rational> points, Rational lo, Rational hi)
{
    std::vector<Hyperplane> hs;
    for (const auto& p : points)
        hs.push_back(Hyperplane::make({1}, p));
    return ArrangementComplex::build(hs, Box{{lo}, {hi}});
}

ArrangementPtr plane_grid()
{
    return ArrangementComplex::build({Hyperplane::make({1, 0}, 0), Hyperplane::make({1, 0}, 1),
                                      Hyperplane::make({0, 1}, 0), Hyperplane::make({0, 1}, 1)},
                                     Box{{-1, -1}, {2, 2}});
}

ConstraintSystem interval(const Rational& a, const Rational& b)
{
    return {{{1}, a, Relation::Ge}, {{-1}, -b, Relation::Ge}};
}

ConstraintSystem open_interval(const Rational& a, const Rational& b)
{
    return {{{1}, a, Relation::Gt}, {{-1}, -b, Relation::Gt}};
}

SheafComplex one(CellularSheaf f, int degree = 0) { return SheafComplex::single(std::move(f), degree); }

} // namespace

TEST_CASE("graded dims arithmetic")
{
    GradedDims g{{-1, 2}, {0, 1}};
    CHECK(g.total() == 3);
    CHECK(g.euler() == -1);
    CHECK(g.shifted(1).at(-2) == 2);
    CHECK(g.shifted(1).at(-1) == 1);
    CHECK(g.within(-1, 0));
    CHECK_FALSE(g.within(0, 0));
    CHECK((g + GradedDims{{0, 4}}).at(0) == 5);
    CHECK(to_string(g) == "{-1: 2, 0: 1}");
    GradedDims z;
    z.add(3, 0);
    CHECK(z.is_zero());
}

TEST_CASE("constant on closed subsets")
{
    const auto a = line_with({0}, -1, 1);
    CHECK(cohomology(one(constant_sheaf(a))) == GradedDims{{0, 1}});
    const auto sky = constant_on_closed(a, {{{1}, 0, Relation::Eq}});
    CHECK(cohomology(one(sky)) == GradedDims{{0, 1}});
    const auto ray = constant_on_closed(a, {{{1}, 0, Relation::Ge}});
    // cells in order of the sample point: (-1,0), {0}, (0,1)
    CHECK(stalk(one(ray), pt({Rational(-1, 2)})).is_zero());
    CHECK(stalk(one(ray), pt({0})) == GradedDims{{0, 1}});
    CHECK(stalk(one(ray), pt({Rational(1, 2)})) == GradedDims{{0, 1}});
    ray.check_functorial();
}

TEST_CASE("extension by zero from an open interval")
{
    const auto a = line_with({0, 1}, -2, 2);
    const auto j = costandard_on_open(a, open_interval(0, 1));
    CHECK(cohomology(one(j)) == GradedDims{{1, 1}});
    CHECK(cohomology(one(j)) == oracle::compact_cohomology_1d(j));
    // with the shift by the dimension the sections sit in degree 0
    CHECK(cohomology(shift(one(j), 1)) == GradedDims{{0, 1}});
    CHECK(stalk(one(j), pt({Rational(1, 2)})) == GradedDims{{0, 1}});
    CHECK(stalk(one(j), pt({0})).is_zero());
    CHECK(stalk(one(j), pt({1})).is_zero());
}

TEST_CASE("extension by zero from the whole box and from nothing")
{
    const auto a = line_with({0}, -1, 1);
    CHECK(cohomology(one(costandard_on_open(a, {}))) == GradedDims{{0, 1}});
    const auto empty = costandard_on_open(a, {{{1}, 0, Relation::Gt}, {{-1}, 0, Relation::Gt}});
    CHECK(empty.is_zero());
}

TEST_CASE("one-dimensional cohomology against compact cochains")
{
    std::mt19937 rng(17);
    const auto a = line_with({-1, Rational(-1, 3), 0, Rational(1, 2), 1, 2}, -3, 3);
    const std::vector<Rational> pts = {-1, Rational(-1, 3), 0, Rational(1, 2), 1, 2};
    std::uniform_int_distribution<std::size_t> pick(0, pts.size() - 1);
    for (int t = 0; t < 30; ++t) {
        Rational p = pts[pick(rng)], q = pts[pick(rng)];
        if (q < p)
            std::swap(p, q);
        const auto closed = constant_on_closed(a, interval(p, q));
        CHECK(cohomology(one(closed)) == oracle::compact_cohomology_1d(closed));
        if (p < q) {
            const auto open = costandard_on_open(a, open_interval(p, q));
            CHECK(cohomology(one(open)) == oracle::compact_cohomology_1d(open));
        }
    }
    for (std::size_t c = 0; c < a->size(); ++c) {
        const bool touches_end = a->cell(c).sample[0] < -1 || a->cell(c).sample[0] > 2;
        if (touches_end)
            continue;
        const auto s = standard_on_cell(a, c);
        const auto j = costandard_on_cell(a, c);
        CHECK(cohomology(one(s)) == oracle::compact_cohomology_1d(s));
        CHECK(cohomology(one(j)) == oracle::compact_cohomology_1d(j));
    }
}

TEST_CASE("closed convex supports in the plane have the cohomology of a point")
{
    const auto a = plane_grid();
    const ConstraintSystem square = {{{1, 0}, 0, Relation::Ge}, {{-1, 0}, -1, Relation::Ge},
                                     {{0, 1}, 0, Relation::Ge}, {{0, -1}, -1, Relation::Ge}};
    CHECK(cohomology(one(constant_on_closed(a, square))) == GradedDims{{0, 1}});
    const ConstraintSystem open_square = {{{1, 0}, 0, Relation::Gt}, {{-1, 0}, -1, Relation::Gt},
                                          {{0, 1}, 0, Relation::Gt}, {{0, -1}, -1, Relation::Gt}};
    CHECK(cohomology(one(costandard_on_open(a, open_square))) == GradedDims{{2, 1}});
}

TEST_CASE("stalks")
{
    const auto a = line_with({0}, -1, 1);
    for (const Rational x : {Rational(-1, 2), Rational(0), Rational(1, 3)})
        CHECK(stalk(one(constant_sheaf(a)), pt({x})) == GradedDims{{0, 1}});
    const auto sky = one(constant_on_closed(a, {{{1}, 0, Relation::Eq}}));
    CHECK(stalk(sky, pt({0})) == GradedDims{{0, 1}});
    CHECK(stalk(sky, pt({Rational(1, 5)})).is_zero());
    CHECK_THROWS_AS(stalk(sky, pt({1})), OutOfDomain);

    // [C_box -> C_box] with identity differential
    SheafComplex acyclic(a);
    acyclic.set_term(0, constant_sheaf(a));
    acyclic.set_term(1, constant_sheaf(a));
    for (std::size_t c = 0; c < a->size(); ++c)
        acyclic.set_differential(0, c, Matrix::identity(1));
    acyclic.validate();
    for (std::size_t c = 0; c < a->size(); ++c)
        CHECK(stalk_at_cell(acyclic, c).is_zero());
    CHECK(cohomology(acyclic).is_zero());
}

TEST_CASE("hom between standard objects follows the closure order")
{
    for (const auto& a : {line_with({0, 1}, -1, 2), plane_grid()}) {
        for (std::size_t alpha = 0; alpha < a->size(); ++alpha)
            for (std::size_t beta = 0; beta < a->size(); ++beta) {
                const GradedDims h = hom_complex(one(standard_on_cell(a, beta)), one(standard_on_cell(a, alpha)));
                if (oracle::closure_leq(*a, alpha, beta))
                    CHECK(h == GradedDims{{0, 1}});
                else
                    CHECK(h.is_zero());
            }
    }
}

TEST_CASE("hom from the constant sheaf and from a skyscraper")
{
    const auto a = line_with({0}, -1, 1);
    CHECK(hom_complex(one(constant_sheaf(a)), one(constant_sheaf(a))) == GradedDims{{0, 1}});
    const auto sky = one(constant_on_closed(a, {{{1}, 0, Relation::Eq}}));
    CHECK(hom_complex(sky, one(constant_sheaf(a))) == GradedDims{{1, 1}});
    const auto b = ArrangementComplex::build({Hyperplane::make({1, 0}, 0), Hyperplane::make({0, 1}, 0)},
                                             Box{{-1, -1}, {1, 1}});
    const auto sky2 = one(constant_on_closed(b, {{{1, 0}, 0, Relation::Eq}, {{0, 1}, 0, Relation::Eq}}));
    CHECK(hom_complex(sky2, one(constant_sheaf(b))) == GradedDims{{2, 1}});
    CHECK(hom_complex(one(constant_sheaf(b)), sky2) == GradedDims{{0, 1}});
}

TEST_CASE("endomorphisms contain the identity")
{
    const auto a = plane_grid();
    for (std::size_t c = 0; c < a->size(); ++c) {
        const auto s = one(standard_on_cell(a, c));
        CHECK(hom_complex(s, s).at(0) >= 1);
        const auto j = one(costandard_on_cell(a, c));
        CHECK(hom_complex(j, j).at(0) >= 1);
    }
}

TEST_CASE("hom needs a common arrangement")
{
    const auto a = line_with({0}, -1, 1);
    const auto b = line_with({0}, -1, 1);
    CHECK_THROWS_AS(hom_complex(one(constant_sheaf(a)), one(constant_sheaf(b))), RefinementRequired);
}

TEST_CASE("shift, cone and direct sum")
{
    const auto a = line_with({0, 1}, -1, 2);
    const auto f = one(constant_on_closed(a, interval(0, 1)));
    const auto g = one(costandard_on_open(a, open_interval(0, 1)), 1);
    const auto fg = direct_sum({f, g});
    for (std::size_t c = 0; c < a->size(); ++c) {
        const auto x = a->cell(c).sample;
        CHECK(stalk(shift(f, 0), x) == stalk(f, x));
        CHECK(stalk(shift(f, 3), x) == stalk(f, x).shifted(3));
        CHECK(stalk(shift(g, -2), x) == stalk(g, x).shifted(-2));
        CHECK(stalk(fg, x) == stalk(f, x) + stalk(g, x));
        CHECK(stalk(cone(identity_map(fg)), x).is_zero());
    }
    CHECK(cohomology(cone(identity_map(fg))).is_zero());
    CHECK(cohomology(fg) == cohomology(f) + cohomology(g));
}

TEST_CASE("cone of the restriction to a point")
{
    // C_[0,1] -> C_{0}; the cone has the cohomology of C_(0,1] shifted by one.
    const auto a = line_with({0, 1}, -1, 2);
    const auto f = one(constant_on_closed(a, interval(0, 1)));
    const auto p = one(constant_on_closed(a, {{{1}, 0, Relation::Eq}}));
    ChainMap phi{&f, &p, {}};
    std::vector<Matrix> comp;
    for (std::size_t c = 0; c < a->size(); ++c)
        comp.push_back(Matrix(p.term(0).dim(c), f.term(0).dim(c)));
    const std::size_t zero = a->locate(pt({0}));
    comp[zero](0, 0) = 1;
    phi.components[0] = comp;
    phi.validate();
    const auto k = cone(phi);
    k.validate();
    CHECK(stalk(k, pt({0})).is_zero());
    CHECK(stalk(k, pt({Rational(1, 2)})) == GradedDims{{-1, 1}});
    CHECK(stalk(k, pt({1})) == GradedDims{{-1, 1}});
    CHECK(cohomology(k).is_zero());
}

TEST_CASE("non-commuting maps are rejected")
{
    const auto a = line_with({0}, -1, 1);
    const auto f = one(constant_sheaf(a));
    ChainMap bad{&f, &f, {}};
    std::vector<Matrix> comp;
    for (std::size_t c = 0; c < a->size(); ++c)
        comp.push_back(Matrix::identity(1));
    comp[0](0, 0) = 2;
    bad.components[0] = comp;
    CHECK_THROWS_AS(bad.validate(), NotAChainMap);
    CHECK_THROWS_AS(cone(bad), NotAChainMap);

    CellularSheaf s = constant_sheaf(a);
    const std::size_t v = a->locate(pt({0}));
    s.set_map(v, a->covers_up(v)[0], Matrix(1, 1));
    CHECK_NOTHROW(s.check_functorial()); // no diamonds in one dimension
    const auto b = plane_grid();
    CellularSheaf t = constant_sheaf(b);
    std::size_t vert = 0;
    while (b->cell(vert).dim != 0)
        ++vert;
    t.set_map(vert, b->covers_up(vert)[0], Matrix(1, 1));
    CHECK_THROWS(t.check_functorial());
}

TEST_CASE("excision at the level of Euler characteristics")
{
    const auto a = plane_grid();
    const ConstraintSystem square = {{{1, 0}, 0, Relation::Ge}, {{-1, 0}, -1, Relation::Ge},
                                     {{0, 1}, 0, Relation::Ge}, {{0, -1}, -1, Relation::Ge}};
    const std::vector<CellularSheaf> sheaves = {constant_on_closed(a, square), standard_on_cell(a, a->size() - 1),
                                                costandard_on_open(a, {{{1, 0}, 0, Relation::Gt}})};
    for (const auto& f : sheaves) {
        const auto z = a->closed_cells_of({{{0, 1}, 0, Relation::Ge}, {{0, -1}, -1, Relation::Ge}});
        std::vector<bool> u(z.size());
        for (std::size_t c = 0; c < z.size(); ++c)
            u[c] = !z[c];
        const long ju = cohomology(one(extend_by_zero(f, u))).euler();
        const long all = cohomology(one(f)).euler();
        const long iz = cohomology(one(restrict_to_closed(f, z))).euler();
        CHECK(ju - all + iz == 0);
    }
}

TEST_CASE("convolution Euler characteristic of skyscrapers")
{
    BlockComplex sky;
    sky.dim = 1;
    sky.blocks.push_back({0, {{{1}, 0, Relation::Eq}}});
    for (const Rational x : {Rational(-1), Rational(0), Rational(1, 2)})
        CHECK(convolution_euler_stalk(sky, sky, pt({x})) == (x == 0 ? 1 : 0));
}

TEST_CASE("convolution of two half lines against the fiber")
{
    BlockComplex h;
    h.dim = 1;
    h.blocks.push_back({0, {{{1}, 0, Relation::Ge}}});
    for (int k = -6; k <= 6; ++k) {
        const Rational x(k, 3);
        // fiber {(a, b) : a, b >= 0, a + b = x} is the segment a in [0, x]
        const Rational lo = 0, hi = x;
        const long expect = lo <= hi ? 1 : 0;
        CHECK(convolution_euler_stalk(h, h, pt({x})) == expect);
    }
}
