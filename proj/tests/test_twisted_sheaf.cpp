#include "oracles.hpp"

#include "tccc/errors.hpp"
#include "tccc/harness.hpp"
#include "tccc/twisted_sheaf.hpp"

#include <doctest.h>

#include <random>
#include <set>

using namespace tccc;

namespace {

Divisor div(const std::string& fan, std::vector<Rational> a)
{
    return Divisor::from_coeffs(named_fan(fan), std::move(a));
}

RationalVector pt(std::vector<Rational> x) { return RationalVector(std::move(x)); }

std::vector<Rational> p1_points()
{
    std::vector<Rational> out;
    for (int k = -12; k <= 12; ++k)
        out.emplace_back(k, 4);
    return out;
}

} // namespace

TEST_CASE("incidence signs")
{
    const auto p2 = named_fan("P2");
    const Cone& s = p2->cone(p2->find_cone({0, 1}));
    CHECK(incidence_sign(p2->cone(p2->ray_cone(1)), s) == 1);  // drops ray 0, j = 1
    CHECK(incidence_sign(p2->cone(p2->ray_cone(0)), s) == -1); // drops ray 1, j = 2
    CHECK(incidence_sign(p2->cone(0), p2->cone(p2->ray_cone(2))) == 1);
}

TEST_CASE("shard complexes")
{
    const ShardComplex a = build_P(div("P1", {-1, -1}));
    REQUIRE(a.shards.size() == 3);
    std::multiset<int> degrees;
    for (const auto& s : a.shards)
        degrees.insert(s.degree);
    CHECK(degrees == std::multiset<int>{-1, 0, 0});
    CHECK(a.incidences.size() == 2);
    // C_R -> C_[-1, oo) + C_(-oo, 1]
    const auto& f = *a.chi.fan();
    CHECK(a.shards[f.ray_cone(0)].contains(pt({-1})));
    CHECK(a.shards[f.ray_cone(0)].contains(pt({5})));
    CHECK_FALSE(a.shards[f.ray_cone(0)].contains(pt({Rational(-3, 2)})));
    CHECK(a.shards[f.ray_cone(1)].contains(pt({1})));
    CHECK_FALSE(a.shards[f.ray_cone(1)].contains(pt({2})));

    const ShardComplex z = build_P(div("P1", {0, 0}));
    CHECK(z.shards[f.ray_cone(0)].contains(pt({0})));
    CHECK_FALSE(z.shards[f.ray_cone(1)].contains(pt({Rational(1, 2)})));

    const ShardComplex t = build_P(div("P2", {1, 1, 1}));
    std::map<int, int> count;
    for (const auto& s : t.shards)
        ++count[s.degree];
    CHECK(count == std::map<int, int>{{-2, 1}, {-1, 3}, {0, 3}});
}

TEST_CASE("signed incidences square to zero")
{
    for (const auto& name : named_fan_names()) {
        const auto f = named_fan(name);
        for (const auto& d : divisors_in_range(f, 1)) {
            const ShardComplex s = build_P(d);
            // compose the incidence matrix with itself
            std::map<std::pair<std::size_t, std::size_t>, int> sq;
            for (const auto& a : s.incidences)
                for (const auto& b : s.incidences)
                    if (a.to == b.from)
                        sq[{a.from, b.to}] += a.sign * b.sign;
            for (const auto& [k, v] : sq)
                CHECK(v == 0);
        }
    }
}

TEST_CASE("the three P1 cases")
{
    for (const auto& x : p1_points()) {
        const RationalVector p = pt({x});
        const GradedDims closed = stalk_P(div("P1", {-1, -1}), p);
        CHECK(closed == (x >= -1 && x <= 1 ? GradedDims{{0, 1}} : GradedDims{}));
        const GradedDims sky = stalk_P(div("P1", {0, 0}), p);
        CHECK(sky == (x == 0 ? GradedDims{{0, 1}} : GradedDims{}));
        const GradedDims open = stalk_P(div("P1", {1, 1}), p);
        CHECK(open == (x > -1 && x < 1 ? GradedDims{{-1, 1}} : GradedDims{}));
    }
}

TEST_CASE("P2 anticanonical stalks")
{
    const Divisor d = div("P2", {1, 1, 1});
    CHECK(stalk_P(d, pt({0, 0})) == GradedDims{{-2, 1}});
    CHECK(stalk_P(d, pt({1, 1})).is_zero());
    CHECK(stalk_P(d, pt({-2, 1})).is_zero());
    CHECK(stalk_P(d, pt({0, 1})).is_zero());
    CHECK(stalk_P(d, pt({3, 0})).is_zero());
}

TEST_CASE("realization on an arrangement matches the nerve stalks")
{
    const Divisor d = div("P2", {1, 1, 1});
    const auto a = arrangement_for({d}, support_box(d));
    const SheafComplex f = to_cellular(d, a);
    f.validate();
    std::mt19937 rng(25);
    std::uniform_int_distribution<int> num(-11, 11);
    for (int t = 0; t < 25; ++t) {
        const RationalVector x = pt({Rational(num(rng), 4), Rational(num(rng), 3)});
        if (!a->box().contains(x))
            continue;
        CHECK(stalk(f, x) == stalk_P(d, x));
    }
    for (std::size_t c = 0; c < a->size(); ++c)
        CHECK(stalk_at_cell(f, c) == stalk_P(d, a->cell(c).sample));
}

TEST_CASE("P1 realizations")
{
    const Divisor closed = div("P1", {-1, -1});
    const auto a = arrangement_for({closed}, support_box(closed));
    const SheafComplex f = to_cellular(closed, a);
    for (std::size_t c = 0; c < a->size(); ++c) {
        const Rational x = a->cell(c).sample[0];
        CHECK(stalk_at_cell(f, c) == (x >= -1 && x <= 1 ? GradedDims{{0, 1}} : GradedDims{}));
    }
    const Divisor sky = div("P1", {0, 0});
    const auto b = arrangement_for({sky}, support_box(sky));
    const SheafComplex g = to_cellular(sky, b);
    for (std::size_t c = 0; c < b->size(); ++c)
        CHECK(stalk_at_cell(g, c) == (b->cell(c).dim == 0 ? GradedDims{{0, 1}} : GradedDims{}));
    CHECK(cohomology(g) == GradedDims{{0, 1}});
}

TEST_CASE("required hyperplanes")
{
    auto as_set = [](const std::vector<Hyperplane>& hs) { return std::set<Hyperplane>(hs.begin(), hs.end()); };
    CHECK(as_set(required_hyperplanes(div("P1", {-1, -1}))) ==
          std::set<Hyperplane>{Hyperplane::make({1}, -1), Hyperplane::make({1}, 1)});
    CHECK(as_set(required_hyperplanes(div("P1", {0, 0}))) == std::set<Hyperplane>{Hyperplane::make({1}, 0)});
    // enumeration: each shard facet is <x, v_rho> = a_rho for a ray of its cone
    for (const auto& name : named_fan_names()) {
        const auto f = named_fan(name);
        for (const auto& d : divisors_in_range(f, 1)) {
            std::set<Hyperplane> expect;
            for (const auto& c : f->cones())
                for (auto r : c.rays)
                    expect.insert(Hyperplane::make(f->ray(r), pairing(d.apex(f->find_cone(c.rays)), f->ray(r))));
            CHECK(as_set(required_hyperplanes(d)) == expect);
        }
    }
    CHECK(required_hyperplanes(div("P2", {1, 1, 1})).size() == 3);
}

TEST_CASE("degree bounds and compact support")
{
    for (const auto& d : {div("P1", {-1, -1}), div("P1", {0, 0}), div("P1", {1, 1}), div("P2", {1, 1, 1})}) {
        CHECK(degree_bound_check(d));
        CHECK(compact_support_check(d));
    }
    std::mt19937 rng(31);
    std::uniform_int_distribution<int> coef(-2, 2);
    const auto f3 = named_fan("F3");
    for (int t = 0; t < 12; ++t) {
        const Divisor d = Divisor::from_coeffs(f3, {coef(rng), coef(rng), coef(rng), coef(rng)});
        CHECK(degree_bound_check(d));
        CHECK(compact_support_check(d));
    }
}

TEST_CASE("stalks vanish outside the vertex hull")
{
    std::mt19937 rng(41);
    std::uniform_int_distribution<int> num(-16, 16);
    for (const auto& name : {"P1xP1", "F2"}) {
        for (const auto& d : divisors_in_range(named_fan(name), 1)) {
            for (int t = 0; t < 5; ++t) {
                const RationalVector x = pt({Rational(num(rng), 4), Rational(num(rng), 4)});
                const GradedDims s = stalk_P(d, x);
                if (!in_vertex_hull(d, x))
                    CHECK(s.is_zero());
                CHECK(s.within(-2, 0));
            }
        }
    }
}

TEST_CASE("lattice translation moves stalks")
{
    std::mt19937 rng(43);
    std::uniform_int_distribution<int> num(-12, 12), m(-2, 2);
    const auto f = named_fan("F2");
    for (const auto& d : divisors_in_range(f, 1)) {
        const LatticeVector shift{m(rng), m(rng)};
        const RationalVector x = pt({Rational(num(rng), 4), Rational(num(rng), 3)});
        CHECK(stalk_P(translate(d, shift), x + to_rational(shift)) == stalk_P(d, x));
    }
}

TEST_CASE("zero divisor is the skyscraper at the origin")
{
    for (const auto& name : named_fan_names()) {
        const auto f = named_fan(name);
        const Divisor z = zero_divisor(f);
        RationalVector o(f->dim());
        CHECK(stalk_P(z, o) == GradedDims{{0, 1}});
        RationalVector x = o;
        x[0] = Rational(1, 3);
        CHECK(stalk_P(z, x).is_zero());
        x[0] = -1;
        CHECK(stalk_P(z, x).is_zero());
    }
}

TEST_CASE("ample divisors give the open polytope in degree -n")
{
    std::mt19937 rng(47);
    std::uniform_int_distribution<int> num(-20, 20);
    for (const auto& name : {"P2", "P1xP1", "F2"}) {
        for (const auto& d : divisors_in_range(named_fan(name), 2)) {
            if (!is_strictly_convex(d))
                continue;
            const AmplePolytope poly = ample_polytope(d);
            for (int t = 0; t < 6; ++t) {
                const RationalVector x = pt({Rational(num(rng), 4), Rational(num(rng), 4)});
                CHECK(stalk_P(d, x) == (poly.contains(x) ? GradedDims{{-2, 1}} : GradedDims{}));
            }
            for (const auto& v : poly.vertices)
                CHECK(stalk_P(d, v).is_zero());
        }
    }
}

TEST_CASE("standard and costandard pairs")
{
    CHECK(verdier_pair_check(div("P1", {1, 1})));
    CHECK(verdier_pair_check(div("P2", {1, 1, 1})));
    CHECK(verdier_pair_check(div("P1xP1", {1, 1, 1, 1})));
    CHECK_THROWS_AS(verdier_pair_check(div("P2", {0, 0, 0})), AmpleRequired);
}

TEST_CASE("torus hom on P1")
{
    const auto p1 = named_fan("P1");
    const Divisor o0 = zero_divisor(p1);
    CHECK(torus_hom(o0, div("P1", {1, 1})).total == GradedDims{{0, 3}});
    CHECK(torus_hom(o0, o0).total == GradedDims{{0, 1}});
    const GradedDims minus2 = torus_hom(o0, div("P1", {-1, -1})).total;
    CHECK(minus2 == GradedDims{{1, 1}});
    CHECK(minus2 == oracle::cech_cohomology(div("P1", {-1, -1})));
    for (const auto& d : divisors_in_range(p1, 2))
        CHECK(torus_hom(d, d).total == GradedDims{{0, 1}});
}

TEST_CASE("torus hom on P2 agrees with Cech cohomology")
{
    const auto p2 = named_fan("P2");
    const std::vector<Divisor> ds = {zero_divisor(p2), div("P2", {1, 0, 0}), div("P2", {0, 1, 1}),
                                     div("P2", {-1, -1, -1}), div("P2", {-1, 0, -1})};
    for (const auto& a : ds)
        for (const auto& b : ds)
            CHECK(torus_hom(a, b).total == oracle::cech_cohomology(b - a));
}

TEST_CASE("torus hom with fractional divisors")
{
    const Divisor a = div("P1", {Rational(1, 2), Rational(1, 2)});
    const Divisor b = div("P1", {Rational(3, 2), Rational(-1, 2)});
    CHECK(torus_hom(a, a).total == GradedDims{{0, 1}});
    CHECK(torus_hom(a, b).total == oracle::cech_cohomology(div("P1", {1, -1})));
    CHECK_THROWS_AS(torus_hom(a, div("P1", {0, Rational(1, 2)})), Unsupported);
}

TEST_CASE("sheaves with disjoint supports have no maps")
{
    const Divisor d = div("P2", {1, 1, 1});
    const Divisor far = translate(d, LatticeVector{10, 0});
    CHECK_FALSE(vertex_hulls_meet(d, far));
    Box b = Box::hull({d.vertex(0), d.vertex(1), d.vertex(2), far.vertex(0), far.vertex(1), far.vertex(2)}).inflated(1);
    const auto a = arrangement_for({d, far}, b);
    CHECK(hom_complex(to_cellular(d, a), to_cellular(far, a)).is_zero());
    CHECK(hom_complex(to_cellular(far, a), to_cellular(d, a)).is_zero());
    CHECK_FALSE(hom_complex(to_cellular(d, a), to_cellular(d, a)).is_zero());
}

TEST_CASE("vertex hull helpers")
{
    const Divisor d = div("P2", {1, 1, 1});
    CHECK(in_vertex_hull(d, pt({0, 0})));
    CHECK(in_vertex_hull(d, pt({1, 1})));
    CHECK_FALSE(in_vertex_hull(d, pt({1, 2})));
    const Box vb = vertex_box(d);
    CHECK(vb.lo == std::vector<Rational>{-2, -2});
    CHECK(vb.hi == std::vector<Rational>{1, 1});
    CHECK(support_box(d).lo == std::vector<Rational>{-3, -3});
}

TEST_CASE("block complex realization agrees with the nerve")
{
    const Divisor d = div("F2", {1, 0, 2, -1});
    const auto a = arrangement_for({d}, support_box(d));
    const SheafComplex f = build_P(d).blocks().realize(a);
    for (std::size_t c = 0; c < a->size(); ++c)
        CHECK(stalk_at_cell(f, c) == stalk_P(d, a->cell(c).sample));
}
