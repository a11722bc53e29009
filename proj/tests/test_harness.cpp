#include "oracles.hpp"

#include "tccc/errors.hpp"
#include "tccc/harness.hpp"

#include <doctest.h>

#include <random>

using namespace tccc;

namespace {

Divisor div(const std::string& fan, std::vector<Rational> a)
{
    return Divisor::from_coeffs(named_fan(fan), std::move(a));
}

RationalVector pt(std::vector<Rational> x) { return RationalVector(std::move(x)); }

// H^*(P1, O(k)) from the two-chart Cech complex: weight j is a section on
// U_0 iff j >= 0, on U_1 iff j <= k, and always on the overlap.
GradedDims p1_two_chart(long k)
{
    std::size_t h0 = 0, h1 = 0;
    const long reach = std::abs(k) + 2;
    for (long j = -reach; j <= reach; ++j) {
        const int c0 = (j >= 0) + (j <= k);
        const int rank = c0 > 0 ? 1 : 0;
        h0 += static_cast<std::size_t>(c0 - rank);
        h1 += static_cast<std::size_t>(1 - rank);
    }
    GradedDims out;
    out.add(0, h0);
    out.add(1, h1);
    return out;
}

} // namespace

TEST_CASE("line bundle cohomology on P1")
{
    CHECK(toric_cohomology(div("P1", {1, 1})).total == GradedDims{{0, 3}});
    CHECK(toric_cohomology(div("P1", {-1, -1})).total == GradedDims{{1, 1}});
    for (int a = -4; a <= 4; ++a)
        for (int b = -4; b <= 4; ++b)
            CHECK(toric_cohomology(div("P1", {a, b})).total == p1_two_chart(a + b));
}

TEST_CASE("line bundle cohomology on P2")
{
    const auto r = toric_cohomology(div("P2", {-1, -1, -1}));
    CHECK(r.total == GradedDims{{2, 1}});
    CHECK(r.shell_zero);
    CHECK(toric_cohomology(zero_divisor(named_fan("P2"))).total == GradedDims{{0, 1}});
    CHECK(toric_cohomology(div("P2", {-1, 0, 0})).total.is_zero());
}

TEST_CASE("weights add up to the total")
{
    for (const auto& d : divisors_in_range(named_fan("F2"), 1)) {
        const auto r = toric_cohomology(d);
        GradedDims sum;
        for (const auto& w : r.per_weight) {
            CHECK_FALSE(w.dims.is_zero());
            sum = sum + w.dims;
        }
        CHECK(sum == r.total);
        CHECK(r.shell_zero);
    }
}

TEST_CASE("fan-poset cohomology matches the Cech complex")
{
    for (const auto& name : {"P1", "P2", "P1xP1", "F2", "F3"}) {
        const auto f = named_fan(name);
        const int range = f->rays().size() > 3 ? 1 : 2;
        for (const auto& d : divisors_in_range(f, range))
            CHECK(toric_cohomology(d).total == oracle::cech_cohomology(d));
    }
}

TEST_CASE("sections of ample bundles count lattice points")
{
    for (const auto& name : {"P2", "P1xP1", "F2"}) {
        for (const auto& d : divisors_in_range(named_fan(name), 2)) {
            if (!is_strictly_convex(d))
                continue;
            const auto r = toric_cohomology(d);
            CHECK(r.total.at(0) == oracle::closed_polytope_points(d));
            CHECK(r.total.within(0, 0));
        }
    }
}

TEST_CASE("Serre duality")
{
    for (const auto& name : {"P2", "F2"}) {
        const auto f = named_fan(name);
        const Divisor k = -anticanonical(f);
        for (const auto& d : divisors_in_range(f, 2)) {
            const GradedDims h = toric_cohomology(d).total;
            const GradedDims dual = toric_cohomology(k - d).total;
            for (int p = 0; p <= 2; ++p)
                CHECK(h.at(p) == dual.at(2 - p));
        }
    }
}

TEST_CASE("cohomology needs an integral divisor")
{
    CHECK_THROWS_AS(toric_cohomology(div("P1", {Rational(1, 2), 0})), InputError);
}

TEST_CASE("hom match examples")
{
    const auto p1 = named_fan("P1");
    CHECK(verify_ccc_hom(zero_divisor(p1), div("P1", {1, 1})).ok());
    CHECK(torus_hom(div("P1", {1, 1}), zero_divisor(p1)).total == GradedDims{{1, 1}});
    CHECK(verify_ccc_hom(div("P1", {1, 1}), zero_divisor(p1)).ok());
    for (const auto& name : named_fan_names()) {
        const Divisor d = find_ample(named_fan(name));
        CHECK(torus_hom(d, d).total == GradedDims{{0, 1}});
    }
}

TEST_CASE("hom match on a sample of F2 and P1xP1 pairs")
{
    std::mt19937 rng(61);
    for (const auto& name : {"F2", "P1xP1"}) {
        const auto ds = divisors_in_range(named_fan(name), 1);
        std::uniform_int_distribution<std::size_t> pick(0, ds.size() - 1);
        for (int t = 0; t < 6; ++t) {
            const Divisor& a = ds[pick(rng)];
            const Divisor& b = ds[pick(rng)];
            CHECK(torus_hom(a, b).total == oracle::cech_cohomology(b - a));
        }
    }
}

TEST_CASE("shift calibration")
{
    CHECK(calibrate_shift() == 1);
    CHECK(calibrate_shift() == 1);
}

TEST_CASE("corepresentability examples")
{
    const auto p1 = named_fan("P1");
    CHECK(torus_stalk(zero_divisor(p1), pt({0})) == GradedDims{{0, 1}});
    CHECK(verify_corepresentability(pt({0}), zero_divisor(p1)).ok());
    // translates 1/2 and -1/2 both lie in (-1, 1)
    CHECK(torus_stalk(div("P1", {1, 1}), pt({Rational(1, 2)})) == GradedDims{{-1, 2}});
    CHECK(verify_corepresentability(pt({Rational(1, 2)}), div("P1", {1, 1})).ok());
    const auto p2 = named_fan("P2");
    // (-1/2, 0), (1/2, 0), (1/2, -1) in the open triangle x < 1, y < 1, x + y > -1
    CHECK(torus_stalk(div("P2", {1, 1, 1}), pt({Rational(-1, 2), 0})) == GradedDims{{-2, 3}});
    CHECK(verify_corepresentability(pt({Rational(-1, 2), 0}), div("P2", {1, 1, 1})).ok());
}

TEST_CASE("torus stalks are periodic")
{
    const Divisor d = div("P2", {1, 0, 2});
    CHECK(torus_stalk(d, pt({Rational(1, 3), Rational(-2, 3)})) == torus_stalk(d, pt({Rational(4, 3), Rational(7, 3)})));
}

TEST_CASE("theta grids")
{
    CHECK(theta_grid(1, 4).size() == 6); // 0, 1/4, 1/3, 1/2, 2/3, 3/4
    const auto g = theta_grid(2, 2);
    CHECK(g.size() == 4);
    for (const auto& x : theta_grid(2, 3))
        for (std::size_t i = 0; i < 2; ++i) {
            CHECK(x[i] >= 0);
            CHECK(x[i] < 1);
        }
}

TEST_CASE("probe collections")
{
    const auto p1 = named_fan("P1");
    std::vector<RationalVector> grid;
    for (int k = 0; k < 4; ++k)
        grid.push_back(pt({Rational(k, 4)}));
    const auto classes = probe_collection(p1, grid);
    CHECK(classes == std::set<std::vector<Rational>>{class_key(div("P1", {1, 0})), class_key(div("P1", {1, 1}))});

    const auto p2 = named_fan("P2");
    const auto c2 = probe_collection(p2, theta_grid(2, 4));
    CHECK(c2 == std::set<std::vector<Rational>>{class_key(div("P2", {1, 0, 0})), class_key(div("P2", {2, 0, 0})),
                                                class_key(div("P2", {3, 0, 0}))});
    const auto f2 = probe_collection(named_fan("F2"), theta_grid(2, 4));
    CHECK(f2.size() >= 1);
    CHECK(f2.size() < theta_grid(2, 4).size());
}

TEST_CASE("fiberwise convolution on the line")
{
    const auto p1 = named_fan("P1");
    for (const auto& a : divisors_in_range(p1, 1))
        for (const auto& b : divisors_in_range(p1, 1)) {
            const BlockComplex fa = build_P(a).blocks();
            const BlockComplex fb = build_P(b).blocks();
            for (int k = -16; k <= 16; ++k) {
                const Rational x(k, 4);
                const GradedDims s = stalk_P(a + b, pt({x}));
                CHECK(convolution_stalk_1d(fa, fb, x) == s);
                CHECK(convolution_euler_stalk(fa, fb, pt({x})) == s.euler());
            }
        }
}

TEST_CASE("suite runner")
{
    CHECK(suite_names().size() == 12);
    const auto r = run_suite("p1-examples");
    CHECK(r.ok());
    CHECK(r.passed() == 3);
    CHECK(run_suite("fan-axioms").ok());
    SuiteConfig c;
    c.fan = "P1";
    c.range = 1;
    const auto h = run_suite("ccc-hom", c);
    CHECK(h.ok());
    CHECK(h.instances.size() == 81);
    CHECK_THROWS_AS(run_suite("no-such-suite"), InputError);
}

TEST_CASE("verification results")
{
    VerificationResult v;
    v.suite = "x";
    v.add("a", true);
    v.add("b", false, "why");
    CHECK(v.passed() == 1);
    CHECK(v.failed() == 1);
    CHECK_FALSE(v.ok());
    VerificationResult w;
    w.add("c", true);
    v.merge(w);
    CHECK(v.instances.size() == 3);
    CHECK(describe(div("P2", {1, 1, 1})) == "P2(1,1,1)");
}
