#include "tccc/twisted_sheaf.hpp"

#include "tccc/errors.hpp"

#include <algorithm>

namespace tccc {

bool Shard::contains(const RationalVector& x) const
{
    return std::all_of(region.begin(), region.end(),
                       [&](const LinearConstraint& r) { return r.satisfied_by(x.coords()); });
}

BlockComplex ShardComplex::blocks() const
{
    BlockComplex b;
    b.dim = chi.fan()->dim();
    for (const auto& s : shards)
        b.blocks.push_back({s.degree, s.region});
    for (const auto& e : incidences)
        b.entries.push_back({e.from, e.to, Rational(e.sign)});
    return b;
}

int incidence_sign(const Cone& facet, const Cone& sigma)
{
    for (std::size_t j = 0; j < sigma.rays.size(); ++j)
        if (!std::binary_search(facet.rays.begin(), facet.rays.end(), sigma.rays[j]))
            return j % 2 == 0 ? 1 : -1;
    throw Error("incidence_sign: not a facet");
}

namespace {

LinearConstraint ray_constraint(const LatticeVector& v, const Rational& a)
{
    LinearConstraint c;
    for (std::size_t i = 0; i < v.size(); ++i)
        c.coeffs.emplace_back(v[i]);
    c.rhs = a;
    c.rel = Relation::Ge;
    return c;
}

// Facets of each cone, as (facet cone index, sign).
const std::vector<std::pair<std::size_t, int>>& facets_of(const Fan& fan, std::size_t cone,
                                                          std::vector<std::vector<std::pair<std::size_t, int>>>& memo)
{
    if (memo.empty()) {
        memo.resize(fan.cones().size());
        for (std::size_t s = 0; s < fan.cones().size(); ++s) {
            const Cone& sigma = fan.cone(s);
            for (std::size_t j = 0; j < sigma.rays.size(); ++j) {
                std::vector<std::size_t> rays = sigma.rays;
                rays.erase(rays.begin() + static_cast<long>(j));
                memo[s].emplace_back(fan.find_cone(rays), j % 2 == 0 ? 1 : -1);
            }
        }
    }
    return memo[cone];
}

} // namespace

ShardComplex build_P(const Divisor& chi)
{
    const Fan& fan = *chi.fan();
    const int n = static_cast<int>(fan.dim());
    ShardComplex p;
    p.chi = chi;
    for (std::size_t s = 0; s < fan.cones().size(); ++s) {
        const Cone& sigma = fan.cone(s);
        Shard sh;
        sh.cone = s;
        sh.degree = -n + static_cast<int>(sigma.dim());
        for (auto r : sigma.rays)
            sh.region.push_back(ray_constraint(fan.ray(r), chi.coeff(r)));
        p.shards.push_back(std::move(sh));
    }
    std::vector<std::vector<std::pair<std::size_t, int>>> memo;
    for (std::size_t s = 0; s < fan.cones().size(); ++s)
        for (const auto& [f, sign] : facets_of(fan, s, memo))
            p.incidences.push_back({f, s, sign});

    // d o d = 0: every codimension-two pair gets cancelling contributions.
    std::map<std::pair<std::size_t, std::size_t>, int> twice;
    for (const auto& outer : p.incidences)
        for (const auto& inner : p.incidences)
            if (inner.to == outer.from)
                twice[{inner.from, outer.to}] += inner.sign * outer.sign;
    for (const auto& [key, v] : twice)
        if (v != 0)
            throw Error("sign rule violates d o d = 0");
    return p;
}

GradedDims stalk_P(const Divisor& chi, const RationalVector& x)
{
    const Fan& fan = *chi.fan();
    const std::size_t n = fan.dim();
    std::vector<bool> ray_ok(fan.rays().size());
    for (std::size_t r = 0; r < fan.rays().size(); ++r)
        ray_ok[r] = pairing(x, fan.ray(r)) >= chi.coeff(r);

    // cones containing x in their shard, grouped by dimension
    std::vector<std::vector<std::size_t>> present(n + 1);
    std::vector<std::size_t> pos(fan.cones().size(), static_cast<std::size_t>(-1));
    for (std::size_t k = 0; k <= n; ++k)
        for (auto s : fan.cones_of_dim(k)) {
            const auto& rays = fan.cone(s).rays;
            if (std::all_of(rays.begin(), rays.end(), [&](std::size_t r) { return ray_ok[r]; })) {
                pos[s] = present[k].size();
                present[k].push_back(s);
            }
        }

    std::vector<std::size_t> ranks(n + 2, 0); // ranks[k]: degree k cones -> degree k+1
    for (std::size_t k = 0; k < n; ++k) {
        if (present[k].empty() || present[k + 1].empty())
            continue;
        std::vector<SparseIntRow> rows;
        for (auto s : present[k + 1]) {
            const Cone& sigma = fan.cone(s);
            SparseIntRow row;
            for (std::size_t j = 0; j < sigma.rays.size(); ++j) {
                std::vector<std::size_t> rays = sigma.rays;
                rays.erase(rays.begin() + static_cast<long>(j));
                const std::size_t f = fan.find_cone(rays);
                if (pos[f] != static_cast<std::size_t>(-1))
                    row.push_back({static_cast<std::uint32_t>(pos[f]), j % 2 == 0 ? 1 : -1});
            }
            if (!row.empty())
                rows.push_back(std::move(row));
        }
        ranks[k] = sparse_rank(std::move(rows));
    }
    GradedDims out;
    for (std::size_t k = 0; k <= n; ++k) {
        const std::size_t in = k == 0 ? 0 : ranks[k - 1];
        out.add(-static_cast<int>(n) + static_cast<int>(k), present[k].size() - ranks[k] - in);
    }
    return out;
}

std::vector<Hyperplane> required_hyperplanes(const Divisor& chi)
{
    const Fan& fan = *chi.fan();
    std::vector<Hyperplane> hs;
    for (const auto& cone : fan.cones())
        for (auto r : cone.rays)
            hs.push_back(Hyperplane::make(fan.ray(r), pairing(chi.apex(fan.find_cone(cone.rays)), fan.ray(r))));
    std::sort(hs.begin(), hs.end());
    hs.erase(std::unique(hs.begin(), hs.end()), hs.end());
    return hs;
}

Box vertex_box(const Divisor& chi)
{
    return Box::hull(chi.vertices());
}

Box support_box(const Divisor& chi)
{
    return vertex_box(chi).inflated(Rational(1));
}

ArrangementPtr arrangement_for(const std::vector<Divisor>& chis, const Box& box)
{
    std::vector<Hyperplane> hs;
    for (const auto& c : chis) {
        const auto h = required_hyperplanes(c);
        hs.insert(hs.end(), h.begin(), h.end());
    }
    return ArrangementComplex::build(std::move(hs), box);
}

SheafComplex to_cellular(const Divisor& chi, ArrangementPtr a)
{
    return build_P(chi).blocks().realize(std::move(a));
}

bool in_vertex_hull(const Divisor& chi, const RationalVector& x)
{
    const auto& vs = chi.vertices();
    const std::size_t k = vs.size();
    const std::size_t n = x.size();
    ConstraintSystem sys;
    for (std::size_t i = 0; i < n; ++i) {
        LinearConstraint eq{std::vector<Rational>(k), x[i], Relation::Eq};
        for (std::size_t j = 0; j < k; ++j)
            eq.coeffs[j] = vs[j][i];
        sys.push_back(std::move(eq));
    }
    LinearConstraint sum{std::vector<Rational>(k, Rational(1)), Rational(1), Relation::Eq};
    sys.push_back(std::move(sum));
    for (std::size_t j = 0; j < k; ++j) {
        LinearConstraint pos{std::vector<Rational>(k), Rational(0), Relation::Ge};
        pos.coeffs[j] = 1;
        sys.push_back(std::move(pos));
    }
    return is_feasible(sys, k);
}

bool vertex_hulls_meet(const Divisor& a, const Divisor& b)
{
    const auto& va = a.vertices();
    const auto& vb = b.vertices();
    const std::size_t ka = va.size(), kb = vb.size(), k = ka + kb;
    const std::size_t n = a.fan()->dim();
    ConstraintSystem sys;
    for (std::size_t i = 0; i < n; ++i) {
        LinearConstraint eq{std::vector<Rational>(k), Rational(0), Relation::Eq};
        for (std::size_t j = 0; j < ka; ++j)
            eq.coeffs[j] = va[j][i];
        for (std::size_t j = 0; j < kb; ++j)
            eq.coeffs[ka + j] = -vb[j][i];
        sys.push_back(std::move(eq));
    }
    LinearConstraint sa{std::vector<Rational>(k), Rational(1), Relation::Eq};
    LinearConstraint sb{std::vector<Rational>(k), Rational(1), Relation::Eq};
    for (std::size_t j = 0; j < ka; ++j)
        sa.coeffs[j] = 1;
    for (std::size_t j = 0; j < kb; ++j)
        sb.coeffs[ka + j] = 1;
    sys.push_back(std::move(sa));
    sys.push_back(std::move(sb));
    for (std::size_t j = 0; j < k; ++j) {
        LinearConstraint pos{std::vector<Rational>(k), Rational(0), Relation::Ge};
        pos.coeffs[j] = 1;
        sys.push_back(std::move(pos));
    }
    return is_feasible(sys, k);
}

namespace {

template <typename Visit>
bool sweep(const std::vector<Divisor>& chis, const Box& box, Visit visit)
{
    const auto a = arrangement_for(chis, box);
    for (const auto& c : a->cells())
        if (!visit(c.sample))
            return false;
    return true;
}

} // namespace

bool degree_bound_check(const Divisor& chi)
{
    const int n = static_cast<int>(chi.fan()->dim());
    return sweep({chi}, support_box(chi),
                 [&](const RationalVector& x) { return stalk_P(chi, x).within(-n, 0); });
}

bool compact_support_check(const Divisor& chi)
{
    return sweep({chi}, support_box(chi), [&](const RationalVector& x) {
        return stalk_P(chi, x).is_zero() || in_vertex_hull(chi, x);
    });
}

bool verdier_pair_check(const Divisor& d)
{
    const AmplePolytope delta = ample_polytope(d); // throws AmpleRequired
    const Divisor neg = -d;
    const int n = static_cast<int>(d.fan()->dim());
    Box box = vertex_box(d);
    const Box reflected = vertex_box(neg);
    for (std::size_t i = 0; i < box.dim(); ++i) {
        box.lo[i] = std::min(box.lo[i], reflected.lo[i]);
        box.hi[i] = std::max(box.hi[i], reflected.hi[i]);
    }
    const GradedDims standard{{0, 1}};
    const GradedDims costandard{{-n, 1}};
    return sweep({d, neg}, box.inflated(Rational(1)), [&](const RationalVector& x) {
        const GradedDims expect_neg = delta.closure_contains(-x) ? standard : GradedDims{};
        const GradedDims expect_pos = delta.contains(x) ? costandard : GradedDims{};
        return stalk_P(neg, x) == expect_neg && stalk_P(d, x) == expect_pos;
    });
}

namespace {

Box intersect(const Box& a, const Box& b)
{
    Box out = a;
    for (std::size_t i = 0; i < a.dim(); ++i) {
        out.lo[i] = std::max(a.lo[i], b.lo[i]);
        out.hi[i] = std::min(a.hi[i], b.hi[i]);
    }
    return out;
}

} // namespace

TorusHom torus_hom(const Divisor& chi1, const Divisor& chi2)
{
    if (!same_fan(*chi1.fan(), *chi2.fan()))
        throw Error("torus_hom: divisors on different fans");
    for (std::size_t r = 0; r < chi1.coeffs().size(); ++r)
        if (!is_integer(chi1.coeff(r) - chi2.coeff(r)))
            throw Unsupported("torus_hom: fractional parts differ on ray " + std::to_string(r));

    const std::size_t n = chi1.fan()->dim();
    const Box b1 = vertex_box(chi1);
    const Box b2 = vertex_box(chi2);
    // m ranges over the integer points of b1 - b2
    std::vector<Integer> lo(n), hi(n);
    for (std::size_t i = 0; i < n; ++i) {
        lo[i] = ceil(b1.lo[i] - b2.hi[i]);
        hi[i] = floor(b1.hi[i] - b2.lo[i]);
        if (lo[i] > hi[i])
            return {};
    }
    const auto f = build_P(chi1);

    TorusHom out;
    LatticeVector m(n);
    for (std::size_t i = 0; i < n; ++i)
        m[i] = lo[i];
    while (true) {
        const Divisor moved = translate(chi2, m);
        if (vertex_hulls_meet(chi1, moved)) {
            ++out.translates_examined;
            const Box box = intersect(b1, vertex_box(moved)).inflated(Rational(1, 2));
            const auto a = arrangement_for({chi1, moved}, box);
            const GradedDims h = hom_complex(f.blocks().realize(a), to_cellular(moved, a));
            if (!h.is_zero()) {
                out.total = out.total + h;
                out.per_translate.push_back({m, h});
            }
        }
        std::size_t i = 0;
        while (i < n && m[i] == hi[i]) {
            m[i] = lo[i];
            ++i;
        }
        if (i == n)
            break;
        m[i] += 1;
    }
    return out;
}

} // namespace tccc
