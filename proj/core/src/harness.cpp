#include "tccc/harness.hpp"

#include "tccc/errors.hpp"
#include "tccc/linalg.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <random>
#include <unordered_map>

namespace tccc {

// ---------------------------------------------------------------------------
// Toric cohomology oracle

namespace {

// Reduced cohomology of the full subcomplex of the fan on the masked rays,
// re-indexed so that H^p(X, O(D))_m = result.at(p).
GradedDims reduced_cohomology_shifted(const Fan& fan, const std::vector<bool>& in)
{
    const std::size_t n = fan.dim();
    std::vector<std::vector<std::size_t>> cells(n + 1);
    std::map<std::vector<std::size_t>, std::size_t> index;
    for (std::size_t k = 0; k <= n; ++k)
        for (auto c : fan.cones_of_dim(k)) {
            const auto& rays = fan.cone(c).rays;
            if (std::all_of(rays.begin(), rays.end(), [&](std::size_t r) { return in[r]; })) {
                index[rays] = cells[k].size();
                cells[k].push_back(c);
            }
        }
    // coboundary from k-cones to (k+1)-cones
    std::vector<std::size_t> rk(n + 1, 0);
    for (std::size_t k = 0; k < n; ++k) {
        std::vector<SparseIntRow> rows;
        for (auto c : cells[k + 1]) {
            const auto& rays = fan.cone(c).rays;
            SparseIntRow row;
            for (std::size_t j = 0; j < rays.size(); ++j) {
                auto face = rays;
                face.erase(face.begin() + static_cast<long>(j));
                row.push_back({static_cast<std::uint32_t>(index.at(face)), (j % 2 == 0) ? 1 : -1});
            }
            rows.push_back(std::move(row));
        }
        rk[k] = sparse_rank(std::move(rows));
    }
    GradedDims out;
    for (std::size_t k = 0; k <= n; ++k) {
        const std::size_t before = k == 0 ? 0 : rk[k - 1];
        // k-cones are (k-1)-simplices: reduced degree k - 1, sheaf degree k
        out.add(static_cast<int>(k), cells[k].size() - rk[k] - before);
    }
    return out;
}

} // namespace

CohomologyReport toric_cohomology(const Divisor& d)
{
    if (!d.is_integral())
        throw InputError("toric_cohomology needs an integral divisor");
    const Fan& fan = *d.fan();
    const std::size_t n = fan.dim();
    const std::size_t r = fan.rays().size();
    if (r > 64)
        throw Unsupported("toric_cohomology supports at most 64 rays");

    // vertices of the arrangement <m, v_rho> = a_rho
    std::vector<RationalVector> corners;
    std::vector<std::size_t> pick(n);
    std::function<void(std::size_t, std::size_t)> choose = [&](std::size_t start, std::size_t depth) {
        if (depth == n) {
            Matrix a(n, n);
            std::vector<Rational> b(n);
            for (std::size_t i = 0; i < n; ++i) {
                for (std::size_t j = 0; j < n; ++j)
                    a(i, j) = Rational(fan.ray(pick[i])[j]);
                b[i] = d.coeff(pick[i]);
            }
            if (rank(a) == n)
                corners.emplace_back(*solve(a, b));
            return;
        }
        for (std::size_t i = start; i < r; ++i) {
            pick[depth] = i;
            choose(i + 1, depth + 1);
        }
    };
    choose(0, 0);
    if (corners.empty())
        corners.emplace_back(n);

    const Box hull = Box::hull(corners);
    std::vector<Integer> lo(n), hi(n);
    for (std::size_t i = 0; i < n; ++i) {
        lo[i] = floor(hull.lo[i]) - 1;
        hi[i] = ceil(hull.hi[i]) + 1;
    }

    CohomologyReport report;
    report.divisor = d;
    std::unordered_map<std::uint64_t, GradedDims> memo;
    auto at_weight = [&](const LatticeVector& m) -> const GradedDims& {
        std::vector<bool> in(r);
        std::uint64_t key = 0;
        for (std::size_t i = 0; i < r; ++i) {
            in[i] = pairing(m, fan.ray(i)) > numerator_of(d.coeff(i));
            if (in[i])
                key |= std::uint64_t(1) << i;
        }
        auto it = memo.find(key);
        if (it == memo.end())
            it = memo.emplace(key, reduced_cohomology_shifted(fan, in)).first;
        return it->second;
    };

    LatticeVector m(n);
    for (std::size_t i = 0; i < n; ++i)
        m[i] = lo[i] - 1;
    while (true) {
        bool inside = true;
        for (std::size_t i = 0; i < n; ++i)
            if (m[i] < lo[i] || m[i] > hi[i])
                inside = false;
        const GradedDims& g = at_weight(m);
        if (inside) {
            if (!g.is_zero()) {
                report.total = report.total + g;
                report.per_weight.push_back({m, g});
            }
        } else if (!g.is_zero()) {
            report.shell_zero = false;
        }
        std::size_t i = 0;
        while (i < n && m[i] == hi[i] + 1) {
            m[i] = lo[i] - 1;
            ++i;
        }
        if (i == n)
            break;
        m[i] += 1;
    }
    return report;
}

// ---------------------------------------------------------------------------

std::size_t VerificationResult::passed() const
{
    return static_cast<std::size_t>(
        std::count_if(instances.begin(), instances.end(), [](const InstanceResult& r) { return r.pass; }));
}

void VerificationResult::add(std::string key, bool pass, std::string transcript)
{
    instances.push_back({std::move(key), pass, std::move(transcript)});
}

void VerificationResult::merge(const VerificationResult& other)
{
    instances.insert(instances.end(), other.instances.begin(), other.instances.end());
}

std::string describe(const Divisor& d)
{
    std::string s = d.fan()->name() + "(";
    for (std::size_t i = 0; i < d.coeffs().size(); ++i) {
        if (i)
            s += ",";
        s += to_string(d.coeff(i));
    }
    return s + ")";
}

std::string describe(const RationalVector& x)
{
    return to_string(x);
}

VerificationResult verify_ccc_hom(const Divisor& d1, const Divisor& d2)
{
    VerificationResult v;
    v.suite = "ccc-hom";
    const GradedDims lhs = torus_hom(d1, d2).total;
    const CohomologyReport rhs = toric_cohomology(d2 - d1);
    const bool pass = lhs == rhs.total && rhs.shell_zero;
    v.add("D1=" + describe(d1) + " D2=" + describe(d2), pass,
          "torus_hom " + to_string(lhs) + " vs H*(O(D2-D1)) " + to_string(rhs.total));
    return v;
}

GradedDims torus_stalk(const Divisor& chi, const RationalVector& x)
{
    const std::size_t n = x.size();
    const Box box = vertex_box(chi).inflated(Rational(1));
    std::vector<Integer> lo(n), hi(n);
    for (std::size_t i = 0; i < n; ++i) {
        lo[i] = ceil(box.lo[i] - x[i]);
        hi[i] = floor(box.hi[i] - x[i]);
        if (lo[i] > hi[i])
            return {};
    }
    GradedDims total;
    RationalVector y = x;
    LatticeVector m(n);
    for (std::size_t i = 0; i < n; ++i)
        m[i] = lo[i];
    while (true) {
        for (std::size_t i = 0; i < n; ++i)
            y[i] = x[i] + Rational(m[i]);
        total = total + stalk_P(chi, y);
        std::size_t i = 0;
        while (i < n && m[i] == hi[i]) {
            m[i] = lo[i];
            ++i;
        }
        if (i == n)
            break;
        m[i] += 1;
    }
    return total;
}

int calibrate_shift()
{
    static const int frozen = [] {
        const FanPtr p1 = named_fan("P1");
        const RationalVector theta{0};
        const Divisor skyscraper = zero_divisor(p1);
        const GradedDims lhs = torus_stalk(skyscraper, theta);
        const GradedDims hom = torus_hom(probe_divisor(p1, theta), skyscraper).total;
        for (int k = -3; k <= 3; ++k)
            if (hom.shifted(k) == lhs)
                return k;
        throw Error("shift calibration failed on the skyscraper instance");
    }();
    return frozen;
}

VerificationResult verify_corepresentability(const RationalVector& theta, const Divisor& dprime)
{
    VerificationResult v;
    v.suite = "corepresentability";
    const FanPtr& fan = dprime.fan();
    const int n = static_cast<int>(fan->dim());
    RationalVector x = theta;
    for (std::size_t i = 0; i < x.size(); ++i)
        x[i] -= Rational(floor(x[i]));
    const GradedDims lhs = torus_stalk(dprime, x);
    const GradedDims hom = torus_hom(probe_divisor(fan, x), dprime).total;
    const GradedDims rhs = hom.shifted(calibrate_shift() * n);
    v.add("theta=" + describe(x) + " F=P(" + describe(dprime) + ")", lhs == rhs,
          "stalk " + to_string(lhs) + " vs hom " + to_string(hom) + " shifted by " +
              std::to_string(calibrate_shift() * n));
    return v;
}

std::vector<RationalVector> theta_grid(std::size_t n, int max_denom)
{
    std::set<Rational> coords;
    for (int q = 1; q <= max_denom; ++q)
        for (int p = 0; p < q; ++p)
            coords.insert(Rational(p, q));
    const std::vector<Rational> axis(coords.begin(), coords.end());
    std::vector<RationalVector> grid;
    std::vector<std::size_t> idx(n, 0);
    while (true) {
        RationalVector x(n);
        for (std::size_t i = 0; i < n; ++i)
            x[i] = axis[idx[i]];
        grid.push_back(std::move(x));
        std::size_t i = 0;
        while (i < n && idx[i] + 1 == axis.size()) {
            idx[i] = 0;
            ++i;
        }
        if (i == n)
            break;
        ++idx[i];
    }
    return grid;
}

std::set<std::vector<Rational>> probe_collection(FanPtr fan, const std::vector<RationalVector>& grid)
{
    std::set<std::vector<Rational>> classes;
    for (const auto& x : grid)
        classes.insert(class_key(probe_divisor(fan, x)));
    return classes;
}

// ---------------------------------------------------------------------------
// One-dimensional convolution through the fibers of the addition map

namespace {

struct Interval {
    bool empty = false;
    bool has_lo = false, has_hi = false;
    Rational lo, hi;
};

void cut(Interval& iv, const Rational& coeff, const Rational& rhs)
{
    // coeff * y >= rhs
    if (coeff == 0) {
        if (rhs > 0)
            iv.empty = true;
        return;
    }
    const Rational bound = rhs / coeff;
    if (coeff > 0) {
        if (!iv.has_lo || bound > iv.lo) {
            iv.lo = bound;
            iv.has_lo = true;
        }
    } else {
        if (!iv.has_hi || bound < iv.hi) {
            iv.hi = bound;
            iv.has_hi = true;
        }
    }
    if (iv.has_lo && iv.has_hi && iv.lo > iv.hi)
        iv.empty = true;
}

Interval fiber(const ConstraintSystem& q1, const ConstraintSystem& q2, const Rational& x)
{
    Interval iv;
    for (const auto& row : q1) {
        if (row.rel == Relation::Eq) {
            cut(iv, row.coeffs[0], row.rhs);
            cut(iv, -row.coeffs[0], -row.rhs);
        } else {
            cut(iv, row.coeffs[0], row.rhs);
        }
    }
    for (const auto& row : q2) {
        // c (x - y) >= r  <=>  -c y >= r - c x
        const Rational c = -row.coeffs[0];
        const Rational rhs = row.rhs - row.coeffs[0] * x;
        cut(iv, c, rhs);
        if (row.rel == Relation::Eq)
            cut(iv, -c, -rhs);
    }
    return iv;
}

} // namespace

GradedDims convolution_stalk_1d(const BlockComplex& f, const BlockComplex& g, const Rational& x)
{
    if (f.dim != 1 || g.dim != 1)
        throw Unsupported("convolution_stalk_1d needs one-dimensional blocks");

    const std::size_t nf = f.blocks.size(), ng = g.blocks.size();
    std::vector<Interval> fib(nf * ng);
    std::set<Rational> ends;
    for (std::size_t a = 0; a < nf; ++a)
        for (std::size_t b = 0; b < ng; ++b) {
            Interval iv = fiber(f.blocks[a].region, g.blocks[b].region, x);
            if (!iv.empty) {
                if (iv.has_lo)
                    ends.insert(iv.lo);
                if (iv.has_hi)
                    ends.insert(iv.hi);
            }
            fib[a * ng + b] = iv;
        }
    const std::vector<Rational> verts(ends.begin(), ends.end());
    const std::size_t nv = verts.size();
    const std::size_t ne = nv + 1; // edge e lies between verts[e-1] and verts[e]

    auto vertex_in = [&](const Interval& iv, std::size_t v) {
        return !iv.empty && (!iv.has_lo || iv.lo <= verts[v]) && (!iv.has_hi || verts[v] <= iv.hi);
    };
    auto edge_in = [&](const Interval& iv, std::size_t e) {
        if (iv.empty)
            return false;
        const bool left_ok = e == 0 ? !iv.has_lo : (!iv.has_lo || iv.lo <= verts[e - 1]);
        const bool right_ok = e == nv ? !iv.has_hi : (!iv.has_hi || verts[e] <= iv.hi);
        return left_ok && right_ok;
    };

    // variables: (pair, cell) with cell < nv a vertex (cochain degree 0), else an edge
    struct Var {
        std::size_t a, b, cell;
        int degree;
    };
    std::map<int, std::vector<Var>> vars;
    std::map<std::tuple<std::size_t, std::size_t, std::size_t>, std::size_t> index;
    for (std::size_t a = 0; a < nf; ++a)
        for (std::size_t b = 0; b < ng; ++b) {
            const Interval& iv = fib[a * ng + b];
            const int base = f.blocks[a].degree + g.blocks[b].degree;
            for (std::size_t v = 0; v < nv; ++v)
                if (vertex_in(iv, v)) {
                    index[{a, b, v}] = vars[base].size();
                    vars[base].push_back({a, b, v, base});
                }
            for (std::size_t e = 0; e < ne; ++e)
                if (edge_in(iv, e)) {
                    index[{a, b, nv + e}] = vars[base + 1].size();
                    vars[base + 1].push_back({a, b, nv + e, base + 1});
                }
        }
    if (vars.empty())
        return {};

    // images of each source variable, as sparse columns; rank of the transpose is the same
    auto rank_from = [&](int k) -> std::size_t {
        const auto src = vars.find(k);
        if (src == vars.end() || !vars.count(k + 1))
            return 0;
        std::vector<SparseIntRow> rows;
        for (const Var& s : src->second) {
            SparseIntRow row;
            auto put = [&](std::size_t a, std::size_t b, std::size_t cell, std::int64_t coeff) {
                const auto it = index.find({a, b, cell});
                if (it != index.end() && coeff != 0)
                    row.push_back({static_cast<std::uint32_t>(it->second), coeff});
            };
            const int i = f.blocks[s.a].degree;
            const int j = g.blocks[s.b].degree;
            for (const auto& e : f.entries)
                if (e.from == s.a)
                    put(e.to, s.b, s.cell, static_cast<std::int64_t>(numerator_of(e.coeff)));
            for (const auto& e : g.entries)
                if (e.from == s.b)
                    put(s.a, e.to, s.cell, (i % 2 == 0 ? 1 : -1) * static_cast<std::int64_t>(numerator_of(e.coeff)));
            if (s.cell < nv) {
                const std::int64_t sign = (i + j) % 2 == 0 ? 1 : -1;
                // vertex v is the right end of edge v and the left end of edge v+1
                put(s.a, s.b, nv + s.cell, sign);
                put(s.a, s.b, nv + s.cell + 1, -sign);
            }
            if (!row.empty())
                rows.push_back(std::move(row));
        }
        return sparse_rank(std::move(rows));
    };

    for (const auto& e : f.entries)
        if (!is_integer(e.coeff))
            throw Unsupported("convolution_stalk_1d needs integer block coefficients");
    for (const auto& e : g.entries)
        if (!is_integer(e.coeff))
            throw Unsupported("convolution_stalk_1d needs integer block coefficients");

    const int lo = vars.begin()->first;
    const int hi = vars.rbegin()->first;
    std::map<int, std::size_t> rk;
    for (int k = lo - 1; k <= hi; ++k)
        rk[k] = rank_from(k);
    GradedDims out;
    for (int k = lo; k <= hi; ++k) {
        const auto it = vars.find(k);
        const std::size_t dim = it == vars.end() ? 0 : it->second.size();
        out.add(k, dim - rk[k] - rk[k - 1]);
    }
    return out;
}

std::vector<Divisor> divisors_in_range(FanPtr fan, int range)
{
    const std::size_t r = fan->rays().size();
    std::vector<Divisor> out;
    std::vector<long> c(r, -range);
    while (true) {
        out.push_back(Divisor::from_coeffs(fan, std::vector<Rational>(c.begin(), c.end())));
        std::size_t i = 0;
        while (i < r && c[i] == range) {
            c[i] = -range;
            ++i;
        }
        if (i == r)
            break;
        ++c[i];
    }
    return out;
}

// ---------------------------------------------------------------------------
// Suites

namespace {

using Rng = std::mt19937_64;

Divisor random_integral(FanPtr fan, int range, Rng& rng)
{
    std::uniform_int_distribution<long> dist(-range, range);
    std::vector<Rational> c;
    for (std::size_t i = 0; i < fan->rays().size(); ++i)
        c.emplace_back(dist(rng));
    return Divisor::from_coeffs(std::move(fan), std::move(c));
}

RationalVector random_point(std::size_t n, int max_denom, int span, Rng& rng)
{
    std::uniform_int_distribution<long> den(1, max_denom);
    RationalVector x(n);
    for (std::size_t i = 0; i < n; ++i) {
        const long q = den(rng);
        std::uniform_int_distribution<long> num(-span * q, span * q);
        x[i] = Rational(num(rng), q);
    }
    return x;
}

std::vector<std::string> fans_or(const SuiteConfig& c, std::vector<std::string> fallback)
{
    if (!c.fan.empty())
        return {c.fan};
    return fallback;
}

int or_default(int v, int d)
{
    return v < 0 ? d : v;
}

VerificationResult suite_fan_axioms(const SuiteConfig&)
{
    VerificationResult v;
    for (const auto& name : named_fan_names()) {
        const FanPtr f = named_fan(name);
        const std::size_t n = f->dim();
        bool faces_ok = true;
        for (const auto& c : f->cones())
            faces_ok = faces_ok && faces(c).size() == (std::size_t(1) << c.dim());
        bool dual_ok = true;
        for (auto t : f->cones_of_dim(n)) {
            const auto u = dual_generators(f->cone(t), n);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    dual_ok = dual_ok && pairing(u[i], f->cone(t).generators[j]) == (i == j ? 1 : 0);
        }
        const bool walls_ok = wall_pairs(*f).size() == f->cones_of_dim(n - 1).size();
        const bool count_ok = n != 2 || f->cones_of_dim(1).size() == f->cones_of_dim(2).size();
        v.add(name, is_smooth(*f) && is_complete(*f) && faces_ok && dual_ok && walls_ok && count_ok,
              "smooth, complete, 2^k faces, dual bases, walls, ray/cone count");
    }
    return v;
}

VerificationResult suite_p1_examples(const SuiteConfig&)
{
    VerificationResult v;
    const FanPtr p1 = named_fan("P1");
    std::vector<Rational> pts;
    for (int k = -8; k <= 8; k += 2)
        pts.push_back(Rational(k, 4));
    struct Case {
        std::string name;
        std::vector<Rational> a;
        std::function<GradedDims(const Rational&)> expect;
    };
    const std::vector<Case> cases{
        {"chi=(-1,1)", {-1, -1},
         [](const Rational& x) { return (x >= -1 && x <= 1) ? GradedDims{{0, 1}} : GradedDims{}; }},
        {"chi=(0,0)", {0, 0}, [](const Rational& x) { return x == 0 ? GradedDims{{0, 1}} : GradedDims{}; }},
        {"chi=(1,-1)", {1, 1},
         [](const Rational& x) { return (x > -1 && x < 1) ? GradedDims{{-1, 1}} : GradedDims{}; }},
    };
    for (const auto& c : cases) {
        const Divisor d = Divisor::from_coeffs(p1, c.a);
        bool ok = true;
        std::string transcript;
        for (const auto& x : pts) {
            const GradedDims got = stalk_P(d, RationalVector(std::vector<Rational>{x}));
            if (!(got == c.expect(x))) {
                ok = false;
                transcript += "x=" + to_string(x) + " got " + to_string(got) + "; ";
            }
        }
        v.add(c.name, ok, transcript.empty() ? "9 points match" : transcript);
    }
    return v;
}

VerificationResult suite_p2_example(const SuiteConfig&)
{
    VerificationResult v;
    const FanPtr p2 = named_fan("P2");
    const Divisor d = anticanonical(p2);
    std::vector<RationalVector> expected{RationalVector{1, 1}, RationalVector{-2, 1}, RationalVector{1, -2}};
    auto sorted = [](std::vector<RationalVector> vs) {
        std::sort(vs.begin(), vs.end());
        return vs;
    };
    v.add("vertices", sorted(d.vertices()) == sorted(expected), "vertices of (1,1,1)");
    const AmplePolytope delta = ample_polytope(d);
    int interior = 0, exterior = 0;
    bool ok = true;
    for (int i = -12; i <= 12 && (interior < 12 || exterior < 12); ++i)
        for (int j = -12; j <= 12; ++j) {
            const RationalVector x{std::vector<Rational>{Rational(i, 4), Rational(j, 5)}};
            const GradedDims s = stalk_P(d, x);
            if (delta.contains(x) && interior < 12) {
                ++interior;
                ok = ok && s == GradedDims{{-2, 1}};
            } else if (!delta.closure_contains(x) && exterior < 12 && (i + j) % 3 == 0) {
                ++exterior;
                ok = ok && s.is_zero();
            }
        }
    v.add("interior/exterior", ok && interior == 12 && exterior == 12, "12 interior, 12 exterior points");
    bool verts_ok = true;
    for (const auto& p : expected)
        verts_ok = verts_ok && stalk_P(d, p).is_zero();
    v.add("vertex stalks", verts_ok, "stalks vanish at the three vertices");
    return v;
}

VerificationResult suite_degree_bounds(const SuiteConfig& c)
{
    VerificationResult v;
    const int range = or_default(c.range, 2);
    for (const auto& name : fans_or(c, {"P1", "P2", "F2"}))
        for (const auto& d : divisors_in_range(named_fan(name), range)) {
            const bool bounds = degree_bound_check(d);
            const bool compact = compact_support_check(d);
            v.add(describe(d), bounds && compact,
                  std::string(bounds ? "" : "degree bound fails; ") + (compact ? "" : "support leaves hull"));
        }
    return v;
}

VerificationResult suite_convolution_euler(const SuiteConfig& c)
{
    VerificationResult v;
    Rng rng(c.seed);
    const int range = or_default(c.range, 1);
    const int samples = or_default(c.samples, 50);
    for (const auto& name : fans_or(c, {"P2"})) {
        const FanPtr f = named_fan(name);
        for (int s = 0; s < samples; ++s) {
            const Divisor d1 = random_integral(f, range, rng);
            const Divisor d2 = random_integral(f, range, rng);
            const Divisor sum = d1 + d2;
            const auto b1 = build_P(d1).blocks();
            const auto b2 = build_P(d2).blocks();
            const auto a = arrangement_for({sum}, support_box(sum));
            bool ok = true;
            std::string transcript;
            for (const auto& cell : a->cells()) {
                const long lhs = convolution_euler_stalk(b1, b2, cell.sample);
                const long rhs = stalk_P(sum, cell.sample).euler();
                if (lhs != rhs) {
                    ok = false;
                    transcript = "x=" + to_string(cell.sample) + " convolution " + std::to_string(lhs) +
                                 " vs " + std::to_string(rhs);
                    break;
                }
            }
            v.add(describe(d1) + " * " + describe(d2), ok, transcript);
        }
    }
    return v;
}

VerificationResult suite_convolution_1d(const SuiteConfig& c)
{
    VerificationResult v;
    const int range = or_default(c.range, 2);
    const FanPtr p1 = named_fan("P1");
    const auto all = divisors_in_range(p1, range);
    for (const auto& d1 : all)
        for (const auto& d2 : all) {
            const Divisor sum = d1 + d2;
            const auto b1 = build_P(d1).blocks();
            const auto b2 = build_P(d2).blocks();
            const auto a = arrangement_for({sum, d1, d2}, support_box(sum));
            bool ok = true;
            std::string transcript;
            for (const auto& cell : a->cells()) {
                const GradedDims lhs = convolution_stalk_1d(b1, b2, cell.sample[0]);
                const GradedDims rhs = stalk_P(sum, cell.sample);
                if (!(lhs == rhs)) {
                    ok = false;
                    transcript = "x=" + to_string(cell.sample) + " " + to_string(lhs) + " vs " + to_string(rhs);
                    break;
                }
            }
            v.add(describe(d1) + " * " + describe(d2), ok, transcript);
        }
    return v;
}

VerificationResult suite_verdier_pairs(const SuiteConfig& c)
{
    VerificationResult v;
    const int range = or_default(c.range, 2);
    for (const auto& name : fans_or(c, {"P1", "P2", "P1xP1", "F2"}))
        for (const auto& d : divisors_in_range(named_fan(name), range))
            if (is_strictly_convex(d))
                v.add(describe(d), verdier_pair_check(d));
    return v;
}

VerificationResult suite_ss_certificates(const SuiteConfig& c)
{
    VerificationResult v;
    Rng rng(c.seed);
    const int samples = or_default(c.samples, 100);
    const long denoms[] = {2, 3, 5, 7};
    for (const auto& name : fans_or(c, {"P2"})) {
        const FanPtr f = named_fan(name);
        std::uniform_int_distribution<int> pick(0, 3);
        std::uniform_int_distribution<long> num(-20, 20);
        for (int s = 0; s < samples; ++s) {
            std::vector<Rational> a;
            for (std::size_t r = 0; r < f->rays().size(); ++r) {
                const long q = denoms[pick(rng)];
                long p = num(rng);
                if (p % q == 0)
                    p += 1;
                a.emplace_back(p, q);
            }
            const Divisor d = Divisor::from_coeffs(f, a);
            v.add(describe(d), disjoint_at_infinity(d).verdict == Verdict::True);
        }
    }
    return v;
}

VerificationResult suite_path_certificates(const SuiteConfig& c)
{
    VerificationResult v;
    Rng rng(c.seed);
    const int samples = or_default(c.samples, 200);
    const int denom = or_default(c.denom, 7);
    for (const auto& name : fans_or(c, named_fan_names())) {
        const FanPtr f = named_fan(name);
        const Divisor ample = find_ample(f);
        for (int s = 0; s < samples; ++s) {
            const RationalVector x = random_point(f->dim(), denom, 3, rng);
            const PathCertificate cert = validate_path(build_deformation_path(f, x, ample));
            v.add(name + " x=" + describe(x), cert.pass, cert.failure);
        }
    }
    return v;
}

VerificationResult suite_ccc_hom(const SuiteConfig& c)
{
    VerificationResult v;
    const int range = or_default(c.range, 2);
    Rng rng(c.seed);
    for (const auto& name : fans_or(c, {"P1", "P2", "F2"})) {
        const FanPtr f = named_fan(name);
        if (name == "P1" && c.samples < 0) {
            const auto all = divisors_in_range(f, range);
            for (const auto& d1 : all)
                for (const auto& d2 : all)
                    v.merge(verify_ccc_hom(d1, d2));
        } else {
            const int samples = or_default(c.samples, 100);
            for (int s = 0; s < samples; ++s) {
                const Divisor d1 = random_integral(f, range, rng);
                const Divisor d2 = random_integral(f, range, rng);
                v.merge(verify_ccc_hom(d1, d2));
            }
        }
    }
    return v;
}

VerificationResult suite_corepresentability(const SuiteConfig& c)
{
    VerificationResult v;
    const int range = or_default(c.range, 1);
    const int denom = or_default(c.denom, 3);
    for (const auto& name : fans_or(c, {"P1", "P2", "F2"})) {
        const FanPtr f = named_fan(name);
        const auto grid = theta_grid(f->dim(), denom);
        for (const auto& d : divisors_in_range(f, range))
            for (const auto& theta : grid)
                v.merge(verify_corepresentability(theta, d));
    }
    return v;
}

std::string class_name(const std::vector<Rational>& key)
{
    std::string s = "[";
    for (std::size_t i = 0; i < key.size(); ++i) {
        if (i)
            s += ",";
        s += to_string(key[i]);
    }
    return s + "]";
}

VerificationResult suite_probe_collection(const SuiteConfig& c)
{
    VerificationResult v;
    const int denom = or_default(c.denom, 4);
    for (const auto& name : fans_or(c, {"P1", "P2", "F2"})) {
        const FanPtr f = named_fan(name);
        const auto classes = probe_collection(f, theta_grid(f->dim(), denom));
        std::string listed;
        for (const auto& k : classes)
            listed += class_name(k) + " ";
        if (name == "P1" || name == "P2") {
            // O(k) is the class of k D_0
            std::set<std::vector<Rational>> expect;
            for (std::size_t k = 1; k <= f->dim() + 1; ++k) {
                std::vector<Rational> a(f->rays().size(), Rational(0));
                a[0] = Rational(static_cast<long>(k));
                expect.insert(class_key(Divisor::from_coeffs(f, a)));
            }
            v.add(name, classes == expect, listed);
        } else {
            v.add(name, !classes.empty(), std::to_string(classes.size()) + " classes: " + listed);
        }
    }
    return v;
}

} // namespace

std::vector<std::string> suite_names()
{
    return {"fan-axioms",         "p1-examples",      "p2-example",        "degree-bounds",
            "convolution-euler",  "convolution-1d",   "verdier-pairs",     "ss-certificates",
            "path-certificates",  "ccc-hom",          "corepresentability", "probe-collection"};
}

VerificationResult run_suite(const std::string& name, const SuiteConfig& config)
{
    VerificationResult v;
    if (name == "fan-axioms")
        v = suite_fan_axioms(config);
    else if (name == "p1-examples")
        v = suite_p1_examples(config);
    else if (name == "p2-example")
        v = suite_p2_example(config);
    else if (name == "degree-bounds")
        v = suite_degree_bounds(config);
    else if (name == "convolution-euler")
        v = suite_convolution_euler(config);
    else if (name == "convolution-1d")
        v = suite_convolution_1d(config);
    else if (name == "verdier-pairs")
        v = suite_verdier_pairs(config);
    else if (name == "ss-certificates")
        v = suite_ss_certificates(config);
    else if (name == "path-certificates")
        v = suite_path_certificates(config);
    else if (name == "ccc-hom")
        v = suite_ccc_hom(config);
    else if (name == "corepresentability")
        v = suite_corepresentability(config);
    else if (name == "probe-collection")
        v = suite_probe_collection(config);
    else
        throw InputError("unknown suite '" + name + "'");
    v.suite = name;
    return v;
}

} // namespace tccc
