#include "tccc/lattice_fan.hpp"

#include "tccc/errors.hpp"
#include "tccc/linalg.hpp"
#include "tccc/polyhedron.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <set>

namespace tccc {

RationalVector to_rational(const LatticeVector& v)
{
    RationalVector out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        out[i] = Rational(v[i]);
    return out;
}

Rational pairing(const RationalVector& x, const LatticeVector& v)
{
    if (x.size() != v.size())
        throw Error("pairing: dimension mismatch");
    Rational s = 0;
    for (std::size_t i = 0; i < x.size(); ++i)
        if (v[i] != 0)
            s += x[i] * v[i];
    return s;
}

Rational pairing(const RationalVector& x, const RationalVector& y)
{
    if (x.size() != y.size())
        throw Error("pairing: dimension mismatch");
    Rational s = 0;
    for (std::size_t i = 0; i < x.size(); ++i)
        s += x[i] * y[i];
    return s;
}

Integer pairing(const LatticeVector& m, const LatticeVector& v)
{
    if (m.size() != v.size())
        throw Error("pairing: dimension mismatch");
    Integer s = 0;
    for (std::size_t i = 0; i < m.size(); ++i)
        s += m[i] * v[i];
    return s;
}

bool is_primitive(const LatticeVector& v)
{
    Integer g = 0;
    for (std::size_t i = 0; i < v.size(); ++i)
        g = boost::multiprecision::gcd(g, v[i]);
    return g == 1;
}

bool is_lattice_point(const RationalVector& x)
{
    for (std::size_t i = 0; i < x.size(); ++i)
        if (!is_integer(x[i]))
            return false;
    return true;
}

LatticeVector to_lattice(const RationalVector& x)
{
    LatticeVector out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!is_integer(x[i]))
            throw Error("to_lattice: non-integral coordinate");
        out[i] = numerator_of(x[i]);
    }
    return out;
}

std::string to_string(const RationalVector& x)
{
    std::string s = "(";
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (i)
            s += ",";
        s += to_string(x[i]);
    }
    return s + ")";
}

namespace {

IntegerMatrix generator_matrix(const Cone& c)
{
    IntegerMatrix m;
    for (const auto& g : c.generators)
        m.push_back(g.coords());
    return m;
}

bool independent(const std::vector<LatticeVector>& gens)
{
    if (gens.empty())
        return true;
    Matrix m(gens.size(), gens.front().size());
    for (std::size_t r = 0; r < gens.size(); ++r)
        for (std::size_t c = 0; c < gens[r].size(); ++c)
            m(r, c) = Rational(gens[r][c]);
    return rank(m) == gens.size();
}

bool unimodular(const Cone& c)
{
    if (c.generators.empty())
        return true;
    const auto divisors = elementary_divisors(generator_matrix(c));
    if (divisors.size() != c.generators.size())
        return false;
    return std::all_of(divisors.begin(), divisors.end(), [](const Integer& d) { return d == 1; });
}

// Relative interiors of two simplicial cones meet.
bool relative_interiors_meet(const Cone& a, const Cone& b, std::size_t dim)
{
    const std::size_t k = a.dim() + b.dim();
    ConstraintSystem sys;
    for (std::size_t i = 0; i < dim; ++i) {
        LinearConstraint eq{std::vector<Rational>(k, Rational(0)), Rational(0), Relation::Eq};
        for (std::size_t j = 0; j < a.dim(); ++j)
            eq.coeffs[j] = Rational(a.generators[j][i]);
        for (std::size_t j = 0; j < b.dim(); ++j)
            eq.coeffs[a.dim() + j] = Rational(-b.generators[j][i]);
        sys.push_back(std::move(eq));
    }
    for (std::size_t j = 0; j < k; ++j) {
        LinearConstraint pos{std::vector<Rational>(k, Rational(0)), Rational(0), Relation::Gt};
        pos.coeffs[j] = 1;
        sys.push_back(std::move(pos));
    }
    return is_feasible(sys, k);
}

} // namespace

std::vector<LatticeVector> dual_cone(const Cone& c)
{
    if (!independent(c.generators))
        throw UnsupportedCone("dual_cone: cone is not simplicial");
    if (!unimodular(c))
        throw UnsupportedCone("dual_cone: cone is not smooth");
    return c.generators;
}

std::vector<LatticeVector> dual_generators(const Cone& c, std::size_t dim)
{
    if (c.dim() != dim)
        throw UnsupportedCone("dual_generators: cone is not full-dimensional");
    dual_cone(c); // validates
    Matrix v(dim, dim);
    for (std::size_t r = 0; r < dim; ++r)
        for (std::size_t col = 0; col < dim; ++col)
            v(r, col) = Rational(c.generators[r][col]);
    std::vector<LatticeVector> out;
    for (std::size_t i = 0; i < dim; ++i) {
        std::vector<Rational> e(dim, Rational(0));
        e[i] = 1;
        const auto u = solve(v, e);
        out.push_back(to_lattice(RationalVector(*u)));
    }
    return out;
}

std::vector<Cone> faces(const Cone& c)
{
    const std::size_t k = c.dim();
    std::vector<Cone> out;
    for (std::size_t mask = 0; mask < (std::size_t(1) << k); ++mask) {
        Cone f;
        for (std::size_t i = 0; i < k; ++i)
            if (mask & (std::size_t(1) << i)) {
                f.rays.push_back(c.rays[i]);
                f.generators.push_back(c.generators[i]);
            }
        out.push_back(std::move(f));
    }
    std::stable_sort(out.begin(), out.end(), [](const Cone& a, const Cone& b) {
        if (a.dim() != b.dim())
            return a.dim() < b.dim();
        return a.rays < b.rays;
    });
    return out;
}

bool cone_contains(const Cone& c, const RationalVector& p)
{
    if (c.generators.empty())
        return p.is_zero();
    const std::size_t n = p.size();
    Matrix a(n, c.dim());
    for (std::size_t j = 0; j < c.dim(); ++j)
        for (std::size_t i = 0; i < n; ++i)
            a(i, j) = Rational(c.generators[j][i]);
    const auto lambda = solve(a, p.coords());
    if (!lambda)
        return false;
    return std::all_of(lambda->begin(), lambda->end(), [](const Rational& x) { return x >= 0; });
}

std::shared_ptr<const Fan> Fan::create(std::string name, std::size_t dim, std::vector<LatticeVector> rays,
                                       std::vector<std::vector<std::size_t>> max_cones)
{
    if (dim == 0)
        throw InputError("fan dimension must be positive");
    for (std::size_t i = 0; i < rays.size(); ++i) {
        if (rays[i].size() != dim)
            throw InputError("ray " + std::to_string(i) + " has the wrong dimension");
        if (rays[i].is_zero() || !is_primitive(rays[i]))
            throw InputError("ray " + std::to_string(i) + " is not a primitive nonzero vector");
    }
    for (std::size_t i = 0; i < rays.size(); ++i)
        for (std::size_t j = i + 1; j < rays.size(); ++j)
            if (rays[i] == rays[j])
                throw InputError("duplicate ray " + std::to_string(j));

    auto fan = std::shared_ptr<Fan>(new Fan());
    fan->name_ = std::move(name);
    fan->dim_ = dim;
    fan->rays_ = std::move(rays);

    std::set<std::vector<std::size_t>> subsets;
    for (auto& mc : max_cones) {
        std::sort(mc.begin(), mc.end());
        mc.erase(std::unique(mc.begin(), mc.end()), mc.end());
        if (mc.size() > dim)
            throw UnsupportedCone("cone with more rays than the dimension is not simplicial");
        Cone c;
        for (auto r : mc) {
            if (r >= fan->rays_.size())
                throw InputError("cone references unknown ray " + std::to_string(r));
            c.rays.push_back(r);
            c.generators.push_back(fan->rays_[r]);
        }
        if (!independent(c.generators))
            throw UnsupportedCone("cone generators are linearly dependent");
        for (const auto& f : faces(c))
            subsets.insert(f.rays);
    }
    subsets.insert({});
    for (std::size_t r = 0; r < fan->rays_.size(); ++r)
        subsets.insert({r});

    std::vector<std::vector<std::size_t>> ordered(subsets.begin(), subsets.end());
    std::stable_sort(ordered.begin(), ordered.end(), [](const auto& a, const auto& b) {
        if (a.size() != b.size())
            return a.size() < b.size();
        return a < b;
    });
    fan->by_dim_.assign(dim + 1, {});
    for (const auto& rs : ordered) {
        Cone c;
        c.rays = rs;
        for (auto r : rs)
            c.generators.push_back(fan->rays_[r]);
        fan->by_dim_[rs.size()].push_back(fan->cones_.size());
        fan->cones_.push_back(std::move(c));
    }
    fan->ray_cone_.assign(fan->rays_.size(), npos);
    for (std::size_t i = 0; i < fan->cones_.size(); ++i)
        if (fan->cones_[i].dim() == 1)
            fan->ray_cone_[fan->cones_[i].rays[0]] = i;

    for (std::size_t i = 0; i < fan->cones_.size(); ++i) {
        bool maximal = true;
        for (std::size_t j = 0; j < fan->cones_.size() && maximal; ++j) {
            if (fan->cones_[j].dim() <= fan->cones_[i].dim())
                continue;
            const auto& big = fan->cones_[j].rays;
            if (std::includes(big.begin(), big.end(), fan->cones_[i].rays.begin(), fan->cones_[i].rays.end()))
                maximal = false;
        }
        if (maximal)
            fan->maximal_.push_back(i);
    }

    // Cones must meet along common faces: relative interiors pairwise disjoint.
    for (std::size_t i = 1; i < fan->cones_.size(); ++i)
        for (std::size_t j = i + 1; j < fan->cones_.size(); ++j)
            if (relative_interiors_meet(fan->cones_[i], fan->cones_[j], dim))
                throw InputError("cones " + std::to_string(i) + " and " + std::to_string(j) +
                                 " overlap; not a fan");

    fan->smooth_ = is_smooth(*fan);
    fan->complete_ = is_complete(*fan);
    if (fan->smooth_)
        for (auto t : fan->by_dim_[dim])
            fan->dual_bases_.push_back(dual_generators(fan->cones_[t], dim));
    return fan;
}

std::size_t Fan::find_cone(const std::vector<std::size_t>& rays) const
{
    if (rays.size() > dim_)
        return npos;
    for (auto i : by_dim_[rays.size()])
        if (cones_[i].rays == rays)
            return i;
    return npos;
}

std::size_t Fan::top_position(std::size_t cone_index) const
{
    const auto& top = by_dim_[dim_];
    const auto it = std::find(top.begin(), top.end(), cone_index);
    if (it == top.end())
        throw Error("cone is not full-dimensional");
    return static_cast<std::size_t>(it - top.begin());
}

bool is_smooth(const Fan& f)
{
    for (auto i : f.maximal_cones())
        if (!unimodular(f.cone(i)))
            return false;
    return true;
}

bool is_complete(const Fan& f)
{
    const std::size_t n = f.dim();
    const auto& top = f.cones_of_dim(n);
    for (auto w : f.cones_of_dim(n - 1)) {
        std::size_t count = 0;
        const auto& wr = f.cone(w).rays;
        for (auto t : top) {
            const auto& tr = f.cone(t).rays;
            if (std::includes(tr.begin(), tr.end(), wr.begin(), wr.end()))
                ++count;
        }
        if (count != 2)
            return false;
    }
    std::size_t total = 1;
    for (std::size_t i = 0; i < n; ++i)
        total *= 3;
    for (std::size_t code = 0; code < total; ++code) {
        RationalVector p(n);
        std::size_t rest = code;
        for (std::size_t i = 0; i < n; ++i) {
            p[i] = Rational(static_cast<long>(rest % 3) - 1);
            rest /= 3;
        }
        bool found = false;
        for (auto t : top)
            if (cone_contains(f.cone(t), p)) {
                found = true;
                break;
            }
        if (!found)
            return false;
    }
    return true;
}

std::vector<WallPair> wall_pairs(const Fan& f)
{
    const std::size_t n = f.dim();
    std::vector<WallPair> out;
    for (auto w : f.cones_of_dim(n - 1)) {
        std::vector<std::size_t> incident;
        const auto& wr = f.cone(w).rays;
        for (auto t : f.cones_of_dim(n)) {
            const auto& tr = f.cone(t).rays;
            if (std::includes(tr.begin(), tr.end(), wr.begin(), wr.end()))
                incident.push_back(t);
        }
        if (incident.size() != 2)
            throw IncompleteFan("wall " + std::to_string(w) + " bounds " + std::to_string(incident.size()) +
                                " maximal cones");
        out.push_back({w, incident[0], incident[1]});
    }
    return out;
}

std::size_t locate_in_fan(const Fan& f, const RationalVector& p)
{
    for (auto t : f.cones_of_dim(f.dim()))
        if (cone_contains(f.cone(t), p))
            return t;
    throw OutOfDomain("vector " + to_string(p) + " is not in the support of fan " + f.name());
}

namespace {

FanPtr build_named_fan(const std::string& name)
{
    using LV = LatticeVector;
    if (name == "P1")
        return Fan::create("P1", 1, {LV{1}, LV{-1}}, {{0}, {1}});
    if (name == "P2")
        return Fan::create("P2", 2, {LV{1, 0}, LV{0, 1}, LV{-1, -1}}, {{0, 1}, {1, 2}, {0, 2}});
    if (name == "P1xP1")
        return Fan::create("P1xP1", 2, {LV{1, 0}, LV{0, 1}, LV{-1, 0}, LV{0, -1}},
                           {{0, 1}, {1, 2}, {2, 3}, {0, 3}});
    if (name == "F2")
        return Fan::create("F2", 2, {LV{1, 0}, LV{0, 1}, LV{-1, -2}, LV{0, -1}}, {{0, 1}, {1, 2}, {2, 3}, {0, 3}});
    if (name == "F3")
        return Fan::create("F3", 2, {LV{1, 0}, LV{0, 1}, LV{-1, -3}, LV{0, -1}}, {{0, 1}, {1, 2}, {2, 3}, {0, 3}});
    throw InputError("unknown fan name '" + name + "'");
}

} // namespace

FanPtr named_fan(const std::string& name)
{
    static std::mutex lock;
    static std::map<std::string, FanPtr> cache;
    const std::lock_guard<std::mutex> guard(lock);
    auto it = cache.find(name);
    if (it == cache.end())
        it = cache.emplace(name, build_named_fan(name)).first;
    return it->second;
}

bool same_fan(const Fan& a, const Fan& b)
{
    return &a == &b || (a.dim() == b.dim() && a.rays() == b.rays() && a.maximal_cones() == b.maximal_cones());
}

std::vector<std::string> named_fan_names()
{
    return {"P1", "P2", "P1xP1", "F2", "F3"};
}

} // namespace tccc
