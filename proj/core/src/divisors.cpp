#include "tccc/divisors.hpp"

#include "tccc/errors.hpp"
#include "tccc/linalg.hpp"

#include <algorithm>

namespace tccc {

Divisor Divisor::from_coeffs(FanPtr fan, std::vector<Rational> coeffs)
{
    if (!fan)
        throw Error("divisor without a fan");
    if (coeffs.size() != fan->rays().size())
        throw InputError("expected " + std::to_string(fan->rays().size()) + " coefficients, got " +
                         std::to_string(coeffs.size()));
    if (!fan->smooth())
        throw UnsupportedCone("divisors require a smooth fan");
    if (!fan->complete())
        throw IncompleteFan("divisors require a complete fan");

    Divisor d;
    d.fan_ = std::move(fan);
    d.coeffs_ = std::move(coeffs);
    const std::size_t n = d.fan_->dim();
    const auto& top = d.fan_->cones_of_dim(n);
    d.vertices_.reserve(top.size());
    for (std::size_t t = 0; t < top.size(); ++t) {
        const auto& cone = d.fan_->cone(top[t]);
        const auto& basis = d.fan_->dual_basis(t);
        RationalVector chi(n);
        for (std::size_t i = 0; i < n; ++i) {
            const Rational& a = d.coeffs_[cone.rays[i]];
            if (a == 0)
                continue;
            for (std::size_t k = 0; k < n; ++k)
                chi[k] += a * basis[i][k];
        }
        d.vertices_.push_back(std::move(chi));
    }

    const auto& cones = d.fan_->cones();
    d.apex_of_.assign(cones.size(), 0);
    for (std::size_t c = 0; c < cones.size(); ++c) {
        const auto& rays = cones[c].rays;
        for (std::size_t t = 0; t < top.size(); ++t) {
            const auto& tr = d.fan_->cone(top[t]).rays;
            if (std::includes(tr.begin(), tr.end(), rays.begin(), rays.end())) {
                d.apex_of_[c] = t;
                break;
            }
        }
    }
    return d;
}

const RationalVector& Divisor::apex(std::size_t cone_index) const
{
    return vertices_[apex_of_.at(cone_index)];
}

bool Divisor::is_integral() const
{
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Rational& a) { return is_integer(a); });
}

namespace {

void require_same_fan(const Divisor& a, const Divisor& b)
{
    if (!same_fan(*a.fan(), *b.fan()))
        throw Error("divisors live on different fans");
}

Divisor with_shifted_vertices(const Divisor& d, std::vector<Rational> coeffs)
{
    return Divisor::from_coeffs(d.fan(), std::move(coeffs));
}

} // namespace

Divisor operator+(const Divisor& a, const Divisor& b)
{
    require_same_fan(a, b);
    std::vector<Rational> c(a.coeffs().size());
    for (std::size_t i = 0; i < c.size(); ++i)
        c[i] = a.coeff(i) + b.coeff(i);
    return with_shifted_vertices(a, std::move(c));
}

Divisor operator-(const Divisor& a, const Divisor& b)
{
    require_same_fan(a, b);
    std::vector<Rational> c(a.coeffs().size());
    for (std::size_t i = 0; i < c.size(); ++i)
        c[i] = a.coeff(i) - b.coeff(i);
    return with_shifted_vertices(a, std::move(c));
}

Divisor operator-(const Divisor& a)
{
    return scaled(a, Rational(-1));
}

Divisor scaled(const Divisor& d, const Rational& k)
{
    std::vector<Rational> c(d.coeffs());
    for (auto& x : c)
        x *= k;
    return with_shifted_vertices(d, std::move(c));
}

Divisor zero_divisor(FanPtr fan)
{
    const std::size_t r = fan->rays().size();
    return Divisor::from_coeffs(std::move(fan), std::vector<Rational>(r, Rational(0)));
}

Divisor anticanonical(FanPtr fan)
{
    const std::size_t r = fan->rays().size();
    return Divisor::from_coeffs(std::move(fan), std::vector<Rational>(r, Rational(1)));
}

Rational support_value(const Divisor& d, const RationalVector& v)
{
    const auto& fan = *d.fan();
    const auto& top = fan.cones_of_dim(fan.dim());
    const std::size_t cone = locate_in_fan(fan, v);
    for (std::size_t t = 0; t < top.size(); ++t)
        if (top[t] == cone)
            return pairing(d.vertex(t), v);
    throw Error("support_value: cone lookup failed");
}

namespace {

// Sign of <chi_{sigma1}, v> - a_v at each wall, v the ray of sigma2 off the wall.
template <typename Pred>
bool all_walls(const Divisor& d, Pred pred)
{
    const auto& fan = *d.fan();
    for (const auto& w : wall_pairs(fan)) {
        const auto& wall = fan.cone(w.wall).rays;
        const auto& second = fan.cone(w.second).rays;
        std::size_t v = 0;
        for (auto r : second)
            if (!std::binary_search(wall.begin(), wall.end(), r))
                v = r;
        const Rational lhs = pairing(d.vertex(fan.top_position(w.first)), fan.ray(v));
        if (!pred(lhs, d.coeff(v)))
            return false;
    }
    return true;
}

} // namespace

bool is_convex(const Divisor& d)
{
    return all_walls(d, [](const Rational& lhs, const Rational& a) { return lhs <= a; });
}

bool is_strictly_convex(const Divisor& d)
{
    return all_walls(d, [](const Rational& lhs, const Rational& a) { return lhs < a; });
}

bool AmplePolytope::contains(const RationalVector& x) const
{
    for (std::size_t i = 0; i < normals.size(); ++i)
        if (!(pairing(x, normals[i]) < bounds[i]))
            return false;
    return true;
}

bool AmplePolytope::closure_contains(const RationalVector& x) const
{
    for (std::size_t i = 0; i < normals.size(); ++i)
        if (pairing(x, normals[i]) > bounds[i])
            return false;
    return true;
}

AmplePolytope ample_polytope(const Divisor& d)
{
    if (!is_strictly_convex(d))
        throw AmpleRequired("ample_polytope: divisor is not strictly convex");
    AmplePolytope p;
    p.normals = d.fan()->rays();
    p.bounds = d.coeffs();
    p.vertices = d.vertices();
    return p;
}

Divisor probe_divisor(FanPtr fan, const RationalVector& x)
{
    std::vector<Rational> c;
    c.reserve(fan->rays().size());
    for (const auto& v : fan->rays())
        c.emplace_back(floor(pairing(x, v)) + 1);
    return Divisor::from_coeffs(std::move(fan), std::move(c));
}

Divisor translate(const Divisor& d, const LatticeVector& m)
{
    return translate(d, to_rational(m));
}

Divisor translate(const Divisor& d, const RationalVector& m)
{
    std::vector<Rational> c(d.coeffs());
    for (std::size_t i = 0; i < c.size(); ++i)
        c[i] += pairing(m, d.fan()->ray(i));
    return Divisor::from_coeffs(d.fan(), std::move(c));
}

std::vector<Rational> class_key(const Divisor& d)
{
    const RationalVector& chi = d.vertex(0);
    std::vector<Rational> c(d.coeffs());
    for (std::size_t i = 0; i < c.size(); ++i)
        c[i] -= pairing(chi, d.fan()->ray(i));
    return c;
}

bool linearly_equivalent(const Divisor& a, const Divisor& b)
{
    require_same_fan(a, b);
    const auto& fan = *a.fan();
    IntegerMatrix v;
    std::vector<Rational> diff;
    for (std::size_t i = 0; i < fan.rays().size(); ++i) {
        v.push_back(fan.ray(i).coords());
        diff.push_back(a.coeff(i) - b.coeff(i));
    }
    return integer_solution(v, diff).has_value();
}

Divisor find_ample(FanPtr fan, int max_coeff)
{
    const std::size_t r = fan->rays().size();
    std::vector<long> c(r, 1);
    while (true) {
        std::vector<Rational> q(c.begin(), c.end());
        auto d = Divisor::from_coeffs(fan, std::move(q));
        if (is_strictly_convex(d))
            return d;
        std::size_t i = 0;
        while (i < r && c[i] == max_coeff)
            c[i++] = 1;
        if (i == r)
            throw AmpleRequired("no strictly convex divisor with small coefficients on fan " + fan->name());
        ++c[i];
    }
}

Rational DeformationPath::coeff(std::size_t ray, const Rational& s) const
{
    return (1 - s) * start[ray] + s * end[ray];
}

Divisor DeformationPath::at(const Rational& s) const
{
    std::vector<Rational> c(start.size());
    for (std::size_t i = 0; i < c.size(); ++i)
        c[i] = coeff(i, s);
    return Divisor::from_coeffs(fan, std::move(c));
}

namespace {

void check_reference(const Divisor& ample)
{
    if (!ample.is_integral())
        throw AmpleRequired("reference divisor must be integral");
    for (const auto& a : ample.coeffs())
        if (a <= 0)
            throw AmpleRequired("reference divisor must have positive coefficients");
    if (!is_strictly_convex(ample))
        throw AmpleRequired("reference divisor is not strictly convex");
}

} // namespace

Rational default_eps0(const Fan& fan, const RationalVector& x, const Divisor& ample)
{
    Rational best;
    bool first = true;
    for (std::size_t i = 0; i < fan.rays().size(); ++i) {
        const Rational t = pairing(x, fan.ray(i));
        const Rational e = (Rational(floor(t)) + 1 - t) / (2 * ample.coeff(i));
        if (first || e < best) {
            best = e;
            first = false;
        }
    }
    return best;
}

DeformationPath make_deformation_path(FanPtr fan, const RationalVector& x, const Divisor& ample, Rational eps0,
                                      long R)
{
    DeformationPath p;
    p.fan = fan;
    p.x = x;
    p.ample = ample;
    p.eps0 = std::move(eps0);
    p.R = R;
    for (std::size_t i = 0; i < fan->rays().size(); ++i) {
        const Rational t = pairing(x, fan->ray(i));
        const Rational& a = ample.coeff(i);
        p.start.push_back(t + (Rational(R) + p.eps0) * a);
        p.end.push_back(Rational(floor(t)) + 1 + Rational(R) * a);
    }
    return p;
}

DeformationPath build_deformation_path(FanPtr fan, const RationalVector& x, const Divisor& ample, long max_R)
{
    check_reference(ample);
    const Divisor probe = probe_divisor(fan, x);
    for (long R = 1; R <= max_R; ++R) {
        if (is_strictly_convex(probe + scaled(ample, Rational(R))))
            return make_deformation_path(fan, x, ample, default_eps0(*fan, x, ample), R);
    }
    throw PathConstructionError("no R <= " + std::to_string(max_R) + " makes D_[x] + R A ample");
}

} // namespace tccc
