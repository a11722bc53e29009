#pragma once

// Brute-force reference computations used only by the tests. None of these
// call into the library's linear algebra or cohomology code.

#include "tccc/arrangement.hpp"
#include "tccc/cellular.hpp"
#include "tccc/divisors.hpp"

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <set>
#include <vector>

namespace oracle {

using tccc::Divisor;
using tccc::GradedDims;
using tccc::Integer;
using tccc::LatticeVector;
using tccc::Rational;
using tccc::RationalVector;

// Rank over Z/p; exact for the tiny 0/+-1 matrices built here.
inline std::size_t rank_mod_p(std::vector<std::vector<long long>> m)
{
    constexpr long long p = 2147483647LL;
    auto inv = [&](long long a) {
        long long r = 1, e = p - 2;
        a %= p;
        if (a < 0)
            a += p;
        while (e) {
            if (e & 1)
                r = r * a % p;
            a = a * a % p;
            e >>= 1;
        }
        return r;
    };
    std::size_t rank = 0;
    const std::size_t rows = m.size();
    const std::size_t cols = rows ? m[0].size() : 0;
    for (auto& row : m)
        for (auto& v : row)
            v = ((v % p) + p) % p;
    for (std::size_t c = 0; c < cols && rank < rows; ++c) {
        std::size_t piv = rank;
        while (piv < rows && m[piv][c] == 0)
            ++piv;
        if (piv == rows)
            continue;
        std::swap(m[piv], m[rank]);
        const long long iv = inv(m[rank][c]);
        for (std::size_t r = 0; r < rows; ++r) {
            if (r == rank || m[r][c] == 0)
                continue;
            const long long f = m[r][c] * iv % p;
            for (std::size_t k = c; k < cols; ++k)
                m[r][k] = ((m[r][k] - f * m[rank][k]) % p + p) % p;
        }
        ++rank;
    }
    return rank;
}

// Exact rank over Q by plain Gaussian elimination.
inline std::size_t rank_q(std::vector<std::vector<Rational>> m)
{
    std::size_t rank = 0;
    const std::size_t rows = m.size();
    const std::size_t cols = rows ? m[0].size() : 0;
    for (std::size_t c = 0; c < cols && rank < rows; ++c) {
        std::size_t piv = rank;
        while (piv < rows && m[piv][c] == 0)
            ++piv;
        if (piv == rows)
            continue;
        std::swap(m[piv], m[rank]);
        for (std::size_t r = 0; r < rows; ++r) {
            if (r == rank || m[r][c] == 0)
                continue;
            const Rational f = m[r][c] / m[rank][c];
            for (std::size_t k = c; k < cols; ++k)
                m[r][k] -= f * m[rank][k];
        }
        ++rank;
    }
    return rank;
}

inline long to_long(const Integer& v) { return v.convert_to<long>(); }

// H^*(X, O(D)) from the Cech complex of the affine cover by maximal cones.
// A monomial m is a section over U_sigma iff <m, v_rho> >= -a_rho for rho in sigma.
inline GradedDims cech_cohomology(const Divisor& d)
{
    const auto& fan = *d.fan();
    const std::size_t n = fan.dim();
    const auto& tops = fan.cones_of_dim(n);
    const std::size_t k = tops.size();
    std::vector<long> a;
    long bound = 2;
    for (const auto& c : d.coeffs()) {
        a.push_back(to_long(tccc::numerator_of(c)));
        bound += 2 * std::abs(a.back());
    }
    // Subsets of maximal cones, by size.
    std::vector<std::vector<std::uint32_t>> by_size(k + 1);
    for (std::uint32_t s = 1; s < (1u << k); ++s)
        by_size[static_cast<std::size_t>(__builtin_popcount(s))].push_back(s);
    auto common_rays = [&](std::uint32_t s) {
        std::set<std::size_t> rays;
        bool first = true;
        for (std::size_t i = 0; i < k; ++i) {
            if (!(s & (1u << i)))
                continue;
            const auto& r = fan.cone(tops[i]).rays;
            if (first) {
                rays.insert(r.begin(), r.end());
                first = false;
            } else {
                std::set<std::size_t> keep;
                for (auto x : r)
                    if (rays.count(x))
                        keep.insert(x);
                rays = keep;
            }
        }
        return rays;
    };
    std::map<std::uint32_t, std::set<std::size_t>> rays_of;
    for (std::uint32_t s = 1; s < (1u << k); ++s)
        rays_of[s] = common_rays(s);

    GradedDims out;
    std::vector<long> m(n, -bound);
    while (true) {
        auto section = [&](std::uint32_t s) {
            for (auto r : rays_of[s]) {
                long pr = 0;
                for (std::size_t i = 0; i < n; ++i)
                    pr += m[i] * to_long(fan.ray(r)[i]);
                if (pr < -a[r])
                    return false;
            }
            return true;
        };
        // live subsets per degree p (size p+1)
        std::vector<std::vector<std::uint32_t>> live(k);
        for (std::size_t p = 0; p < k; ++p)
            for (auto s : by_size[p + 1])
                if (section(s))
                    live[p].push_back(s);
        std::vector<std::size_t> ranks(k + 1, 0);
        for (std::size_t p = 0; p + 1 < k; ++p) {
            if (live[p].empty() || live[p + 1].empty())
                continue;
            std::vector<std::vector<long long>> mat(live[p + 1].size(), std::vector<long long>(live[p].size(), 0));
            for (std::size_t r = 0; r < live[p + 1].size(); ++r) {
                const std::uint32_t t = live[p + 1][r];
                int pos = 0;
                for (std::size_t i = 0; i < k; ++i) {
                    if (!(t & (1u << i)))
                        continue;
                    const std::uint32_t face = t & ~(1u << i);
                    for (std::size_t c = 0; c < live[p].size(); ++c)
                        if (live[p][c] == face)
                            mat[r][c] = (pos % 2 == 0) ? 1 : -1;
                    ++pos;
                }
            }
            ranks[p + 1] = rank_mod_p(std::move(mat));
        }
        for (std::size_t p = 0; p < k; ++p) {
            const std::size_t h = live[p].size() - ranks[p + 1] - ranks[p];
            if (h)
                out.add(static_cast<int>(p), h);
        }
        std::size_t i = 0;
        while (i < n && m[i] == bound) {
            m[i] = -bound;
            ++i;
        }
        if (i == n)
            break;
        ++m[i];
    }
    return out;
}

// Lattice points m with <m, v_rho> <= a_rho for every ray.
inline std::size_t closed_polytope_points(const Divisor& d)
{
    const auto& fan = *d.fan();
    const std::size_t n = fan.dim();
    long bound = 1;
    for (const auto& c : d.coeffs())
        bound += 2 * std::abs(to_long(tccc::floor(c)));
    std::size_t count = 0;
    std::vector<long> m(n, -bound);
    while (true) {
        bool inside = true;
        for (std::size_t r = 0; r < fan.rays().size() && inside; ++r) {
            Rational pr = 0;
            for (std::size_t i = 0; i < n; ++i)
                pr += m[i] * to_long(fan.ray(r)[i]);
            inside = pr <= d.coeff(r);
        }
        count += inside;
        std::size_t i = 0;
        while (i < n && m[i] == bound) {
            m[i] = -bound;
            ++i;
        }
        if (i == n)
            break;
        ++m[i];
    }
    return count;
}

// Strict convexity from the global criterion: each vertex chi_sigma satisfies
// <chi_sigma, v_rho> < a_rho for every ray outside sigma.
inline bool globally_strictly_convex(const Divisor& d, bool strict = true)
{
    const auto& fan = *d.fan();
    const auto& tops = fan.cones_of_dim(fan.dim());
    for (std::size_t t = 0; t < tops.size(); ++t) {
        const auto& rays = fan.cone(tops[t]).rays;
        for (std::size_t r = 0; r < fan.rays().size(); ++r) {
            if (std::find(rays.begin(), rays.end(), r) != rays.end())
                continue;
            const Rational v = tccc::pairing(d.vertex(t), fan.ray(r));
            if (strict ? !(v < d.coeff(r)) : !(v <= d.coeff(r)))
                return false;
        }
    }
    return true;
}

inline std::vector<int> signs_at(const tccc::ArrangementComplex& a, const RationalVector& x)
{
    std::vector<int> s;
    for (const auto& h : a.hyperplanes()) {
        const Rational e = h.eval(x);
        s.push_back(e > 0 ? 1 : (e < 0 ? -1 : 0));
    }
    return s;
}

// c lies in the closure of d iff points just off c's sample toward d's sample
// already lie in d.
inline bool closure_leq(const tccc::ArrangementComplex& a, std::size_t c, std::size_t d)
{
    const auto& sc = a.cell(c).sample;
    const auto& sd = a.cell(d).sample;
    const auto target = signs_at(a, sd);
    for (const Rational t : {Rational(1, 1000000), Rational(1, 2)}) {
        RationalVector y(sc.size());
        for (std::size_t i = 0; i < sc.size(); ++i)
            y[i] = (1 - t) * sc[i] + t * sd[i];
        if (signs_at(a, y) != target)
            return false;
    }
    return true;
}

// Distinct sign vectors over a rational grid of the box with the given step.
inline std::set<std::vector<int>> grid_sign_vectors(const tccc::ArrangementComplex& a, const Rational& step)
{
    std::set<std::vector<int>> out;
    const auto& box = a.box();
    const std::size_t n = box.dim();
    std::vector<Rational> x(n);
    for (std::size_t i = 0; i < n; ++i)
        x[i] = box.lo[i] + step;
    while (true) {
        out.insert(signs_at(a, RationalVector(x)));
        std::size_t i = 0;
        while (i < n && x[i] + step >= box.hi[i]) {
            x[i] = box.lo[i] + step;
            ++i;
        }
        if (i == n)
            break;
        x[i] += step;
    }
    return out;
}

// Compactly supported cochains of a 1-d cellular sheaf whose support avoids
// the ends of the box: C^0 = vertex stalks, C^1 = edge stalks, with
// (dx)(e) = F(right -> e) x(right) - F(left -> e) x(left).
inline GradedDims compact_cohomology_1d(const tccc::CellularSheaf& f)
{
    const auto& a = *f.arrangement();
    std::vector<std::size_t> verts, edges;
    for (std::size_t c = 0; c < a.size(); ++c)
        (a.cell(c).dim == 0 ? verts : edges).push_back(c);
    std::map<std::size_t, std::size_t> voff, eoff;
    std::size_t nv = 0, ne = 0;
    for (auto v : verts) {
        voff[v] = nv;
        nv += f.dim(v);
    }
    for (auto e : edges) {
        eoff[e] = ne;
        ne += f.dim(e);
    }
    std::vector<std::vector<Rational>> d(ne, std::vector<Rational>(nv, 0));
    for (auto v : verts)
        for (auto e : a.covers_up(v)) {
            const bool right_end = a.cell(v).sample[0] > a.cell(e).sample[0];
            const auto& m = f.map(v, e);
            for (std::size_t r = 0; r < m.rows(); ++r)
                for (std::size_t c = 0; c < m.cols(); ++c)
                    d[eoff[e] + r][voff[v] + c] += right_end ? m(r, c) : -m(r, c);
        }
    const std::size_t rk = (ne && nv) ? rank_q(d) : 0;
    GradedDims out;
    out.add(0, nv - rk);
    out.add(1, ne - rk);
    return out;
}

} // namespace oracle
