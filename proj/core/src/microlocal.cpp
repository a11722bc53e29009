#include "tccc/microlocal.hpp"

#include "tccc/errors.hpp"
#include "tccc/linalg.hpp"

#include <algorithm>

namespace tccc {

LambdaSigma lambda_sigma(FanPtr fan)
{
    LambdaSigma l;
    l.fan = fan;
    const std::size_t n = fan->dim();
    for (std::size_t c = 0; c < fan->cones().size(); ++c) {
        const Cone& sigma = fan->cone(c);
        LambdaPiece piece;
        piece.cone = c;
        if (sigma.dim() == 0) {
            for (std::size_t i = 0; i < n; ++i) {
                LatticeVector e(n);
                e[i] = 1;
                piece.perp_basis.push_back(std::move(e));
            }
        } else {
            IntegerMatrix v;
            for (const auto& g : sigma.generators)
                v.push_back(g.coords());
            const SmithForm snf = smith_normal_form(v);
            for (std::size_t col = snf.rank; col < n; ++col) {
                LatticeVector k(n);
                for (std::size_t i = 0; i < n; ++i)
                    k[i] = snf.v[i][col];
                piece.perp_basis.push_back(std::move(k));
            }
        }
        l.pieces.push_back(std::move(piece));
    }
    return l;
}

bool lambda_contains(const Fan& fan, const RationalVector& x, const RationalVector& p)
{
    for (const auto& sigma : fan.cones()) {
        if (!cone_contains(sigma, p))
            continue;
        if (sigma.dim() == 0)
            return true;
        IntegerMatrix v;
        std::vector<Rational> b;
        for (const auto& g : sigma.generators) {
            v.push_back(g.coords());
            b.push_back(pairing(x, g));
        }
        if (integer_solution(v, b))
            return true;
    }
    return false;
}

SSEstimate ss_estimate(const Divisor& chi)
{
    const Fan& fan = *chi.fan();
    SSEstimate e;
    for (std::size_t c = 0; c < fan.cones().size(); ++c)
        e.pieces.push_back({c, chi.apex(c), fan.dim() - fan.cone(c).dim()});
    return e;
}

DisjointnessReport disjoint_at_infinity(const Divisor& d)
{
    DisjointnessReport r;
    for (std::size_t i = 0; i < d.coeffs().size(); ++i)
        if (is_integer(d.coeff(i))) {
            r.verdict = Verdict::Unknown;
            r.rays = {i};
            return r;
        }
    r.verdict = Verdict::True;
    for (std::size_t i = 0; i < d.coeffs().size(); ++i)
        r.rays.push_back(i);
    return r;
}

PathCertificate validate_path(const DeformationPath& p)
{
    PathCertificate cert;
    const Fan& fan = *p.fan;
    auto fail = [&](std::string why) {
        if (cert.failure.empty())
            cert.failure = std::move(why);
    };
    for (std::size_t r = 0; r < fan.rays().size(); ++r) {
        RayBreakpoints rb;
        rb.ray = r;
        const Rational& a0 = p.start[r];
        const Rational& a1 = p.end[r];
        const Rational slope = a1 - a0;
        if (slope == 0) {
            if (is_integer(a0)) {
                rb.in_unit_interval = true;
                fail("ray " + std::to_string(r) + ": a_{rho,s} is the constant integer " + to_string(a0));
            }
        } else {
            Integer k = ceil(std::min(a0, a1));
            const Integer top = floor(std::max(a0, a1));
            for (; k <= top; ++k) {
                const Rational s = (Rational(k) - a0) / slope;
                rb.breakpoints.push_back(s);
                if (s > 0 && s < 1) {
                    rb.in_unit_interval = true;
                    fail("ray " + std::to_string(r) + ": a_{rho,s} = " + k.str() + " at s = " + to_string(s));
                }
            }
            std::sort(rb.breakpoints.begin(), rb.breakpoints.end());
        }

        const Rational t = pairing(p.x, fan.ray(r));
        const Rational& a = p.ample.coeff(r);
        const Rational lower = t + p.eps0 * a;
        const Rational upper = Rational(floor(t)) + 1;
        const Rational ra = Rational(p.R) * a;
        const Rational b0 = a0 - ra, b1 = a1 - ra;
        // an affine function is strictly above a bound on (0,1) iff it is
        // weakly above at both ends and strictly above at one of them
        rb.lower_ok = lower < upper && b0 >= lower && b1 >= lower && (b0 > lower || b1 > lower);
        rb.upper_ok = b0 <= upper && b1 <= upper && (b0 < upper || b1 < upper);
        if (!rb.lower_ok)
            fail("ray " + std::to_string(r) + ": lower sandwich bound fails");
        if (!rb.upper_ok)
            fail("ray " + std::to_string(r) + ": upper sandwich bound fails");
        cert.rays.push_back(std::move(rb));
    }
    for (const Rational& s : {Rational(0), Rational(1, 2), Rational(1)}) {
        if (!is_strictly_convex(p.at(s))) {
            cert.convex_at_samples = false;
            fail("D_s is not strictly convex at s = " + to_string(s));
        }
    }
    cert.pass = cert.failure.empty();
    return cert;
}

} // namespace tccc
