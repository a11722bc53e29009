#pragma once

#include "tccc/lattice_fan.hpp"

#include <cstddef>
#include <vector>

namespace tccc {

/// Toric divisor sum a_rho D_rho with its twisted polytope (one vertex per
/// full-dimensional cone) and support function.
class Divisor {
public:
    Divisor() = default;

    /// Solves the vertices from the coefficients. Requires a smooth complete fan.
    static Divisor from_coeffs(FanPtr fan, std::vector<Rational> coeffs);

    const FanPtr& fan() const { return fan_; }
    const std::vector<Rational>& coeffs() const { return coeffs_; }
    const Rational& coeff(std::size_t ray) const { return coeffs_[ray]; }

    /// Vertex chi_sigma, indexed by position in fan().cones_of_dim(n).
    const std::vector<RationalVector>& vertices() const { return vertices_; }
    const RationalVector& vertex(std::size_t top_position) const { return vertices_[top_position]; }
    /// chi_sigma for any cone, represented by the vertex of a containing maximal cone.
    const RationalVector& apex(std::size_t cone_index) const;

    bool is_integral() const;

    friend bool operator==(const Divisor& a, const Divisor& b) { return a.coeffs_ == b.coeffs_; }

private:
    FanPtr fan_;
    std::vector<Rational> coeffs_;
    std::vector<RationalVector> vertices_;
    std::vector<std::size_t> apex_of_; // cone index -> top position
};

Divisor operator+(const Divisor& a, const Divisor& b);
Divisor operator-(const Divisor& a, const Divisor& b);
Divisor operator-(const Divisor& a);
Divisor scaled(const Divisor& d, const Rational& k);
Divisor zero_divisor(FanPtr fan);
/// The divisor sum D_rho with every coefficient equal to one (anticanonical).
Divisor anticanonical(FanPtr fan);

/// Piecewise-linear support function phi_D.
Rational support_value(const Divisor& d, const RationalVector& v);

bool is_convex(const Divisor& d);
bool is_strictly_convex(const Divisor& d);

/// Open polytope {x : <x, v_rho> < a_rho} of an ample divisor.
struct AmplePolytope {
    std::vector<LatticeVector> normals;
    std::vector<Rational> bounds;
    std::vector<RationalVector> vertices;

    bool contains(const RationalVector& x) const;        // open polytope
    bool closure_contains(const RationalVector& x) const; // closed polytope
};
/// Throws AmpleRequired unless d is strictly convex.
AmplePolytope ample_polytope(const Divisor& d);

/// D_[x]: coefficients floor(<x, v_rho>) + 1.
Divisor probe_divisor(FanPtr fan, const RationalVector& x);

/// chi -> chi + m; a_rho -> a_rho + <m, v_rho>.
Divisor translate(const Divisor& d, const LatticeVector& m);
Divisor translate(const Divisor& d, const RationalVector& m);

/// Representative coefficients of the class in Q^{rays} / M: the divisor is
/// translated so that its first vertex sits at the origin.
std::vector<Rational> class_key(const Divisor& d);
/// True iff a - b = <m, v_rho> for an integer m.
bool linearly_equivalent(const Divisor& a, const Divisor& b);

/// First strictly convex divisor with coefficients in 1..max_coeff.
Divisor find_ample(FanPtr fan, int max_coeff = 3);

/// Affine family a_{rho,s} = (1 - s) a_{rho,0} + s a_{rho,1}.
struct DeformationPath {
    FanPtr fan;
    RationalVector x;
    Divisor ample;
    Rational eps0;
    long R = 0;
    std::vector<Rational> start;
    std::vector<Rational> end;

    Rational coeff(std::size_t ray, const Rational& s) const;
    Divisor at(const Rational& s) const;
};

/// The family with a_{rho,0} = <x,v> + (R + eps0) a_rho and a_{rho,1} = floor(<x,v>) + 1 + R a_rho.
DeformationPath make_deformation_path(FanPtr fan, const RationalVector& x, const Divisor& ample, Rational eps0,
                                      long R);

/// Chooses eps0 and the least R >= 1 with D_[x] + R A strictly convex.
/// Throws AmpleRequired for a bad reference, PathConstructionError past max_R.
DeformationPath build_deformation_path(FanPtr fan, const RationalVector& x, const Divisor& ample, long max_R = 64);

Rational default_eps0(const Fan& fan, const RationalVector& x, const Divisor& ample);

} // namespace tccc
