#pragma once

#include "tccc/arrangement.hpp"
#include "tccc/cellular.hpp"
#include "tccc/divisors.hpp"

#include <cstddef>
#include <vector>

namespace tccc {

/// Constant sheaf on the closed region {x : <x, v_rho> >= a_rho, rho in sigma}.
struct Shard {
    std::size_t cone = 0; // index into the fan's cones
    int degree = 0;       // -n + dim sigma
    ConstraintSystem region;

    bool contains(const RationalVector& x) const;
};

/// Signed chain complex of shards, one per cone, in degrees -n .. 0.
struct ShardComplex {
    struct Incidence {
        std::size_t from; // shard of a facet tau of sigma
        std::size_t to;   // shard of sigma
        int sign;
    };

    Divisor chi;
    std::vector<Shard> shards; // same order as fan().cones()
    std::vector<Incidence> incidences;

    BlockComplex blocks() const;
};

/// (-1)^(j-1) where the facet omits the j-th ray (1-indexed) of sigma.
int incidence_sign(const Cone& facet, const Cone& sigma);

/// Throws Error if the signed incidences fail d o d = 0.
ShardComplex build_P(const Divisor& chi);

/// Cohomology of the nerve complex spanned by the shards containing x.
GradedDims stalk_P(const Divisor& chi, const RationalVector& x);

/// Facet hyperplanes of every shard, deduplicated.
std::vector<Hyperplane> required_hyperplanes(const Divisor& chi);

/// Bounding box of the vertices (closed), before any inflation.
Box vertex_box(const Divisor& chi);
/// vertex_box inflated by one on every side.
Box support_box(const Divisor& chi);

/// Arrangement of the required hyperplanes of several divisors inside a box.
ArrangementPtr arrangement_for(const std::vector<Divisor>& chis, const Box& box);

/// Degreewise realization on an arrangement that refines every shard.
SheafComplex to_cellular(const Divisor& chi, ArrangementPtr a);

/// True iff x lies in the closed convex hull of the vertices.
bool in_vertex_hull(const Divisor& chi, const RationalVector& x);
/// True iff the closed vertex hulls of two divisors meet.
bool vertex_hulls_meet(const Divisor& a, const Divisor& b);

/// Stalks at every cell sample point lie in degrees [-n, 0].
bool degree_bound_check(const Divisor& chi);
/// Stalks vanish at every cell sample point outside the vertex hull.
bool compact_support_check(const Divisor& chi);
/// P(-D) is C on the closed reflected polytope and P(D) is C[n] on the open one.
bool verdier_pair_check(const Divisor& d);

struct TranslateHom {
    LatticeVector m;
    GradedDims dims;
};

struct TorusHom {
    GradedDims total;
    std::vector<TranslateHom> per_translate; // nonzero terms only
    std::size_t translates_examined = 0;
};

/// Sum over lattice translates m of hom(P(chi1), P(chi2 + m)).
/// Throws Unsupported unless the fractional parts agree ray by ray.
TorusHom torus_hom(const Divisor& chi1, const Divisor& chi2);

} // namespace tccc
