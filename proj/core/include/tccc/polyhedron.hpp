#pragma once

#include "tccc/rational.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace tccc {

enum class Relation { Eq, Ge, Gt };

/// coeffs . x (rel) rhs
struct LinearConstraint {
    std::vector<Rational> coeffs;
    Rational rhs;
    Relation rel = Relation::Ge;

    bool satisfied_by(const std::vector<Rational>& x) const;
};

using ConstraintSystem = std::vector<LinearConstraint>;

/// A point satisfying every constraint, found by Fourier-Motzkin elimination
/// after substituting the equalities. Strict constraints are honoured, so the
/// point of a relatively open polyhedron lies in its relative interior.
std::optional<std::vector<Rational>> find_point(const ConstraintSystem& system, std::size_t dim);

inline bool is_feasible(const ConstraintSystem& system, std::size_t dim)
{
    return find_point(system, dim).has_value();
}

/// Compactly supported Euler characteristic of a closed polyhedron (only Eq
/// and Ge constraints): 0 when empty, (-1)^dim(lineality) when the polyhedron
/// is compact modulo its lineality space, and 0 otherwise.
int compact_euler(const ConstraintSystem& closed, std::size_t dim);

} // namespace tccc
