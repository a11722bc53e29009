#pragma once

#include "tccc/lattice_fan.hpp"
#include "tccc/polyhedron.hpp"

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <vector>

namespace tccc {

/// The locus <x, normal> = offset, normal primitive with positive leading entry.
struct Hyperplane {
    LatticeVector normal;
    Rational offset;

    /// Normalizes an arbitrary nonzero integer normal.
    static Hyperplane make(const LatticeVector& normal, const Rational& offset);
    Rational eval(const RationalVector& x) const { return pairing(x, normal) - offset; }

    friend bool operator==(const Hyperplane&, const Hyperplane&) = default;
    friend bool operator<(const Hyperplane& a, const Hyperplane& b)
    {
        if (a.normal == b.normal)
            return a.offset < b.offset;
        return a.normal < b.normal;
    }
};

/// Product of open rational intervals.
struct Box {
    std::vector<Rational> lo;
    std::vector<Rational> hi;

    std::size_t dim() const { return lo.size(); }
    bool empty() const;
    bool contains(const RationalVector& x) const; // strict
    RationalVector center() const;
    Box inflated(const Rational& margin) const;
    /// Smallest box with the given points on its closure.
    static Box hull(const std::vector<RationalVector>& points);
};

/// Relatively open cell: sign vector over the hyperplanes plus a sample point.
struct Cell {
    std::size_t id = 0;
    std::size_t dim = 0;
    std::vector<std::int8_t> signs;
    RationalVector sample;
};

class ArrangementComplex {
public:
    /// Throws InputError on an empty box or a dimension mismatch.
    static std::shared_ptr<const ArrangementComplex> build(std::vector<Hyperplane> hyperplanes, Box box);

    std::size_t dim() const { return box_.dim(); }
    const Box& box() const { return box_; }
    const std::vector<Hyperplane>& hyperplanes() const { return hyperplanes_; }
    const std::vector<Cell>& cells() const { return cells_; }
    const Cell& cell(std::size_t i) const { return cells_[i]; }
    std::size_t size() const { return cells_.size(); }

    /// Cell containing x. Throws OutOfDomain outside the open box.
    std::size_t locate(const RationalVector& x) const;
    /// c <= d iff c lies in the closure of d.
    bool leq(std::size_t c, std::size_t d) const;
    /// Cells d >= c, including c, in increasing id order.
    const std::vector<std::size_t>& above(std::size_t c) const { return above_[c]; }
    /// Cells c <= d, including d.
    const std::vector<std::size_t>& below(std::size_t d) const { return below_[d]; }
    /// Covering pairs c < d with dim d = dim c + 1.
    const std::vector<std::size_t>& covers_up(std::size_t c) const { return covers_up_[c]; }
    const std::vector<std::size_t>& covers_down(std::size_t d) const { return covers_down_[d]; }

    /// Index of a hyperplane, or npos.
    std::size_t find_hyperplane(const Hyperplane& h) const;
    /// True iff every facet of the system is an arrangement hyperplane.
    bool aligned(const ConstraintSystem& system) const;

    /// Cells inside a closed polyhedron (Eq/Ge rows). Throws RefinementRequired.
    std::vector<bool> closed_cells_of(const ConstraintSystem& q) const;
    /// Cells inside an open polyhedron (Gt rows, optional Eq rows). Throws RefinementRequired.
    std::vector<bool> open_cells_of(const ConstraintSystem& u) const;

    /// Closed polyhedral description of the closure of a cell (box walls omitted).
    ConstraintSystem closure_constraints(std::size_t c) const;

    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

private:
    ArrangementComplex() = default;

    Box box_;
    std::vector<Hyperplane> hyperplanes_;
    std::vector<Cell> cells_;
    std::map<std::vector<std::int8_t>, std::size_t> by_signs_;
    std::vector<std::vector<std::size_t>> above_;
    std::vector<std::vector<std::size_t>> below_;
    std::vector<std::vector<std::size_t>> covers_up_;
    std::vector<std::vector<std::size_t>> covers_down_;
};

using ArrangementPtr = std::shared_ptr<const ArrangementComplex>;

} // namespace tccc
