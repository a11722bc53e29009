#pragma once

#include "tccc/rational.hpp"

#include <cstddef>
#include <initializer_list>
#include <memory>
#include <string>
#include <vector>

namespace tccc {

/// Coordinate tuple tagged with the lattice or vector space it lives in.
template <typename Scalar, typename Tag>
class CoordVector {
public:
    CoordVector() = default;
    explicit CoordVector(std::size_t n) : coords_(n, Scalar(0)) {}
    explicit CoordVector(std::vector<Scalar> coords) : coords_(std::move(coords)) {}
    CoordVector(std::initializer_list<long> values)
    {
        for (long v : values)
            coords_.emplace_back(v);
    }

    std::size_t size() const { return coords_.size(); }
    Scalar& operator[](std::size_t i) { return coords_[i]; }
    const Scalar& operator[](std::size_t i) const { return coords_[i]; }
    const std::vector<Scalar>& coords() const { return coords_; }

    bool is_zero() const
    {
        for (const auto& c : coords_)
            if (c != 0)
                return false;
        return true;
    }

    CoordVector& operator+=(const CoordVector& o)
    {
        for (std::size_t i = 0; i < size(); ++i)
            coords_[i] += o.coords_[i];
        return *this;
    }
    CoordVector& operator-=(const CoordVector& o)
    {
        for (std::size_t i = 0; i < size(); ++i)
            coords_[i] -= o.coords_[i];
        return *this;
    }
    friend CoordVector operator+(CoordVector a, const CoordVector& b) { return a += b; }
    friend CoordVector operator-(CoordVector a, const CoordVector& b) { return a -= b; }
    friend CoordVector operator-(CoordVector a)
    {
        for (auto& c : a.coords_)
            c = -c;
        return a;
    }
    friend bool operator==(const CoordVector&, const CoordVector&) = default;
    friend bool operator<(const CoordVector& a, const CoordVector& b) { return a.coords_ < b.coords_; }

private:
    std::vector<Scalar> coords_;
};

struct LatticeTag;
struct RealTag;

/// Element of N or M (integer coordinates).
using LatticeVector = CoordVector<Integer, LatticeTag>;
/// Element of M_R or N_R (exact rational coordinates).
using RationalVector = CoordVector<Rational, RealTag>;

RationalVector to_rational(const LatticeVector& v);
Rational pairing(const RationalVector& x, const LatticeVector& v);
Rational pairing(const RationalVector& x, const RationalVector& y);
Integer pairing(const LatticeVector& m, const LatticeVector& v);
bool is_primitive(const LatticeVector& v);
bool is_lattice_point(const RationalVector& x);
LatticeVector to_lattice(const RationalVector& x); // requires is_lattice_point
std::string to_string(const RationalVector& x);

/// Simplicial cone given by a sorted subset of the fan's rays.
struct Cone {
    std::vector<std::size_t> rays;
    std::vector<LatticeVector> generators;

    std::size_t dim() const { return rays.size(); }
    friend bool operator==(const Cone& a, const Cone& b) { return a.rays == b.rays; }
};

/// H-representation of the dual cone: x in dual iff <x, v> >= 0 for every v.
/// Throws UnsupportedCone for non-simplicial or non-smooth cones.
std::vector<LatticeVector> dual_cone(const Cone& c);

/// Generators of the dual of a full-dimensional smooth cone (the dual basis).
std::vector<LatticeVector> dual_generators(const Cone& c, std::size_t dim);

/// Every face of a simplicial cone, the zero cone first and c itself last.
std::vector<Cone> faces(const Cone& c);

/// True iff p lies in the cone (generators must be independent).
bool cone_contains(const Cone& c, const RationalVector& p);

struct WallPair {
    std::size_t wall;  // index of an (n-1)-cone
    std::size_t first; // indices of the two incident maximal cones
    std::size_t second;
};

/// A simplicial fan with its full face poset. Immutable after creation.
class Fan {
public:
    /// Validates primitivity and simplicity and derives every face.
    static std::shared_ptr<const Fan> create(std::string name, std::size_t dim, std::vector<LatticeVector> rays,
                                             std::vector<std::vector<std::size_t>> max_cones);

    const std::string& name() const { return name_; }
    std::size_t dim() const { return dim_; }
    const std::vector<LatticeVector>& rays() const { return rays_; }
    const LatticeVector& ray(std::size_t i) const { return rays_[i]; }

    /// All cones sorted by dimension, then lexicographically; index 0 is {0}.
    const std::vector<Cone>& cones() const { return cones_; }
    const Cone& cone(std::size_t i) const { return cones_[i]; }
    const std::vector<std::size_t>& cones_of_dim(std::size_t k) const { return by_dim_.at(k); }
    /// Index of the cone spanned by the given sorted rays, or npos.
    std::size_t find_cone(const std::vector<std::size_t>& rays) const;
    /// Maximal cones (with respect to inclusion), as cone indices.
    const std::vector<std::size_t>& maximal_cones() const { return maximal_; }
    /// The cone of a single ray.
    std::size_t ray_cone(std::size_t ray) const { return ray_cone_[ray]; }
    /// Position of a full-dimensional cone within cones_of_dim(dim).
    std::size_t top_position(std::size_t cone_index) const;

    /// Cached predicates (see is_smooth / is_complete).
    bool smooth() const { return smooth_; }
    bool complete() const { return complete_; }
    /// Dual basis of the full-dimensional cone at the given top position,
    /// ordered like its rays. Empty unless the fan is smooth.
    const std::vector<LatticeVector>& dual_basis(std::size_t top_position) const { return dual_bases_.at(top_position); }

    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

private:
    Fan() = default;

    std::string name_;
    std::size_t dim_ = 0;
    std::vector<LatticeVector> rays_;
    std::vector<Cone> cones_;
    std::vector<std::vector<std::size_t>> by_dim_;
    std::vector<std::size_t> maximal_;
    std::vector<std::size_t> ray_cone_;
    bool smooth_ = false;
    bool complete_ = false;
    std::vector<std::vector<LatticeVector>> dual_bases_;
};

using FanPtr = std::shared_ptr<const Fan>;

bool is_smooth(const Fan& f);
bool is_complete(const Fan& f);
/// Each (n-1)-cone with its two maximal cones. Throws IncompleteFan.
std::vector<WallPair> wall_pairs(const Fan& f);
/// A full-dimensional cone containing p (fan must be complete).
std::size_t locate_in_fan(const Fan& f, const RationalVector& p);

/// Built-in fans: "P1", "P2", "P1xP1", "F2", "F3". Cached, so repeated calls share a pointer.
FanPtr named_fan(const std::string& name);
std::vector<std::string> named_fan_names();

/// Same object, or same rays and maximal cones.
bool same_fan(const Fan& a, const Fan& b);

} // namespace tccc
