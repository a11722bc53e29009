#pragma once

#include "tccc/arrangement.hpp"
#include "tccc/linalg.hpp"
#include "tccc/polyhedron.hpp"

#include <cstddef>
#include <map>
#include <string>
#include <vector>

namespace tccc {

/// Dimension per degree. Zero entries are never stored.
class GradedDims {
public:
    GradedDims() = default;
    GradedDims(std::initializer_list<std::pair<const int, std::size_t>> init);

    std::size_t at(int degree) const;
    void add(int degree, std::size_t dim);
    const std::map<int, std::size_t>& dims() const { return dims_; }
    bool is_zero() const { return dims_.empty(); }
    std::size_t total() const;
    long euler() const;
    GradedDims shifted(int k) const; // (shifted(k)).at(d) == at(d + k)
    bool within(int lo, int hi) const;

    friend bool operator==(const GradedDims&, const GradedDims&) = default;
    friend GradedDims operator+(GradedDims a, const GradedDims& b);

private:
    std::map<int, std::size_t> dims_;
};

std::string to_string(const GradedDims& g);

/// Functor on the face poset: a space per cell and a map c -> d for every
/// covering pair c < d.
class CellularSheaf {
public:
    CellularSheaf() = default;
    explicit CellularSheaf(ArrangementPtr arrangement);

    const ArrangementPtr& arrangement() const { return arrangement_; }
    std::size_t dim(std::size_t cell) const { return dims_[cell]; }
    const std::vector<std::size_t>& dims() const { return dims_; }
    bool is_zero() const;

    void set_dim(std::size_t cell, std::size_t d);
    /// Map along a covering pair c < d, of shape dim(d) x dim(c).
    void set_map(std::size_t c, std::size_t d, Matrix m);
    const Matrix& map(std::size_t c, std::size_t d) const;
    /// Composite along any saturated chain from c up to d (c <= d).
    Matrix restriction(std::size_t c, std::size_t d) const;

    /// Throws Error when some length-two diamond fails to commute or a shape is wrong.
    void check_functorial() const;

private:
    ArrangementPtr arrangement_;
    std::vector<std::size_t> dims_;
    std::vector<std::vector<Matrix>> up_maps_; // aligned with covers_up(c)
};

CellularSheaf zero_sheaf(ArrangementPtr a);
CellularSheaf constant_sheaf(ArrangementPtr a);
/// i_* of the constant sheaf on a closed aligned polyhedron.
CellularSheaf constant_on_closed(ArrangementPtr a, const ConstraintSystem& q);
/// j_! of the constant sheaf on an open aligned polyhedron.
CellularSheaf costandard_on_open(ArrangementPtr a, const ConstraintSystem& u);
/// j_* of the constant sheaf on one cell: C on every cell in its closure.
CellularSheaf standard_on_cell(ArrangementPtr a, std::size_t cell);
/// j_! of the constant sheaf on one cell.
CellularSheaf costandard_on_cell(ArrangementPtr a, std::size_t cell);
/// Same stalks as f on the masked open set, zero elsewhere (j_! j^*).
CellularSheaf extend_by_zero(const CellularSheaf& f, const std::vector<bool>& open_mask);
/// Same stalks as f on the masked closed set, zero elsewhere (i_* i^*).
CellularSheaf restrict_to_closed(const CellularSheaf& f, const std::vector<bool>& closed_mask);

/// Bounded complex of cellular sheaves on one arrangement.
class SheafComplex {
public:
    SheafComplex() = default;
    explicit SheafComplex(ArrangementPtr arrangement) : arrangement_(std::move(arrangement)) {}
    /// A single sheaf placed in one degree.
    static SheafComplex single(CellularSheaf f, int degree = 0);

    const ArrangementPtr& arrangement() const { return arrangement_; }
    const std::map<int, CellularSheaf>& terms() const { return terms_; }
    /// Zero sheaf when the degree is empty.
    const CellularSheaf& term(int degree) const;
    void set_term(int degree, CellularSheaf f);

    /// Differential d^k at a cell: matrix of shape dim F^{k+1}(c) x dim F^k(c).
    const Matrix& differential(int degree, std::size_t cell) const;
    void set_differential(int degree, std::size_t cell, Matrix m);

    int min_degree() const;
    int max_degree() const;

    /// d o d = 0 and commutation with structure maps. Throws NotAChainMap / Error.
    void validate() const;

private:
    ArrangementPtr arrangement_;
    std::map<int, CellularSheaf> terms_;
    std::map<int, std::vector<Matrix>> differentials_;
    CellularSheaf zero_;
    Matrix empty_;
};

/// Degreewise, cellwise morphism of complexes.
struct ChainMap {
    const SheafComplex* source = nullptr;
    const SheafComplex* target = nullptr;
    std::map<int, std::vector<Matrix>> components; // degree -> per cell

    Matrix at(int degree, std::size_t cell) const;
    /// Throws NotAChainMap unless the map commutes with structure maps and differentials.
    void validate() const;
};

SheafComplex shift(const SheafComplex& f, int k);
/// Mapping cone: degree k term F^{k+1} + G^k, d = [[-d_F, 0], [phi, d_G]].
SheafComplex cone(const ChainMap& phi);
SheafComplex direct_sum(const std::vector<SheafComplex>& fs);
ChainMap identity_map(const SheafComplex& f);

/// Cohomology of the stalk complex at the cell containing x.
GradedDims stalk(const SheafComplex& f, const RationalVector& x);
GradedDims stalk_at_cell(const SheafComplex& f, std::size_t cell);

/// Derived hom, computed with the chain (elementary injective) resolution of g.
GradedDims hom_complex(const SheafComplex& f, const SheafComplex& g);
/// Hypercohomology over the open box.
GradedDims cohomology(const SheafComplex& f);

/// Complex of constant sheaves on closed convex blocks with scalar differentials.
struct BlockComplex {
    struct Block {
        int degree = 0;
        ConstraintSystem region; // closed polyhedron (Eq / Ge rows)
    };
    struct Entry {
        std::size_t from; // block index, degree k
        std::size_t to;   // block index, degree k + 1
        Rational coeff;
    };
    std::size_t dim = 0;
    std::vector<Block> blocks;
    std::vector<Entry> entries;

    /// Cellular realization; each region must be aligned to the arrangement.
    SheafComplex realize(ArrangementPtr a) const;
};

/// Euler characteristic of the stalk of the convolution f * g at x, summed
/// over block pairs with compactly supported Euler characteristics.
long convolution_euler_stalk(const BlockComplex& f, const BlockComplex& g, const RationalVector& x);

} // namespace tccc
