#include "tccc/arrangement.hpp"

#include "tccc/errors.hpp"
#include "tccc/linalg.hpp"

#include <algorithm>

namespace tccc {

Hyperplane Hyperplane::make(const LatticeVector& normal, const Rational& offset)
{
    if (normal.is_zero())
        throw InputError("hyperplane with zero normal");
    Integer g = 0;
    for (std::size_t i = 0; i < normal.size(); ++i)
        g = boost::multiprecision::gcd(g, normal[i]);
    std::size_t lead = 0;
    while (normal[lead] == 0)
        ++lead;
    if (normal[lead] < 0)
        g = -g;
    Hyperplane h;
    h.normal = LatticeVector(normal.size());
    for (std::size_t i = 0; i < normal.size(); ++i)
        h.normal[i] = normal[i] / g;
    h.offset = offset / Rational(g);
    return h;
}

bool Box::empty() const
{
    for (std::size_t i = 0; i < lo.size(); ++i)
        if (!(lo[i] < hi[i]))
            return true;
    return false;
}

bool Box::contains(const RationalVector& x) const
{
    if (x.size() != dim())
        return false;
    for (std::size_t i = 0; i < dim(); ++i)
        if (!(lo[i] < x[i] && x[i] < hi[i]))
            return false;
    return true;
}

RationalVector Box::center() const
{
    RationalVector c(dim());
    for (std::size_t i = 0; i < dim(); ++i)
        c[i] = (lo[i] + hi[i]) / 2;
    return c;
}

Box Box::inflated(const Rational& margin) const
{
    Box b = *this;
    for (std::size_t i = 0; i < dim(); ++i) {
        b.lo[i] -= margin;
        b.hi[i] += margin;
    }
    return b;
}

Box Box::hull(const std::vector<RationalVector>& points)
{
    if (points.empty())
        throw Error("Box::hull of no points");
    Box b;
    b.lo = points.front().coords();
    b.hi = points.front().coords();
    for (const auto& p : points)
        for (std::size_t i = 0; i < p.size(); ++i) {
            b.lo[i] = std::min(b.lo[i], p[i]);
            b.hi[i] = std::max(b.hi[i], p[i]);
        }
    return b;
}

namespace {

ConstraintSystem box_constraints(const Box& box)
{
    ConstraintSystem sys;
    const std::size_t n = box.dim();
    for (std::size_t i = 0; i < n; ++i) {
        LinearConstraint lo{std::vector<Rational>(n, Rational(0)), box.lo[i], Relation::Gt};
        lo.coeffs[i] = 1;
        LinearConstraint hi{std::vector<Rational>(n, Rational(0)), -box.hi[i], Relation::Gt};
        hi.coeffs[i] = -1;
        sys.push_back(std::move(lo));
        sys.push_back(std::move(hi));
    }
    return sys;
}

LinearConstraint sign_constraint(const Hyperplane& h, int sign)
{
    LinearConstraint c;
    c.coeffs.reserve(h.normal.size());
    for (std::size_t i = 0; i < h.normal.size(); ++i)
        c.coeffs.emplace_back(sign < 0 ? Rational(-h.normal[i]) : Rational(h.normal[i]));
    c.rhs = sign < 0 ? Rational(-h.offset) : h.offset;
    c.rel = sign == 0 ? Relation::Eq : Relation::Gt;
    return c;
}

int sign_of(const Rational& v)
{
    return v > 0 ? 1 : (v < 0 ? -1 : 0);
}

struct Piece {
    std::vector<std::int8_t> signs;
    RationalVector sample;
};

// Normalized hyperplane of a constraint row, or nullopt for a constant row.
std::optional<std::pair<Hyperplane, bool>> row_hyperplane(const LinearConstraint& row)
{
    Integer lcm = 1;
    bool nonzero = false;
    for (const auto& c : row.coeffs) {
        if (c != 0)
            nonzero = true;
        const Integer den = denominator_of(c);
        lcm = lcm / boost::multiprecision::gcd(lcm, den) * den;
    }
    if (!nonzero)
        return std::nullopt;
    LatticeVector n(row.coeffs.size());
    for (std::size_t i = 0; i < row.coeffs.size(); ++i)
        n[i] = numerator_of(row.coeffs[i] * Rational(lcm));
    const Hyperplane h = Hyperplane::make(n, row.rhs * Rational(lcm));
    // flipped when normalization reversed the direction
    Integer lead = 0;
    for (std::size_t i = 0; i < n.size() && lead == 0; ++i)
        lead = n[i];
    return std::make_pair(h, lead < 0);
}

} // namespace

std::shared_ptr<const ArrangementComplex> ArrangementComplex::build(std::vector<Hyperplane> hyperplanes, Box box)
{
    if (box.dim() == 0)
        throw InputError("arrangement box has dimension zero");
    if (box.empty())
        throw InputError("arrangement box is empty");
    for (auto& h : hyperplanes) {
        if (h.normal.size() != box.dim())
            throw InputError("hyperplane dimension does not match the box");
        h = Hyperplane::make(h.normal, h.offset);
    }
    std::sort(hyperplanes.begin(), hyperplanes.end());
    hyperplanes.erase(std::unique(hyperplanes.begin(), hyperplanes.end()), hyperplanes.end());

    // Drop hyperplanes that miss the open box.
    const ConstraintSystem walls = box_constraints(box);
    const std::size_t n = box.dim();
    {
        std::vector<Hyperplane> kept;
        for (const auto& h : hyperplanes) {
            ConstraintSystem sys = walls;
            sys.push_back(sign_constraint(h, 0));
            if (is_feasible(sys, n))
                kept.push_back(h);
        }
        hyperplanes = std::move(kept);
    }

    std::vector<Piece> pieces{{{}, box.center()}};
    for (std::size_t k = 0; k < hyperplanes.size(); ++k) {
        const Hyperplane& h = hyperplanes[k];
        std::vector<Piece> next;
        next.reserve(pieces.size() * 2);
        for (auto& piece : pieces) {
            ConstraintSystem sys = walls;
            for (std::size_t j = 0; j < k; ++j)
                sys.push_back(sign_constraint(hyperplanes[j], piece.signs[j]));
            auto with = [&](int s) {
                ConstraintSystem full = sys;
                full.push_back(sign_constraint(h, s));
                return find_point(full, n);
            };
            auto emit = [&](int s, RationalVector sample) {
                Piece p{piece.signs, std::move(sample)};
                p.signs.push_back(static_cast<std::int8_t>(s));
                next.push_back(std::move(p));
            };
            const int here = sign_of(h.eval(piece.sample));
            if (here == 0) {
                const auto plus = with(1);
                if (!plus) {
                    emit(0, piece.sample);
                    continue;
                }
                // The sample is relatively interior, so the cell crosses h.
                const auto m = with(-1);
                emit(-1, RationalVector(*m));
                emit(0, piece.sample);
                emit(1, RationalVector(*plus));
                continue;
            }
            const auto other = with(-here);
            if (!other) {
                emit(here, piece.sample);
                continue;
            }
            const auto zero = with(0);
            emit(-1, RationalVector(here < 0 ? piece.sample.coords() : *other));
            emit(0, RationalVector(*zero));
            emit(1, RationalVector(here > 0 ? piece.sample.coords() : *other));
        }
        pieces = std::move(next);
    }

    auto a = std::shared_ptr<ArrangementComplex>(new ArrangementComplex());
    a->box_ = std::move(box);
    a->hyperplanes_ = std::move(hyperplanes);

    for (auto& p : pieces) {
        Cell c;
        std::size_t zeros = 0;
        Matrix eqs;
        std::vector<std::size_t> zero_rows;
        for (std::size_t j = 0; j < p.signs.size(); ++j)
            if (p.signs[j] == 0)
                zero_rows.push_back(j);
        if (!zero_rows.empty()) {
            eqs = Matrix(zero_rows.size(), n);
            for (std::size_t r = 0; r < zero_rows.size(); ++r)
                for (std::size_t i = 0; i < n; ++i)
                    eqs(r, i) = Rational(a->hyperplanes_[zero_rows[r]].normal[i]);
            zeros = rank(eqs);
        }
        c.dim = n - zeros;
        c.signs = std::move(p.signs);
        c.sample = std::move(p.sample);
        a->cells_.push_back(std::move(c));
    }
    std::stable_sort(a->cells_.begin(), a->cells_.end(), [](const Cell& x, const Cell& y) {
        if (x.dim != y.dim)
            return x.dim < y.dim;
        return x.signs < y.signs;
    });
    for (std::size_t i = 0; i < a->cells_.size(); ++i) {
        a->cells_[i].id = i;
        a->by_signs_[a->cells_[i].signs] = i;
    }

    const std::size_t count = a->cells_.size();
    a->above_.assign(count, {});
    a->below_.assign(count, {});
    a->covers_up_.assign(count, {});
    a->covers_down_.assign(count, {});
    for (std::size_t c = 0; c < count; ++c)
        for (std::size_t d = 0; d < count; ++d) {
            if (a->cells_[d].dim < a->cells_[c].dim)
                continue;
            if (!a->leq(c, d))
                continue;
            a->above_[c].push_back(d);
            a->below_[d].push_back(c);
            if (a->cells_[d].dim == a->cells_[c].dim + 1) {
                a->covers_up_[c].push_back(d);
                a->covers_down_[d].push_back(c);
            }
        }
    for (auto& b : a->below_)
        std::sort(b.begin(), b.end());
    return a;
}

bool ArrangementComplex::leq(std::size_t c, std::size_t d) const
{
    const auto& sc = cells_[c].signs;
    const auto& sd = cells_[d].signs;
    for (std::size_t i = 0; i < sc.size(); ++i)
        if (sc[i] != 0 && sc[i] != sd[i])
            return false;
    return true;
}

std::size_t ArrangementComplex::locate(const RationalVector& x) const
{
    if (!box_.contains(x))
        throw OutOfDomain("point " + to_string(x) + " is outside the arrangement box");
    std::vector<std::int8_t> s;
    s.reserve(hyperplanes_.size());
    for (const auto& h : hyperplanes_)
        s.push_back(static_cast<std::int8_t>(sign_of(h.eval(x))));
    const auto it = by_signs_.find(s);
    if (it == by_signs_.end())
        throw Error("locate: sign vector without a cell");
    return it->second;
}

std::size_t ArrangementComplex::find_hyperplane(const Hyperplane& h) const
{
    const auto it = std::lower_bound(hyperplanes_.begin(), hyperplanes_.end(), h);
    if (it == hyperplanes_.end() || !(*it == h))
        return npos;
    return static_cast<std::size_t>(it - hyperplanes_.begin());
}

bool ArrangementComplex::aligned(const ConstraintSystem& system) const
{
    const ConstraintSystem walls = box_constraints(box_);
    for (const auto& row : system) {
        const auto h = row_hyperplane(row);
        if (!h || find_hyperplane(h->first) != npos)
            continue;
        // A hyperplane missing the open box cannot split any cell.
        ConstraintSystem sys = walls;
        sys.push_back(sign_constraint(h->first, 0));
        if (is_feasible(sys, dim()))
            return false;
    }
    return true;
}

std::vector<bool> ArrangementComplex::closed_cells_of(const ConstraintSystem& q) const
{
    for (const auto& row : q)
        if (row.rel == Relation::Gt)
            throw Error("closed_cells_of: strict constraint in a closed polyhedron");
    if (!aligned(q))
        throw RefinementRequired("closed polyhedron is not aligned to the arrangement");
    std::vector<bool> mask(cells_.size());
    for (std::size_t c = 0; c < cells_.size(); ++c) {
        const auto& x = cells_[c].sample.coords();
        mask[c] = std::all_of(q.begin(), q.end(), [&](const LinearConstraint& r) { return r.satisfied_by(x); });
    }
    return mask;
}

std::vector<bool> ArrangementComplex::open_cells_of(const ConstraintSystem& u) const
{
    for (const auto& row : u)
        if (row.rel == Relation::Ge)
            throw Error("open_cells_of: non-strict inequality in an open polyhedron");
    if (!aligned(u))
        throw RefinementRequired("open polyhedron is not aligned to the arrangement");
    std::vector<bool> mask(cells_.size());
    for (std::size_t c = 0; c < cells_.size(); ++c) {
        const auto& x = cells_[c].sample.coords();
        mask[c] = std::all_of(u.begin(), u.end(), [&](const LinearConstraint& r) { return r.satisfied_by(x); });
    }
    return mask;
}

ConstraintSystem ArrangementComplex::closure_constraints(std::size_t c) const
{
    ConstraintSystem sys;
    const auto& s = cells_[c].signs;
    for (std::size_t j = 0; j < s.size(); ++j) {
        auto row = sign_constraint(hyperplanes_[j], s[j]);
        if (row.rel == Relation::Gt)
            row.rel = Relation::Ge;
        sys.push_back(std::move(row));
    }
    return sys;
}

} // namespace tccc
