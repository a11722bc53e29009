#include "tccc/cellular.hpp"

#include "tccc/errors.hpp"

#include <algorithm>
#include <functional>
#include <tuple>
#include <type_traits>
#include <unordered_map>

namespace tccc {

GradedDims::GradedDims(std::initializer_list<std::pair<const int, std::size_t>> init)
{
    for (const auto& [d, k] : init)
        add(d, k);
}

std::size_t GradedDims::at(int degree) const
{
    const auto it = dims_.find(degree);
    return it == dims_.end() ? 0 : it->second;
}

void GradedDims::add(int degree, std::size_t dim)
{
    if (dim == 0)
        return;
    dims_[degree] += dim;
}

std::size_t GradedDims::total() const
{
    std::size_t t = 0;
    for (const auto& [d, k] : dims_)
        t += k;
    return t;
}

long GradedDims::euler() const
{
    long e = 0;
    for (const auto& [d, k] : dims_)
        e += (d % 2 == 0 ? 1 : -1) * static_cast<long>(k);
    return e;
}

GradedDims GradedDims::shifted(int k) const
{
    GradedDims g;
    for (const auto& [d, dim] : dims_)
        g.add(d - k, dim);
    return g;
}

bool GradedDims::within(int lo, int hi) const
{
    for (const auto& [d, k] : dims_)
        if (d < lo || d > hi)
            return false;
    return true;
}

GradedDims operator+(GradedDims a, const GradedDims& b)
{
    for (const auto& [d, k] : b.dims_)
        a.add(d, k);
    return a;
}

std::string to_string(const GradedDims& g)
{
    std::string s = "{";
    bool first = true;
    for (const auto& [d, k] : g.dims()) {
        if (!first)
            s += ", ";
        first = false;
        s += std::to_string(d) + ": " + std::to_string(k);
    }
    return s + "}";
}

// ---------------------------------------------------------------------------

CellularSheaf::CellularSheaf(ArrangementPtr arrangement) : arrangement_(std::move(arrangement))
{
    const std::size_t n = arrangement_->size();
    dims_.assign(n, 0);
    up_maps_.resize(n);
    for (std::size_t c = 0; c < n; ++c)
        up_maps_[c].assign(arrangement_->covers_up(c).size(), Matrix());
}

bool CellularSheaf::is_zero() const
{
    return std::all_of(dims_.begin(), dims_.end(), [](std::size_t d) { return d == 0; });
}

void CellularSheaf::set_dim(std::size_t cell, std::size_t d)
{
    dims_.at(cell) = d;
    for (std::size_t k = 0; k < up_maps_[cell].size(); ++k)
        up_maps_[cell][k] = Matrix(dims_[arrangement_->covers_up(cell)[k]], d);
    for (auto c : arrangement_->covers_down(cell)) {
        const auto& ups = arrangement_->covers_up(c);
        const auto k = static_cast<std::size_t>(std::find(ups.begin(), ups.end(), cell) - ups.begin());
        up_maps_[c][k] = Matrix(d, dims_[c]);
    }
}

namespace {

std::size_t cover_slot(const ArrangementComplex& a, std::size_t c, std::size_t d)
{
    const auto& ups = a.covers_up(c);
    const auto it = std::find(ups.begin(), ups.end(), d);
    if (it == ups.end())
        throw Error("cells " + std::to_string(c) + " < " + std::to_string(d) + " do not form a covering pair");
    return static_cast<std::size_t>(it - ups.begin());
}

} // namespace

void CellularSheaf::set_map(std::size_t c, std::size_t d, Matrix m)
{
    if (m.rows() != dims_[d] || m.cols() != dims_[c])
        throw Error("structure map has the wrong shape");
    up_maps_[c][cover_slot(*arrangement_, c, d)] = std::move(m);
}

const Matrix& CellularSheaf::map(std::size_t c, std::size_t d) const
{
    return up_maps_[c][cover_slot(*arrangement_, c, d)];
}

Matrix CellularSheaf::restriction(std::size_t c, std::size_t d) const
{
    if (c == d)
        return Matrix::identity(dims_[c]);
    const auto& ups = arrangement_->covers_up(c);
    for (std::size_t k = 0; k < ups.size(); ++k)
        if (arrangement_->leq(ups[k], d))
            return restriction(ups[k], d) * up_maps_[c][k];
    throw Error("restriction between incomparable cells");
}

void CellularSheaf::check_functorial() const
{
    const auto& a = *arrangement_;
    for (std::size_t c = 0; c < a.size(); ++c) {
        for (std::size_t k = 0; k < a.covers_up(c).size(); ++k) {
            const Matrix& m = up_maps_[c][k];
            if (m.rows() != dims_[a.covers_up(c)[k]] || m.cols() != dims_[c])
                throw Error("structure map shape mismatch at cell " + std::to_string(c));
        }
        // every pair of covers c < d1 < e, c < d2 < e
        std::map<std::size_t, Matrix> via;
        for (std::size_t k = 0; k < a.covers_up(c).size(); ++k) {
            const std::size_t d = a.covers_up(c)[k];
            for (std::size_t l = 0; l < a.covers_up(d).size(); ++l) {
                const std::size_t e = a.covers_up(d)[l];
                Matrix comp = up_maps_[d][l] * up_maps_[c][k];
                const auto it = via.find(e);
                if (it == via.end())
                    via.emplace(e, std::move(comp));
                else if (!(it->second == comp))
                    throw Error("functoriality fails on a diamond from cell " + std::to_string(c) + " to " +
                                std::to_string(e));
            }
        }
    }
}

CellularSheaf zero_sheaf(ArrangementPtr a)
{
    return CellularSheaf(std::move(a));
}

namespace {

// C on the masked cells, identity between masked covering pairs.
CellularSheaf masked_constant(ArrangementPtr a, const std::vector<bool>& mask)
{
    CellularSheaf f(a);
    for (std::size_t c = 0; c < a->size(); ++c)
        if (mask[c])
            f.set_dim(c, 1);
    for (std::size_t c = 0; c < a->size(); ++c) {
        if (!mask[c])
            continue;
        for (auto d : a->covers_up(c))
            if (mask[d])
                f.set_map(c, d, Matrix::identity(1));
    }
    return f;
}

} // namespace

CellularSheaf constant_sheaf(ArrangementPtr a)
{
    std::vector<bool> all(a->size(), true);
    return masked_constant(std::move(a), all);
}

CellularSheaf constant_on_closed(ArrangementPtr a, const ConstraintSystem& q)
{
    const auto mask = a->closed_cells_of(q);
    return masked_constant(std::move(a), mask);
}

CellularSheaf costandard_on_open(ArrangementPtr a, const ConstraintSystem& u)
{
    const auto mask = a->open_cells_of(u);
    return masked_constant(std::move(a), mask);
}

CellularSheaf standard_on_cell(ArrangementPtr a, std::size_t cell)
{
    std::vector<bool> mask(a->size(), false);
    for (auto c : a->below(cell))
        mask[c] = true;
    return masked_constant(std::move(a), mask);
}

CellularSheaf costandard_on_cell(ArrangementPtr a, std::size_t cell)
{
    std::vector<bool> mask(a->size(), false);
    mask[cell] = true;
    return masked_constant(std::move(a), mask);
}

CellularSheaf extend_by_zero(const CellularSheaf& f, const std::vector<bool>& open_mask)
{
    const auto& a = f.arrangement();
    CellularSheaf g(a);
    for (std::size_t c = 0; c < a->size(); ++c)
        if (open_mask[c])
            g.set_dim(c, f.dim(c));
    for (std::size_t c = 0; c < a->size(); ++c)
        if (open_mask[c])
            for (auto d : a->covers_up(c)) {
                if (!open_mask[d])
                    throw Error("extend_by_zero: mask is not open");
                g.set_map(c, d, f.map(c, d));
            }
    return g;
}

CellularSheaf restrict_to_closed(const CellularSheaf& f, const std::vector<bool>& closed_mask)
{
    const auto& a = f.arrangement();
    CellularSheaf g(a);
    for (std::size_t c = 0; c < a->size(); ++c)
        if (closed_mask[c])
            g.set_dim(c, f.dim(c));
    for (std::size_t c = 0; c < a->size(); ++c)
        if (closed_mask[c])
            for (auto d : a->covers_up(c))
                if (closed_mask[d])
                    g.set_map(c, d, f.map(c, d));
    return g;
}

// ---------------------------------------------------------------------------

SheafComplex SheafComplex::single(CellularSheaf f, int degree)
{
    SheafComplex c(f.arrangement());
    c.set_term(degree, std::move(f));
    return c;
}

const CellularSheaf& SheafComplex::term(int degree) const
{
    const auto it = terms_.find(degree);
    if (it != terms_.end())
        return it->second;
    return zero_;
}

void SheafComplex::set_term(int degree, CellularSheaf f)
{
    if (f.arrangement() != arrangement_)
        throw RefinementRequired("complex terms live on different arrangements");
    if (zero_.arrangement() == nullptr)
        zero_ = CellularSheaf(arrangement_);
    terms_[degree] = std::move(f);
    for (int k : {degree - 1, degree}) {
        auto& ds = differentials_[k];
        ds.resize(arrangement_->size());
        for (std::size_t c = 0; c < arrangement_->size(); ++c)
            if (ds[c].rows() != term(k + 1).dim(c) || ds[c].cols() != term(k).dim(c))
                ds[c] = Matrix(term(k + 1).dim(c), term(k).dim(c));
    }
}

const Matrix& SheafComplex::differential(int degree, std::size_t cell) const
{
    const auto it = differentials_.find(degree);
    if (it == differentials_.end())
        return empty_;
    return it->second[cell];
}

void SheafComplex::set_differential(int degree, std::size_t cell, Matrix m)
{
    if (m.rows() != term(degree + 1).dim(cell) || m.cols() != term(degree).dim(cell))
        throw Error("differential has the wrong shape");
    auto& ds = differentials_[degree];
    if (ds.empty()) {
        ds.assign(arrangement_->size(), Matrix());
        for (std::size_t c = 0; c < arrangement_->size(); ++c)
            ds[c] = Matrix(term(degree + 1).dim(c), term(degree).dim(c));
    }
    ds[cell] = std::move(m);
}

int SheafComplex::min_degree() const
{
    for (const auto& [d, f] : terms_)
        if (!f.is_zero())
            return d;
    return 0;
}

int SheafComplex::max_degree() const
{
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it)
        if (!it->second.is_zero())
            return it->first;
    return -1;
}

void SheafComplex::validate() const
{
    const auto& a = *arrangement_;
    for (const auto& [k, f] : terms_) {
        f.check_functorial();
        const auto& next = term(k + 1);
        for (std::size_t c = 0; c < a.size(); ++c) {
            const Matrix& dk = differential(k, c);
            if (dk.rows() == 0 || dk.cols() == 0)
                continue;
            if (!(differential(k + 1, c).cols() == 0 || (differential(k + 1, c) * dk).is_zero()))
                throw Error("d o d != 0 at degree " + std::to_string(k) + ", cell " + std::to_string(c));
            for (auto d : a.covers_up(c)) {
                const Matrix lhs = next.map(c, d) * dk;
                const Matrix& dd = differential(k, d);
                const Matrix rhs = dd.rows() == 0 || dd.cols() == 0 ? Matrix(lhs.rows(), lhs.cols())
                                                                    : dd * f.map(c, d);
                if (!(lhs == rhs))
                    throw NotAChainMap("differential does not commute with restriction at degree " +
                                       std::to_string(k) + ", cells " + std::to_string(c) + " < " +
                                       std::to_string(d));
            }
        }
    }
}

Matrix ChainMap::at(int degree, std::size_t cell) const
{
    const auto it = components.find(degree);
    if (it == components.end())
        return Matrix(target->term(degree).dim(cell), source->term(degree).dim(cell));
    return it->second[cell];
}

void ChainMap::validate() const
{
    if (source->arrangement() != target->arrangement())
        throw RefinementRequired("chain map between different arrangements");
    const auto& a = *source->arrangement();
    int lo = std::min(source->min_degree(), target->min_degree());
    int hi = std::max(source->max_degree(), target->max_degree());
    for (int k = lo; k <= hi; ++k)
        for (std::size_t c = 0; c < a.size(); ++c) {
            const Matrix phi = at(k, c);
            if (phi.rows() != target->term(k).dim(c) || phi.cols() != source->term(k).dim(c))
                throw NotAChainMap("chain map component has the wrong shape");
            for (auto d : a.covers_up(c))
                if (!(target->term(k).map(c, d) * phi == at(k, d) * source->term(k).map(c, d)))
                    throw NotAChainMap("chain map does not commute with restriction");
            const Matrix lhs = target->differential(k, c).cols() == 0
                                   ? Matrix(target->term(k + 1).dim(c), source->term(k).dim(c))
                                   : target->differential(k, c) * phi;
            const Matrix rhs = source->differential(k, c).cols() == 0
                                   ? Matrix(target->term(k + 1).dim(c), source->term(k).dim(c))
                                   : at(k + 1, c) * source->differential(k, c);
            if (!(lhs == rhs))
                throw NotAChainMap("chain map does not commute with differentials at degree " + std::to_string(k));
        }
}

SheafComplex shift(const SheafComplex& f, int k)
{
    SheafComplex g(f.arrangement());
    for (const auto& [d, t] : f.terms())
        g.set_term(d - k, t);
    const Rational sign = k % 2 == 0 ? 1 : -1;
    for (const auto& [d, t] : f.terms())
        for (std::size_t c = 0; c < f.arrangement()->size(); ++c) {
            const Matrix& m = f.differential(d, c);
            if (m.rows() != 0 && m.cols() != 0)
                g.set_differential(d - k, c, sign * m);
        }
    return g;
}

namespace {

Matrix block2(const Matrix& a, const Matrix& b, const Matrix& c, const Matrix& d)
{
    // [[a, b], [c, d]]
    Matrix m(a.rows() + c.rows(), a.cols() + b.cols());
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t s = 0; s < a.cols(); ++s)
            m(r, s) = a(r, s);
    for (std::size_t r = 0; r < b.rows(); ++r)
        for (std::size_t s = 0; s < b.cols(); ++s)
            m(r, a.cols() + s) = b(r, s);
    for (std::size_t r = 0; r < c.rows(); ++r)
        for (std::size_t s = 0; s < c.cols(); ++s)
            m(a.rows() + r, s) = c(r, s);
    for (std::size_t r = 0; r < d.rows(); ++r)
        for (std::size_t s = 0; s < d.cols(); ++s)
            m(a.rows() + r, a.cols() + s) = d(r, s);
    return m;
}

Matrix diff_or_zero(const SheafComplex& f, int k, std::size_t c)
{
    const Matrix& m = f.differential(k, c);
    if (m.rows() == f.term(k + 1).dim(c) && m.cols() == f.term(k).dim(c))
        return m;
    return Matrix(f.term(k + 1).dim(c), f.term(k).dim(c));
}

CellularSheaf sum_sheaf(const CellularSheaf& x, const CellularSheaf& y)
{
    const auto& a = x.arrangement();
    CellularSheaf s(a);
    for (std::size_t c = 0; c < a->size(); ++c)
        s.set_dim(c, x.dim(c) + y.dim(c));
    for (std::size_t c = 0; c < a->size(); ++c)
        for (auto d : a->covers_up(c))
            s.set_map(c, d,
                      block2(x.map(c, d), Matrix(x.dim(d), y.dim(c)), Matrix(y.dim(d), x.dim(c)), y.map(c, d)));
    return s;
}

} // namespace

SheafComplex cone(const ChainMap& phi)
{
    phi.validate();
    const SheafComplex& f = *phi.source;
    const SheafComplex& g = *phi.target;
    const auto& a = f.arrangement();
    SheafComplex out(a);
    const int lo = std::min(f.min_degree() - 1, g.min_degree());
    const int hi = std::max(f.max_degree() - 1, g.max_degree());
    for (int k = lo; k <= hi; ++k)
        out.set_term(k, sum_sheaf(f.term(k + 1), g.term(k)));
    for (int k = lo; k < hi; ++k)
        for (std::size_t c = 0; c < a->size(); ++c) {
            const Matrix dfk = diff_or_zero(f, k + 1, c);
            const Matrix m = block2(Rational(-1) * dfk, Matrix(f.term(k + 2).dim(c), g.term(k).dim(c)),
                                    phi.at(k + 1, c), diff_or_zero(g, k, c));
            out.set_differential(k, c, m);
        }
    return out;
}

SheafComplex direct_sum(const std::vector<SheafComplex>& fs)
{
    if (fs.empty())
        throw Error("direct_sum of nothing");
    const auto& a = fs.front().arrangement();
    int lo = 0, hi = -1;
    bool any = false;
    for (const auto& f : fs) {
        if (f.arrangement() != a)
            throw RefinementRequired("direct_sum over different arrangements");
        if (f.max_degree() < f.min_degree())
            continue;
        lo = any ? std::min(lo, f.min_degree()) : f.min_degree();
        hi = any ? std::max(hi, f.max_degree()) : f.max_degree();
        any = true;
    }
    SheafComplex out(a);
    if (!any)
        return out;
    for (int k = lo; k <= hi; ++k) {
        CellularSheaf s = zero_sheaf(a);
        for (const auto& f : fs)
            s = sum_sheaf(s, f.term(k));
        out.set_term(k, std::move(s));
    }
    for (int k = lo; k < hi; ++k)
        for (std::size_t c = 0; c < a->size(); ++c) {
            Matrix m;
            bool first = true;
            for (const auto& f : fs) {
                const Matrix d = diff_or_zero(f, k, c);
                if (first) {
                    m = d;
                    first = false;
                } else {
                    m = block2(m, Matrix(m.rows(), d.cols()), Matrix(d.rows(), m.cols()), d);
                }
            }
            out.set_differential(k, c, m);
        }
    return out;
}

ChainMap identity_map(const SheafComplex& f)
{
    ChainMap id;
    id.source = &f;
    id.target = &f;
    for (const auto& [k, t] : f.terms()) {
        auto& comps = id.components[k];
        for (std::size_t c = 0; c < f.arrangement()->size(); ++c)
            comps.push_back(Matrix::identity(t.dim(c)));
    }
    return id;
}

GradedDims stalk_at_cell(const SheafComplex& f, std::size_t cell)
{
    GradedDims out;
    if (f.max_degree() < f.min_degree())
        return out;
    std::map<int, std::size_t> ranks;
    for (int k = f.min_degree() - 1; k <= f.max_degree(); ++k)
        ranks[k] = rank(diff_or_zero(f, k, cell));
    for (int k = f.min_degree(); k <= f.max_degree(); ++k)
        out.add(k, f.term(k).dim(cell) - ranks[k] - ranks[k - 1]);
    return out;
}

GradedDims stalk(const SheafComplex& f, const RationalVector& x)
{
    return stalk_at_cell(f, f.arrangement()->locate(x));
}

// ---------------------------------------------------------------------------
// Derived hom through the chain resolution: degree p of the resolution of a
// sheaf G is the sum over chains c_0 < ... < c_p of the elementary injective
// at c_0 with value G(c_p), so hom out of F is the sum of Hom(F(c_0), G(c_p)).

namespace {

using Chain = std::vector<std::uint32_t>;

struct ChainHash {
    std::size_t operator()(const Chain& c) const
    {
        std::size_t h = c.size();
        for (auto x : c)
            h = h * 1000003u ^ x;
        return h;
    }
};

class RestrictionCache {
public:
    explicit RestrictionCache(const CellularSheaf& f) : f_(f) {}

    const Matrix& get(std::size_t c, std::size_t d)
    {
        const std::uint64_t key = (static_cast<std::uint64_t>(c) << 32) | d;
        auto it = cache_.find(key);
        if (it != cache_.end())
            return it->second;
        return cache_.emplace(key, f_.restriction(c, d)).first->second;
    }

private:
    const CellularSheaf& f_;
    std::unordered_map<std::uint64_t, Matrix> cache_;
};

struct Block {
    int i;
    int j;
    std::size_t chain;
    std::size_t offset;
    std::size_t rows; // dim G^j(c_p)
    std::size_t cols; // dim F^i(c_0)
};

} // namespace

GradedDims hom_complex(const SheafComplex& f, const SheafComplex& g)
{
    if (f.arrangement() != g.arrangement())
        throw RefinementRequired("hom_complex: sheaves live on different arrangements");
    GradedDims out;
    if (f.max_degree() < f.min_degree() || g.max_degree() < g.min_degree())
        return out;
    const auto& a = *f.arrangement();
    const std::size_t ncells = a.size();

    std::vector<bool> f_support(ncells, false), g_support(ncells, false), reach(ncells, false);
    for (const auto& [i, t] : f.terms())
        for (std::size_t c = 0; c < ncells; ++c)
            if (t.dim(c))
                f_support[c] = true;
    for (const auto& [j, t] : g.terms())
        for (std::size_t c = 0; c < ncells; ++c)
            if (t.dim(c))
                g_support[c] = true;
    for (std::size_t d = 0; d < ncells; ++d)
        for (auto e : a.above(d))
            if (g_support[e]) {
                reach[d] = true;
                break;
            }

    std::vector<Chain> chains;
    std::unordered_map<Chain, std::size_t, ChainHash> chain_index;
    {
        Chain cur;
        std::function<void()> grow = [&]() {
            const std::uint32_t top = cur.back();
            if (g_support[top]) {
                chain_index.emplace(cur, chains.size());
                chains.push_back(cur);
            }
            for (auto d : a.above(top)) {
                if (d == top || !reach[d])
                    continue;
                cur.push_back(static_cast<std::uint32_t>(d));
                grow();
                cur.pop_back();
            }
        };
        for (std::size_t c = 0; c < ncells; ++c)
            if (f_support[c] && reach[c]) {
                cur.assign(1, static_cast<std::uint32_t>(c));
                grow();
            }
    }

    // Blocks per total degree k = j - i + p.
    std::map<int, std::vector<Block>> blocks;
    std::map<int, std::size_t> size_of;
    const int fmin = f.min_degree(), gmin = g.min_degree();
    const int fspan = f.max_degree() - fmin + 1, gspan = g.max_degree() - gmin + 1;
    auto slot = [&](int i, int j, std::size_t ch) {
        return (static_cast<std::size_t>((i - fmin) * gspan + (j - gmin))) * chains.size() + ch;
    };
    // (i, j, chain) -> 1 + index in blocks[k], 0 if absent
    std::vector<std::uint32_t> block_at(static_cast<std::size_t>(fspan * gspan) * chains.size(), 0);
    for (const auto& [i, ft] : f.terms())
        for (const auto& [j, gt] : g.terms())
            for (std::size_t ch = 0; ch < chains.size(); ++ch) {
                const auto& c = chains[ch];
                const std::size_t cols = ft.dim(c.front());
                const std::size_t rows = gt.dim(c.back());
                if (!rows || !cols)
                    continue;
                const int k = j - i + static_cast<int>(c.size()) - 1;
                auto& list = blocks[k];
                block_at[slot(i, j, ch)] = static_cast<std::uint32_t>(list.size() + 1);
                list.push_back({i, j, ch, size_of[k], rows, cols});
                size_of[k] += rows * cols;
            }

    std::map<int, RestrictionCache> f_cache, g_cache;
    for (const auto& [i, t] : f.terms())
        f_cache.emplace(i, RestrictionCache(t));
    for (const auto& [j, t] : g.terms())
        g_cache.emplace(j, RestrictionCache(t));

    auto find_block = [&](int i, int j, const Chain& c) -> const Block* {
        const auto it = chain_index.find(c);
        if (it == chain_index.end())
            return nullptr;
        if (i < fmin || i >= fmin + fspan || j < gmin || j >= gmin + gspan)
            return nullptr;
        const auto b = block_at[slot(i, j, it->second)];
        if (!b)
            return nullptr;
        const int k = j - i + static_cast<int>(c.size()) - 1;
        return &blocks[k][b - 1];
    };

    struct NotSmall {};
    auto small = [](const Rational& v) -> std::int64_t {
        if (!is_integer(v) || boost::multiprecision::abs(v) > 1000000)
            throw NotSmall{};
        return static_cast<std::int64_t>(numerator_of(v));
    };

    // rank of D^k : C^k -> C^{k+1}, rows indexed by targets in degree k+1
    auto rank_of = [&]<typename Row>(int k, Row*) -> std::size_t {
        const auto tb = blocks.find(k + 1);
        if (tb == blocks.end() || size_of[k] == 0)
            return 0;
        std::vector<Row> rows;
        rows.reserve(size_of[k + 1]);
        for (const Block& t : tb->second) {
            const Chain& y = chains[t.chain];
            const int P = static_cast<int>(y.size()) - 1;
            const std::size_t c0 = y.front(), cP = y.back();
            const Block* face0 = nullptr;
            const Block* facel = nullptr;
            std::vector<std::pair<const Block*, int>> inner;
            if (P >= 1) {
                face0 = find_block(t.i, t.j, Chain(y.begin() + 1, y.end()));
                for (int q = 1; q < P; ++q) {
                    Chain xi = y;
                    xi.erase(xi.begin() + q);
                    if (const Block* b = find_block(t.i, t.j, xi))
                        inner.push_back({b, q % 2 == 0 ? 1 : -1});
                }
                facel = find_block(t.i, t.j, Chain(y.begin(), y.end() - 1));
            }
            const Block* hg = find_block(t.i, t.j - 1, y);
            const Block* hf = find_block(t.i + 1, t.j, y);
            const Matrix* fr = face0 ? &f_cache.at(t.i).get(c0, y[1]) : nullptr;
            const Matrix* gr = facel ? &g_cache.at(t.j).get(y[P - 1], cP) : nullptr;
            const Matrix* dg = hg ? &g.differential(t.j - 1, cP) : nullptr;
            const Matrix* df = hf ? &f.differential(t.i, c0) : nullptr;
            const int psign = P % 2 == 0 ? 1 : -1;
            const int fsign = psign * ((t.j - t.i - 1) % 2 == 0 ? -1 : 1);
            for (std::size_t r = 0; r < t.rows; ++r)
                for (std::size_t s = 0; s < t.cols; ++s) {
                    Row row;
                    auto put = [&](const Block& b, std::size_t rr, std::size_t ss, const Rational& v, int sign) {
                        if (v == 0)
                            return;
                        const auto col = static_cast<std::uint32_t>(b.offset + rr * b.cols + ss);
                        if constexpr (std::is_same_v<Row, SparseIntRow>)
                            row.push_back({col, sign * small(v)});
                        else
                            row.push_back({col, sign * v});
                    };
                    if (face0)
                        for (std::size_t u = 0; u < face0->cols; ++u)
                            put(*face0, r, u, (*fr)(u, s), 1);
                    for (const auto& [b, sign] : inner)
                        put(*b, r, s, Rational(1), sign);
                    if (facel)
                        for (std::size_t u = 0; u < facel->rows; ++u)
                            put(*facel, u, s, (*gr)(r, u), psign);
                    if (hg)
                        for (std::size_t u = 0; u < hg->rows; ++u)
                            put(*hg, u, s, (*dg)(r, u), psign);
                    if (hf)
                        for (std::size_t u = 0; u < hf->cols; ++u)
                            put(*hf, r, u, (*df)(u, s), fsign);
                    if (!row.empty())
                        rows.push_back(std::move(row));
                }
        }
        return sparse_rank(std::move(rows));
    };
    auto rank_at = [&](int k) -> std::size_t {
        try {
            return rank_of(k, static_cast<SparseIntRow*>(nullptr));
        } catch (const NotSmall&) {
            return rank_of(k, static_cast<SparseRow*>(nullptr));
        }
    };

    if (blocks.empty())
        return out;
    const int lo = blocks.begin()->first;
    const int hi = blocks.rbegin()->first;
    std::map<int, std::size_t> ranks;
    for (int k = lo - 1; k <= hi; ++k)
        ranks[k] = (k < lo) ? 0 : rank_at(k);
    for (int k = lo; k <= hi; ++k)
        out.add(k, size_of[k] - ranks[k] - ranks[k - 1]);
    return out;
}

GradedDims cohomology(const SheafComplex& f)
{
    return hom_complex(SheafComplex::single(constant_sheaf(f.arrangement()), 0), f);
}

// ---------------------------------------------------------------------------

SheafComplex BlockComplex::realize(ArrangementPtr a) const
{
    std::vector<std::vector<bool>> masks;
    masks.reserve(blocks.size());
    for (const auto& b : blocks)
        masks.push_back(a->closed_cells_of(b.region));

    std::map<int, std::vector<std::size_t>> by_degree;
    for (std::size_t b = 0; b < blocks.size(); ++b)
        by_degree[blocks[b].degree].push_back(b);

    SheafComplex out(a);
    // position of block b among the blocks of its degree that contain cell c
    std::vector<std::vector<std::size_t>> slot(blocks.size(), std::vector<std::size_t>(a->size(), 0));
    for (const auto& [k, list] : by_degree) {
        CellularSheaf s(a);
        for (std::size_t c = 0; c < a->size(); ++c) {
            std::size_t n = 0;
            for (auto b : list)
                if (masks[b][c])
                    slot[b][c] = n++;
            s.set_dim(c, n);
        }
        for (std::size_t c = 0; c < a->size(); ++c)
            for (auto d : a->covers_up(c)) {
                Matrix m(s.dim(d), s.dim(c));
                for (auto b : list)
                    if (masks[b][c] && masks[b][d])
                        m(slot[b][d], slot[b][c]) = 1;
                s.set_map(c, d, std::move(m));
            }
        out.set_term(k, std::move(s));
    }
    for (const auto& e : entries) {
        if (blocks[e.to].degree != blocks[e.from].degree + 1)
            throw Error("block differential must raise the degree by one");
    }
    for (const auto& [k, list] : by_degree) {
        if (!by_degree.count(k + 1))
            continue;
        for (std::size_t c = 0; c < a->size(); ++c) {
            Matrix m(out.term(k + 1).dim(c), out.term(k).dim(c));
            for (const auto& e : entries)
                if (blocks[e.from].degree == k && masks[e.from][c] && masks[e.to][c])
                    m(slot[e.to][c], slot[e.from][c]) += e.coeff;
            out.set_differential(k, c, std::move(m));
        }
    }
    return out;
}

long convolution_euler_stalk(const BlockComplex& f, const BlockComplex& g, const RationalVector& x)
{
    const std::size_t n = x.size();
    long total = 0;
    for (const auto& bf : f.blocks)
        for (const auto& bg : g.blocks) {
            ConstraintSystem sys;
            for (const auto& row : bf.region) {
                if (row.rel == Relation::Gt)
                    throw Unsupported("convolution blocks must be closed");
                sys.push_back(row);
            }
            // y in x - Q2  <=>  x - y in Q2
            for (const auto& row : bg.region) {
                if (row.rel == Relation::Gt)
                    throw Unsupported("convolution blocks must be closed");
                LinearConstraint r = row;
                Rational ax = 0;
                for (std::size_t i = 0; i < n; ++i) {
                    ax += row.coeffs[i] * x[i];
                    r.coeffs[i] = -row.coeffs[i];
                }
                r.rhs = row.rhs - ax;
                sys.push_back(std::move(r));
            }
            const int e = compact_euler(sys, n);
            const int sign = (bf.degree + bg.degree) % 2 == 0 ? 1 : -1;
            total += sign * e;
        }
    return total;
}

} // namespace tccc
