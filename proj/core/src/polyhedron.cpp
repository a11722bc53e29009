#include "tccc/polyhedron.hpp"

#include "tccc/errors.hpp"
#include "tccc/linalg.hpp"

#include <algorithm>
#include <map>

namespace tccc {

bool LinearConstraint::satisfied_by(const std::vector<Rational>& x) const
{
    Rational lhs = 0;
    for (std::size_t i = 0; i < coeffs.size(); ++i)
        if (coeffs[i] != 0)
            lhs += coeffs[i] * x[i];
    switch (rel) {
    case Relation::Eq:
        return lhs == rhs;
    case Relation::Ge:
        return lhs >= rhs;
    case Relation::Gt:
        return lhs > rhs;
    }
    return false;
}

namespace {

struct Ineq {
    std::vector<Rational> a;
    Rational b;
    bool strict = false;
};

// Scales so the first nonzero coefficient has absolute value one.
void normalize(Ineq& c)
{
    for (const auto& x : c.a) {
        if (x != 0) {
            const Rational s = x < 0 ? Rational(-x) : x;
            if (s != 1) {
                for (auto& y : c.a)
                    y /= s;
                c.b /= s;
            }
            return;
        }
    }
}

bool all_zero(const std::vector<Rational>& a)
{
    return std::all_of(a.begin(), a.end(), [](const Rational& x) { return x == 0; });
}

// Returns false if a constant constraint is violated.
bool constant_ok(const Ineq& c)
{
    return c.strict ? (0 > c.b) : (0 >= c.b);
}

// Keeps the strongest constraint per direction.
bool insert(std::map<std::vector<Rational>, Ineq>& set, Ineq c)
{
    if (all_zero(c.a))
        return constant_ok(c);
    normalize(c);
    auto it = set.find(c.a);
    if (it == set.end()) {
        set.emplace(c.a, std::move(c));
        return true;
    }
    Ineq& old = it->second;
    if (c.b > old.b || (c.b == old.b && c.strict && !old.strict))
        old = std::move(c);
    return true;
}

} // namespace

std::optional<std::vector<Rational>> find_point(const ConstraintSystem& system, std::size_t dim)
{
    // Equalities: x = x0 + basis * y.
    std::vector<const LinearConstraint*> eqs;
    for (const auto& c : system) {
        if (c.coeffs.size() != dim)
            throw Error("constraint dimension mismatch");
        if (c.rel == Relation::Eq)
            eqs.push_back(&c);
    }
    std::vector<Rational> x0(dim, Rational(0));
    std::vector<std::vector<Rational>> basis;
    if (eqs.empty()) {
        for (std::size_t i = 0; i < dim; ++i) {
            std::vector<Rational> e(dim, Rational(0));
            e[i] = 1;
            basis.push_back(std::move(e));
        }
    } else {
        Matrix a(eqs.size(), dim);
        std::vector<Rational> b(eqs.size());
        for (std::size_t r = 0; r < eqs.size(); ++r) {
            for (std::size_t c = 0; c < dim; ++c)
                a(r, c) = eqs[r]->coeffs[c];
            b[r] = eqs[r]->rhs;
        }
        auto sol = solve(a, b);
        if (!sol)
            return std::nullopt;
        x0 = std::move(*sol);
        basis = kernel_basis(a);
    }
    const std::size_t k = basis.size();

    // Inequalities in the reduced coordinates y.
    std::map<std::vector<Rational>, Ineq> current;
    for (const auto& c : system) {
        if (c.rel == Relation::Eq)
            continue;
        Ineq r;
        r.a.assign(k, Rational(0));
        Rational at_x0 = 0;
        for (std::size_t i = 0; i < dim; ++i) {
            if (c.coeffs[i] == 0)
                continue;
            at_x0 += c.coeffs[i] * x0[i];
            for (std::size_t j = 0; j < k; ++j)
                if (basis[j][i] != 0)
                    r.a[j] += c.coeffs[i] * basis[j][i];
        }
        r.b = c.rhs - at_x0;
        r.strict = c.rel == Relation::Gt;
        if (!insert(current, std::move(r)))
            return std::nullopt;
    }

    // stages[j] holds constraints in y_0..y_j (before eliminating y_j).
    std::vector<std::vector<Ineq>> stages(k);
    for (std::size_t jj = k; jj-- > 0;) {
        std::vector<Ineq> here;
        here.reserve(current.size());
        for (auto& [key, c] : current)
            here.push_back(c);
        std::map<std::vector<Rational>, Ineq> next;
        std::vector<const Ineq*> lower, upper;
        for (const auto& c : here) {
            if (c.a[jj] > 0)
                lower.push_back(&c);
            else if (c.a[jj] < 0)
                upper.push_back(&c);
            else if (!insert(next, c))
                return std::nullopt;
        }
        for (const Ineq* lo : lower) {
            for (const Ineq* up : upper) {
                const Rational fl = -up->a[jj];
                const Rational fu = lo->a[jj];
                Ineq comb;
                comb.a.resize(k);
                for (std::size_t i = 0; i < k; ++i)
                    comb.a[i] = fl * lo->a[i] + fu * up->a[i];
                comb.a[jj] = 0;
                comb.b = fl * lo->b + fu * up->b;
                comb.strict = lo->strict || up->strict;
                if (!insert(next, std::move(comb)))
                    return std::nullopt;
            }
        }
        stages[jj] = std::move(here);
        current = std::move(next);
    }

    // Back substitution.
    std::vector<Rational> y(k, Rational(0));
    for (std::size_t j = 0; j < k; ++j) {
        std::optional<Rational> lo, hi;
        bool lo_strict = false, hi_strict = false;
        for (const auto& c : stages[j]) {
            const Rational& aj = c.a[j];
            if (aj == 0)
                continue;
            Rational rest = c.b;
            for (std::size_t i = 0; i < j; ++i)
                if (c.a[i] != 0)
                    rest -= c.a[i] * y[i];
            const Rational bound = rest / aj;
            if (aj > 0) {
                if (!lo || bound > *lo || (bound == *lo && c.strict)) {
                    lo = bound;
                    lo_strict = c.strict;
                }
            } else {
                if (!hi || bound < *hi || (bound == *hi && c.strict)) {
                    hi = bound;
                    hi_strict = c.strict;
                }
            }
        }
        if (lo && hi) {
            if (*lo > *hi || (*lo == *hi && (lo_strict || hi_strict)))
                return std::nullopt; // cannot happen after a successful elimination
            y[j] = (*lo == *hi) ? *lo : (*lo + *hi) / 2;
        } else if (lo) {
            y[j] = *lo + 1;
        } else if (hi) {
            y[j] = *hi - 1;
        }
    }

    std::vector<Rational> x = x0;
    for (std::size_t j = 0; j < k; ++j)
        if (y[j] != 0)
            for (std::size_t i = 0; i < dim; ++i)
                if (basis[j][i] != 0)
                    x[i] += y[j] * basis[j][i];
    return x;
}

int compact_euler(const ConstraintSystem& closed, std::size_t dim)
{
    for (const auto& c : closed)
        if (c.rel == Relation::Gt)
            throw Error("compact_euler expects a closed polyhedron");
    if (!is_feasible(closed, dim))
        return 0;

    ConstraintSystem recession;
    recession.reserve(closed.size());
    Matrix lineality_eqs(closed.size(), dim);
    for (std::size_t r = 0; r < closed.size(); ++r) {
        recession.push_back({closed[r].coeffs, Rational(0), closed[r].rel});
        for (std::size_t c = 0; c < dim; ++c)
            lineality_eqs(r, c) = closed[r].coeffs[c];
    }
    for (const auto& c : closed) {
        if (c.rel != Relation::Ge)
            continue;
        ConstraintSystem probe = recession;
        probe.push_back({c.coeffs, Rational(1), Relation::Ge});
        if (is_feasible(probe, dim))
            return 0;
    }
    const std::size_t lineality = dim - (closed.empty() ? 0 : rank(lineality_eqs));
    return lineality % 2 == 0 ? 1 : -1;
}

} // namespace tccc
