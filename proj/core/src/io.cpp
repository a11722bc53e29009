#include "tccc/io.hpp"

#include "tccc/errors.hpp"

#include <fstream>
#include <sstream>

namespace tccc {

namespace {

Rational rational_from_json(const Json& j)
{
    if (j.is_number_integer())
        return Rational(j.get<long long>());
    if (j.is_string())
        return parse_rational(j.get<std::string>());
    throw InputError("expected a rational as an integer or a \"p/q\" string");
}

Json rational_json(const Rational& r)
{
    return to_string(r);
}

Json matrix_json(const Matrix& m)
{
    Json rows = Json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (std::size_t c = 0; c < m.cols(); ++c)
            row.push_back(rational_json(m(r, c)));
        rows.push_back(std::move(row));
    }
    return rows;
}

} // namespace

FanPtr fan_from_json(const Json& j, std::string name)
{
    try {
        const std::size_t dim = j.at("dim").get<std::size_t>();
        std::vector<LatticeVector> rays;
        for (const auto& r : j.at("rays")) {
            std::vector<Integer> coords;
            for (const auto& x : r)
                coords.emplace_back(x.get<long long>());
            rays.emplace_back(std::move(coords));
        }
        std::vector<std::vector<std::size_t>> cones;
        for (const auto& c : j.at("max_cones"))
            cones.push_back(c.get<std::vector<std::size_t>>());
        if (j.contains("name"))
            name = j.at("name").get<std::string>();
        return Fan::create(std::move(name), dim, std::move(rays), std::move(cones));
    } catch (const Json::exception& e) {
        throw InputError(std::string("malformed fan JSON: ") + e.what());
    }
}

Json fan_to_json(const Fan& f)
{
    Json j;
    j["name"] = f.name();
    j["dim"] = f.dim();
    Json rays = Json::array();
    for (const auto& r : f.rays()) {
        Json v = Json::array();
        for (std::size_t i = 0; i < r.size(); ++i)
            v.push_back(r[i].convert_to<long long>());
        rays.push_back(std::move(v));
    }
    j["rays"] = std::move(rays);
    Json cones = Json::array();
    for (auto c : f.maximal_cones())
        cones.push_back(f.cone(c).rays);
    j["max_cones"] = std::move(cones);
    return j;
}

FanPtr load_fan(const std::string& name_or_path)
{
    for (const auto& n : named_fan_names())
        if (n == name_or_path)
            return named_fan(n);
    std::ifstream in(name_or_path);
    if (!in)
        throw InputError("'" + name_or_path + "' is neither a built-in fan nor a readable file");
    Json j;
    try {
        in >> j;
    } catch (const Json::exception& e) {
        throw InputError(std::string("cannot parse fan file: ") + e.what());
    }
    return fan_from_json(j, name_or_path);
}

Divisor divisor_from_json(const Json& j, FanPtr fan)
{
    try {
        if (j.is_array())
            return divisor_from_json(Json{{"coeffs", j}}, std::move(fan));
        if (j.contains("fan")) {
            const Json& f = j.at("fan");
            fan = f.is_string() ? load_fan(f.get<std::string>()) : fan_from_json(f);
        }
        if (!fan)
            throw InputError("divisor JSON names no fan");
        const std::size_t r = fan->rays().size();
        std::vector<Rational> coeffs(r, Rational(0));
        const Json& c = j.at("coeffs");
        if (c.is_array()) {
            if (c.size() != r)
                throw InputError("coefficient list has the wrong length");
            for (std::size_t i = 0; i < r; ++i)
                coeffs[i] = rational_from_json(c[i]);
        } else if (c.is_object()) {
            for (const auto& [key, value] : c.items()) {
                std::size_t idx = 0;
                try {
                    idx = std::stoul(key);
                } catch (const std::exception&) {
                    throw InputError("bad ray index '" + key + "'");
                }
                if (idx >= r)
                    throw InputError("ray index " + key + " out of range");
                coeffs[idx] = rational_from_json(value);
            }
        } else {
            throw InputError("coeffs must be an array or an object");
        }
        return Divisor::from_coeffs(fan, std::move(coeffs));
    } catch (const Json::exception& e) {
        throw InputError(std::string("malformed divisor JSON: ") + e.what());
    }
}

Json divisor_to_json(const Divisor& d)
{
    Json j;
    j["fan"] = d.fan()->name();
    Json c = Json::object();
    for (std::size_t i = 0; i < d.coeffs().size(); ++i)
        c[std::to_string(i)] = rational_json(d.coeff(i));
    j["coeffs"] = std::move(c);
    Json vs = Json::array();
    for (const auto& v : d.vertices())
        vs.push_back(to_json(v));
    j["vertices"] = std::move(vs);
    return j;
}

RationalVector parse_point(const std::string& text)
{
    std::vector<Rational> coords;
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ','))
        coords.push_back(parse_rational(part));
    if (coords.empty())
        throw InputError("empty point");
    return RationalVector(std::move(coords));
}

Json to_json(const RationalVector& x)
{
    Json j = Json::array();
    for (std::size_t i = 0; i < x.size(); ++i)
        j.push_back(rational_json(x[i]));
    return j;
}

Json to_json(const GradedDims& g)
{
    Json j = Json::object();
    for (const auto& [d, k] : g.dims())
        j[std::to_string(d)] = k;
    return j;
}

Json to_json(const PathCertificate& c)
{
    Json rays = Json::array();
    for (const auto& r : c.rays) {
        Json b = Json::array();
        for (const auto& s : r.breakpoints)
            b.push_back(rational_json(s));
        rays.push_back({{"rho", r.ray},
                        {"breakpoints", std::move(b)},
                        {"in_unit_interval", r.in_unit_interval},
                        {"lower_bound_ok", r.lower_ok},
                        {"upper_bound_ok", r.upper_ok}});
    }
    Json j{{"rays", std::move(rays)}, {"convex_at_samples", c.convex_at_samples}, {"verdict", c.pass ? "pass" : "fail"}};
    if (!c.pass)
        j["failure"] = c.failure;
    return j;
}

Json to_json(const ArrangementComplex& a)
{
    Json hs = Json::array();
    for (const auto& h : a.hyperplanes()) {
        Json n = Json::array();
        for (std::size_t i = 0; i < h.normal.size(); ++i)
            n.push_back(h.normal[i].convert_to<long long>());
        hs.push_back({{"normal", std::move(n)}, {"offset", rational_json(h.offset)}});
    }
    Json cells = Json::array();
    for (const auto& c : a.cells()) {
        Json signs = Json::array();
        for (auto s : c.signs)
            signs.push_back(static_cast<int>(s));
        cells.push_back({{"id", c.id},
                         {"dim", c.dim},
                         {"signs", std::move(signs)},
                         {"sample", to_json(c.sample)},
                         {"covers", a.covers_up(c.id)}});
    }
    Json box = Json::array();
    for (std::size_t i = 0; i < a.box().dim(); ++i)
        box.push_back({rational_json(a.box().lo[i]), rational_json(a.box().hi[i])});
    return {{"box", std::move(box)}, {"hyperplanes", std::move(hs)}, {"cells", std::move(cells)}};
}

Json to_json(const SheafComplex& f)
{
    const auto& a = *f.arrangement();
    Json terms = Json::array();
    for (const auto& [k, t] : f.terms()) {
        Json maps = Json::array();
        for (std::size_t c = 0; c < a.size(); ++c)
            for (auto d : a.covers_up(c))
                if (t.dim(c) && t.dim(d))
                    maps.push_back({{"from", c}, {"to", d}, {"matrix", matrix_json(t.map(c, d))}});
        Json diffs = Json::array();
        for (std::size_t c = 0; c < a.size(); ++c) {
            const Matrix& m = f.differential(k, c);
            if (m.rows() && m.cols() && !m.is_zero())
                diffs.push_back({{"cell", c}, {"matrix", matrix_json(m)}});
        }
        terms.push_back({{"degree", k}, {"dims", t.dims()}, {"maps", std::move(maps)}, {"differential", std::move(diffs)}});
    }
    return {{"cells", a.size()}, {"terms", std::move(terms)}};
}

Json to_json(const TorusHom& h)
{
    Json per = Json::array();
    for (const auto& t : h.per_translate) {
        Json m = Json::array();
        for (std::size_t i = 0; i < t.m.size(); ++i)
            m.push_back(t.m[i].convert_to<long long>());
        per.push_back({{"m", std::move(m)}, {"dims", to_json(t.dims)}});
    }
    return {{"total", to_json(h.total)}, {"per_translate", std::move(per)}, {"translates_examined", h.translates_examined}};
}

Json to_json(const CohomologyReport& r)
{
    Json per = Json::array();
    for (const auto& w : r.per_weight) {
        Json m = Json::array();
        for (std::size_t i = 0; i < w.m.size(); ++i)
            m.push_back(w.m[i].convert_to<long long>());
        per.push_back({{"m", std::move(m)}, {"dims", to_json(w.dims)}});
    }
    return {{"divisor", divisor_to_json(r.divisor)},
            {"total", to_json(r.total)},
            {"per_weight", std::move(per)},
            {"shell_zero", r.shell_zero}};
}

Json to_json(const VerificationResult& v)
{
    Json failures = Json::array();
    for (const auto& i : v.instances)
        if (!i.pass)
            failures.push_back({{"key", i.key}, {"transcript", i.transcript}});
    return {{"suite", v.suite},
            {"instances", v.instances.size()},
            {"passed", v.passed()},
            {"failed", v.failed()},
            {"verdict", v.ok() ? "pass" : "fail"},
            {"failures", std::move(failures)}};
}

} // namespace tccc
