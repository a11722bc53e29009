#include "tccc/render.hpp"

#include "tccc/errors.hpp"
#include "tccc/twisted_sheaf.hpp"

#include <cmath>
#include <iomanip>
#include <sstream>

namespace tccc {

namespace {

using Poly = std::vector<RationalVector>;

// Keep the part of a convex polygon where sign * h.eval(x) >= 0.
Poly clip(const Poly& poly, const Hyperplane& h, int sign)
{
    Poly out;
    const std::size_t k = poly.size();
    for (std::size_t i = 0; i < k; ++i) {
        const RationalVector& p = poly[i];
        const RationalVector& q = poly[(i + 1) % k];
        const Rational fp = sign * h.eval(p);
        const Rational fq = sign * h.eval(q);
        if (fp >= 0)
            out.push_back(p);
        if ((fp > 0 && fq < 0) || (fp < 0 && fq > 0)) {
            const Rational t = fp / (fp - fq);
            RationalVector r(2);
            for (std::size_t j = 0; j < 2; ++j)
                r[j] = p[j] + t * (q[j] - p[j]);
            out.push_back(std::move(r));
        }
    }
    return out;
}

struct Canvas {
    Box box;
    double scale;

    double px(const Rational& x) const { return (x - box.lo[0]).convert_to<double>() * scale; }
    double py(const Rational& y) const { return (box.hi[1] - y).convert_to<double>() * scale; }
    double width() const { return (box.hi[0] - box.lo[0]).convert_to<double>() * scale; }
    double height() const { return (box.hi[1] - box.lo[1]).convert_to<double>() * scale; }
};

const char* fill_for(int degree)
{
    switch (degree) {
    case 0:
        return "#9ecae1";
    case -1:
        return "#fdae6b";
    case -2:
        return "#a1d99b";
    default:
        return "#d9d9d9";
    }
}

} // namespace

std::string render_svg(const Divisor& chi, const RenderOptions& options)
{
    if (chi.fan()->dim() != 2)
        throw Unsupported("render_svg draws two-dimensional fans only");
    const Fan& fan = *chi.fan();
    Canvas cv{support_box(chi), options.scale};
    const auto a = arrangement_for({chi}, cv.box);

    std::ostringstream svg;
    svg << std::fixed << std::setprecision(2);
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << cv.width() << "\" height=\"" << cv.height()
        << "\" viewBox=\"0 0 " << cv.width() << ' ' << cv.height() << "\">\n";
    svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    const Poly frame{RationalVector(std::vector<Rational>{cv.box.lo[0], cv.box.lo[1]}),
                     RationalVector(std::vector<Rational>{cv.box.hi[0], cv.box.lo[1]}),
                     RationalVector(std::vector<Rational>{cv.box.hi[0], cv.box.hi[1]}),
                     RationalVector(std::vector<Rational>{cv.box.lo[0], cv.box.hi[1]})};

    if (options.color_stalks) {
        for (const auto& cell : a->cells()) {
            const GradedDims s = stalk_P(chi, cell.sample);
            if (s.is_zero())
                continue;
            const int degree = s.dims().begin()->first;
            if (cell.dim == 2) {
                Poly p = frame;
                for (std::size_t j = 0; j < cell.signs.size() && !p.empty(); ++j)
                    p = clip(p, a->hyperplanes()[j], cell.signs[j]);
                svg << "<polygon fill=\"" << fill_for(degree) << "\" stroke=\"none\" points=\"";
                for (const auto& v : p)
                    svg << cv.px(v[0]) << ',' << cv.py(v[1]) << ' ';
                svg << "\"/>\n";
            } else if (cell.dim == 1) {
                // closure of the cell: clip the frame to the zero set, both sides
                Poly p = frame;
                for (std::size_t j = 0; j < cell.signs.size() && !p.empty(); ++j) {
                    p = clip(p, a->hyperplanes()[j], cell.signs[j] == 0 ? 1 : cell.signs[j]);
                    if (cell.signs[j] == 0)
                        p = clip(p, a->hyperplanes()[j], -1);
                }
                if (p.size() >= 2) {
                    svg << "<polyline fill=\"none\" stroke=\"" << fill_for(degree)
                        << "\" stroke-width=\"5\" points=\"";
                    for (const auto& v : p)
                        svg << cv.px(v[0]) << ',' << cv.py(v[1]) << ' ';
                    svg << "\"/>\n";
                }
            } else {
                svg << "<circle cx=\"" << cv.px(cell.sample[0]) << "\" cy=\"" << cv.py(cell.sample[1])
                    << "\" r=\"5\" fill=\"" << fill_for(degree) << "\"/>\n";
            }
        }
    }

    // shard boundary lines
    for (const auto& h : a->hyperplanes()) {
        Poly p = clip(clip(frame, h, 1), h, -1);
        if (p.size() < 2)
            continue;
        svg << "<polyline fill=\"none\" stroke=\"#969696\" stroke-width=\"1\" stroke-dasharray=\"4 3\" points=\"";
        for (const auto& v : p)
            svg << cv.px(v[0]) << ',' << cv.py(v[1]) << ' ';
        svg << "\"/>\n";
    }

    // polytope edges with hairs pointing into the shard side <x, v> >= a
    for (const auto& w : wall_pairs(fan)) {
        const auto& p = chi.vertex(fan.top_position(w.first));
        const auto& q = chi.vertex(fan.top_position(w.second));
        svg << "<line x1=\"" << cv.px(p[0]) << "\" y1=\"" << cv.py(p[1]) << "\" x2=\"" << cv.px(q[0]) << "\" y2=\""
            << cv.py(q[1]) << "\" stroke=\"black\" stroke-width=\"2\"/>\n";
        const LatticeVector& v = fan.ray(fan.cone(w.wall).rays.front());
        const double vx = v[0].convert_to<double>(), vy = v[1].convert_to<double>();
        const double len = std::hypot(vx, vy);
        for (int k = 1; k <= 5; ++k) {
            const double t = k / 6.0;
            const double x = cv.px(p[0]) + t * (cv.px(q[0]) - cv.px(p[0]));
            const double y = cv.py(p[1]) + t * (cv.py(q[1]) - cv.py(p[1]));
            svg << "<line x1=\"" << x << "\" y1=\"" << y << "\" x2=\"" << x + 6 * vx / len << "\" y2=\""
                << y - 6 * vy / len << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
        }
    }
    for (const auto& v : chi.vertices())
        svg << "<circle cx=\"" << cv.px(v[0]) << "\" cy=\"" << cv.py(v[1]) << "\" r=\"3\" fill=\"black\"/>\n";
    svg << "</svg>\n";
    return svg.str();
}

} // namespace tccc
