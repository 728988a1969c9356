#include "svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace {

constexpr double kWidth = 720;
constexpr double kHeight = 480;
constexpr double kMarginLeft = 64;
constexpr double kMarginRight = 20;
constexpr double kMarginTop = 20;
constexpr double kMarginBottom = 48;

struct Range {
    double lo = 0;
    double hi = 1;
    double span() const { return hi - lo; }
};

Range axis_range(const std::vector<PlotPoint>& a, const std::vector<PlotPoint>& b,
                 bool vertical) {
    Range r{1e300, -1e300};
    auto feed = [&](const std::vector<PlotPoint>& pts) {
        for (const auto& p : pts) {
            const double lo = vertical ? p.value - p.err : p.t;
            const double hi = vertical ? p.value + p.err : p.t;
            r.lo = std::min(r.lo, lo);
            r.hi = std::max(r.hi, hi);
        }
    };
    feed(a);
    feed(b);
    if (r.lo > r.hi) r = {0, 1};
    if (r.span() == 0) {
        r.lo -= 0.5;
        r.hi += 0.5;
    }
    const double pad = vertical ? 0.08 * r.span() : 0.0;
    return {r.lo - pad, r.hi + pad};
}

std::string num(double v) {
    std::ostringstream oss;
    oss.precision(6);
    oss << v;
    return oss.str();
}

}  // namespace

std::string render_series_svg(const std::vector<PlotPoint>& estimates,
                              const std::vector<PlotPoint>& reference,
                              const std::string& y_label) {
    const Range xr = axis_range(estimates, reference, false);
    const Range yr = axis_range(estimates, reference, true);
    const auto sx = [&](double t) {
        return kMarginLeft + (t - xr.lo) / xr.span() * (kWidth - kMarginLeft - kMarginRight);
    };
    const auto sy = [&](double v) {
        return kHeight - kMarginBottom -
               (v - yr.lo) / yr.span() * (kHeight - kMarginTop - kMarginBottom);
    };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
        << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth << ' '
        << kHeight << "\">\n";
    svg << "<rect width=\"" << kWidth << "\" height=\"" << kHeight
        << "\" fill=\"white\"/>\n";

    // Axes with a handful of ticks.
    svg << "<g stroke=\"black\" stroke-width=\"1\">\n";
    svg << "<line x1=\"" << sx(xr.lo) << "\" y1=\"" << sy(yr.lo) << "\" x2=\""
        << sx(xr.hi) << "\" y2=\"" << sy(yr.lo) << "\"/>\n";
    svg << "<line x1=\"" << sx(xr.lo) << "\" y1=\"" << sy(yr.lo) << "\" x2=\""
        << sx(xr.lo) << "\" y2=\"" << sy(yr.hi) << "\"/>\n";
    svg << "</g>\n";
    svg << "<g font-family=\"sans-serif\" font-size=\"12\" fill=\"black\">\n";
    const int ticks = 6;
    for (int i = 0; i <= ticks; ++i) {
        const double t = xr.lo + xr.span() * i / ticks;
        svg << "<line x1=\"" << sx(t) << "\" y1=\"" << sy(yr.lo) << "\" x2=\"" << sx(t)
            << "\" y2=\"" << sy(yr.lo) + 5 << "\" stroke=\"black\"/>\n";
        svg << "<text x=\"" << sx(t) << "\" y=\"" << sy(yr.lo) + 20
            << "\" text-anchor=\"middle\">" << num(t) << "</text>\n";
        const double v = yr.lo + yr.span() * i / ticks;
        svg << "<line x1=\"" << sx(xr.lo) - 5 << "\" y1=\"" << sy(v) << "\" x2=\""
            << sx(xr.lo) << "\" y2=\"" << sy(v) << "\" stroke=\"black\"/>\n";
        svg << "<text x=\"" << sx(xr.lo) - 8 << "\" y=\"" << sy(v) + 4
            << "\" text-anchor=\"end\">" << num(v) << "</text>\n";
    }
    svg << "<text x=\"" << (kMarginLeft + kWidth - kMarginRight) / 2 << "\" y=\""
        << kHeight - 10 << "\" text-anchor=\"middle\">t</text>\n";
    svg << "<text x=\"16\" y=\"" << (kMarginTop + kHeight - kMarginBottom) / 2
        << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
        << (kMarginTop + kHeight - kMarginBottom) / 2 << ")\">" << y_label
        << "</text>\n";
    svg << "</g>\n";

    if (!reference.empty()) {
        svg << "<polyline fill=\"none\" stroke=\"black\" stroke-width=\"1.5\" points=\"";
        for (const auto& p : reference) svg << sx(p.t) << ',' << sy(p.value) << ' ';
        svg << "\"/>\n";
    }

    svg << "<g stroke=\"#c62828\" fill=\"#c62828\">\n";
    for (const auto& p : estimates) {
        if (p.err > 0) {
            svg << "<line x1=\"" << sx(p.t) << "\" y1=\"" << sy(p.value - p.err)
                << "\" x2=\"" << sx(p.t) << "\" y2=\"" << sy(p.value + p.err)
                << "\" stroke-width=\"1\"/>\n";
            for (const double v : {p.value - p.err, p.value + p.err})
                svg << "<line x1=\"" << sx(p.t) - 3 << "\" y1=\"" << sy(v) << "\" x2=\""
                    << sx(p.t) + 3 << "\" y2=\"" << sy(v)
                    << "\" stroke-width=\"1\"/>\n";
        }
        svg << "<circle cx=\"" << sx(p.t) << "\" cy=\"" << sy(p.value)
            << "\" r=\"3\"/>\n";
    }
    svg << "</g>\n";
    svg << "</svg>\n";
    return svg.str();
}
