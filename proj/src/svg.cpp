#include "mapslice/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <stdexcept>

namespace mapslice {

namespace {

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

std::string rgb(double r, double g, double b) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "#%02x%02x%02x", int(std::clamp(r, 0.0, 255.0)),
                  int(std::clamp(g, 0.0, 255.0)), int(std::clamp(b, 0.0, 255.0)));
    return buf;
}

// dark green -> yellow
std::string order_color(double t) {
    return rgb(16 + t * (238 - 16), 72 + t * (220 - 72), 28 + t * (90 - 28));
}

std::string map_color(int id) {
    const double hue = std::fmod(id * 137.508, 360.0) / 60.0;
    const double x = 1.0 - std::abs(std::fmod(hue, 2.0) - 1.0);
    double r = 0, g = 0, b = 0;
    switch (int(hue) % 6) {
        case 0: r = 1; g = x; break;
        case 1: r = x; g = 1; break;
        case 2: g = 1; b = x; break;
        case 3: g = x; b = 1; break;
        case 4: r = x; b = 1; break;
        default: r = 1; b = x; break;
    }
    return rgb(64 + 170 * r, 64 + 170 * g, 64 + 170 * b);
}

}  // namespace

void write_svg(const std::filesystem::path& path, const std::vector<SliceActivation>& activations,
               const SvgOptions& options) {
    double xmin = 0, xmax = 1, ymin = 0, ymax = 1;
    bool have_bounds = false;
    auto grow = [&](const Vec2& p) {
        if (!have_bounds) {
            xmin = xmax = p.x;
            ymin = ymax = p.y;
            have_bounds = true;
        } else {
            xmin = std::min(xmin, p.x);
            xmax = std::max(xmax, p.x);
            ymin = std::min(ymin, p.y);
            ymax = std::max(ymax, p.y);
        }
    };
    std::map<int, int> max_order;
    for (const SliceActivation& a : activations) {
        for (const Vec2& p : a.polygon) grow(p);
        for (const Segment2& s : a.micro_segments) {
            grow(s.a);
            grow(s.b);
        }
        auto [it, ok] = max_order.try_emplace(a.map_id, a.order);
        if (!ok) it->second = std::max(it->second, a.order);
    }
    const double margin = have_bounds ? 0.02 * std::max(xmax - xmin, ymax - ymin) + 1e-9 : 0.0;
    xmin -= margin, ymin -= margin, xmax += margin, ymax += margin;
    const double stroke = options.micro_stroke_width > 0.0
                              ? options.micro_stroke_width
                              : 0.002 * std::max(xmax - xmin, ymax - ymin);

    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write SVG file: " + path.string());
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<!-- mapslice-svg v1 -->\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << fmt(xmin) << " " << fmt(ymin)
        << " " << fmt(xmax - xmin) << " " << fmt(ymax - ymin) << "\">\n";
    for (const SliceActivation& a : activations) {
        std::string fill;
        if (options.color == SvgColorMode::map_id) {
            fill = map_color(a.map_id);
        } else {
            const int mo = max_order[a.map_id];
            fill = order_color(mo > 0 ? double(a.order) / mo : 0.0);
        }
        out << "  <polygon fill=\"" << fill << "\" fill-opacity=\"0.85\" points=\"";
        for (std::size_t i = 0; i < a.polygon.size(); ++i) {
            if (i) out << " ";
            out << fmt(a.polygon[i].x) << "," << fmt(a.polygon[i].y);
        }
        out << "\"/>\n";
    }
    if (options.draw_micro) {
        for (const SliceActivation& a : activations)
            for (const Segment2& s : a.micro_segments)
                out << "  <line stroke=\"#1a1a2e\" stroke-width=\"" << fmt(stroke) << "\" x1=\""
                    << fmt(s.a.x) << "\" y1=\"" << fmt(s.a.y) << "\" x2=\"" << fmt(s.b.x) << "\" y2=\""
                    << fmt(s.b.y) << "\"/>\n";
    }
    out << "</svg>\n";
    if (!out) throw std::runtime_error("failed writing SVG file: " + path.string());
}

}  // namespace mapslice
