#include "starbook/cli/svg.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <numbers>

#include <fmt/format.h>

namespace starbook::cli {

namespace {

constexpr double kPanel = 260.0;
constexpr double kRadius = 95.0;
constexpr double kCapRadius = 22.0;
constexpr int kColumns = 4;

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
                                    "#8c564b", "#e377c2", "#17becf", "#bcbd22", "#7f7f7f"};

struct Point {
    double x;
    double y;
};

std::string num(double v) {
    // avoid "-0.00"
    if (std::abs(v) < 0.005) v = 0.0;
    return fmt::format("{:.2f}", v);
}

std::string line(const Point& a, const Point& b, const char* cls, const char* colour) {
    return fmt::format("    <line class=\"{}\" x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"{}\"/>\n",
                       cls, num(a.x), num(a.y), num(b.x), num(b.y), colour);
}

class PanelGeometry {
public:
    PanelGeometry(const CircularOrder& order, Point centre) : order_(order), centre_(centre) {}

    double angle_of(VertexId v) const {
        return -std::numbers::pi / 2 + 2 * std::numbers::pi * order_.position(v) / order_.size();
    }

    Point at(double angle, double radius) const {
        return {centre_.x + radius * std::cos(angle), centre_.y + radius * std::sin(angle)};
    }

    Point vertex(VertexId v) const { return at(angle_of(v), kRadius); }

private:
    const CircularOrder& order_;
    Point centre_;
};

void draw_vertices(std::string& out, const PanelGeometry& geo, const CircularOrder& order) {
    for (VertexId v : order.sequence()) {
        const auto p = geo.vertex(v);
        const auto label = geo.at(geo.angle_of(v), kRadius + 14);
        out += fmt::format("    <circle class=\"vertex\" cx=\"{}\" cy=\"{}\" r=\"3.5\"/>\n", num(p.x),
                           num(p.y));
        out += fmt::format(
            "    <text x=\"{}\" y=\"{}\" text-anchor=\"middle\" dominant-baseline=\"middle\">{}</text>\n",
            num(label.x), num(label.y), v);
    }
}

}  // namespace

std::string render_svg(const Certificate& cert) {
    const CircularOrder order = CircularOrder::is_permutation(cert.order) &&
                                        static_cast<int>(cert.order.size()) == cert.n
                                    ? CircularOrder(cert.order)
                                    : CircularOrder::identity(cert.n);
    const auto on_circle = [&](const EdgeKey& e) {
        return order.contains(e.u()) && order.contains(e.v());
    };

    const int panels = std::max<int>(1, static_cast<int>(cert.pages.size()));
    const int cols = std::min(kColumns, panels);
    const int rows = (panels + cols - 1) / cols;

    std::string out;
    out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out += fmt::format(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{}\" height=\"{}\" "
        "viewBox=\"0 0 {} {}\" font-family=\"sans-serif\" font-size=\"11\">\n",
        num(cols * kPanel), num(rows * kPanel), num(cols * kPanel), num(rows * kPanel));
    out += "  <style>.spine{fill:none;stroke:#bbb}.cap{fill:#f4f4f4;stroke:#555;"
           "stroke-dasharray:3 2}line{stroke-width:1.4}.vertex{fill:#222}</style>\n";

    for (int p = 0; p < panels; ++p) {
        const Point centre{(p % cols) * kPanel + kPanel / 2, (p / cols) * kPanel + kPanel / 2 + 6};
        const PanelGeometry geo(order, centre);
        const Page* page = cert.pages.empty() ? nullptr : &cert.pages[p];
        const char* colour = kPalette[p % std::size(kPalette)];
        const std::string kind = page ? to_string(page->kind()) : "empty";

        out += fmt::format("  <g id=\"page-{}\" class=\"page {}\">\n", p + 1, kind);
        out += fmt::format("    <text x=\"{}\" y=\"{}\" text-anchor=\"middle\">page {} ({})</text>\n",
                           num(centre.x), num(centre.y - kPanel / 2 + 8), p + 1, kind);
        out += fmt::format("    <circle class=\"spine\" cx=\"{}\" cy=\"{}\" r=\"{}\"/>\n",
                           num(centre.x), num(centre.y), num(kRadius));

        if (page && page->kind() == PageKind::Disk) {
            for (const auto& e : page->edges()) {
                if (on_circle(e)) out += line(geo.vertex(e.u()), geo.vertex(e.v()), "chord", colour);
            }
        } else if (page) {
            out += fmt::format("    <circle class=\"cap\" cx=\"{}\" cy=\"{}\" r=\"{}\"/>\n",
                               num(centre.x), num(centre.y), num(kCapRadius));
            std::vector<EdgeKey> drawable;
            for (const auto& e : page->edges()) {
                if (on_circle(e)) drawable.push_back(e);
            }
            const auto check = crosscap_page_valid(order, Page(PageKind::CrossCap, drawable));
            if (check.ok) {
                const auto& seq = check.split->endpoint_sequence;
                const auto k = seq.size() / 2;
                const double base = seq.empty() ? 0.0 : geo.angle_of(seq.front());
                auto cap_point = [&](std::size_t i) {
                    return geo.at(base + 2 * std::numbers::pi * static_cast<double>(i) /
                                             static_cast<double>(seq.size()),
                                  kCapRadius);
                };
                for (std::size_t i = 0; i < k; ++i) {
                    out += line(geo.vertex(seq[i]), cap_point(i), "through", colour);
                    out += line(cap_point(i + k), geo.vertex(seq[i + k]), "through", colour);
                }
                for (const auto& e : check.split->planar) {
                    out += line(geo.vertex(e.u()), geo.vertex(e.v()), "chord", colour);
                }
            } else {
                for (const auto& e : drawable) {
                    out += line(geo.vertex(e.u()), geo.vertex(e.v()), "unroutable", colour);
                }
            }
        }
        draw_vertices(out, geo, order);
        out += "  </g>\n";
    }
    out += "</svg>\n";
    return out;
}

}  // namespace starbook::cli
