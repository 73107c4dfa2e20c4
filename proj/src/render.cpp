#include <seqplan/harness.hpp>

#include <nlohmann/json.hpp>

#include <sstream>

namespace seqplan {

using json = nlohmann::json;

std::string layout_to_json(const PipeLayout& layout, const PipeTaskSpec& spec) {
    json j = json::parse(pipe_spec_to_json(spec));
    j["total_length"] = layout.total_length();
    j["segments"] = json::array();
    for (const auto& s : layout.segments) {
        j["segments"].push_back({
            {"from", {s.segment.from.x, s.segment.from.y, s.segment.from.z}},
            {"to", {s.segment.to.x, s.segment.to.y, s.segment.to.z}},
            {"length", s.length},
            {"axis", std::string(1, axis_letter(s.segment.axis()))},
        });
    }
    return j.dump(2);
}

std::pair<PipeLayout, PipeTaskSpec> layout_from_json(const std::string& json_text) {
    const PipeTaskSpec spec = pipe_spec_from_json(json_text);
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::exception& e) {
        raise(errc::parse_error, std::string("layout JSON: ") + e.what());
    }
    PipeLayout layout;
    for (const auto& sj : j.value("segments", json::array())) {
        const auto& f = sj.at("from");
        const auto& t = sj.at("to");
        const GridPoint from{f[0].get<int>(), f[1].get<int>(), f[2].get<int>()};
        const GridPoint to{t[0].get<int>(), t[1].get<int>(), t[2].get<int>()};
        Segment seg(from, to); // rejects zero-length and diagonal segments
        layout.segments.push_back({seg, sj.value("length", seg.length())});
    }
    return {layout, spec};
}

namespace {

struct Projection {
    const char* name;          // "xy", "xz", "yz"
    const char* axis_labels;   // "x/y", ...
    int (*u)(const GridPoint&);
    int (*v)(const GridPoint&);
};

constexpr int kScale = 40;
constexpr int kMargin = 30;

const Projection kProjections[3] = {
    {"xy", "x/y", [](const GridPoint& p) { return p.x; }, [](const GridPoint& p) { return p.y; }},
    {"xz", "x/z", [](const GridPoint& p) { return p.x; }, [](const GridPoint& p) { return p.z; }},
    {"yz", "y/z", [](const GridPoint& p) { return p.y; }, [](const GridPoint& p) { return p.z; }},
};

} // namespace

std::string render_layout_svg(const PipeLayout& layout, const PipeTaskSpec& spec) {
    const int panel = spec.room * kScale + 2 * kMargin;
    const int width = 3 * panel;
    const int height = panel + kMargin;

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
    svg << "<rect width=\"" << width << "\" height=\"" << height << "\" fill=\"white\"/>\n";

    // Open joints, highlighted in every projection.
    std::vector<GridPoint> gap_points;
    for (std::size_t i = 1; i < layout.segments.size(); ++i) {
        if (!(layout.segments[i].segment.from == layout.segments[i - 1].segment.to)) {
            gap_points.push_back(layout.segments[i - 1].segment.to);
            gap_points.push_back(layout.segments[i].segment.from);
        }
    }

    for (int pi = 0; pi < 3; ++pi) {
        const Projection& proj = kProjections[pi];
        const int ox = pi * panel;
        const auto px = [&](int u) { return ox + kMargin + u * kScale; };
        const auto py = [&](int v) { return kMargin + (spec.room - v) * kScale; };

        svg << "<g id=\"proj-" << proj.name << "\">\n";
        svg << "<rect x=\"" << px(0) << "\" y=\"" << py(spec.room) << "\" width=\""
            << spec.room * kScale << "\" height=\"" << spec.room * kScale
            << "\" fill=\"none\" stroke=\"#cccccc\"/>\n";
        svg << "<text x=\"" << px(0) << "\" y=\"" << py(0) + 22
            << "\" font-family=\"sans-serif\" font-size=\"14\">" << proj.axis_labels
            << "</text>\n";

        for (int g = 1; g < spec.room; ++g) {
            svg << "<line x1=\"" << px(g) << "\" y1=\"" << py(0) << "\" x2=\"" << px(g)
                << "\" y2=\"" << py(spec.room) << "\" stroke=\"#eeeeee\"/>\n";
            svg << "<line x1=\"" << px(0) << "\" y1=\"" << py(g) << "\" x2=\"" << px(spec.room)
                << "\" y2=\"" << py(g) << "\" stroke=\"#eeeeee\"/>\n";
        }

        for (std::size_t si = 0; si < layout.segments.size(); ++si) {
            const auto& seg = layout.segments[si].segment;
            const int u1 = px(proj.u(seg.from));
            const int v1 = py(proj.v(seg.from));
            const int u2 = px(proj.u(seg.to));
            const int v2 = py(proj.v(seg.to));
            if (u1 == u2 && v1 == v2) {
                svg << "<circle class=\"pipe-dot\" data-seg=\"" << si << "\" cx=\"" << u1
                    << "\" cy=\"" << v1 << "\" r=\"4\" fill=\"#1f77b4\"/>\n";
            } else {
                svg << "<line class=\"pipe\" data-seg=\"" << si << "\" x1=\"" << u1 << "\" y1=\""
                    << v1 << "\" x2=\"" << u2 << "\" y2=\"" << v2
                    << "\" stroke=\"#1f77b4\" stroke-width=\"5\" stroke-linecap=\"round\"/>\n";
            }
        }

        const auto marker_rect = [&](const GridPoint& p, const char* cls, const char* color) {
            svg << "<rect class=\"" << cls << "\" x=\"" << px(proj.u(p)) - 6 << "\" y=\""
                << py(proj.v(p)) - 6 << "\" width=\"12\" height=\"12\" fill=\"" << color
                << "\"/>\n";
        };
        marker_rect(spec.start, "start", "#2ca02c");
        marker_rect(spec.end, "end", "#d62728");
        for (const auto& obs : spec.obstacles) marker_rect(obs, "obstacle", "#000000");
        for (const auto& man : spec.mandatory)
            svg << "<circle class=\"mandatory\" cx=\"" << px(proj.u(man)) << "\" cy=\""
                << py(proj.v(man)) << "\" r=\"8\" fill=\"none\" stroke=\"#ff7f0e\" "
                   "stroke-width=\"3\"/>\n";
        for (const auto& gp : gap_points)
            svg << "<circle class=\"gap\" cx=\"" << px(proj.u(gp)) << "\" cy=\"" << py(proj.v(gp))
                << "\" r=\"10\" fill=\"none\" stroke=\"#ff0000\" stroke-width=\"3\" "
                   "stroke-dasharray=\"4 2\"/>\n";

        svg << "</g>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

void export_layout(const PipeLayout& layout, const PipeTaskSpec& spec,
                   const std::string& json_path, const std::string& svg_path) {
    write_text_file(json_path, layout_to_json(layout, spec));
    write_text_file(svg_path, render_layout_svg(layout, spec));
}

} // namespace seqplan
