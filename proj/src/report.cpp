#include "charsum/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <stdexcept>

namespace charsum {

std::string format_double9(double value) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::general, 9);
    if (ec != std::errc{}) throw std::runtime_error("format_double9: conversion failed");
    return std::string(buf, ptr);
}

std::string tail_csv(const std::vector<TailCurve>& curves) {
    std::string out = "V,phi,order,p,kind,shift\n";
    for (const auto& curve : curves) {
        const char* kind = curve.kind == SpectrumKind::midpoint ? "midpoint" : "arcmax";
        for (std::size_t i = 0; i < curve.v_grid.size(); ++i) {
            out += format_double9(curve.v_grid[i]);
            out += ',';
            out += format_double9(curve.phi[i]);
            out += ',';
            out += std::to_string(curve.d);
            out += ',';
            out += std::to_string(curve.p);
            out += ',';
            out += kind;
            out += ',';
            out += std::to_string(curve.shift);
            out += '\n';
        }
    }
    return out;
}

nlohmann::json constants_json(const theory::TheoryConstants& c) {
    nlohmann::json j;
    j["d"] = c.d;
    j["delta_d"] = c.delta;
    j["head_integral"] = c.head_integral;
    j["head_integral_error"] = c.head_error;
    j["tail_integral"] = c.tail_integral;
    j["tail_integral_error"] = c.tail_error;
    j["hat_C_d"] = c.hat_C_d;
    j["C_d"] = c.C_d;
    j["C_d_error"] = c.C_d_error;
    j["C_d_lower"] = c.C_d_lower;
    j["C_d_upper_proof"] = c.C_d_upper_proof;
    j["C_d_upper_displayed"] = c.C_d_upper_displayed;
    if (c.d % 2 == 1) j["C_tilde_odd"] = c.C_tilde_odd;
    j["limit_C"] = c.limit_C;
    j["limit_C_lower"] = c.limit_C_lower;
    j["exploratory"] = c.exploratory;
    return j;
}

nlohmann::json Manifest::to_json() const {
    nlohmann::json j;
    j["command"] = command;
    j["parameters"] = parameters;
    j["tool_version"] = tool_version;
    j["wall_time_seconds"] = wall_time_seconds;
    return j;
}

void write_text_file(const std::string& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << contents;
    if (!out) throw std::runtime_error("write failed: " + path);
}

void write_manifest(const std::string& output_path, const Manifest& manifest) {
    write_text_file(output_path + ".manifest.json", manifest.to_json().dump(2) + "\n");
}

namespace {

struct PlotBox {
    double x0, x1, y0, y1;
    double px(double x) const { return 60.0 + (x - x0) / (x1 - x0) * 600.0; }
    double py(double y) const { return 20.0 + (y1 - y) / (y1 - y0) * 420.0; }
};

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

}  // namespace

std::string render_tail_svg(const std::vector<SvgSeries>& series) {
    double x0 = 0.0, x1 = 1.0, y0 = 0.0, y1 = -16.0;
    bool have_point = false;
    for (const auto& s : series) {
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (!(s.y[i] > 0.0)) continue;
            double ly = std::log10(s.y[i]);
            if (!have_point) {
                x0 = x1 = s.x[i];
                y0 = y1 = ly;
                have_point = true;
            } else {
                x0 = std::min(x0, s.x[i]);
                x1 = std::max(x1, s.x[i]);
                y0 = std::max(y0, ly);
                y1 = std::min(y1, ly);
            }
        }
    }
    if (!have_point || x1 == x0) {
        x0 = 0.0;
        x1 = 1.0;
    }
    if (y0 == y1) {
        y0 = 0.0;
        y1 = -1.0;
    }
    PlotBox box{x0, x1, y0, y1};

    std::string svg =
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"700\" height=\"500\" "
        "viewBox=\"0 0 700 500\">\n<rect width=\"700\" height=\"500\" fill=\"white\"/>\n";
    svg += "<line x1=\"60\" y1=\"440\" x2=\"660\" y2=\"440\" stroke=\"black\"/>\n";
    svg += "<line x1=\"60\" y1=\"20\" x2=\"60\" y2=\"440\" stroke=\"black\"/>\n";
    for (int i = 0; i <= 4; ++i) {
        double x = x0 + (x1 - x0) * i / 4.0;
        svg += "<text x=\"" + format_double9(box.px(x)) + "\" y=\"460\" font-size=\"12\" "
               "text-anchor=\"middle\">V=" + format_double9(x) + "</text>\n";
        double y = y0 + (y1 - y0) * i / 4.0;
        svg += "<text x=\"8\" y=\"" + format_double9(box.py(y) + 4.0) +
               "\" font-size=\"12\">1e" + format_double9(y) + "</text>\n";
    }
    int color = 0;
    double legend_y = 30.0;
    for (const auto& s : series) {
        std::string points;
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (!(s.y[i] > 0.0)) continue;
            points += format_double9(box.px(s.x[i]));
            points += ',';
            points += format_double9(box.py(std::log10(s.y[i])));
            points += ' ';
        }
        const char* stroke = kPalette[color % 8];
        svg += "<polyline fill=\"none\" stroke=\"" + std::string(stroke) + "\" stroke-width=\"1.5\"";
        if (s.dashed) svg += " stroke-dasharray=\"6,4\"";
        svg += " points=\"" + points + "\"/>\n";
        svg += "<text x=\"560\" y=\"" + format_double9(legend_y) + "\" font-size=\"12\" fill=\"" +
               stroke + "\">" + s.label + "</text>\n";
        legend_y += 16.0;
        ++color;
    }
    svg += "</svg>\n";
    return svg;
}

}  // namespace charsum
