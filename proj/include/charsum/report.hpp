// Output plumbing for the command-line tools: locale-independent number
// formatting, CSV/JSON writers, run manifests, and a minimal SVG plotter.
#pragma once

#include <string>
#include <vector>

#include <json.hpp>  // vendored nlohmann/json

#include "charsum/spectrum.hpp"
#include "charsum/theory.hpp"

namespace charsum {

inline constexpr const char* kToolVersion = "0.1.0";

// Shortest-round-trip rendering at 9 significant digits, '.' decimal
// separator regardless of locale.
std::string format_double9(double value);

std::string tail_csv(const std::vector<TailCurve>& curves);

nlohmann::json constants_json(const theory::TheoryConstants& c);

struct Manifest {
    std::string command;
    nlohmann::json parameters;
    std::string tool_version = kToolVersion;
    double wall_time_seconds = 0.0;

    nlohmann::json to_json() const;
};

// Writes `<path>.manifest.json` next to an output file.
void write_manifest(const std::string& output_path, const Manifest& manifest);

void write_text_file(const std::string& path, const std::string& contents);

// log-scale tail plot: V on x, phi on log10 y, one polyline per curve plus
// optional dashed envelope curves.
struct SvgSeries {
    std::string label;
    bool dashed = false;
    std::vector<double> x;
    std::vector<double> y;
};

std::string render_tail_svg(const std::vector<SvgSeries>& series);

}  // namespace charsum
