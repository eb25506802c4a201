#pragma once

#include <iosfwd>
#include <string>

// Standalone SVG line charts from the harness CSV schema. Sweep CSVs plot
// mean regret against the swept parameter; run CSVs plot per-trial regret
// against the trial index. Bound columns, when present, become overlay
// polylines.
namespace ssi {

std::string render_svg_from_csv(std::istream& in, const std::string& source_name);

// Parses csv_path and writes the chart to svg_path. Nothing is written if
// the CSV is malformed or has no data rows.
void emit_plot(const std::string& csv_path, const std::string& svg_path);

}  // namespace ssi
