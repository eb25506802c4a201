#include "ssi/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <limits>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "ssi/harness.hpp"

namespace ssi {

namespace {

struct Row {
  std::optional<double> param;
  std::size_t trial;
  double regret;
  double upper;  // NaN when absent
  double lower;
};

struct Series {
  std::string x_label;
  std::vector<double> x;
  std::vector<double> y;       // regret
  std::vector<double> upper;   // overlay, may be all-NaN
  std::vector<double> lower;
};

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream is(line);
  while (std::getline(is, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.push_back("");
  return fields;
}

double parse_field(const std::string& text, const std::string& where) {
  std::size_t used = 0;
  double v;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw std::runtime_error(where + ": bad numeric field '" + text + "'");
  }
  if (used != text.size()) {
    throw std::runtime_error(where + ": bad numeric field '" + text + "'");
  }
  return v;
}

Series build_series(const std::vector<Row>& rows) {
  Series s;
  const bool sweep_mode = rows.front().param.has_value();
  if (sweep_mode) {
    // one point per distinct param value, in order of first appearance
    s.x_label = "param";
    std::vector<double> seen;
    for (const Row& r : rows) {
      if (std::find(seen.begin(), seen.end(), *r.param) == seen.end()) seen.push_back(*r.param);
    }
    for (double value : seen) {
      double sum = 0.0;
      std::size_t count = 0;
      double upper = std::numeric_limits<double>::quiet_NaN();
      double lower = std::numeric_limits<double>::quiet_NaN();
      for (const Row& r : rows) {
        if (*r.param != value) continue;
        sum += r.regret;
        if (count == 0) {
          upper = r.upper;
          lower = r.lower;
        }
        ++count;
      }
      s.x.push_back(value);
      s.y.push_back(sum / static_cast<double>(count));
      s.upper.push_back(upper);
      s.lower.push_back(lower);
    }
  } else {
    s.x_label = "trial";
    for (const Row& r : rows) {
      s.x.push_back(static_cast<double>(r.trial));
      s.y.push_back(r.regret);
      s.upper.push_back(r.upper);
      s.lower.push_back(r.lower);
    }
  }
  return s;
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

bool any_finite(const std::vector<double>& xs) {
  return std::any_of(xs.begin(), xs.end(), [](double v) { return std::isfinite(v); });
}

}  // namespace

std::string render_svg_from_csv(std::istream& in, const std::string& source_name) {
  std::string line;
  if (!std::getline(in, line)) {
    throw std::runtime_error(source_name + ":1: missing header");
  }
  if (!line.empty() && line.back() == '\r') line.pop_back();
  const std::string expected = csv_header();
  if (line + "\n" != expected) {
    throw std::runtime_error(source_name + ":1: unexpected header '" + line + "'");
  }

  std::vector<Row> rows;
  std::size_t lineno = 1;
  bool saw_param = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::string where = source_name + ":" + std::to_string(lineno);
    const auto fields = split_fields(line);
    if (fields.size() != 11) {
      throw std::runtime_error(where + ": expected 11 fields, got " +
                               std::to_string(fields.size()));
    }
    Row r;
    if (!fields[0].empty()) {
      r.param = parse_field(fields[0], where);
      saw_param = true;
    } else if (saw_param) {
      throw std::runtime_error(where + ": mixed empty and non-empty param column");
    }
    for (std::size_t j = 1; j < fields.size(); ++j) {
      parse_field(fields[j], where);  // every field must be numeric
    }
    r.trial = static_cast<std::size_t>(parse_field(fields[1], where));
    r.regret = parse_field(fields[8], where);
    r.upper = parse_field(fields[9], where);
    r.lower = parse_field(fields[10], where);
    if (saw_param && !r.param) {
      throw std::runtime_error(where + ": mixed empty and non-empty param column");
    }
    rows.push_back(r);
  }
  if (rows.empty()) {
    throw std::runtime_error(source_name + ": no data rows");
  }

  const Series s = build_series(rows);
  const bool draw_upper = any_finite(s.upper);
  const bool draw_lower = any_finite(s.lower);

  double xmin = s.x.front(), xmax = s.x.front();
  for (double v : s.x) {
    xmin = std::min(xmin, v);
    xmax = std::max(xmax, v);
  }
  double ymin = s.y.front(), ymax = s.y.front();
  auto widen = [&](const std::vector<double>& vs) {
    for (double v : vs) {
      if (!std::isfinite(v)) continue;
      ymin = std::min(ymin, v);
      ymax = std::max(ymax, v);
    }
  };
  widen(s.y);
  if (draw_upper) widen(s.upper);
  if (draw_lower) widen(s.lower);
  if (xmax == xmin) {
    xmin -= 0.5;
    xmax += 0.5;
  }
  if (ymax == ymin) {
    ymin -= 1.0;
    ymax += 1.0;
  }
  const double ypad = 0.05 * (ymax - ymin);
  ymin -= ypad;
  ymax += ypad;

  const double width = 720, height = 480;
  const double ml = 80, mr = 24, mt = 24, mb = 56;
  auto sx = [&](double v) { return ml + (v - xmin) / (xmax - xmin) * (width - ml - mr); };
  auto sy = [&](double v) { return height - mb - (v - ymin) / (ymax - ymin) * (height - mt - mb); };

  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
      << "\" viewBox=\"0 0 " << width << " " << height << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  // axes and ticks
  svg << "<line x1=\"" << ml << "\" y1=\"" << height - mb << "\" x2=\"" << width - mr
      << "\" y2=\"" << height - mb << "\" stroke=\"black\"/>\n";
  svg << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml << "\" y2=\"" << height - mb
      << "\" stroke=\"black\"/>\n";
  for (int k = 0; k <= 4; ++k) {
    const double fx = xmin + (xmax - xmin) * k / 4.0;
    const double fy = ymin + (ymax - ymin) * k / 4.0;
    svg << "<line x1=\"" << sx(fx) << "\" y1=\"" << height - mb << "\" x2=\"" << sx(fx)
        << "\" y2=\"" << height - mb + 5 << "\" stroke=\"black\"/>\n";
    svg << "<text x=\"" << sx(fx) << "\" y=\"" << height - mb + 20
        << "\" font-size=\"11\" text-anchor=\"middle\">" << fmt(fx) << "</text>\n";
    svg << "<line x1=\"" << ml - 5 << "\" y1=\"" << sy(fy) << "\" x2=\"" << ml << "\" y2=\""
        << sy(fy) << "\" stroke=\"black\"/>\n";
    svg << "<text x=\"" << ml - 8 << "\" y=\"" << sy(fy) + 4
        << "\" font-size=\"11\" text-anchor=\"end\">" << fmt(fy) << "</text>\n";
  }
  svg << "<text x=\"" << (ml + width - mr) / 2 << "\" y=\"" << height - 12
      << "\" font-size=\"13\" text-anchor=\"middle\">" << s.x_label << "</text>\n";
  svg << "<text x=\"18\" y=\"" << (mt + height - mb) / 2
      << "\" font-size=\"13\" text-anchor=\"middle\" transform=\"rotate(-90 18 "
      << (mt + height - mb) / 2 << ")\">regret</text>\n";

  auto polyline = [&](const std::vector<double>& ys, const char* id, const char* color,
                      const char* dash) {
    svg << "<polyline id=\"" << id << "\" fill=\"none\" stroke=\"" << color << "\"";
    if (dash) svg << " stroke-dasharray=\"" << dash << "\"";
    svg << " stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (!std::isfinite(ys[i])) continue;
      svg << fmt(sx(s.x[i])) << "," << fmt(sy(ys[i])) << " ";
    }
    svg << "\"/>\n";
  };
  if (draw_upper) polyline(s.upper, "upper-bound", "#c0392b", "6,3");
  if (draw_lower) polyline(s.lower, "lower-bound", "#2471a3", "2,3");
  polyline(s.y, "regret", "#1e8449", nullptr);
  for (std::size_t i = 0; i < s.x.size(); ++i) {
    svg << "<circle class=\"pt\" cx=\"" << fmt(sx(s.x[i])) << "\" cy=\"" << fmt(sy(s.y[i]))
        << "\" r=\"2.5\" fill=\"#1e8449\"/>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

void emit_plot(const std::string& csv_path, const std::string& svg_path) {
  std::ifstream in(csv_path);
  if (!in) {
    throw std::runtime_error("cannot open CSV: " + csv_path);
  }
  const std::string svg = render_svg_from_csv(in, csv_path);
  std::ofstream out(svg_path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot open output file: " + svg_path);
  }
  out << svg;
  if (!out) {
    throw std::runtime_error("failed writing output file: " + svg_path);
  }
}

}  // namespace ssi
