#include "ssi/plot.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <stdexcept>

#include "doctest.h"
#include "ssi/harness.hpp"

using namespace ssi;

namespace {

std::size_t count_occurrences(const std::string& text, const std::string& needle) {
  std::size_t count = 0;
  for (std::size_t pos = text.find(needle); pos != std::string::npos;
       pos = text.find(needle, pos + needle.size())) {
    ++count;
  }
  return count;
}

}  // namespace

TEST_CASE("sweep csv renders one point per param value") {
  std::istringstream csv(
      csv_header() +
      "0.1,0,50,2,0.3,10,9,8,1.5,2.5,-1.5\n"
      "0.2,0,50,2,0.3,11,9,8,2.5,2.6,-1.4\n"
      "0.3,0,50,2,0.3,12,9,8,3.5,2.7,-1.3\n");
  const std::string svg = render_svg_from_csv(csv, "test.csv");
  CHECK(count_occurrences(svg, "class=\"pt\"") == 3);
  CHECK(svg.find("id=\"regret\"") != std::string::npos);
  CHECK(svg.find("id=\"upper-bound\"") != std::string::npos);
  CHECK(svg.find("id=\"lower-bound\"") != std::string::npos);
  CHECK(svg.find(">param</text>") != std::string::npos);
  CHECK(svg.find(">regret</text>") != std::string::npos);
  CHECK(svg.find("<svg") != std::string::npos);
}

TEST_CASE("run csv renders per-trial points without bound overlays") {
  std::istringstream csv(csv_header() +
                         ",0,50,2,0.3,10,9,8,1.5,nan,nan\n"
                         ",1,50,2,0.3,11,9,8,2.5,nan,nan\n");
  const std::string svg = render_svg_from_csv(csv, "run.csv");
  CHECK(count_occurrences(svg, "class=\"pt\"") == 2);
  CHECK(svg.find("id=\"upper-bound\"") == std::string::npos);
  CHECK(svg.find("id=\"lower-bound\"") == std::string::npos);
  CHECK(svg.find(">trial</text>") != std::string::npos);
}

TEST_CASE("repeated param values are averaged") {
  std::istringstream csv(csv_header() +
                         "1,0,50,2,0.3,10,9,8,1.0,nan,nan\n"
                         "1,1,50,2,0.3,10,9,8,3.0,nan,nan\n"
                         "2,0,50,2,0.3,10,9,8,5.0,nan,nan\n");
  const std::string svg = render_svg_from_csv(csv, "sweep.csv");
  CHECK(count_occurrences(svg, "class=\"pt\"") == 2);
}

TEST_CASE("malformed csv is rejected with a row number") {
  std::istringstream missing_field(csv_header() + "0.1,0,50,2,0.3,10,9,8,1.5,2.5\n");
  CHECK_THROWS_WITH_AS(render_svg_from_csv(missing_field, "bad.csv"),
                       doctest::Contains("bad.csv:2"), std::runtime_error);

  std::istringstream bad_number(csv_header() +
                                "0.1,0,50,2,0.3,10,9,8,1.5,2.5,-1.5\n"
                                "0.2,0,50,2,0.3,10,9,eight,1.5,2.5,-1.5\n");
  CHECK_THROWS_WITH_AS(render_svg_from_csv(bad_number, "bad.csv"),
                       doctest::Contains("bad.csv:3"), std::runtime_error);

  std::istringstream bad_header("when,what,why\n1,2,3\n");
  CHECK_THROWS_WITH_AS(render_svg_from_csv(bad_header, "bad.csv"), doctest::Contains("bad.csv:1"),
                       std::runtime_error);

  std::istringstream empty(csv_header());
  CHECK_THROWS_WITH_AS(render_svg_from_csv(empty, "bad.csv"), doctest::Contains("no data rows"),
                       std::runtime_error);
}

TEST_CASE("emit_plot writes only on success") {
  const std::string csv_path = "plot_test.csv";
  const std::string svg_path = "plot_test.svg";
  {
    std::ofstream out(csv_path);
    out << csv_header();  // header only: no data rows
  }
  CHECK_THROWS_AS(emit_plot(csv_path, svg_path), std::runtime_error);
  CHECK(!std::ifstream(svg_path).good());

  {
    std::ofstream out(csv_path);
    out << csv_header() << ",0,50,2,0.3,10,9,8,1.5,nan,nan\n";
  }
  CHECK_NOTHROW(emit_plot(csv_path, svg_path));
  std::ifstream svg(svg_path);
  REQUIRE(svg.good());
  std::stringstream buffer;
  buffer << svg.rdbuf();
  CHECK(buffer.str().find("</svg>") != std::string::npos);
  std::remove(csv_path.c_str());
  std::remove(svg_path.c_str());
}
