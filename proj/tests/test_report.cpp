#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "soliton/report.hpp"

using namespace soliton;

namespace {
std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}
}  // namespace

TEST_CASE("doubles render with 17 significant digits and a dot separator") {
  std::string s = report::format_double(1.0 / 3.0);
  CHECK(s.substr(0, 2) == "0.");
  CHECK(s.size() >= 17);
  CHECK(s.find(',') == std::string::npos);
  CHECK(report::format_double(0.5) == "0.5");
  // round trip
  CHECK(std::stod(report::format_double(3.141592653589793)) == 3.141592653589793);
}

TEST_CASE("csv files carry a header and unix line ends") {
  auto dir = std::filesystem::temp_directory_path();
  auto path = dir / "soliton_test.csv";
  report::write_csv(path.string(), {"s", "u"}, {{0.0, 1.0}, {0.5, 2.5}});
  std::string text = slurp(path);
  CHECK(text.find("s,u\n") == 0);
  CHECK(text.find("\r") == std::string::npos);
  CHECK(text.find("0.5,2.5\n") != std::string::npos);
  std::filesystem::remove(path);
}

TEST_CASE("svg writers emit valid-looking documents") {
  auto dir = std::filesystem::temp_directory_path();
  auto line = dir / "soliton_test_line.svg";
  report::write_svg_polyline(line.string(), {0, 1, 2}, {0, 1, 0});
  std::string text = slurp(line);
  CHECK(text.find("<svg") == 0);
  CHECK(text.find("<polyline") != std::string::npos);
  std::filesystem::remove(line);

  auto map = dir / "soliton_test_map.svg";
  report::write_svg_heatmap(map.string(), 2, 2, {0.0, 0.5, 1.0, 0.25});
  text = slurp(map);
  CHECK(text.find("<svg") == 0);
  CHECK(text.find("<rect") != std::string::npos);
  std::filesystem::remove(map);
}

TEST_CASE("config hash is stable on bytes") {
  CHECK(report::fnv1a64_hex("abc") == report::fnv1a64_hex("abc"));
  CHECK(report::fnv1a64_hex("abc") != report::fnv1a64_hex("abd"));
  CHECK(report::fnv1a64_hex("").size() == 16);
}
