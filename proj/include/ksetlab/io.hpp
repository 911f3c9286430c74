#pragma once

// Point-set JSON files and CSV emission.
//
//   {"n": 3, "points": [["0/1", "0/1"], ["1/1", "0/1"], ["1/2", "9/10"]],
//    "labels": ["a", "b", "c"]}
//
// "labels" is optional. Coordinates are exact fraction strings.

#include <fstream>
#include <initializer_list>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "ksetlab/geometry.hpp"

namespace ksetlab {

inline nlohmann::json to_json(const PointSet& s) {
  nlohmann::json j;
  j["n"] = s.size();
  auto& pts = j["points"] = nlohmann::json::array();
  for (const auto& p : s.points) pts.push_back({to_fraction_string(p.x), to_fraction_string(p.y)});
  if (s.labels) {
    auto& labels = j["labels"] = nlohmann::json::array();
    for (Label l : *s.labels) labels.push_back(std::string(1, to_char(l)));
  }
  return j;
}

inline std::string emit_point_set(const PointSet& s) { return to_json(s).dump(2) + "\n"; }

inline PointSet point_set_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ParseError("point-set file must hold a JSON object");
  if (!j.contains("points") || !j["points"].is_array()) throw ParseError("point-set file needs a \"points\" array");
  PointSet s;
  for (const auto& p : j["points"]) {
    if (!p.is_array() || p.size() != 2 || !p[0].is_string() || !p[1].is_string())
      throw ParseError("each point must be a pair of fraction strings");
    s.points.push_back({parse_rational(p[0].get<std::string>()), parse_rational(p[1].get<std::string>())});
  }
  if (j.contains("n")) {
    if (!j["n"].is_number_unsigned() || j["n"].get<std::size_t>() != s.size())
      throw ParseError("\"n\" does not match the number of points");
  }
  if (j.contains("labels")) {
    const auto& labels = j["labels"];
    if (!labels.is_array() || labels.size() != s.size()) throw ParseError("\"labels\" must list one label per point");
    std::vector<Label> out;
    for (const auto& l : labels) {
      const std::string v = l.is_string() ? l.get<std::string>() : std::string();
      if (v == "a") out.push_back(Label::A);
      else if (v == "b") out.push_back(Label::B);
      else if (v == "c") out.push_back(Label::C);
      else throw ParseError("labels must be \"a\", \"b\" or \"c\"");
    }
    s.labels = std::move(out);
  }
  return s;
}

inline PointSet parse_point_set(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  return point_set_from_json(j);
}

inline PointSet read_point_set(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_point_set(buf.str());
}

inline void write_point_set(const std::string& path, const PointSet& s) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << emit_point_set(s);
  if (!out) throw std::runtime_error("write failed for " + path);
}

// Minimal RFC 4180 writer; cells are quoted only when they need it.
class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& out) : out_(out) {}

  void row(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out_ << ',';
      write_cell(cells[i]);
    }
    out_ << '\n';
  }

 private:
  void write_cell(const std::string& cell) {
    if (cell.find_first_of(",\"\n") == std::string::npos) {
      out_ << cell;
      return;
    }
    out_ << '"';
    for (char c : cell) {
      if (c == '"') out_ << '"';
      out_ << c;
    }
    out_ << '"';
  }

  std::ostream& out_;
};

}  // namespace ksetlab
