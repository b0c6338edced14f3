// Tables (CSV / JSON) and SVG orbit plots for the command-line tool.
#pragma once

#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace cli {

enum class Format { csv, json };

/// Header lines shared by every output: "#"-prefixed in CSV, a "meta" object in JSON.
using Meta = std::vector<std::pair<std::string, std::string>>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;  // decimal strings, already rounded
  std::vector<std::string> notes;              // "# note: ..." lines / "notes" array
};

void write_csv(std::ostream& os, const Meta& meta, const Table& t);
void write_json(std::ostream& os, const Meta& meta, const Table& t);
void write_table(std::ostream& os, Format f, const Meta& meta, const Table& t);

/// Inverse of write_csv; meta and notes are read back from the comment lines.
Table read_csv(std::istream& is, Meta* meta = nullptr);

struct Polyline {
  std::string label;   // legend text
  std::vector<std::pair<double, double>> points;
  std::string start_label, end_label;  // annotations at the first and last point
};

/// Plain SVG with one polyline per curve, endpoint labels and the coordinate axes.
void write_svg(std::ostream& os, const std::vector<Polyline>& curves, const std::string& title,
               const std::string& xlabel, const std::string& ylabel);

}  // namespace cli
