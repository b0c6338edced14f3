#include "output.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <istream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace cli {

namespace {

// Cells are quoted when they contain a comma or a quote (RFC 4180), and also
// when empty or starting with '#' so a row never reads back as blank or comment.
std::string csv_cell(const std::string& s) {
  if (s.find_first_of("\n\r") != std::string::npos) throw std::invalid_argument("csv cell with a line break");
  if (!s.empty() && s[0] != '#' && s.find_first_of(",\"") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  return out + "\"";
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c != '"') {
        cur.push_back(c);
      } else if (i + 1 < line.size() && line[i + 1] == '"') {
        cur.push_back('"');
        ++i;
      } else {
        quoted = false;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (quoted) throw std::runtime_error("unterminated quote in csv line: " + line);
  out.push_back(cur);
  return out;
}

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

}  // namespace

void write_csv(std::ostream& os, const Meta& meta, const Table& t) {
  for (const auto& [k, v] : meta) os << "# " << k << ": " << v << '\n';
  for (const auto& n : t.notes) os << "# note: " << n << '\n';
  for (size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << csv_cell(t.columns[i]);
  os << '\n';
  for (const auto& row : t.rows) {
    if (row.size() != t.columns.size()) throw std::logic_error("csv row width mismatch");
    for (size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << csv_cell(row[i]);
    os << '\n';
  }
}

void write_json(std::ostream& os, const Meta& meta, const Table& t) {
  nlohmann::ordered_json j;
  j["meta"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : meta) j["meta"][k] = v;
  if (!t.notes.empty()) j["notes"] = t.notes;
  // numbers stay strings so no digits are lost to binary doubles
  j["records"] = nlohmann::ordered_json::array();
  for (const auto& row : t.rows) {
    nlohmann::ordered_json r;
    for (size_t i = 0; i < t.columns.size(); ++i) r[t.columns[i]] = row.at(i);
    j["records"].push_back(std::move(r));
  }
  os << j.dump(2) << '\n';
}

void write_table(std::ostream& os, Format f, const Meta& meta, const Table& t) {
  if (f == Format::csv)
    write_csv(os, meta, t);
  else
    write_json(os, meta, t);
}

Table read_csv(std::istream& is, Meta* meta) {
  Table t;
  std::string line;
  bool have_header = false;
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::string body = line.substr(line[1] == ' ' ? 2 : 1);
      const auto colon = body.find(": ");
      if (body.rfind("note: ", 0) == 0)
        t.notes.push_back(body.substr(6));
      else if (meta && colon != std::string::npos)
        meta->emplace_back(body.substr(0, colon), body.substr(colon + 2));
      continue;
    }
    if (!have_header) {
      t.columns = split(line);
      have_header = true;
      continue;
    }
    auto row = split(line);
    if (row.size() != t.columns.size()) throw std::runtime_error("csv row width mismatch: " + line);
    t.rows.push_back(std::move(row));
  }
  if (!have_header) throw std::runtime_error("csv without a header line");
  return t;
}

void write_svg(std::ostream& os, const std::vector<Polyline>& curves, const std::string& title,
               const std::string& xlabel, const std::string& ylabel) {
  const double W = 900, H = 640, pad = 70;
  double xmin = INFINITY, xmax = -INFINITY, ymin = INFINITY, ymax = -INFINITY;
  for (const auto& c : curves)
    for (const auto& [x, y] : c.points) {
      if (!std::isfinite(x) || !std::isfinite(y)) continue;
      xmin = std::min(xmin, x), xmax = std::max(xmax, x);
      ymin = std::min(ymin, y), ymax = std::max(ymax, y);
    }
  if (!(xmin <= xmax)) xmin = -1, xmax = 1, ymin = -1, ymax = 1;
  if (xmax - xmin < 1e-12) xmin -= 1, xmax += 1;
  if (ymax - ymin < 1e-12) ymin -= 1, ymax += 1;
  const double mx = 0.05 * (xmax - xmin), my = 0.05 * (ymax - ymin);
  xmin -= mx, xmax += mx, ymin -= my, ymax += my;
  auto X = [&](double x) { return pad + (x - xmin) / (xmax - xmin) * (W - 2 * pad); };
  auto Y = [&](double y) { return H - pad - (y - ymin) / (ymax - ymin) * (H - 2 * pad); };

  static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"};
  os << std::setprecision(6);
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
     << "\" font-family=\"sans-serif\" font-size=\"13\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << W / 2 << "\" y=\"28\" text-anchor=\"middle\" font-size=\"16\">" << xml_escape(title)
     << "</text>\n";
  os << "<rect x=\"" << pad << "\" y=\"" << pad << "\" width=\"" << W - 2 * pad << "\" height=\"" << H - 2 * pad
     << "\" fill=\"none\" stroke=\"#888\"/>\n";
  if (xmin < 0 && xmax > 0)
    os << "<line x1=\"" << X(0) << "\" y1=\"" << pad << "\" x2=\"" << X(0) << "\" y2=\"" << H - pad
       << "\" stroke=\"#ccc\"/>\n";
  if (ymin < 0 && ymax > 0)
    os << "<line x1=\"" << pad << "\" y1=\"" << Y(0) << "\" x2=\"" << W - pad << "\" y2=\"" << Y(0)
       << "\" stroke=\"#ccc\"/>\n";
  // range labels on the frame
  os << "<text x=\"" << pad << "\" y=\"" << H - pad + 18 << "\">" << xmin << "</text>\n";
  os << "<text x=\"" << W - pad << "\" y=\"" << H - pad + 18 << "\" text-anchor=\"end\">" << xmax << "</text>\n";
  os << "<text x=\"" << pad - 6 << "\" y=\"" << H - pad << "\" text-anchor=\"end\">" << ymin << "</text>\n";
  os << "<text x=\"" << pad - 6 << "\" y=\"" << pad + 10 << "\" text-anchor=\"end\">" << ymax << "</text>\n";
  os << "<text x=\"" << W / 2 << "\" y=\"" << H - 20 << "\" text-anchor=\"middle\">" << xml_escape(xlabel)
     << "</text>\n";
  os << "<text x=\"20\" y=\"" << H / 2 << "\" transform=\"rotate(-90 20 " << H / 2
     << ")\" text-anchor=\"middle\">" << xml_escape(ylabel) << "</text>\n";

  for (size_t k = 0; k < curves.size(); ++k) {
    const auto& c = curves[k];
    const char* col = colors[k % 5];
    os << "<polyline fill=\"none\" stroke=\"" << col << "\" stroke-width=\"1.5\" points=\"";
    for (const auto& [x, y] : c.points)
      if (std::isfinite(x) && std::isfinite(y)) os << X(x) << ',' << Y(y) << ' ';
    os << "\"/>\n";
    os << "<text x=\"" << W - pad - 6 << "\" y=\"" << pad + 18 + 16 * k << "\" text-anchor=\"end\" fill=\"" << col
       << "\">" << xml_escape(c.label) << "</text>\n";
    if (c.points.empty()) continue;
    auto mark = [&](const std::pair<double, double>& p, const std::string& text, double dy) {
      os << "<circle cx=\"" << X(p.first) << "\" cy=\"" << Y(p.second) << "\" r=\"3.5\" fill=\"" << col << "\"/>\n";
      if (!text.empty())
        os << "<text x=\"" << X(p.first) + 6 << "\" y=\"" << Y(p.second) + dy << "\" fill=\"" << col << "\">"
           << xml_escape(text) << "</text>\n";
    };
    mark(c.points.front(), c.start_label, -6);
    mark(c.points.back(), c.end_label, 16);
  }
  os << "</svg>\n";
}

}  // namespace cli
