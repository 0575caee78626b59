#include "tukey/io.hpp"

#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace tukey::io {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

}  // namespace

DataSet read_dataset(std::istream& in) {
  std::vector<Point> pts;
  std::optional<int> snap_bits;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string body = line;
    if (auto hash = line.find('#'); hash != std::string::npos) {
      const std::string comment = trim(line.substr(hash + 1));
      if (comment.rfind("snap_bits=", 0) == 0) snap_bits = std::stoi(comment.substr(10));
      body = line.substr(0, hash);
    }
    std::istringstream fields(body);
    std::vector<Rational> coords;
    std::string tok;
    while (fields >> tok) {
      try {
        coords.push_back(parse_rational(tok));
      } catch (const std::invalid_argument& e) {
        throw std::invalid_argument("line " + std::to_string(lineno) + ": " + e.what());
      }
    }
    if (coords.empty()) continue;
    Point p(static_cast<Eigen::Index>(coords.size()));
    for (std::size_t i = 0; i < coords.size(); ++i) p(static_cast<Eigen::Index>(i)) = coords[i];
    if (!pts.empty() && p.size() != pts.front().size()) {
      throw std::invalid_argument("line " + std::to_string(lineno) + ": dimension differs from first point");
    }
    pts.push_back(std::move(p));
  }
  DataSet ds(std::move(pts));
  ds.snap_bits = snap_bits;
  return ds;
}

DataSet read_dataset_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return read_dataset(in);
}

void write_dataset(std::ostream& out, const DataSet& ds, const std::map<std::string, std::string>& metadata) {
  out << "# n=" << ds.size() << " d=" << ds.dim() << "\n";
  if (ds.snap_bits) out << "# snap_bits=" << *ds.snap_bits << "\n";
  for (const auto& [k, v] : metadata) out << "# " << k << "=" << v << "\n";
  for (const auto& p : ds) out << to_string(p) << "\n";
}

void write_region(std::ostream& out, const Polytope& p) {
  out << "# region d=" << p.dim << " affine_dim=" << p.affine_dim << (p.unbounded ? " unbounded" : "") << "\n";
  out << "# vertices " << p.vertices.size() << "\n";
  for (const auto& v : p.vertices) out << to_string(v) << "\n";
  out << "# halfspaces " << p.halfspaces.size() << " (u . x >= q)\n";
  for (const auto& h : p.halfspaces) out << to_string(h.normal.vec()) << " " << to_string(h.offset) << "\n";
}

void write_region_csv(std::ostream& out, const Polytope& p) {
  CsvWriter csv(out);
  std::vector<std::string> header;
  for (int j = 0; j < p.dim; ++j) header.push_back("x" + std::to_string(j + 1));
  for (int j = 0; j < p.dim; ++j) header.push_back("x" + std::to_string(j + 1) + "_approx");
  csv.row(header);
  for (const auto& v : p.vertices) {
    std::vector<std::string> row;
    for (int j = 0; j < p.dim; ++j) row.push_back(to_string(v(j)));
    for (int j = 0; j < p.dim; ++j) {
      std::ostringstream s;
      s << std::setprecision(17) << to_double(v(j));
      row.push_back(s.str());
    }
    csv.row(row);
  }
}

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

void CsvWriter::row(const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out_ << ',';
    out_ << csv_escape(fields[i]);
  }
  out_ << "\r\n";
}

std::map<std::string, std::string> read_key_values(std::istream& in) {
  std::map<std::string, std::string> kv;
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("expected key=value: " + line);
    kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return kv;
}

std::map<std::string, std::string> read_key_values_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return read_key_values(in);
}

}  // namespace tukey::io
