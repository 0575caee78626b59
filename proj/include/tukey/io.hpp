#pragma once

#include "tukey/geometry.hpp"

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace tukey::io {

/// Plain text, one point per line, whitespace separated decimal or p/q
/// literals; '#' starts a comment. A "# snap_bits=<b>" comment is picked up as
/// metadata.
DataSet read_dataset(std::istream& in);
DataSet read_dataset_file(const std::string& path);

/// Writes the shared dataset format; `metadata` lines go into the header.
void write_dataset(std::ostream& out, const DataSet& ds, const std::map<std::string, std::string>& metadata = {});

/// Plain-text region export: vertex block then halfspace block ("u_1 .. u_d q").
void write_region(std::ostream& out, const Polytope& p);
/// Vertex coordinates as CSV (x1..xd plus decimal approximations).
void write_region_csv(std::ostream& out, const Polytope& p);

/// Minimal RFC 4180 writer.
class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& out) : out_(out) {}
  void row(const std::vector<std::string>& fields);

 private:
  std::ostream& out_;
};

std::string csv_escape(const std::string& field);

/// key=value lines, '#' comments; used for distribution and experiment specs.
std::map<std::string, std::string> read_key_values(std::istream& in);
std::map<std::string, std::string> read_key_values_file(const std::string& path);

}  // namespace tukey::io
