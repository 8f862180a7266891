#include "mdlcorr/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <unordered_set>

#include "mdlcorr/errors.hpp"

namespace mdlcorr {

namespace {

std::vector<std::string> split(const std::string& line, char delim) {
  std::vector<std::string> out;
  std::string cell;
  for (char ch : line) {
    if (ch == delim) {
      out.push_back(cell);
      cell.clear();
    } else {
      cell.push_back(ch);
    }
  }
  out.push_back(cell);
  for (auto& c : out) {
    const auto b = c.find_first_not_of(" \t\"");
    const auto e = c.find_last_not_of(" \t\"");
    c = b == std::string::npos ? std::string() : c.substr(b, e - b + 1);
  }
  return out;
}

std::optional<double> parse_double(const std::string& s) {
  if (s.empty()) return std::nullopt;
  const char* begin = s.data();
  if (*begin == '+') ++begin;
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(begin, s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) return std::nullopt;
  return v;
}

}  // namespace

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

Orientation parse_orientation(const std::string& s) {
  if (s == "samples" || s == "samples-as-rows" || s == "rows-are-samples") return Orientation::SamplesAsRows;
  if (s == "features" || s == "features-as-rows" || s == "rows-are-features") return Orientation::FeaturesAsRows;
  throw InvalidArgument("unknown orientation '" + s + "' (expected 'samples' or 'features')");
}

DataMatrix read_matrix(std::istream& is, const IngestOptions& options) {
  std::vector<std::pair<std::size_t, std::string>> lines;
  std::string line;
  for (std::size_t no = 1; std::getline(is, line); ++no) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    lines.emplace_back(no, line);
  }
  if (lines.empty()) throw ParseError(1, "empty input");

  const char delim = options.delimiter.value_or(lines.front().second.find('\t') != std::string::npos ? '\t' : ',');
  std::vector<std::vector<std::string>> rows;
  rows.reserve(lines.size());
  for (const auto& [no, text] : lines) rows.push_back(split(text, delim));

  bool header = false;
  if (options.header) {
    header = *options.header;
  } else {
    for (const auto& c : rows.front()) {
      if (!c.empty() && !parse_double(c)) header = true;
    }
    // A leading empty cell is the usual corner of an ID column + header.
    if (!rows.front().empty() && rows.front().front().empty()) header = true;
  }
  const std::size_t first_data = header ? 1 : 0;
  if (first_data >= rows.size()) throw ParseError(lines.back().first, "no data rows");

  bool id_column = false;
  if (options.id_column) {
    id_column = *options.id_column;
  } else {
    id_column = !parse_double(rows[first_data].front()).has_value();
  }

  const std::size_t width = rows[first_data].size();
  if (header && rows.front().size() != width) {
    throw ParseError(lines[first_data].first, "row has " + std::to_string(width) + " fields but the header has " +
                                                   std::to_string(rows.front().size()));
  }
  const std::size_t skip = id_column ? 1 : 0;
  if (width <= skip) throw ParseError(lines[first_data].first, "no numeric columns");

  const auto n_rows = static_cast<Eigen::Index>(rows.size() - first_data);
  const auto n_cols = static_cast<Eigen::Index>(width - skip);
  Eigen::MatrixXd m(n_rows, n_cols);
  std::vector<std::string> row_ids;
  for (std::size_t r = first_data; r < rows.size(); ++r) {
    const auto& cells = rows[r];
    const std::size_t no = lines[r].first;
    if (cells.size() != width) {
      throw ParseError(no, "ragged row: expected " + std::to_string(width) + " fields, found " +
                               std::to_string(cells.size()));
    }
    if (id_column) row_ids.push_back(cells.front());
    for (std::size_t c = skip; c < width; ++c) {
      const auto v = parse_double(cells[c]);
      if (!v) throw ParseError(no, "non-numeric cell '" + cells[c] + "' in column " + std::to_string(c + 1));
      m(static_cast<Eigen::Index>(r - first_data), static_cast<Eigen::Index>(c - skip)) = *v;
    }
  }

  std::vector<std::string> names;
  if (options.orientation == Orientation::SamplesAsRows) {
    if (header) names.assign(rows.front().begin() + static_cast<std::ptrdiff_t>(skip), rows.front().end());
    std::unordered_set<std::string> seen;
    for (const auto& n : names) {
      if (!seen.insert(n).second) throw ParseError(lines.front().first, "duplicate feature name '" + n + "'");
    }
    return DataMatrix(std::move(m), std::move(names));
  }
  if (id_column) {
    std::unordered_set<std::string> seen;
    for (std::size_t r = 0; r < row_ids.size(); ++r) {
      if (!seen.insert(row_ids[r]).second) {
        throw ParseError(lines[first_data + r].first, "duplicate feature name '" + row_ids[r] + "'");
      }
    }
    names = std::move(row_ids);
  }
  return DataMatrix(m.transpose(), std::move(names));
}

DataMatrix ingest_matrix(const std::string& path, const IngestOptions& options) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open '" + path + "'");
  IngestOptions opts = options;
  if (!opts.delimiter && (path.ends_with(".tsv") || path.ends_with(".tab"))) opts.delimiter = '\t';
  return read_matrix(in, opts);
}

void write_matrix(std::ostream& os, const DataMatrix& data, Orientation orientation, char delimiter) {
  const auto& x = data.values;
  if (orientation == Orientation::SamplesAsRows) {
    for (std::size_t j = 0; j < data.feature_names.size(); ++j) {
      if (j > 0) os << delimiter;
      os << data.feature_names[j];
    }
    os << '\n';
    for (Eigen::Index s = 0; s < x.rows(); ++s) {
      for (Eigen::Index j = 0; j < x.cols(); ++j) {
        if (j > 0) os << delimiter;
        os << format_number(x(s, j));
      }
      os << '\n';
    }
    return;
  }
  os << "feature";
  for (Eigen::Index s = 0; s < x.rows(); ++s) os << delimiter << 's' << s;
  os << '\n';
  for (Eigen::Index j = 0; j < x.cols(); ++j) {
    os << data.feature_names[static_cast<std::size_t>(j)];
    for (Eigen::Index s = 0; s < x.rows(); ++s) os << delimiter << format_number(x(s, j));
    os << '\n';
  }
}

void write_partition(std::ostream& os, const Partition& partition, const std::vector<std::string>& names) {
  os << "node_id,module_id\n";
  for (std::size_t i = 0; i < partition.size(); ++i) {
    if (i < names.size()) {
      os << names[i];
    } else {
      os << i;
    }
    os << ',' << partition[i] << '\n';
  }
}

Partition read_partition(std::istream& is) {
  std::string line;
  std::vector<int> labels;
  for (std::size_t no = 1; std::getline(is, line); ++no) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || (no == 1 && line.rfind("node_id", 0) == 0)) continue;
    const auto cells = split(line, ',');
    if (cells.size() != 2) throw ParseError(no, "expected two fields");
    int label = 0;
    const auto& c = cells[1];
    const auto [ptr, ec] = std::from_chars(c.data(), c.data() + c.size(), label);
    if (ec != std::errc() || ptr != c.data() + c.size()) throw ParseError(no, "non-integer module id '" + c + "'");
    labels.push_back(label);
  }
  return Partition::canonical(labels);
}

}  // namespace mdlcorr
