#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "mdlcorr/types.hpp"

namespace mdlcorr {

/// Fixed numeric format for every emitted table: 12 significant digits.
std::string format_number(double v);

enum class Orientation {
  SamplesAsRows,
  FeaturesAsRows,
};

Orientation parse_orientation(const std::string& s);

struct IngestOptions {
  Orientation orientation = Orientation::SamplesAsRows;
  /// Field separator; detected from the first line (tab, comma) when unset.
  std::optional<char> delimiter;
  /// Header row present; detected when unset (any non-numeric cell on the
  /// first line).
  std::optional<bool> header;
  /// Leading ID column present; detected when unset (non-numeric first cell
  /// on the first data line).
  std::optional<bool> id_column;
};

/// Parses a delimited numeric table. Features-as-rows input is transposed.
/// Throws ParseError (with the 1-based line) on ragged rows, non-numeric
/// cells or duplicate feature names.
DataMatrix read_matrix(std::istream& is, const IngestOptions& options = {});
DataMatrix ingest_matrix(const std::string& path, const IngestOptions& options = {});

/// Writes with a header row; features-as-rows output carries a leading
/// "feature" ID column.
void write_matrix(std::ostream& os, const DataMatrix& data, Orientation orientation, char delimiter = ',');

/// "node_id,module_id" with node ids taken from `names` (or indices).
void write_partition(std::ostream& os, const Partition& partition, const std::vector<std::string>& names = {});

/// Reads a two-column partition CSV written by write_partition, returning
/// labels in file order.
Partition read_partition(std::istream& is);

}  // namespace mdlcorr
