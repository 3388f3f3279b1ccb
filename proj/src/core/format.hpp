#pragma once

#include <string>
#include <vector>

namespace chainstore {

/// Fixed numeric rendering for CSV payloads: 12 significant digits, '.'
/// decimal separator, no locale dependence. Byte-identical across runs for
/// identical doubles.
std::string format_number(double x);

/// Simple rectangular CSV with a mandatory header row. Fields in this artifact
/// never contain separators or quotes, so no quoting layer is needed.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::string emit() const;
  static CsvTable parse(const std::string& text);
};

}  // namespace chainstore
