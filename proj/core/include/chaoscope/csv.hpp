#pragma once

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

namespace chaoscope {

// 17 significant digits: enough to round-trip any binary64 value exactly.
std::string format_double(double v);

// Fixed-point with the given number of decimals, for human-facing summaries.
std::string format_fixed(double v, int decimals);

// Minimal CSV emitter: UTF-8, LF line endings, comma separator, mandatory
// header row. Numeric cells go through format_double.
class CsvWriter {
 public:
  explicit CsvWriter(const std::filesystem::path& path);

  void header(const std::vector<std::string>& columns);
  void row(const std::vector<std::string>& cells);

  // Convenience cell builders.
  static std::string cell(double v) { return format_double(v); }
  static std::string cell(std::size_t v) { return std::to_string(v); }

  void flush() { out_.flush(); }
  bool good() const { return out_.good(); }

 private:
  std::ofstream out_;
  std::size_t columns_ = 0;
};

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

// Strict reader for the files this library writes (no quoting or escapes).
CsvTable read_csv(const std::filesystem::path& path);

}  // namespace chaoscope
