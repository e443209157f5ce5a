#pragma once

#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "minf/int128.hpp"

namespace minf::cli {

inline constexpr const char* kVersion = "0.1.0";

enum class Format { Csv, Json };

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Doubles use 17 significant digits so identical runs give identical bytes.
std::string fmt(double v);
std::string fmt(i128 v);
inline std::string fmt(std::int64_t v) { return std::to_string(v); }
inline std::string fmt(std::uint64_t v) { return std::to_string(v); }

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;  // empty cell = missing value

  void add(std::vector<std::string> row) { rows.push_back(std::move(row)); }
};

// CSV: a header row then one line per record. JSON: one object per record per line.
void write_rows(std::ostream& out, const Table& table, Format format, bool with_column_header = true);
void write_column_header(std::ostream& out, const Table& table, Format format);

// 64-bit FNV-1a of a file's bytes, as 16 hex digits.
std::string file_digest(const std::filesystem::path& path);

// Output file written through "<path>.partial" and renamed on commit(); removed if
// the sink is destroyed without commit().
class OutputFile {
 public:
  explicit OutputFile(std::filesystem::path path);
  ~OutputFile();
  OutputFile(const OutputFile&) = delete;
  OutputFile& operator=(const OutputFile&) = delete;

  std::ostream& stream() { return out_; }
  void commit();

 private:
  std::filesystem::path path_;
  std::filesystem::path partial_;
  std::ofstream out_;
  bool committed_ = false;
};

}  // namespace minf::cli
