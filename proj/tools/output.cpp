#include "output.hpp"

#include <cmath>
#include <cstdio>

namespace minf::cli {

std::string fmt(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt(i128 v) { return to_string(v); }

namespace {

bool is_json_number(const std::string& s) {
  if (s.empty() || s == "nan" || s == "inf" || s == "-inf") return false;
  std::size_t i = s[0] == '-' ? 1 : 0;
  if (i >= s.size()) return false;
  for (; i < s.size(); ++i) {
    const char c = s[i];
    if (!((c >= '0' && c <= '9') || c == '.' || c == 'e' || c == 'E' || c == '+' || c == '-')) return false;
  }
  return true;
}

std::string json_string(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  return out + "\"";
}

}  // namespace

void write_column_header(std::ostream& out, const Table& table, Format format) {
  if (format != Format::Csv) return;
  for (std::size_t i = 0; i < table.columns.size(); ++i) out << (i ? "," : "") << table.columns[i];
  out << '\n';
}

void write_rows(std::ostream& out, const Table& table, Format format, bool with_column_header) {
  if (with_column_header) write_column_header(out, table, format);
  for (const auto& row : table.rows) {
    if (format == Format::Csv) {
      for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << row[i];
    } else {
      out << '{';
      for (std::size_t i = 0; i < row.size(); ++i) {
        out << (i ? "," : "") << json_string(table.columns[i]) << ':';
        if (row[i].empty())
          out << "null";
        else if (is_json_number(row[i]))
          out << row[i];
        else
          out << json_string(row[i]);
      }
      out << '}';
    }
    out << '\n';
  }
}

std::string file_digest(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  std::uint64_t h = 0xcbf29ce484222325ULL;
  char buf[1 << 14];
  while (in.read(buf, sizeof buf) || in.gcount() > 0) {
    for (std::streamsize i = 0; i < in.gcount(); ++i) {
      h ^= static_cast<unsigned char>(buf[i]);
      h *= 0x100000001b3ULL;
    }
  }
  char hex[17];
  std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(h));
  return hex;
}

OutputFile::OutputFile(std::filesystem::path path)
    : path_(std::move(path)), partial_(path_.string() + ".partial") {
  out_.open(partial_, std::ios::trunc);
  if (!out_) throw IoError("cannot open output file " + partial_.string());
}

OutputFile::~OutputFile() {
  if (!committed_) {
    out_.close();
    std::error_code ec;
    std::filesystem::remove(partial_, ec);
  }
}

void OutputFile::commit() {
  out_.flush();
  if (!out_) throw IoError("failed writing " + partial_.string());
  out_.close();
  std::filesystem::rename(partial_, path_);
  committed_ = true;
}

}  // namespace minf::cli
