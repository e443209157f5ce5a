#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "minf/sieve.hpp"

namespace minf {

namespace {

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<std::string> split_fields(const std::string& line, std::size_t expected, int line_no) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) out.push_back(field);
  if (out.size() != expected)
    throw std::runtime_error("checkpoint line " + std::to_string(line_no) + ": expected " +
                             std::to_string(expected) + " fields, got " + std::to_string(out.size()));
  return out;
}

double parse_double(const std::string& s, int line_no) {
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != s.size() || s.empty())
    throw std::runtime_error("checkpoint line " + std::to_string(line_no) + ": bad number '" + s + "'");
  return v;
}

std::uint64_t parse_u64(const std::string& s, int line_no) {
  try {
    const u128 v = parse_u128(s);
    if (v > UINT64_MAX) throw std::range_error(s);
    return static_cast<std::uint64_t>(v);
  } catch (const std::exception&) {
    throw std::runtime_error("checkpoint line " + std::to_string(line_no) + ": bad integer '" + s + "'");
  }
}

std::int64_t parse_i64(const std::string& s, int line_no) {
  const bool neg = !s.empty() && s[0] == '-';
  const std::uint64_t mag = parse_u64(neg ? s.substr(1) : s, line_no);
  if (mag > static_cast<std::uint64_t>(INT64_MAX))
    throw std::runtime_error("checkpoint line " + std::to_string(line_no) + ": integer out of range");
  return neg ? -static_cast<std::int64_t>(mag) : static_cast<std::int64_t>(mag);
}

}  // namespace

void save_checkpoint(const std::filesystem::path& path, const ScanState& st) {
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write checkpoint " + tmp.string());
    out << to_string(st.kind) << ',' << st.x << ',' << st.msum << ',' << st.segment_size << '\n'
        << fmt17(st.min_ratio) << ',' << st.argmin << ',' << fmt17(st.max_ratio) << ',' << st.argmax << '\n'
        << fmt17(st.wm_integral()) << ',' << to_string(st.wm_fixed) << '\n';
    if (!out) throw std::runtime_error("failed writing checkpoint " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

ScanState load_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read checkpoint " + path.string());
  std::string l1, l2, l3;
  if (!std::getline(in, l1) || !std::getline(in, l2) || !std::getline(in, l3))
    throw std::runtime_error("checkpoint " + path.string() + " is truncated");
  const auto f1 = split_fields(l1, 4, 1);
  const auto f2 = split_fields(l2, 4, 2);
  const auto f3 = split_fields(l3, 2, 3);
  ScanState st;
  try {
    st.kind = parse_arith_kind(f1[0]);
  } catch (const std::invalid_argument& e) {
    throw std::runtime_error(std::string("checkpoint line 1: ") + e.what());
  }
  st.x = parse_u64(f1[1], 1);
  st.msum = parse_i64(f1[2], 1);
  st.segment_size = parse_u64(f1[3], 1);
  st.min_ratio = parse_double(f2[0], 2);
  st.argmin = parse_u64(f2[1], 2);
  st.max_ratio = parse_double(f2[2], 2);
  st.argmax = parse_u64(f2[3], 2);
  try {
    st.wm_fixed = parse_u128(f3[1]);
  } catch (const std::exception&) {
    throw std::runtime_error("checkpoint line 3: bad accumulator '" + f3[1] + "'");
  }
  (void)parse_double(f3[0], 3);
  return st;
}

}  // namespace minf
