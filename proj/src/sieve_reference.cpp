#include <stdexcept>

#include "minf/sieve.hpp"
#include "summatory_fold.hpp"

namespace minf::reference {

namespace {

// Smallest prime factor of every n <= limit (spf[1] = 1).
std::vector<std::uint32_t> spf_table(std::uint64_t limit) {
  if (limit > (std::uint64_t{1} << 32)) throw std::invalid_argument("reference scan limited to x_max <= 2^32");
  std::vector<std::uint32_t> spf(limit + 1, 0);
  if (limit >= 1) spf[1] = 1;
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (spf[i] != 0) continue;
    for (std::uint64_t j = i; j <= limit; j += i)
      if (spf[j] == 0) spf[j] = static_cast<std::uint32_t>(i);
  }
  return spf;
}

std::int64_t value_at(ArithKind kind, std::uint64_t n, const std::vector<std::uint32_t>& spf) {
  i128 v = 1;
  while (n > 1) {
    const std::uint32_t p = spf[n];
    unsigned e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    v = checked_mul(v, prime_power_value(kind, p, e));
  }
  if (v > INT64_MAX || v < INT64_MIN) throw std::range_error("value exceeds 64 bits");
  return static_cast<std::int64_t>(v);
}

}  // namespace

ScanState scan(const ScanOptions& options, const RecordSink& sink, const std::optional<ScanState>& resume) {
  ScanState st = detail::initial_state(options, resume);
  if (st.x >= options.x_max) return st;
  const auto spf = spf_table(options.x_max);
  for (std::uint64_t n = st.x + 1; n <= options.x_max; ++n) {
    detail::step(st, n, value_at(options.kind, n, spf));
    if (sink && detail::is_checkpoint(n, options)) sink(st.record(), st);
  }
  return st;
}

std::vector<SummatoryRecord> scan_records(const ScanOptions& options, const std::optional<ScanState>& resume) {
  std::vector<SummatoryRecord> out;
  reference::scan(options, [&](const SummatoryRecord& r, const ScanState&) { out.push_back(r); }, resume);
  return out;
}

}  // namespace minf::reference
