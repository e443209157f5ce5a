#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "minf/factorint.hpp"
#include "minf/int128.hpp"

namespace minf {

// One emitted checkpoint of a summatory scan.
struct SummatoryRecord {
  std::uint64_t x = 0;
  std::int64_t msum = 0;  // sum_{n <= x} f(n)
  double ratio = 0;       // msum / sqrt(x)
  double min_ratio = 0;
  std::uint64_t argmin = 0;
  double max_ratio = 0;
  std::uint64_t argmax = 0;
  double wm_integral = 0;  // integral_1^x (msum(u) / u)^2 du

  double wm_over_logx() const;

  friend bool operator==(const SummatoryRecord&, const SummatoryRecord&) = default;
};

// Exact running state of a scan; what a checkpoint file stores.
//
// The weak-Mertens integral is accumulated as an unsigned fixed-point integer in units
// of 2^-64: each cell term msum(n)^2 / (n (n + 1)) is evaluated in double precision and
// truncated to that grid. Integer addition is associative, so partitioned execution
// reproduces the sequential value bit for bit.
struct ScanState {
  ArithKind kind = ArithKind::MuInf;
  std::uint64_t segment_size = 0;
  std::uint64_t x = 0;  // 0 = nothing scanned yet
  std::int64_t msum = 0;
  double min_ratio = 0;
  std::uint64_t argmin = 0;
  double max_ratio = 0;
  std::uint64_t argmax = 0;
  u128 wm_fixed = 0;

  double wm_integral() const;
  SummatoryRecord record() const;

  friend bool operator==(const ScanState&, const ScanState&) = default;
};

inline constexpr std::uint64_t kMinSegmentSize = std::uint64_t{1} << 16;
inline constexpr std::uint64_t kDefaultSegmentSize = std::uint64_t{1} << 18;
inline constexpr std::uint64_t kDefaultCheckpointEvery = 1'000'000;
inline constexpr std::uint64_t kMaxScanX = std::uint64_t{1} << 40;

struct ScanOptions {
  ArithKind kind = ArithKind::MuInf;
  std::uint64_t x_max = 0;
  std::uint64_t segment_size = kDefaultSegmentSize;
  std::uint64_t checkpoint_every = kDefaultCheckpointEvery;
  int threads = 0;  // 0 = machine parallelism
};

// Raised when a resume state does not match the requested scan.
class CheckpointMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

using RecordSink = std::function<void(const SummatoryRecord&, const ScanState&)>;

// Segmented parallel scan over n = 1..x_max (or resume.x + 1..x_max). A record is
// emitted at every multiple of checkpoint_every and at x_max.
ScanState scan(const ScanOptions& options, const RecordSink& sink = {},
               const std::optional<ScanState>& resume = std::nullopt);

std::vector<SummatoryRecord> scan_records(const ScanOptions& options,
                                          const std::optional<ScanState>& resume = std::nullopt);

// Serial reference: one smallest-prime-factor table over the whole range and a
// single sequential fold. Slow and memory-hungry, kept to check the parallel path.
namespace reference {
ScanState scan(const ScanOptions& options, const RecordSink& sink = {},
               const std::optional<ScanState>& resume = std::nullopt);
std::vector<SummatoryRecord> scan_records(const ScanOptions& options,
                                          const std::optional<ScanState>& resume = std::nullopt);
}  // namespace reference

// Primes p <= limit.
std::vector<std::uint32_t> primes_up_to(std::uint32_t limit);

// f(lo + i) for i in [0, out.size()), sieved with the given base primes, which must
// include every prime up to sqrt(lo + out.size() - 1). lo >= 1.
void sieve_segment(ArithKind kind, std::uint64_t lo, std::span<std::int64_t> out,
                   std::span<const std::uint32_t> base_primes);

// f(n) for n in [lo, hi].
std::vector<std::int64_t> sieve_values(ArithKind kind, std::uint64_t lo, std::uint64_t hi, int threads = 0);

struct WeakMertens {
  double integral = 0;
  double over_log = 0;
};

// integral_1^x_max (M_inf(x) / x)^2 dx as an exact step-function sum. x_max >= 2.
WeakMertens weak_mertens(std::uint64_t x_max, int threads = 0);

struct OmegaProbe {
  double sup = 0;  // max |M_inf(x)| / sqrt(x) over 1 <= x <= x_max
  std::uint64_t argmax = 0;

  friend bool operator==(const OmegaProbe&, const OmegaProbe&) = default;
};

OmegaProbe omega_probe(std::uint64_t x_max, int threads = 0);
OmegaProbe omega_probe(const ScanState& state);

// Checkpoint text format:
//   line 1: kind,x,msum,segment_size
//   line 2: min_ratio,argmin,max_ratio,argmax
//   line 3: wm_integral,wm_fixed
// Doubles are written with 17 significant digits; wm_fixed is the exact accumulator.
void save_checkpoint(const std::filesystem::path& path, const ScanState& state);
ScanState load_checkpoint(const std::filesystem::path& path);

}  // namespace minf
