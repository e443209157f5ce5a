#include "minf/sieve.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

#include "minf/parallel.hpp"
#include "summatory_fold.hpp"

namespace minf {

double SummatoryRecord::wm_over_logx() const {
  return x >= 2 ? wm_integral / std::log(static_cast<double>(x)) : 0.0;
}

double ScanState::wm_integral() const { return static_cast<double>(wm_fixed) * 0x1p-64; }

SummatoryRecord ScanState::record() const {
  SummatoryRecord r;
  r.x = x;
  r.msum = msum;
  r.ratio = x > 0 ? detail::ratio_at(msum, x) : 0.0;
  r.min_ratio = min_ratio;
  r.argmin = argmin;
  r.max_ratio = max_ratio;
  r.argmax = argmax;
  r.wm_integral = wm_integral();
  return r;
}

std::vector<std::uint32_t> primes_up_to(std::uint32_t limit) {
  std::vector<std::uint32_t> out;
  if (limit < 2) return out;
  std::vector<bool> composite(static_cast<std::size_t>(limit) + 1, false);
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (composite[i]) continue;
    out.push_back(static_cast<std::uint32_t>(i));
    for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = true;
  }
  return out;
}

namespace {

std::uint32_t isqrt(std::uint64_t n) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return static_cast<std::uint32_t>(r);
}

// mu and mu_inf only depend on exponents: the pass over multiples of p^k flips the sign
// whenever parity(popcount(k)) != parity(popcount(k - 1)) (mu_inf) or k == 1 (mu), and
// zeroes at k == 2 (mu). prod[i] collects the part of n factored so far; what remains
// is a single prime above sqrt(n).
void sieve_sign_kernel(ArithKind kind, std::uint64_t lo, std::span<std::int64_t> out,
                       std::span<const std::uint32_t> base_primes) {
  const std::uint64_t len = out.size();
  const std::uint64_t hi = lo + len;  // exclusive
  std::vector<std::uint64_t> prod(len, 1);
  std::fill(out.begin(), out.end(), 1);
  for (const std::uint32_t p : base_primes) {
    if (std::uint64_t{p} * p > hi - 1) break;
    std::uint64_t pk = p;
    for (unsigned k = 1;; ++k) {
      const std::uint64_t start = (lo + pk - 1) / pk * pk;
      const bool flip = kind == ArithKind::MuInf ? ((std::popcount(k) ^ std::popcount(k - 1)) & 1) != 0 : k == 1;
      if (kind == ArithKind::Mu && k == 2) {
        for (std::uint64_t m = start; m < hi; m += pk) {
          prod[m - lo] *= p;
          out[m - lo] = 0;
        }
      } else if (flip) {
        for (std::uint64_t m = start; m < hi; m += pk) {
          prod[m - lo] *= p;
          out[m - lo] = -out[m - lo];
        }
      } else {
        for (std::uint64_t m = start; m < hi; m += pk) prod[m - lo] *= p;
      }
      if (pk > (hi - 1) / p) break;
      pk *= p;
    }
  }
  for (std::uint64_t i = 0; i < len; ++i)
    if (prod[i] != lo + i) out[i] = -out[i];
}

std::int64_t narrow(i128 v) {
  if (v > INT64_MAX || v < INT64_MIN) throw std::range_error("sieved value exceeds 64 bits");
  return static_cast<std::int64_t>(v);
}

// Generic multiplicative kinds: extract each exponent by division.
void sieve_generic_kernel(ArithKind kind, std::uint64_t lo, std::span<std::int64_t> out,
                          std::span<const std::uint32_t> base_primes) {
  const std::uint64_t len = out.size();
  const std::uint64_t hi = lo + len;
  std::vector<std::uint64_t> rem(len);
  for (std::uint64_t i = 0; i < len; ++i) rem[i] = lo + i;
  std::fill(out.begin(), out.end(), 1);
  for (const std::uint32_t p : base_primes) {
    if (std::uint64_t{p} * p > hi - 1) break;
    const std::uint64_t start = (lo + p - 1) / p * p;
    for (std::uint64_t m = start; m < hi; m += p) {
      const std::uint64_t i = m - lo;
      unsigned e = 0;
      do {
        rem[i] /= p;
        ++e;
      } while (rem[i] % p == 0);
      out[i] = narrow(checked_mul(out[i], prime_power_value(kind, p, e)));
    }
  }
  for (std::uint64_t i = 0; i < len; ++i)
    if (rem[i] > 1) out[i] = narrow(checked_mul(out[i], prime_power_value(kind, rem[i], 1)));
}

}  // namespace

void sieve_segment(ArithKind kind, std::uint64_t lo, std::span<std::int64_t> out,
                   std::span<const std::uint32_t> base_primes) {
  if (lo == 0) throw std::invalid_argument("sieve_segment: lo must be >= 1");
  if (out.empty()) return;
  if (kind == ArithKind::Mu || kind == ArithKind::MuInf)
    sieve_sign_kernel(kind, lo, out, base_primes);
  else
    sieve_generic_kernel(kind, lo, out, base_primes);
}

std::vector<std::int64_t> sieve_values(ArithKind kind, std::uint64_t lo, std::uint64_t hi, int threads) {
  if (lo == 0 || hi < lo) throw std::invalid_argument("sieve_values: need 1 <= lo <= hi");
  const auto primes = primes_up_to(isqrt(hi));
  std::vector<std::int64_t> out(hi - lo + 1);
  const std::uint64_t seg = kDefaultSegmentSize;
  const auto nseg = static_cast<std::int64_t>((out.size() + seg - 1) / seg);
  parallel_for(0, nseg, threads, [&](std::int64_t s) {
    const std::uint64_t off = static_cast<std::uint64_t>(s) * seg;
    const std::uint64_t len = std::min<std::uint64_t>(seg, out.size() - off);
    sieve_segment(kind, lo + off, std::span(out).subspan(off, len), primes);
  });
  return out;
}

namespace detail {

ScanState initial_state(const ScanOptions& o, const std::optional<ScanState>& resume) {
  if (o.x_max < 1) throw std::invalid_argument("scan: x_max must be >= 1");
  if (o.x_max > kMaxScanX) throw std::invalid_argument("scan: x_max exceeds the 2^40 cap");
  if (o.segment_size < kMinSegmentSize) throw std::invalid_argument("scan: segment_size must be >= 2^16");
  if (o.checkpoint_every < 1) throw std::invalid_argument("scan: checkpoint_every must be >= 1");
  if (!resume) {
    ScanState st;
    st.kind = o.kind;
    st.segment_size = o.segment_size;
    return st;
  }
  if (resume->kind != o.kind)
    throw CheckpointMismatch("checkpoint kind " + std::string(to_string(resume->kind)) +
                             " does not match requested " + std::string(to_string(o.kind)));
  if (resume->segment_size != o.segment_size)
    throw CheckpointMismatch("checkpoint segment size " + std::to_string(resume->segment_size) +
                             " does not match requested " + std::to_string(o.segment_size));
  if (resume->x > o.x_max)
    throw CheckpointMismatch("checkpoint x = " + std::to_string(resume->x) + " is beyond x_max");
  return *resume;
}

}  // namespace detail

ScanState scan(const ScanOptions& options, const RecordSink& sink, const std::optional<ScanState>& resume) {
  ScanState st = detail::initial_state(options, resume);
  if (st.x >= options.x_max) return st;

  const auto primes = primes_up_to(isqrt(options.x_max));
  const int threads = resolve_threads(options.threads);
  const std::uint64_t seg = options.segment_size;
  const std::size_t batch = static_cast<std::size_t>(std::max(1, 2 * threads));

  std::vector<std::vector<std::int64_t>> buffers(batch);
  std::vector<std::int64_t> totals(batch);
  std::vector<std::int64_t> offsets(batch);
  std::vector<std::vector<detail::Partial>> partials(batch);

  std::uint64_t next = st.x + 1;
  while (next <= options.x_max) {
    const std::uint64_t remaining = options.x_max - next + 1;
    const std::size_t nseg = static_cast<std::size_t>(std::min<std::uint64_t>(batch, (remaining + seg - 1) / seg));
    std::vector<std::uint64_t> lows(nseg);
    for (std::size_t s = 0; s < nseg; ++s) {
      lows[s] = next + s * seg;
      buffers[s].resize(std::min<std::uint64_t>(seg, options.x_max - lows[s] + 1));
    }

    parallel_for(0, static_cast<std::int64_t>(nseg), threads, [&](std::int64_t s) {
      sieve_segment(options.kind, lows[s], buffers[s], primes);
      std::int64_t total = 0;
      for (std::int64_t v : buffers[s]) total = detail::add_msum(total, v);
      totals[s] = total;
    });

    std::int64_t running = st.msum;
    for (std::size_t s = 0; s < nseg; ++s) {
      offsets[s] = running;
      running = detail::add_msum(running, totals[s]);
    }

    parallel_for(0, static_cast<std::int64_t>(nseg), threads, [&](std::int64_t s) {
      auto& out = partials[s];
      out.clear();
      const auto& values = buffers[s];
      const std::uint64_t lo = lows[s];
      detail::PartialFold fold(lo, offsets[s]);
      for (std::uint64_t i = 0; i < values.size(); ++i) {
        const std::uint64_t n = lo + i;
        fold.push(n, values[i]);
        if (detail::is_checkpoint(n, options) && i + 1 < values.size()) {
          out.push_back(fold.result());
          fold = detail::PartialFold(n + 1, fold.result().msum);
        }
      }
      out.push_back(fold.result());
    });

    for (std::size_t s = 0; s < nseg; ++s) {
      for (const auto& p : partials[s]) {
        detail::merge(st, p);
        if (sink && detail::is_checkpoint(st.x, options)) sink(st.record(), st);
      }
      next += buffers[s].size();
    }
  }
  return st;
}

std::vector<SummatoryRecord> scan_records(const ScanOptions& options, const std::optional<ScanState>& resume) {
  std::vector<SummatoryRecord> out;
  scan(options, [&](const SummatoryRecord& r, const ScanState&) { out.push_back(r); }, resume);
  return out;
}

WeakMertens weak_mertens(std::uint64_t x_max, int threads) {
  if (x_max < 2) throw std::invalid_argument("weak_mertens: x_max must be >= 2");
  ScanOptions o;
  o.kind = ArithKind::MuInf;
  o.x_max = x_max;
  o.checkpoint_every = x_max;
  o.threads = threads;
  const auto rec = scan(o).record();
  return {rec.wm_integral, rec.wm_over_logx()};
}

OmegaProbe omega_probe(const ScanState& st) {
  const double lo = -st.min_ratio;
  if (st.max_ratio > lo || (st.max_ratio == lo && st.argmax <= st.argmin)) return {st.max_ratio, st.argmax};
  return {lo, st.argmin};
}

OmegaProbe omega_probe(std::uint64_t x_max, int threads) {
  ScanOptions o;
  o.kind = ArithKind::MuInf;
  o.x_max = x_max;
  o.checkpoint_every = x_max;
  o.threads = threads;
  return omega_probe(scan(o));
}

}  // namespace minf
