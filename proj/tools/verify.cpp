#include "verify.hpp"

#include <random>
#include <sstream>

#include "minf/convolve.hpp"
#include "minf/sieve.hpp"
#include "minf/zetafun.hpp"
#include "output.hpp"

namespace minf::cli {

namespace {

std::vector<double> linspace(double a, double b, std::size_t n) {
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i)
    out[i] = n == 1 ? a : a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
  return out;
}

}  // namespace

std::vector<CheckResult> verify_convolution(std::size_t limit, int threads) {
  std::vector<CheckResult> out;
  const FnTable one = constant_one(limit);
  const FnTable id = delta(limit);
  const FnTable mu_inf = table_of(ArithKind::MuInf, limit);
  const FnTable mu = table_of(ArithKind::Mu, limit);
  for (ConvKind kind : kAllConvKinds) {
    const std::string name(to_string(kind));
    const FnTable inv = inverse(kind, one, limit);
    const FnTable& expected = kind == ConvKind::Dirichlet ? mu : mu_inf;
    std::size_t mismatch = 0;
    for (std::size_t n = 1; n <= limit; ++n)
      if (inv(n) != expected(n) && mismatch == 0) mismatch = n;
    out.push_back({"inverse_of_one_" + name, mismatch == 0,
                   mismatch == 0 ? "matches " + std::string(kind == ConvKind::Dirichlet ? "mu" : "mu_inf") +
                                       " to " + std::to_string(limit)
                                 : "first mismatch at n = " + std::to_string(mismatch)});
    const bool is_delta = convolve(kind, inv, one, limit, threads) == id;
    out.push_back({"one_times_inverse_is_delta_" + name, is_delta, "n <= " + std::to_string(limit)});
  }
  return out;
}

std::vector<CheckResult> verify_bounds(int threads) {
  std::vector<CheckResult> out;
  const auto sigmas = linspace(1.05, 3.0, 20);
  const auto ts = linspace(0.0, 30.0, 20);
  const int depths[] = {1, 2, 3};
  const auto main = bounds_check(sigmas, ts, depths, threads);
  out.push_back({"zeta_bounds_grid", main.violations == 0,
                 std::to_string(main.rows.size()) + " checks, " + std::to_string(main.violations) +
                     " violations, min slack " + fmt(main.min_slack)});
  for (int J : depths) {
    std::vector<double> scaled;
    for (double s : sigmas) scaled.push_back(std::ldexp(s, -J));
    const int one_depth[] = {J};
    const auto r = bounds_check(scaled, ts, one_depth, threads);
    out.push_back({"tail_product_bound_scaled_J" + std::to_string(J), r.violations == 0 && !r.rows.empty(),
                   std::to_string(r.rows.size()) + " checks, " + std::to_string(r.violations) +
                       " violations, min slack " + fmt(r.min_slack)});
  }
  return out;
}

std::vector<CheckResult> verify_sieve(std::uint64_t limit, std::uint64_t seed, int threads) {
  std::vector<CheckResult> out;
  const auto values = sieve_values(ArithKind::MuInf, 1, limit, threads);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint64_t> pick(1, limit);
  std::size_t bad = 0;
  for (int i = 0; i < 10000; ++i) {
    const std::uint64_t n = pick(rng);
    if (values[n - 1] != mu_infinity(n)) ++bad;
  }
  out.push_back({"sieve_vs_pointwise", bad == 0, std::to_string(bad) + " mismatches in 10000 samples"});

  ScanOptions o;
  o.kind = ArithKind::MuInf;
  o.x_max = limit;
  o.checkpoint_every = std::max<std::uint64_t>(1, limit / 10);
  o.threads = threads;
  o.segment_size = std::uint64_t{1} << 16;
  const auto small = scan_records(o);
  o.segment_size = std::uint64_t{1} << 20;
  const auto large = scan_records(o);
  out.push_back({"segment_size_invariance", small == large, std::to_string(small.size()) + " records"});

  const auto ref = reference::scan_records(o);
  out.push_back({"parallel_matches_serial_reference", ref == large, std::to_string(ref.size()) + " records"});
  return out;
}

}  // namespace minf::cli
