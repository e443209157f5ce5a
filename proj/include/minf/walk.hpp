#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace minf {

// Counter-based generator: the k-th output of stream (seed, trial) is a pure function of
// (seed, trial, k), so trials can run in any order on any worker.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t stream);
  std::uint64_t next();

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

// S_n of trial `trial` under `seed`; S_0 = 0, steps +-1 with probability 1/2.
std::int64_t walk_position(std::uint64_t seed, std::uint64_t trial, std::uint64_t n);

struct WalkStats {
  std::uint64_t n = 0;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  std::vector<double> c_list;
  std::vector<double> empirical_prob;  // fraction of trials with |S_n| < c sqrt(n)
  // Largest |S_m| / sqrt(m log log m) over m = 16, 32, ..., <= n and all trials (0 if n < 16).
  double sup_lil = 0;

  friend bool operator==(const WalkStats&, const WalkStats&) = default;
};

WalkStats simulate(std::uint64_t n, std::uint64_t trials, std::uint64_t seed, std::span<const double> c_list,
                   int threads = 0);

// (1/sqrt(2 pi)) integral_{-c}^{c} exp(-x^2/2) dx
double gaussian_prob(double c);

struct ChebyshevRow {
  double c = 0;
  double empirical_prob = 0;
  double empirical_tail = 0;  // P(|S_n| >= c sqrt(n))
  double gaussian_prob = 0;
  double bound = 0;           // 1 / (2 c^2)
  double std_error = 0;       // binomial standard error of empirical_tail
  double slack = 0;           // bound + 3 std_error - empirical_tail
  bool violated = false;
};

// Every c must appear in stats.c_list (std::invalid_argument otherwise).
std::vector<ChebyshevRow> chebyshev_check(const WalkStats& stats, std::span<const double> c_list);

struct LilRow {
  std::uint64_t n = 0;
  double quantile25 = 0;
  double median = 0;
  double quantile75 = 0;
  std::optional<double> m_inf_ratio;

  friend bool operator==(const LilRow&, const LilRow&) = default;
};

// For each grid point n = 16, 32, ... <= n_max: quantiles over trials of the running
// sup of |S_m| / sqrt(m log log m), m on the grid up to n. When summatory points
// (x, M(x)) are given, the same running sup over those x <= n fills m_inf_ratio.
std::vector<LilRow> lil_scan(std::uint64_t n_max, std::uint64_t trials, std::uint64_t seed,
                             std::span<const std::pair<std::uint64_t, std::int64_t>> msum_points = {},
                             int threads = 0);

}  // namespace minf
