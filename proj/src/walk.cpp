#include "minf/walk.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

#include "minf/parallel.hpp"

namespace minf {

namespace {

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Advances a walk by `steps` (<= 64) using the low bits of one draw; set bit = +1.
std::int64_t chunk_delta(std::uint64_t bits, unsigned steps) {
  if (steps < 64) bits &= (std::uint64_t{1} << steps) - 1;
  return 2 * static_cast<std::int64_t>(std::popcount(bits)) - static_cast<std::int64_t>(steps);
}

double lil_scale(std::uint64_t m) {
  const double md = static_cast<double>(m);
  return std::sqrt(md * std::log(std::log(md)));
}

// Quantile by linear interpolation between order statistics (sorted input).
double quantile(const std::vector<double>& sorted, double q) {
  if (sorted.empty()) return 0;
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (pos - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

std::vector<std::uint64_t> lil_grid(std::uint64_t n_max) {
  std::vector<std::uint64_t> grid;
  for (std::uint64_t m = 16; m <= n_max; m *= 2) {
    grid.push_back(m);
    if (m > n_max / 2) break;
  }
  return grid;
}

// Walks one trial to n, reporting |S_m| at each grid point (ascending) via visit(index, S_m).
template <class Visit>
std::int64_t run_walk(std::uint64_t seed, std::uint64_t trial, std::uint64_t n,
                      const std::vector<std::uint64_t>& grid, Visit&& visit) {
  CounterRng rng(seed, trial);
  std::int64_t s = 0;
  std::uint64_t done = 0;
  std::size_t g = 0;
  while (done < n) {
    const std::uint64_t bits = rng.next();
    const auto steps = static_cast<unsigned>(std::min<std::uint64_t>(64, n - done));
    // Grid points falling inside this chunk.
    while (g < grid.size() && grid[g] <= done + steps) {
      const auto partial = static_cast<unsigned>(grid[g] - done);
      visit(g, s + chunk_delta(bits, partial));
      ++g;
    }
    s += chunk_delta(bits, steps);
    done += steps;
  }
  return s;
}

}  // namespace

CounterRng::CounterRng(std::uint64_t seed, std::uint64_t stream)
    : key_(mix64(seed ^ mix64(stream * kGolden + 0x632be59bd9b4e019ULL))) {}

std::uint64_t CounterRng::next() { return mix64(key_ + (++counter_) * kGolden); }

std::int64_t walk_position(std::uint64_t seed, std::uint64_t trial, std::uint64_t n) {
  return run_walk(seed, trial, n, {}, [](std::size_t, std::int64_t) {});
}

WalkStats simulate(std::uint64_t n, std::uint64_t trials, std::uint64_t seed, std::span<const double> c_list,
                   int threads) {
  if (n < 1) throw std::invalid_argument("simulate: n must be >= 1");
  if (trials < 1) throw std::invalid_argument("simulate: trials must be >= 1");
  for (double c : c_list)
    if (!(c > 0)) throw std::invalid_argument("simulate: every c must be positive");

  // |S_n| < c sqrt(n) compared exactly as S_n^2 < c^2 n.
  std::vector<double> thresholds;
  for (double c : c_list) thresholds.push_back(c * c * static_cast<double>(n));
  const auto grid = lil_grid(n);

  std::vector<std::uint64_t> inside(c_list.size(), 0);
  double sup = 0;
  const int workers = resolve_threads(threads);
#pragma omp parallel num_threads(workers)
  {
    std::vector<std::uint64_t> local(c_list.size(), 0);
    double local_sup = 0;
#pragma omp for schedule(static)
    for (std::int64_t t = 0; t < static_cast<std::int64_t>(trials); ++t) {
      const std::int64_t s = run_walk(seed, static_cast<std::uint64_t>(t), n, grid, [&](std::size_t g, std::int64_t sm) {
        local_sup = std::max(local_sup, std::abs(static_cast<double>(sm)) / lil_scale(grid[g]));
      });
      const double sq = static_cast<double>(s) * static_cast<double>(s);
      for (std::size_t k = 0; k < thresholds.size(); ++k)
        if (sq < thresholds[k]) ++local[k];
    }
#pragma omp critical(minf_walk_reduce)
    {
      for (std::size_t k = 0; k < local.size(); ++k) inside[k] += local[k];
      sup = std::max(sup, local_sup);
    }
  }

  WalkStats out;
  out.n = n;
  out.trials = trials;
  out.seed = seed;
  out.c_list.assign(c_list.begin(), c_list.end());
  for (std::uint64_t k : inside) out.empirical_prob.push_back(static_cast<double>(k) / static_cast<double>(trials));
  out.sup_lil = sup;
  return out;
}

double gaussian_prob(double c) { return std::erf(c / std::sqrt(2.0)); }

std::vector<ChebyshevRow> chebyshev_check(const WalkStats& stats, std::span<const double> c_list) {
  std::vector<ChebyshevRow> rows;
  for (double c : c_list) {
    const auto it = std::find(stats.c_list.begin(), stats.c_list.end(), c);
    if (it == stats.c_list.end()) throw std::invalid_argument("chebyshev_check: c not simulated");
    ChebyshevRow r;
    r.c = c;
    r.empirical_prob = stats.empirical_prob[static_cast<std::size_t>(it - stats.c_list.begin())];
    r.empirical_tail = 1.0 - r.empirical_prob;
    r.gaussian_prob = gaussian_prob(c);
    r.bound = 1.0 / (2.0 * c * c);
    r.std_error = std::sqrt(r.empirical_tail * (1.0 - r.empirical_tail) / static_cast<double>(stats.trials));
    r.slack = r.bound + 3.0 * r.std_error - r.empirical_tail;
    r.violated = r.slack < 0;
    rows.push_back(r);
  }
  return rows;
}

std::vector<LilRow> lil_scan(std::uint64_t n_max, std::uint64_t trials, std::uint64_t seed,
                             std::span<const std::pair<std::uint64_t, std::int64_t>> msum_points, int threads) {
  if (n_max < 16) throw std::invalid_argument("lil_scan: n_max must be >= 16");
  if (trials < 1) throw std::invalid_argument("lil_scan: trials must be >= 1");
  const auto grid = lil_grid(n_max);
  const std::uint64_t n_end = grid.back();

  // sups[g * trials + t]: running sup for trial t through grid point g.
  std::vector<double> sups(grid.size() * trials);
  parallel_for(0, static_cast<std::int64_t>(trials), threads, [&](std::int64_t t) {
    double running = 0;
    run_walk(seed, static_cast<std::uint64_t>(t), n_end, grid, [&](std::size_t g, std::int64_t sm) {
      running = std::max(running, std::abs(static_cast<double>(sm)) / lil_scale(grid[g]));
      sups[g * trials + static_cast<std::size_t>(t)] = running;
    });
  });

  std::vector<LilRow> rows;
  double m_running = 0;
  bool m_seen = false;
  std::size_t next_point = 0;
  for (std::size_t g = 0; g < grid.size(); ++g) {
    std::vector<double> column(sups.begin() + static_cast<std::ptrdiff_t>(g * trials),
                               sups.begin() + static_cast<std::ptrdiff_t>((g + 1) * trials));
    std::sort(column.begin(), column.end());
    LilRow row;
    row.n = grid[g];
    row.quantile25 = quantile(column, 0.25);
    row.median = quantile(column, 0.5);
    row.quantile75 = quantile(column, 0.75);
    if (!msum_points.empty()) {
      while (next_point < msum_points.size() && msum_points[next_point].first <= grid[g]) {
        const auto [x, m] = msum_points[next_point++];
        if (x < 16) continue;
        m_running = std::max(m_running, std::abs(static_cast<double>(m)) / lil_scale(x));
        m_seen = true;
      }
      if (m_seen) row.m_inf_ratio = m_running;
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace minf
