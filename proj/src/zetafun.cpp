#include "minf/zetafun.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "minf/parallel.hpp"
#include "minf/sieve.hpp"

namespace minf {

namespace {

// B_{2k} / (2k)! for k = 1..30.
constexpr std::array<double, 30> kBernoulliOverFactorial = {
    8.33333333333333287e-02,  -1.38888888888888894e-03, 3.30687830687830710e-05,
    -8.26719576719576754e-07, 2.08767569878681002e-08,  -5.28419013868749322e-10,
    1.33825365306846789e-11,  -3.38968029632258272e-13, 8.58606205627784517e-15,
    -2.17486869855806192e-16, 5.50900282836022953e-18,  -1.39544646858125223e-19,
    3.53470703962946728e-21,  -8.95351742703754628e-23, 2.26795245233768293e-24,
    -5.74479066887220246e-26, 1.45517247561486496e-27,  -3.68599494066531029e-29,
    9.33673425709504507e-31,  -2.36502241570062995e-32, 5.99067176248213414e-34,
    -1.51745488446829032e-35, 3.84375812545418860e-37,  -9.73635307264669126e-39,
    2.46624704420068111e-40,  -6.24707674182074342e-42, 1.58240302446449140e-43,
    -4.00827368594893575e-45, 1.01530758555695573e-46,  -2.57180415824187168e-48,
};

constexpr int kMaxCorrections = 29;
constexpr double kSingularTol = 1e-13;
constexpr double kRoundingAllowance = 1e-14;
// Per-factor rounding is budgeted for at least this many factors whatever the depth, so
// the reported bound does not grow as J increases.
constexpr int kRoundingFactors = 16;

void check_region(cplx s) {
  if (!std::isfinite(s.real()) || !std::isfinite(s.imag())) throw std::domain_error("zeta: non-finite argument");
  if (s.real() <= 0) throw std::domain_error("zeta: sigma <= 0 is outside the supported region");
  if (std::abs(s - 1.0) < 1e-14) throw std::domain_error("zeta: pole at s = 1");
}

struct Plan {
  std::size_t N;
  int K;
};

// Smallest-cost (N, K) whose Euler-Maclaurin remainder bound
//   |s (s+1) ... (s+2K+1)| |B_{2K+2}| / ((2K+2)! (sigma+2K+1)) N^{-sigma-2K-1}
// is below tol.
Plan plan_for(cplx s, double tol) {
  const double sigma = s.real();
  double log_poch = 0;
  Plan best{0, 0};
  double best_cost = std::numeric_limits<double>::infinity();
  for (int K = 1; K <= kMaxCorrections; ++K) {
    // Extend the Pochhammer log to 2K + 2 factors.
    if (K == 1) {
      for (int i = 0; i < 4; ++i) log_poch += std::log(std::abs(s + static_cast<double>(i)));
    } else {
      log_poch += std::log(std::abs(s + static_cast<double>(2 * K))) +
                  std::log(std::abs(s + static_cast<double>(2 * K + 1)));
    }
    const double expo = sigma + 2 * K + 1;
    const double log_c = std::log(std::abs(kBernoulliOverFactorial[K]));
    const double log_n = (log_poch + log_c - std::log(expo) - std::log(tol)) / expo;
    const double n = std::max(2.0, std::ceil(std::exp(std::min(log_n, 60.0))));
    const double cost = n + 4.0 * K;
    if (cost < best_cost) {
      best_cost = cost;
      best = {static_cast<std::size_t>(n), K};
    }
  }
  return best;
}

struct EmResult {
  cplx value;
  cplx derivative;
};

EmResult euler_maclaurin(cplx s, std::size_t N, int K, bool want_derivative) {
  cplx sum = 0, dsum = 0;
  for (std::size_t n = N - 1; n >= 1; --n) {  // smallest terms first
    const double ln = std::log(static_cast<double>(n));
    const cplx term = std::exp(-s * ln);
    sum += term;
    if (want_derivative) dsum -= ln * term;
  }
  const double Nd = static_cast<double>(N);
  const double lnN = std::log(Nd);
  const cplx n_pow = std::exp(-s * lnN);  // N^{-s}
  const cplx a = Nd * n_pow / (s - 1.0);  // N^{1-s} / (s-1)
  const cplx b = 0.5 * n_pow;
  cplx value = sum + a + b;
  cplx deriv = dsum - lnN * a - a / (s - 1.0) - lnN * b;

  // P_k(s) = s (s+1) ... (s+2k-2); the k-th correction is c_k P_k(s) N^{-s-2k+1}.
  cplx poch = s, dpoch = 1.0;
  cplx power = n_pow / Nd;  // N^{-s-1}
  for (int k = 1; k <= K; ++k) {
    if (k > 1) {
      const cplx q1 = s + static_cast<double>(2 * k - 3);
      const cplx q2 = s + static_cast<double>(2 * k - 2);
      dpoch = dpoch * q1 * q2 + poch * (q1 + q2);
      poch = poch * q1 * q2;
      power /= Nd * Nd;
    }
    const double c = kBernoulliOverFactorial[k - 1];
    value += c * poch * power;
    deriv += c * (dpoch - lnN * poch) * power;
  }
  return {value, deriv};
}

// Rigorous bound on |prod_{j >= J} zeta(2^j s)^{-1} - 1| from
// |zeta(w) - 1| <= 2^{-u} + 2^{1-u}/(u-1), u = Re w > 1.
double tail_factor_bound(double sigma, int J) {
  double sum_eta = 0;
  for (int j = J; j < J + 64; ++j) {
    const double u = std::ldexp(sigma, j);
    if (u <= 1) return std::numeric_limits<double>::infinity();
    const double eps = std::exp2(-u) + std::exp2(1 - u) / (u - 1);
    if (eps >= 1) return std::numeric_limits<double>::infinity();
    const double eta = eps / (1 - eps);
    sum_eta += eta;
    if (eta < 1e-300) break;
  }
  return std::expm1(sum_eta);
}

SeriesEval product_range(cplx s, int from, int to) {
  SeriesEval out;
  out.value = 1.0;
  for (int j = from; j < to; ++j) {
    const cplx z = zeta(std::ldexp(1.0, j) * s);
    if (std::abs(z) < kSingularTol)
      throw SingularPoint("zeta(2^" + std::to_string(j) + " s) vanishes at the requested point");
    out.value /= z;
  }
  const double mag = std::abs(out.value);
  out.tail_bound = mag * tail_factor_bound(s.real(), to) + mag * kRoundingAllowance * std::max(kRoundingFactors, to - from);
  out.terms_used = static_cast<std::size_t>(to - from);
  out.J_used = to;
  return out;
}

}  // namespace

cplx zeta_euler_maclaurin(cplx s, std::size_t N, int K) {
  check_region(s);
  if (N < 2) throw std::invalid_argument("zeta_euler_maclaurin: N must be >= 2");
  if (K < 1 || K > kMaxCorrections) throw std::invalid_argument("zeta_euler_maclaurin: K must be in [1, 29]");
  return euler_maclaurin(s, N, K, false).value;
}

cplx zeta(cplx s) {
  check_region(s);
  const Plan p = plan_for(s, 1e-15);
  return euler_maclaurin(s, p.N, p.K, false).value;
}

cplx zeta_prime(cplx s) {
  check_region(s);
  const Plan p = plan_for(s, 1e-17);
  return euler_maclaurin(s, p.N + p.N / 4 + 2, p.K, true).derivative;
}

int default_depth(double sigma) {
  if (!(sigma > 0)) throw std::domain_error("default_depth: sigma must be positive");
  int J = 0;
  while (std::ldexp(sigma, J) < 64.0) ++J;
  return J;
}

SeriesEval m_product(cplx s) { return m_product(s, default_depth(s.real())); }

SeriesEval m_product(cplx s, int J) {
  if (s.real() <= 0) throw std::domain_error("m_product: sigma must be positive");
  if (J < 0) throw std::invalid_argument("m_product: J must be non-negative");
  return product_range(s, 0, J);
}

SeriesEval tail_product(cplx s, int J) {
  if (s.real() <= 0) throw std::domain_error("tail_product: sigma must be positive");
  if (J < 0) throw std::invalid_argument("tail_product: J must be non-negative");
  return product_range(s, J, std::max(J, default_depth(s.real())));
}

SeriesEval m_partial_sum(cplx s, std::uint64_t N) {
  if (N < 1) throw std::invalid_argument("m_partial_sum: N must be >= 1");
  const auto mu = sieve_values(ArithKind::MuInf, 1, N);
  // Neumaier-compensated sums of real and imaginary parts, largest terms first.
  double re = 0, im = 0, cre = 0, cim = 0, magnitude = 0;
  auto add = [](double& acc, double& comp, double v) {
    const double t = acc + v;
    comp += std::abs(acc) >= std::abs(v) ? (acc - t) + v : (v - t) + acc;
    acc = t;
  };
  for (std::uint64_t n = 1; n <= N; ++n) {
    const cplx term = static_cast<double>(mu[n - 1]) * std::exp(-s * std::log(static_cast<double>(n)));
    add(re, cre, term.real());
    add(im, cim, term.imag());
    magnitude += std::abs(term);
  }
  SeriesEval out;
  out.value = cplx(re + cre, im + cim);
  const double sigma = s.real();
  out.tail_bound = sigma > 1 ? std::pow(static_cast<double>(N), 1 - sigma) / (sigma - 1) + magnitude * 1e-15
                             : std::numeric_limits<double>::infinity();
  out.terms_used = N;
  return out;
}

cplx f_series(cplx s) {
  if (s.real() <= 0.5) throw std::domain_error("f_series: sigma must exceed 1/2");
  const cplx z = zeta(s);
  if (std::abs(z) < kSingularTol) throw SingularPoint("f_series: zeta(s) vanishes");
  return (1.0 - tail_product(s, 1).value) / z;
}

BoundsReport bounds_check(std::span<const double> sigma_grid, std::span<const double> t_grid,
                          std::span<const int> depths, int threads) {
  const std::size_t points = sigma_grid.size() * t_grid.size();
  std::vector<std::vector<BoundsRow>> per_point(points);
  parallel_for(0, static_cast<std::int64_t>(points), threads, [&](std::int64_t idx) {
    const double sigma = sigma_grid[static_cast<std::size_t>(idx) / t_grid.size()];
    const double t = t_grid[static_cast<std::size_t>(idx) % t_grid.size()];
    const cplx s(sigma, t);
    auto& rows = per_point[idx];
    if (sigma > 1) {
      const cplx z = zeta(s);
      const double upper = zeta(cplx(sigma, 0)).real();
      const double lower = zeta(cplx(2 * sigma, 0)).real() / upper;
      const double tol = 1e-12 * upper;
      const double mag = std::abs(z);
      rows.push_back({sigma, t, z, 0.0, "zeta_lower", mag - lower, mag - lower < -tol});
      rows.push_back({sigma, t, z, 0.0, "zeta_upper", upper - mag, upper - mag < -tol});
    }
    for (int J : depths) {
      if (!(std::ldexp(sigma, J) > 1)) continue;
      const SeriesEval nj = tail_product(s, J);
      const double bound = zeta(cplx(std::ldexp(sigma, J), 0)).real();
      const double slack = bound - std::abs(nj.value) - nj.tail_bound;
      rows.push_back({sigma, t, nj.value, nj.tail_bound, "tail_product_J" + std::to_string(J), slack,
                      slack < -1e-12 * bound});
    }
  });
  BoundsReport report;
  report.min_slack = std::numeric_limits<double>::infinity();
  for (auto& rows : per_point) {
    for (auto& r : rows) {
      if (r.violated) ++report.violations;
      report.min_slack = std::min(report.min_slack, r.slack);
      report.rows.push_back(std::move(r));
    }
  }
  if (report.rows.empty()) report.min_slack = 0;
  return report;
}

}  // namespace minf
