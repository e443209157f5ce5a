#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace minf {

using cplx = std::complex<double>;

// A truncated series or product together with a bound on what was left out.
struct SeriesEval {
  cplx value{};
  double tail_bound = 0;  // |exact - value| <= tail_bound (includes a rounding allowance)
  std::size_t terms_used = 0;
  int J_used = 0;
};

// Raised when an evaluation hits (numerically) a zero of a zeta factor it must invert.
class SingularPoint : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// |t| up to this value is the supported accuracy envelope for zeta and zeta_prime.
inline constexpr double kZetaEnvelope = 1e4;

// Euler-Maclaurin with N - 1 explicit terms and K Bernoulli corrections; exposed for
// consistency checks. Requires sigma > 0, s != 1 and 1 <= K <= 29.
cplx zeta_euler_maclaurin(cplx s, std::size_t N, int K);

// zeta(s) for sigma > 0, s != 1, with N and K chosen so that the remainder bound is
// below 1e-15 in absolute value. Throws std::domain_error outside that region.
cplx zeta(cplx s);

// Term-by-term differentiated Euler-Maclaurin.
cplx zeta_prime(cplx s);

// Smallest J with 2^J sigma >= 64; beyond it every omitted factor is 1 to double precision.
int default_depth(double sigma);

// prod_{0 <= j < J} zeta(2^j s)^{-1}; the one-argument form uses default_depth.
SeriesEval m_product(cplx s);
SeriesEval m_product(cplx s, int J);

// N_J(s) = prod_{j >= J} zeta(2^j s)^{-1}, truncated at default_depth(sigma).
SeriesEval tail_product(cplx s, int J);

// sum_{n <= N} mu_inf(n) n^{-s}. The tail bound N^{1-sigma}/(sigma-1) is infinite for sigma <= 1.
SeriesEval m_partial_sum(cplx s, std::uint64_t N);

// F(s) = zeta(s)^{-1} (1 - N_1(s)) for sigma > 1/2.
cplx f_series(cplx s);

struct BoundsRow {
  double sigma = 0;
  double t = 0;
  cplx value{};  // zeta(s) for the first inequality, N_J(s) for the second
  double tail_bound = 0;
  std::string check;  // zeta_lower, zeta_upper, tail_product_J<J>
  double slack = 0;   // >= 0 when the inequality holds
  bool violated = false;
};

struct BoundsReport {
  std::vector<BoundsRow> rows;
  std::size_t violations = 0;
  double min_slack = 0;
};

// Checks zeta(2 sigma)/zeta(sigma) <= |zeta(s)| <= zeta(sigma) at grid points with
// sigma > 1, and |N_J(s)| <= zeta(2^J sigma) for each depth with 2^J sigma > 1.
BoundsReport bounds_check(std::span<const double> sigma_grid, std::span<const double> t_grid,
                          std::span<const int> depths, int threads = 0);

}  // namespace minf
