#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace minf::cli {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

// Inverses of the constant function under all three products against mu / mu_inf,
// and f * inverse(f) == delta, for n <= limit.
std::vector<CheckResult> verify_convolution(std::size_t limit, int threads);

// Both zeta inequalities on the 20 x 20 grid sigma in [1.05, 3], t in [0, 30], with
// N_J checked on the grid and on sigma / 2^J for J = 1, 2, 3.
std::vector<CheckResult> verify_bounds(int threads);

// Sieve vs pointwise on 10^4 random n <= limit, segment-size invariance and
// parallel vs serial reference, all at x_max = limit.
std::vector<CheckResult> verify_sieve(std::uint64_t limit, std::uint64_t seed, int threads);

}  // namespace minf::cli
