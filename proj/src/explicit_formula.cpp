#include "minf/explicit_formula.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace minf {

std::string_view to_string(ExplicitKind kind) {
  return kind == ExplicitKind::Classical ? "classical" : "modified";
}

ExplicitKind parse_explicit_kind(std::string_view name) {
  if (name == "classical") return ExplicitKind::Classical;
  if (name == "modified") return ExplicitKind::Modified;
  throw std::invalid_argument("unknown explicit formula kind: " + std::string(name));
}

ZeroList parse_zeros(std::istream& in, const std::string& source) {
  ZeroList out;
  out.source_path = source;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    const auto last = line.find_last_not_of(" \t\r");
    const std::string token = line.substr(first, last - first + 1);
    char* end = nullptr;
    const double v = std::strtod(token.c_str(), &end);
    if (end != token.c_str() + token.size() || !std::isfinite(v))
      throw ZeroFileError("not a number: '" + token + "'", line_no);
    if (v <= 0) throw ZeroFileError("ordinate must be positive", line_no);
    if (v > kZetaEnvelope) throw ZeroFileError("ordinate beyond the supported envelope 1e4", line_no);
    if (!out.ordinates.empty() && v <= out.ordinates.back())
      throw ZeroFileError("ordinates must be strictly ascending", line_no);
    out.ordinates.push_back(v);
  }
  return out;
}

ZeroList load_zeros(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open zeros file " + path.string());
  return parse_zeros(in, path.string());
}

namespace {

constexpr double kMinDerivative = 1e-6;

cplx rho_of(double gamma) { return {0.5, gamma}; }

cplx checked_zeta_prime(double gamma) {
  if (std::abs(gamma) > kZetaEnvelope) throw std::domain_error("ordinate outside the zeta envelope");
  const cplx zp = zeta_prime(rho_of(gamma));
  if (std::abs(zp) < kMinDerivative)
    throw NearMultipleZero("|zeta'(rho)| < 1e-6 at gamma = " + std::to_string(gamma) +
                           "; multiple zeros are not supported");
  return zp;
}

}  // namespace

// With m(s) = N_J(s) prod_{0 <= i < J} zeta(2^i s)^{-1}, the pole of m at s0 = 2^{-j} rho
// comes from the factor zeta(2^j s)^{-1}. For a simple zero,
//   zeta(2^j s) = 2^j zeta'(rho) (s - s0) + O((s - s0)^2),
// so the residue of m(s) x^s / s at s0 is
//   [2^j zeta'(rho)]^{-1} N_J(s0) prod_{i != j} zeta(2^{i-j} rho)^{-1} x^{s0} / s0.
// The factors with i < j sit at real part 2^{i-j-1} < 1/2, those with i > j at real
// part >= 1; none of them vanish when all zeros lie on the critical line.
cplx residue_coeff(int j, double gamma, int J) {
  if (J < 1) throw std::invalid_argument("residue_coeff: J must be >= 1");
  if (j < 0 || j >= J) throw std::invalid_argument("residue_coeff: need 0 <= j < J");
  const cplx zp = checked_zeta_prime(gamma);
  const cplx s0 = std::ldexp(1.0, -j) * rho_of(gamma);
  cplx c = tail_product(s0, J).value / (std::ldexp(1.0, j) * zp);
  for (int i = 0; i < J; ++i) {
    if (i == j) continue;
    const cplx z = zeta(std::ldexp(1.0, i) * s0);
    if (std::abs(z) < 1e-13) throw SingularPoint("residue_coeff: unexpected zero of a companion factor");
    c /= z;
  }
  return c;
}

cplx classical_term(double x, double gamma) {
  const cplx rho = rho_of(gamma);
  return std::exp(rho * std::log(x)) / (rho * checked_zeta_prime(gamma));
}

ExplicitFormula::ExplicitFormula(ExplicitKind kind, const ExplicitConfig& config, const ZeroList& zeros)
    : kind_(kind), config_(config) {
  if (config.J < 1) throw std::invalid_argument("explicit formula: J must be >= 1");
  if (zeros.ordinates.empty() || config.T > zeros.ordinates.back())
    throw std::invalid_argument("explicit formula: T exceeds the largest ingested ordinate");
  for (double g : zeros.ordinates) {
    if (g >= config.T) break;
    gammas_.push_back(g);
    if (kind == ExplicitKind::Classical) {
      layers_.push_back({0, g, 1.0 / checked_zeta_prime(g), 1.0 / checked_zeta_prime(-g)});
    } else {
      for (int j = 0; j < config.J; ++j)
        layers_.push_back({j, g, residue_coeff(j, g, config.J), residue_coeff(j, -g, config.J)});
    }
  }
}

double ExplicitFormula::evaluate(double x) const {
  if (!(x >= 2)) throw std::invalid_argument("explicit formula: x must be >= 2");
  const double lx = std::log(x);
  double sum = 0;
  for (const auto& l : layers_) {
    const cplx s0 = std::ldexp(1.0, -l.j) * rho_of(l.gamma);
    sum += 2.0 * (l.coeff * std::exp(s0 * lx) / s0).real();
  }
  return sum;
}

cplx ExplicitFormula::evaluate_unpaired(double x) const {
  if (!(x >= 2)) throw std::invalid_argument("explicit formula: x must be >= 2");
  const double lx = std::log(x);
  cplx sum = 0;
  for (const auto& l : layers_) {
    const cplx s0 = std::ldexp(1.0, -l.j) * rho_of(l.gamma);
    const cplx s0c = std::ldexp(1.0, -l.j) * rho_of(-l.gamma);
    sum += l.coeff * std::exp(s0 * lx) / s0;
    sum += l.coeff_conj * std::exp(s0c * lx) / s0c;
  }
  return sum;
}

double truncated_explicit(ExplicitKind kind, double x, const ExplicitConfig& config, const ZeroList& zeros) {
  return ExplicitFormula(kind, config, zeros).evaluate(x);
}

}  // namespace minf
