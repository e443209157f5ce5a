#pragma once

#include <filesystem>
#include <istream>
#include <stdexcept>
#include <string>
#include <vector>

#include "minf/zetafun.hpp"

namespace minf {

// Positive ordinates gamma of zeta zeros rho = 1/2 + i gamma, strictly ascending.
struct ZeroList {
  std::vector<double> ordinates;
  std::string source_path;

  std::size_t count() const { return ordinates.size(); }
};

class ZeroFileError : public std::runtime_error {
 public:
  ZeroFileError(const std::string& what, std::size_t line)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// One decimal ordinate per line; '#' starts a comment, blank lines are skipped.
ZeroList parse_zeros(std::istream& in, const std::string& source = "<stream>");
ZeroList load_zeros(const std::filesystem::path& path);

enum class ExplicitKind { Classical, Modified };

std::string_view to_string(ExplicitKind kind);
ExplicitKind parse_explicit_kind(std::string_view name);

struct ExplicitConfig {
  int J = 2;        // number of layers 2^{-j} rho, j < J
  double T = 100;   // zeros with gamma < T contribute
};

// Raised when |zeta'(rho)| is too small to treat rho as a simple zero.
class NearMultipleZero : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// c_j(rho), rho = 1/2 + i gamma (gamma may be negative), so that the residue of
// m(s) x^s / s at s = 2^{-j} rho is c_j(rho) x^{2^{-j} rho} / (2^{-j} rho).
cplx residue_coeff(int j, double gamma, int J);

// x^rho / (rho zeta'(rho)).
cplx classical_term(double x, double gamma);

// Truncated explicit formula with precomputed per-zero coefficients.
class ExplicitFormula {
 public:
  ExplicitFormula(ExplicitKind kind, const ExplicitConfig& config, const ZeroList& zeros);

  // Sum over 0 < gamma < T, each conjugate pair contributing 2 Re(term).
  double evaluate(double x) const;
  // Same sum with rho and conj(rho) evaluated independently; imaginary part ~ 0.
  cplx evaluate_unpaired(double x) const;

  std::size_t zeros_used() const { return gammas_.size(); }

 private:
  struct Layer {
    int j;
    double gamma;
    cplx coeff;       // c_j(rho), or 1/zeta'(rho) for the classical sum
    cplx coeff_conj;  // same quantity evaluated independently at -gamma
  };
  ExplicitKind kind_;
  ExplicitConfig config_;
  std::vector<double> gammas_;
  std::vector<Layer> layers_;
};

double truncated_explicit(ExplicitKind kind, double x, const ExplicitConfig& config, const ZeroList& zeros);

}  // namespace minf
