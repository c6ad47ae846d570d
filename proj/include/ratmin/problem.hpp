#ifndef RATMIN_PROBLEM_HPP
#define RATMIN_PROBLEM_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ratmin/polynomial.hpp"

namespace ratmin {

enum class SetKind { Box, Sphere };

inline std::string set_name(SetKind k) { return k == SetKind::Box ? "box" : "sphere"; }

struct Fraction {
  PolyQ num;
  PolyQ den;
};

// Minimization instance: min over K of sum_i num_i/den_i, with K the unit
// box [-1,1]^n or the unit sphere. Denominators must be positive on K;
// that is the caller's contract and is only spot-checked.
struct Problem {
  int n = 0;
  SetKind set = SetKind::Box;
  std::vector<Fraction> fractions;

  // Optional metadata attached by generators.
  std::optional<double> known_min;   // exact minimum when known analytically
  std::optional<double> rho_hat;     // sampled minimum used for shifting
  std::string provenance;            // generator name + parameters

  int nfractions() const { return static_cast<int>(fractions.size()); }

  void validate() const {
    if (n < 1) throw std::invalid_argument("problem dimension must be >= 1");
    if (fractions.empty()) throw std::invalid_argument("problem needs at least one fraction");
    for (const auto& fr : fractions) {
      if (fr.num.nvars() != n || fr.den.nvars() != n)
        throw std::invalid_argument("fraction variable count does not match problem dimension");
      if (fr.den.is_zero()) throw std::invalid_argument("zero denominator polynomial");
    }
  }

  double eval(std::span<const double> x) const {
    double acc = 0.0;
    for (const auto& fr : fractions) acc += fr.num.eval(x) / fr.den.eval(x);
    return acc;
  }
};

}  // namespace ratmin

#endif
