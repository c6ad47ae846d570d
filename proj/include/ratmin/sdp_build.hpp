#ifndef RATMIN_SDP_BUILD_HPP
#define RATMIN_SDP_BUILD_HPP

#include <vector>

#include "ratmin/moments.hpp"
#include "ratmin/problem.hpp"
#include "ratmin/sdp.hpp"

namespace ratmin {

// Sum-of-fractions program in the base variables:
//   maximize a
//   M_d(f_1 y) >= a M_d(g_1 y) + sum_{i>=2} M_d(h_i g_1 y)
//   M_d(f_i y) + M_d(h_i g_i y) >= 0,            i = 2..N
// with h_i free polynomials of degree <= s. Variables are (a, coefficients
// of h_2..h_N on the graded-lex basis). frac_mins, when given, supplies
// sampled minima of the individual fractions for a strictly feasible
// starting point (constant h_i).
SdpProblem build_sum_standard(const std::vector<Fraction>& fractions, const MomentOracle& oracle,
                              int d, int s, const std::vector<double>* frac_mins = nullptr);

// Image-space analog over the 2N pushforward variables (u_1, v_1, ...):
//   maximize a
//   M_d(u_1 y#) >= a M_d(v_1 y#) + sum_{i>=2} M_d(h_i q1 y#)
//   M_d(u_i y#) + M_d(h_i v_i y#) >= 0,          i = 2..N
// where q1 = v_1 by default; u1_form switches the multiplier weight of
// the first constraint to u_1.
SdpProblem build_sum_pushforward(int nfractions, const MomentTable& table, int d, int s,
                                 bool u1_form = false,
                                 const std::vector<double>* frac_mins = nullptr);

// Restricts every block of a moment-program to the numerical range of the
// reference moment matrix. Pushforward measures live on low-dimensional
// image sets, so their moment matrices carry an exact kernel shared by
// every localizing matrix; cutting it preserves the optimum and restores
// strict feasibility for the interior-point method.
SdpProblem facial_reduce(const SdpProblem& problem, const SymMatrix& moment_mat,
                         double tol = 1e-12);

}  // namespace ratmin

#endif
