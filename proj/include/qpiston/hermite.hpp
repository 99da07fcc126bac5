#pragma once

#include <vector>

namespace qpiston::hermite {

/// |H_n(t)| carried as a logarithm plus a sign, so that large orders and
/// arguments never overflow. sign is 0 exactly at a root.
struct SignedLog {
  double log_abs;
  int sign;
};

/// Physicists' Hermite polynomial H_n(t) via the three-term recurrence
/// H_{k+1} = 2t H_k - 2k H_{k-1}, renormalizing the running pair whenever it
/// leaves [1e-100, 1e100].
SignedLog physicists_log(int n, double t);

/// Plain value of H_n(t); only sensible while it fits in a double.
double physicists(int n, double t);

/// All n real roots of H_n, ascending. Roots lie in |t| < sqrt(2n + 1); they
/// are bracketed by sign changes of the recurrence on a fine grid and
/// refined by bisection.
std::vector<double> roots(int n);

}  // namespace qpiston::hermite
