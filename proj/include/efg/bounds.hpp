// Closed-form calculators for the concentration and convergence bounds used
// to certify stochastic self-play runs.
#pragma once

#include <stdexcept>

namespace efg {

struct AzumaInputs {
  double regret = 0.0;  // deterministic regret term R~^T(u)
  double M = 1.0;       // range constant of the exact losses
  double Mtilde = 1.0;  // range constant of the estimated losses
  long long T = 1;
  double p = 0.05;      // failure probability, in (0, 1)
};

// R~^T(u) + (M + M~) sqrt(2 T log(1/p)).
double azuma_regret_bound(const AzumaInputs& in);

struct GapBoundInputs {
  double regret1 = 0.0;  // R~_1^T
  double regret2 = 0.0;  // R~_2^T
  double delta = 1.0;    // payoff range
  double Mtilde1 = 1.0;
  double Mtilde2 = 1.0;
  long long T = 1;
  double p = 0.05;
};

// (R~_1 + R~_2)/T + (2 Delta + M~_1 + M~_2) sqrt((2/T) log(1/p)); holds with
// probability at least 1 - 2p. With M~_i = Delta the tail coefficient is
// 4 Delta.
double gap_probability_bound(const GapBoundInputs& in);

struct FreedmanInputs {
  double regret = 0.0;
  double M = 1.0;
  double Mtilde = 1.0;
  double sigma = 0.0;  // sqrt of the summed conditional variances
  long long T = 8;     // requires T >= 8
  double p = 0.05;
};

// R~^T(u) + 4 max{ sigma beta, (M + M~) beta^2 } with
// beta = sqrt(log(3 log T / (2 p))).
double freedman_regret_bound(const FreedmanInputs& in);

// 2 L sqrt(D0 T): the deterministic OMD/FTRL regret bound with strong
// convexity constant L and initial divergence D0 = D(z* || z^1).
double deterministic_regret_bound(double L, double D0, long long T);

}  // namespace efg
