#include "efg/bounds.hpp"

#include <cmath>

namespace efg {

namespace {
void check_p(double p) {
  if (!(p > 0.0 && p < 1.0))
    throw std::invalid_argument("p must lie in (0, 1)");
}
}  // namespace

double azuma_regret_bound(const AzumaInputs& in) {
  check_p(in.p);
  if (in.T < 1) throw std::invalid_argument("T must be >= 1");
  if (in.M <= 0.0 || in.Mtilde <= 0.0)
    throw std::invalid_argument("range constants must be positive");
  return in.regret + (in.M + in.Mtilde) *
                         std::sqrt(2.0 * static_cast<double>(in.T) *
                                   std::log(1.0 / in.p));
}

double gap_probability_bound(const GapBoundInputs& in) {
  check_p(in.p);
  if (in.T < 1) throw std::invalid_argument("T must be >= 1");
  const double T = static_cast<double>(in.T);
  return (in.regret1 + in.regret2) / T +
         (2.0 * in.delta + in.Mtilde1 + in.Mtilde2) *
             std::sqrt(2.0 / T * std::log(1.0 / in.p));
}

double freedman_regret_bound(const FreedmanInputs& in) {
  check_p(in.p);
  if (in.T < 8) throw std::invalid_argument("T must be >= 8");
  if (in.sigma < 0.0) throw std::invalid_argument("sigma must be >= 0");
  const double beta =
      std::sqrt(std::log(3.0 * std::log(static_cast<double>(in.T)) /
                         (2.0 * in.p)));
  return in.regret +
         4.0 * std::max(in.sigma * beta, (in.M + in.Mtilde) * beta * beta);
}

double deterministic_regret_bound(double L, double D0, long long T) {
  if (L <= 0.0 || D0 <= 0.0)
    throw std::invalid_argument("L and D0 must be positive");
  return 2.0 * L * std::sqrt(D0 * static_cast<double>(T));
}

}  // namespace efg
