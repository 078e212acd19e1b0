#include "alae/analysis.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "alae/error.hpp"

namespace alae {

AnalysisParams analysis_params(const ScoringScheme& scheme, int sigma) {
  scheme.validate();
  if (sigma < 3) throw Error(Errc::SigmaTooSmall, "sigma must be at least 3, got " + std::to_string(sigma));
  AnalysisParams a{};
  a.sigma = sigma;
  a.q = q_value(scheme);
  a.s = 1.0 + static_cast<double>(-scheme.mismatch) / scheme.match;
  const double sg = sigma;
  a.k1 = std::pow(1.0 - 1.0 / a.s, a.q) * ((sg - 1.0) / (sg - 2.0)) * a.s /
         std::sqrt(2.0 * std::numbers::pi * (a.s - 1.0));
  a.k2 = a.s * std::pow((sg - 1.0) / std::pow(a.s - 1.0, a.s - 1.0), 1.0 / a.s);
  return a;
}

EntryBound entry_bound(const ScoringScheme& scheme, int sigma) {
  auto a = analysis_params(scheme, sigma);
  const double sg = sigma;
  // k2 never exceeds sigma; it touches it at s = sigma/(sigma-1), where rounding can land either side.
  if (a.k2 >= sg - 1e-9) {
    throw Error(Errc::Divergent, "k2=" + std::to_string(a.k2) + " is not below sigma=" + std::to_string(sigma));
  }
  double coefficient = a.k1 / (a.k2 - 1.0) + a.k1 * sg * sg / (sg - a.k2);
  double exponent = std::log(a.k2) / std::log(sg);
  return {coefficient, exponent};
}

}  // namespace alae
