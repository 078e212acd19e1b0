#pragma once

#include "alae/scoring.hpp"

namespace alae {

struct AnalysisParams {
  double s;
  int q;
  int sigma;
  double k1;
  double k2;
};

AnalysisParams analysis_params(const ScoringScheme& scheme, int sigma);

struct EntryBound {
  double coefficient;
  double exponent;  // expected calculated entries <= coefficient * m * n^exponent
};

EntryBound entry_bound(const ScoringScheme& scheme, int sigma);

}  // namespace alae
