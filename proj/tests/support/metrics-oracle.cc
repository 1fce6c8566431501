// Copyright 2026 The gdsre Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "metrics-oracle.h"

namespace gdsre::testing {

OracleScores NaivePrf(const std::vector<Relation> &gold, const std::vector<Relation> &pred) {
  OracleScores s;
  int classes = 0;
  for (Relation r : kAllRelations) {
    const int k = RelationIndex(r);
    long tp = 0, fp = 0, fn = 0;
    for (std::size_t i = 0; i < gold.size(); ++i) {
      bool g = gold[i] == r, p = pred[i] == r;
      tp += g && p;
      fp += !g && p;
      fn += g && !p;
    }
    s.support[k] = tp + fn;
    s.precision[k] = tp + fp ? double(tp) / double(tp + fp) : 0.0;
    s.recall[k] = tp + fn ? double(tp) / double(tp + fn) : 0.0;
    double denom = s.precision[k] + s.recall[k];
    s.f1[k] = denom > 0 ? 2 * s.precision[k] * s.recall[k] / denom : 0.0;
    if (s.support[k] == 0) continue;
    ++classes;
    s.macro_p += s.precision[k];
    s.macro_r += s.recall[k];
    s.macro_f1 += s.f1[k];
    s.weighted_p += s.precision[k] * double(s.support[k]);
    s.weighted_r += s.recall[k] * double(s.support[k]);
    s.weighted_f1 += s.f1[k] * double(s.support[k]);
  }
  if (classes) {
    s.macro_p /= classes;
    s.macro_r /= classes;
    s.macro_f1 /= classes;
  }
  if (!gold.empty()) {
    double n = double(gold.size());
    s.weighted_p /= n;
    s.weighted_r /= n;
    s.weighted_f1 /= n;
  }
  return s;
}

double NaiveKappa(const std::vector<Relation> &a, const std::vector<Relation> &b) {
  double n = double(a.size());
  double po = 0;
  for (std::size_t i = 0; i < a.size(); ++i) po += a[i] == b[i];
  po /= n;
  double pe = 0;
  for (Relation r : kAllRelations) {
    double fa = 0, fb = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
      fa += a[i] == r;
      fb += b[i] == r;
    }
    pe += (fa / n) * (fb / n);
  }
  return pe == 1.0 ? 1.0 : (po - pe) / (1 - pe);
}

}  // namespace gdsre::testing
