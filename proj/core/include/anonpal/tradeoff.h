// Copyright 2026 The anonpal Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Privacy-utility frontier over threshold anonymization sets, and the
// policies that map a point on the plane to one of its vertices.

#ifndef ANONPAL_TRADEOFF_H_
#define ANONPAL_TRADEOFF_H_

#include <limits>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "anonpal/taxonomy.h"

namespace anonpal {

struct Coordinates {
  double privacy = 0.0;
  double utility = 1.0;
};

// A point on the unit square, clamped on construction. NaN maps to 0.
class TargetPoint {
 public:
  TargetPoint() = default;
  TargetPoint(double x, double y);

  double x() const { return x_; }
  double y() const { return y_; }

 private:
  double x_ = 0.0;
  double y_ = 1.0;
};

inline constexpr double kNoThreshold = std::numeric_limits<double>::infinity();
inline constexpr double kDefaultMagnetRadius = 0.03;

struct FrontierVertex {
  double privacy = 0.0;
  double utility = 1.0;
  // Categories with p_hat >= threshold are selected; +inf selects nothing.
  double threshold = kNoThreshold;
  CategorySet selected;
};

struct Frontier {
  std::vector<FrontierVertex> vertices;
};

struct SelectionPlan {
  CategorySet categories;
  Coordinates achieved;
  TargetPoint snapped_point;
  // Set by Project when the click fell within the magnet radius.
  bool magnetized = false;
};

// Share of total privacy mass anonymized, and share of total utility mass
// retained.
absl::StatusOr<Coordinates> Metrics(const CategorySet& selected,
                                    const NormalizedScoreTable& table);

absl::StatusOr<Frontier> BuildFrontier(const NormalizedScoreTable& table);

// min over categories with p_hat > p of m_hat; 1.0 when no category lies
// above p.
double PaperCurve(const NormalizedScoreTable& table, double p);

// Nearest vertex by Euclidean distance; ties go to the smaller set.
absl::StatusOr<SelectionPlan> Project(const Frontier& frontier,
                                      const TargetPoint& point,
                                      double magnet_radius = kDefaultMagnetRadius);

// Vertex with the smallest privacy coordinate >= x (the last vertex when
// none reaches x).
absl::StatusOr<SelectionPlan> PrivacyOnlySelect(const Frontier& frontier,
                                                double x);

// Vertex maximizing privacy + utility; ties go to higher privacy.
absl::StatusOr<SelectionPlan> AutomaticSelect(const Frontier& frontier);

// Plan for the last vertex (every category that carries privacy mass).
absl::StatusOr<SelectionPlan> SelectAll(const Frontier& frontier);

SelectionPlan PlanFromVertex(const FrontierVertex& vertex);

// JSON array of {x, y, threshold, categories}; an infinite threshold is
// written as null.
std::string FrontierToJson(const Frontier& frontier);

}  // namespace anonpal

#endif  // ANONPAL_TRADEOFF_H_
