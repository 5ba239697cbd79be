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

#include "anonpal/tradeoff.h"

#include <algorithm>
#include <cmath>

#include "absl/strings/str_cat.h"
#include "anonpal/errors.h"
#include "json.hpp"

namespace anonpal {
namespace {

// Relative slack for comparisons between independently summed coordinates.
constexpr double kCoordinateSlack = 1e-12;

absl::Status CheckMass(double privacy_mass, double utility_mass) {
  if (!(privacy_mass > 0.0) || !(utility_mass > 0.0)) {
    return MakeError(ErrorKind::kZeroMass,
                     "privacy and utility scores must not sum to zero");
  }
  return absl::OkStatus();
}

absl::Status CheckNonEmpty(const Frontier& frontier) {
  if (frontier.vertices.empty()) {
    return MakeError(ErrorKind::kEmptyFrontier, "frontier has no vertices");
  }
  return absl::OkStatus();
}

double SquaredDistance(const FrontierVertex& v, const TargetPoint& point) {
  const double dx = v.privacy - point.x();
  const double dy = v.utility - point.y();
  return dx * dx + dy * dy;
}

}  // namespace

TargetPoint::TargetPoint(double x, double y)
    : x_(std::isnan(x) ? 0.0 : std::clamp(x, 0.0, 1.0)),
      y_(std::isnan(y) ? 0.0 : std::clamp(y, 0.0, 1.0)) {}

absl::StatusOr<Coordinates> Metrics(const CategorySet& selected,
                                    const NormalizedScoreTable& table) {
  double privacy_mass = 0.0;
  double utility_mass = 0.0;
  double privacy_selected = 0.0;
  double utility_selected = 0.0;
  std::size_t matched = 0;
  for (const auto& entry : table.entries()) {
    privacy_mass += entry.p_hat;
    utility_mass += entry.m_hat;
    if (selected.contains(entry.id)) {
      privacy_selected += entry.p_hat;
      utility_selected += entry.m_hat;
      ++matched;
    }
  }
  if (matched != selected.size()) {
    return absl::InvalidArgumentError(
        "selection contains categories missing from the table");
  }
  if (absl::Status status = CheckMass(privacy_mass, utility_mass);
      !status.ok()) {
    return status;
  }
  return Coordinates{privacy_selected / privacy_mass,
                     1.0 - utility_selected / utility_mass};
}

absl::StatusOr<Frontier> BuildFrontier(const NormalizedScoreTable& table) {
  std::vector<NormalizedScoreTable::Entry> sorted = table.entries();
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const auto& a, const auto& b) { return a.p_hat > b.p_hat; });

  double privacy_mass = 0.0;
  double utility_mass = 0.0;
  for (const auto& entry : sorted) {
    privacy_mass += entry.p_hat;
    utility_mass += entry.m_hat;
  }
  if (absl::Status status = CheckMass(privacy_mass, utility_mass);
      !status.ok()) {
    return status;
  }

  Frontier frontier;
  frontier.vertices.push_back(FrontierVertex{});
  double kept_privacy = 0.0;
  double cum_privacy = 0.0;
  double cum_utility = 0.0;
  CategorySet selected;
  for (std::size_t i = 0; i < sorted.size();) {
    const double threshold = sorted[i].p_hat;
    for (; i < sorted.size() && sorted[i].p_hat == threshold; ++i) {
      cum_privacy += sorted[i].p_hat;
      cum_utility += sorted[i].m_hat;
      selected.insert(sorted[i].id);
    }
    // A group that adds no privacy mass is dominated by the previous vertex.
    if (cum_privacy == kept_privacy) continue;
    kept_privacy = cum_privacy;
    frontier.vertices.push_back(FrontierVertex{
        cum_privacy / privacy_mass, 1.0 - cum_utility / utility_mass,
        threshold, selected});
  }
  return frontier;
}

double PaperCurve(const NormalizedScoreTable& table, double p) {
  double best = 1.0;
  bool any = false;
  for (const auto& entry : table.entries()) {
    if (entry.p_hat > p) {
      best = any ? std::min(best, entry.m_hat) : entry.m_hat;
      any = true;
    }
  }
  return any ? best : 1.0;
}

SelectionPlan PlanFromVertex(const FrontierVertex& vertex) {
  SelectionPlan plan;
  plan.categories = vertex.selected;
  plan.achieved = Coordinates{vertex.privacy, vertex.utility};
  plan.snapped_point = TargetPoint(vertex.privacy, vertex.utility);
  return plan;
}

absl::StatusOr<SelectionPlan> Project(const Frontier& frontier,
                                      const TargetPoint& point,
                                      double magnet_radius) {
  if (absl::Status status = CheckNonEmpty(frontier); !status.ok()) {
    return status;
  }
  const FrontierVertex* best = nullptr;
  double best_distance = 0.0;
  for (const FrontierVertex& vertex : frontier.vertices) {
    const double distance = SquaredDistance(vertex, point);
    if (best == nullptr || distance < best_distance ||
        (distance == best_distance &&
         vertex.selected.size() < best->selected.size())) {
      best = &vertex;
      best_distance = distance;
    }
  }
  SelectionPlan plan = PlanFromVertex(*best);
  plan.magnetized = std::sqrt(best_distance) <= std::max(magnet_radius, 0.0);
  return plan;
}

absl::StatusOr<SelectionPlan> PrivacyOnlySelect(const Frontier& frontier,
                                                double x) {
  if (absl::Status status = CheckNonEmpty(frontier); !status.ok()) {
    return status;
  }
  for (const FrontierVertex& vertex : frontier.vertices) {
    if (vertex.privacy >= x - kCoordinateSlack) return PlanFromVertex(vertex);
  }
  return PlanFromVertex(frontier.vertices.back());
}

absl::StatusOr<SelectionPlan> AutomaticSelect(const Frontier& frontier) {
  if (absl::Status status = CheckNonEmpty(frontier); !status.ok()) {
    return status;
  }
  const FrontierVertex* best = &frontier.vertices.front();
  for (const FrontierVertex& vertex : frontier.vertices) {
    const double score = vertex.privacy + vertex.utility;
    const double best_score = best->privacy + best->utility;
    if (score > best_score + kCoordinateSlack ||
        (std::abs(score - best_score) <= kCoordinateSlack &&
         vertex.privacy > best->privacy)) {
      best = &vertex;
    }
  }
  return PlanFromVertex(*best);
}

absl::StatusOr<SelectionPlan> SelectAll(const Frontier& frontier) {
  if (absl::Status status = CheckNonEmpty(frontier); !status.ok()) {
    return status;
  }
  return PlanFromVertex(frontier.vertices.back());
}

std::string FrontierToJson(const Frontier& frontier) {
  nlohmann::json out = nlohmann::json::array();
  for (const FrontierVertex& vertex : frontier.vertices) {
    nlohmann::json categories = nlohmann::json::array();
    for (const CategoryId& id : vertex.selected) categories.push_back(id.value);
    out.push_back({{"x", vertex.privacy},
                   {"y", vertex.utility},
                   {"threshold", std::isinf(vertex.threshold)
                                     ? nlohmann::json(nullptr)
                                     : nlohmann::json(vertex.threshold)},
                   {"categories", std::move(categories)}});
  }
  return out.dump();
}

}  // namespace anonpal
