#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "vma/core.hpp"
#include "vma/slot_auctions.hpp"
#include "vma/verify.hpp"

// ROI-robustness analysis: when are super-quasilinear bidders with a hard
// ROI constraint behaviorally equivalent to value maximizers? Implements
// the per-instance separation test, the per-auction minimum ROI gamma*
// under GSP, and the dataset-level gamma curve.

namespace vma {

struct SeparationViolation {
  std::size_t outcome_hi = 0;  // v(outcome_hi) > v(outcome_lo) but too close
  std::size_t outcome_lo = 0;
};

struct SeparationCheck {
  // One entry per bidder; engaged iff the bidder fails the condition.
  std::vector<std::optional<SeparationViolation>> violation;

  bool pass() const {
    for (const auto& v : violation)
      if (v) return false;
    return true;
  }
};

// For every bidder and outcome pair with v(o) > v(o'), checks
// v(o) * gamma / (gamma + 1) >= v(o'); records the first violating pair.
SeparationCheck separation_condition(const ValuationMatrix& values, double gamma);

// Per-auction minimum robust ROI under GSP: the largest of the terms
//   a_i/(a_i - a_{i+1}) - (a_{i+1}/(a_i - a_{i+1})) * s_{i+2}/s_{i+1}
// over slots i, with a_{m+1} = 0, missing scores = 0, and terms with
// s_{i+1} = 0 skipped. The no-lie condition holds iff gamma > gamma*.
// Throws when two bidders share a score (hypothesis violated).
double min_robust_roi(const SlotAuctionInstance& instance);

struct RobustnessReport {
  // gamma* per auction, aligned with the dataset; NaN marks an auction
  // excluded for tied scores.
  std::vector<double> per_auction_gamma_star;
  std::vector<std::pair<double, double>> curve;  // (gamma, fraction certified)
  std::size_t dataset_size = 0;
  std::size_t excluded = 0;

  void validate() const;  // fractions in [0,1], curve nondecreasing
};

// Curve point (gamma, fraction of non-excluded auctions with gamma* < gamma).
// gammas must be sorted ascending. threads = 0 uses the default pool size.
RobustnessReport gamma_curve(const std::vector<SlotAuctionInstance>& dataset,
                             const std::vector<double>& gammas, std::size_t threads = 0);

// Slot-effect-only sufficient condition: a_{i+1} <= gamma/(gamma+1) * a_i
// for every slot (with a_{m+1} = 0).
bool slot_effects_separated(const std::vector<double>& slot_effects, double gamma);

// Hard ROI overlay on a base preference: bundles violating
// p <= v/(1+gamma) rank strictly below all feasible bundles; feasible
// bundles follow the base ordering.
Comparator prefer_with_roi(const PreferenceModel& base, double gamma);

}  // namespace vma
