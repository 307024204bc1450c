#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "vma/core.hpp"
#include "vma/general_auctions.hpp"

// Sponsored-search position auctions under the separable click model: the
// probability that bidder i is clicked in slot j factorizes as
// slot_effect[j] * ad_effect[i]. Covers GSP, its welfare-maximizing
// generalizations, the alpha-hybrid pricing family, and single-parameter
// critical-value pricing.

namespace vma {

struct SlotAuctionInstance {
  std::vector<double> slot_effects;  // strictly descending, all > 0
  std::vector<double> ad_effects;    // one per bidder, > 0
  std::vector<double> bids;          // per-click, >= 0
  std::optional<std::vector<double>> types;  // true per-click values

  std::size_t slots() const { return slot_effects.size(); }
  std::size_t bidders() const { return bids.size(); }
  double score(std::size_t bidder) const { return ad_effects[bidder] * bids[bidder]; }
  void validate() const;
};

struct SlotAssignment {
  // slot_of[i] is the slot of bidder i, or nullopt when unassigned.
  std::vector<std::optional<std::size_t>> slot_of;
  std::vector<double> per_click_price;
  std::vector<double> expected_payment;  // per_click * slot_effect * ad_effect

  double total_payment() const;
};

// GSP: rank bidders by score (ties to the lower index); ranked j takes slot
// j and pays per click the minimum bid that keeps the slot, i.e. the next
// score down divided by its own ad effect.
SlotAssignment gsp(const SlotAuctionInstance& instance);

// Smallest gap between adjacent scores in the GSP ranking; the tie probe
// used by the verifier.
double gsp_decision_margin(const SlotAuctionInstance& instance);

// The matching outcome space of a slot instance: one outcome per ordered
// assignment of bidders to slots, with bid-derived values
// v_i(o) = bid_i * slot_effect * ad_effect.
struct MatchingSpace {
  OutcomeSpace outcomes;
  ValuationMatrix bid_values;
  // assignment[o][j] = bidder occupying slot j in outcome o.
  std::vector<std::vector<std::size_t>> assignment;

  // Index of the outcome that seats the given ranking order[0..m-1].
  std::size_t outcome_of(const std::vector<std::size_t>& seating) const;
};

MatchingSpace matching_space(const SlotAuctionInstance& instance);

// Assortative seating by score (the welfare-maximizing matching).
std::vector<std::size_t> assortative_seating(const SlotAuctionInstance& instance);

// Generalized GSP V1: the lexicographic welfare auction run on an explicit
// valuation matrix.
AuctionResult generalized_gsp_v1(const ValuationMatrix& values);

// An allocation level x(own bid) in [0,1]-scale units with others' bids
// fixed inside the evaluator; bid domain [0, bid_max].
struct AllocationRule {
  std::function<double(double)> level;
  double bid_max = 0.0;
};

struct CriticalPriceOptions {
  std::size_t probe_points = 1024;       // coarse bracket grid
  double tolerance = 1e-9;               // bisection width on the bid axis
  std::optional<double> type_grid_step;  // discrete typespace rounding
};

// Minimum-bid pricing for a monotone single-parameter rule: locate the
// infimum bid that still achieves x(bid) and charge (infimum bid) * x(bid).
// Throws when the probe grid reveals a non-monotone rule.
double critical_price(const AllocationRule& rule, double bid,
                      const CriticalPriceOptions& opts = {});

struct SingleParamResult {
  std::vector<double> allocation;
  std::vector<double> payments;
};

// Generalized GSP V2 on explicit single-parameter rules: each bidder keeps
// its allocation level and pays its critical price.
SingleParamResult generalized_gsp_v2(const std::vector<AllocationRule>& rules,
                                     const std::vector<double>& bids,
                                     const CriticalPriceOptions& opts = {});

// Generalized GSP V2 on a slot instance: assortative assignment with
// critical-bid per-click prices (coincides with gsp up to bisection
// tolerance).
SlotAssignment generalized_gsp_v2(const SlotAuctionInstance& instance,
                                  const CriticalPriceOptions& opts = {});

// Welfare-maximizing assignment priced for alpha-hybrid bidders: payments
// are the L^alpha externality on the matching outcome space. alpha = 1
// reproduces VCG slot prices, alpha = inf reproduces gsp.
SlotAssignment hybrid_gsp(const SlotAuctionInstance& instance, double alpha);

}  // namespace vma
