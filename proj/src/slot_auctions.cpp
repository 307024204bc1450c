#include "vma/slot_auctions.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace vma {

void SlotAuctionInstance::validate() const {
  if (slot_effects.empty()) throw ValidationError("instance has no slots");
  if (bids.empty()) throw ValidationError("instance has no bidders");
  if (slots() > bidders()) throw ValidationError("more slots than bidders");
  if (ad_effects.size() != bids.size())
    throw ValidationError("ad effects and bids must have the same length");
  for (std::size_t j = 0; j < slot_effects.size(); ++j) {
    if (!(slot_effects[j] > 0.0) || slot_effects[j] > 1.0)
      throw ValidationError("slot effects must lie in (0, 1]");
    if (j > 0 && !(slot_effects[j] < slot_effects[j - 1]))
      throw ValidationError("alpha not strictly descending");
  }
  for (double b : ad_effects)
    if (!(b > 0.0) || !std::isfinite(b)) throw ValidationError("ad effects must be positive");
  for (double b : bids)
    if (b < 0.0 || !std::isfinite(b)) throw ValidationError("bids must be nonnegative");
  if (types && types->size() != bids.size())
    throw ValidationError("types and bids must have the same length");
}

double SlotAssignment::total_payment() const {
  return std::accumulate(expected_payment.begin(), expected_payment.end(), 0.0);
}

namespace {

// Bidder indices sorted by score descending, ties to the lower index.
std::vector<std::size_t> rank_by_score(const SlotAuctionInstance& instance) {
  std::vector<std::size_t> order(instance.bidders());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return instance.score(a) > instance.score(b);
  });
  return order;
}

}  // namespace

SlotAssignment gsp(const SlotAuctionInstance& instance) {
  instance.validate();
  const std::size_t n = instance.bidders();
  const std::size_t m = instance.slots();

  SlotAssignment out;
  out.slot_of.assign(n, std::nullopt);
  out.per_click_price.assign(n, 0.0);
  out.expected_payment.assign(n, 0.0);

  auto order = rank_by_score(instance);
  for (std::size_t j = 0; j < m; ++j) {
    std::size_t i = order[j];
    out.slot_of[i] = j;
    double next_score = j + 1 < n ? instance.score(order[j + 1]) : 0.0;
    double clicks = instance.slot_effects[j] * instance.ad_effects[i];
    out.per_click_price[i] = next_score / instance.ad_effects[i];
    out.expected_payment[i] = out.per_click_price[i] * clicks;
  }
  return out;
}

double gsp_decision_margin(const SlotAuctionInstance& instance) {
  auto order = rank_by_score(instance);
  double margin = kInfinity;
  for (std::size_t j = 0; j + 1 < order.size(); ++j)
    margin = std::min(margin, instance.score(order[j]) - instance.score(order[j + 1]));
  return std::isfinite(margin) ? margin : kInfinity;
}

std::size_t MatchingSpace::outcome_of(const std::vector<std::size_t>& seating) const {
  for (std::size_t o = 0; o < assignment.size(); ++o)
    if (assignment[o] == seating) return o;
  throw ValidationError("seating not present in matching space");
}

MatchingSpace matching_space(const SlotAuctionInstance& instance) {
  instance.validate();
  const std::size_t n = instance.bidders();
  const std::size_t m = instance.slots();

  MatchingSpace space;
  std::vector<std::size_t> seating;
  std::vector<bool> used(n, false);
  // Enumerate ordered seatings in lexicographic order over slot occupants.
  auto recurse = [&](auto&& self, std::size_t slot) -> void {
    if (slot == m) {
      space.assignment.push_back(seating);
      return;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (used[i]) continue;
      used[i] = true;
      seating.push_back(i);
      self(self, slot + 1);
      seating.pop_back();
      used[i] = false;
    }
  };
  recurse(recurse, 0);

  space.bid_values = ValuationMatrix(n, space.assignment.size());
  space.outcomes.labels.reserve(space.assignment.size());
  for (std::size_t o = 0; o < space.assignment.size(); ++o) {
    std::string label = "slots[";
    for (std::size_t j = 0; j < m; ++j) {
      label += (j ? "," : "") + std::to_string(space.assignment[o][j]);
      std::size_t i = space.assignment[o][j];
      space.bid_values(i, o) =
          instance.bids[i] * instance.slot_effects[j] * instance.ad_effects[i];
    }
    label += "]";
    space.outcomes.labels.push_back(std::move(label));
  }
  return space;
}

std::vector<std::size_t> assortative_seating(const SlotAuctionInstance& instance) {
  auto order = rank_by_score(instance);
  order.resize(instance.slots());
  return order;
}

AuctionResult generalized_gsp_v1(const ValuationMatrix& values) {
  auto alloc = lexi_allocate(values);
  AuctionResult result;
  result.outcome = alloc.outcome;
  result.payments = lexi_payments(values, alloc.outcome);
  result.trace = std::move(alloc.trace);
  return result;
}

double critical_price(const AllocationRule& rule, double bid,
                      const CriticalPriceOptions& opts) {
  if (!rule.level) throw ValidationError("allocation rule has no evaluator");
  if (bid < 0.0) throw ValidationError("bid must be nonnegative");
  double hi_end = std::max(rule.bid_max, bid);
  if (hi_end <= 0.0) hi_end = 1.0;

  const double x_star = rule.level(bid);
  const std::size_t probes = std::max<std::size_t>(opts.probe_points, 2);

  // Coarse pass over the whole grid: reject non-monotone rules and bracket
  // the jump to x_star.
  double lo = 0.0;
  double hi = hi_end;
  double prev = -kInfinity;
  bool bracketed = false;
  for (std::size_t k = 0; k < probes; ++k) {
    double g = hi_end * static_cast<double>(k) / static_cast<double>(probes - 1);
    double x = rule.level(g);
    if (x < prev) throw ValidationError("allocation rule not monotone");
    prev = x;
    if (!bracketed && x >= x_star) {
      lo = k == 0 ? 0.0 : hi_end * static_cast<double>(k - 1) / static_cast<double>(probes - 1);
      hi = g;
      bracketed = true;
    }
  }
  if (!bracketed) {
    // x never reaches x_star on the grid; the jump sits in the last cell.
    lo = hi_end * static_cast<double>(probes - 2) / static_cast<double>(probes - 1);
    hi = hi_end;
  }

  while (hi - lo > opts.tolerance) {
    double mid = lo + (hi - lo) / 2.0;
    if (mid <= lo || mid >= hi) break;
    if (rule.level(mid) >= x_star)
      hi = mid;
    else
      lo = mid;
  }
  double critical_bid = hi;

  if (opts.type_grid_step && *opts.type_grid_step > 0.0) {
    // Discrete typespace: charge the next grid point above the critical bid.
    double step = *opts.type_grid_step;
    critical_bid = (std::floor(critical_bid / step) + 1.0) * step;
  }
  return critical_bid * x_star;
}

SingleParamResult generalized_gsp_v2(const std::vector<AllocationRule>& rules,
                                     const std::vector<double>& bids,
                                     const CriticalPriceOptions& opts) {
  if (rules.size() != bids.size())
    throw ValidationError("need one allocation rule per bidder");
  SingleParamResult out;
  out.allocation.reserve(rules.size());
  out.payments.reserve(rules.size());
  for (std::size_t i = 0; i < rules.size(); ++i) {
    out.allocation.push_back(rules[i].level(bids[i]));
    out.payments.push_back(critical_price(rules[i], bids[i], opts));
  }
  return out;
}

SlotAssignment generalized_gsp_v2(const SlotAuctionInstance& instance,
                                  const CriticalPriceOptions& opts) {
  instance.validate();
  const std::size_t n = instance.bidders();
  double max_bid = *std::max_element(instance.bids.begin(), instance.bids.end());

  SlotAssignment out;
  out.slot_of.assign(n, std::nullopt);
  out.per_click_price.assign(n, 0.0);
  out.expected_payment.assign(n, 0.0);

  auto order = rank_by_score(instance);
  for (std::size_t j = 0; j < instance.slots(); ++j) out.slot_of[order[j]] = j;

  for (std::size_t i = 0; i < n; ++i) {
    AllocationRule rule;
    rule.bid_max = 10.0 * std::max(max_bid, 1.0);
    rule.level = [&instance, i](double z) {
      SlotAuctionInstance probe = instance;
      probe.bids[i] = z;
      auto seated = assortative_seating(probe);
      for (std::size_t j = 0; j < seated.size(); ++j)
        if (seated[j] == i) return instance.slot_effects[j] * instance.ad_effects[i];
      return 0.0;
    };
    out.expected_payment[i] = critical_price(rule, instance.bids[i], opts);
    if (out.slot_of[i]) {
      double clicks =
          instance.slot_effects[*out.slot_of[i]] * instance.ad_effects[i];
      out.per_click_price[i] = out.expected_payment[i] / clicks;
    }
  }
  return out;
}

SlotAssignment hybrid_gsp(const SlotAuctionInstance& instance, double alpha) {
  instance.validate();
  if (!(alpha >= 1.0)) throw ValidationError("alpha must be in [1, inf]");
  const std::size_t n = instance.bidders();

  // The assortative seating maximizes the L^alpha norm over matchings for
  // every alpha; lp_payments rejects it if ties make the argmax disagree.
  MatchingSpace space = matching_space(instance);
  std::size_t chosen = space.outcome_of(assortative_seating(instance));
  std::vector<double> payments = lp_payments(space.bid_values, alpha, chosen);

  SlotAssignment out;
  out.slot_of.assign(n, std::nullopt);
  out.per_click_price.assign(n, 0.0);
  out.expected_payment = payments;
  const auto& seating = space.assignment[chosen];
  for (std::size_t j = 0; j < seating.size(); ++j) {
    std::size_t i = seating[j];
    out.slot_of[i] = j;
    double clicks = instance.slot_effects[j] * instance.ad_effects[i];
    out.per_click_price[i] = payments[i] / clicks;
  }
  return out;
}

}  // namespace vma
