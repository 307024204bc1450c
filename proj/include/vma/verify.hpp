#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "vma/core.hpp"
#include "vma/general_auctions.hpp"
#include "vma/slot_auctions.hpp"
#include "vma/virtual_welfare.hpp"

// Brute-force incentive and monotonicity oracles. A mechanism adapter
// exposes allocation, a single bidder's payment, and a tie probe (the
// smallest deciding comparison); best_response sweeps a bid grid against
// it and reports the preference-maximal reachable bundle.

namespace vma {

// Uniform grid lo, lo+step, ... inclusive of lo, exclusive of hi + step/2.
struct GridSpec {
  double lo = 0.0;
  double hi = 0.0;
  double step = 0.05;

  std::vector<double> points() const;
};

// Bundle ordering used by the oracles; comparator_for adapts a
// PreferenceModel, and composite orderings (ROI-capped hybrids) plug in
// the same way.
using Comparator = std::function<Pref(const Bundle&, const Bundle&)>;
Comparator comparator_for(const PreferenceModel& model);

struct GeneralRun {
  std::size_t outcome = 0;
  double margin = 0.0;  // smallest deciding comparison of this run
};

struct GeneralMechanism {
  std::string name;
  std::function<GeneralRun(const ValuationMatrix&)> run;
  std::function<double(const ValuationMatrix&, std::size_t chosen, std::size_t bidder)>
      payment_for;

  static GeneralMechanism lexi();
  static GeneralMechanism lp(double alpha);
  static GeneralMechanism virtual_welfare(std::vector<VirtualValueFn> phis);
};

struct SlotMechanism {
  std::string name;
  std::function<SlotAssignment(const SlotAuctionInstance&)> run;
  std::function<double(const SlotAuctionInstance&)> decision_margin;

  static SlotMechanism gsp();
  static SlotMechanism hybrid(double alpha);
};

struct DeviationReport {
  std::size_t bidder = 0;
  Bundle truthful;
  Bundle best;
  // The report that realizes `best`: a full value row for general-domain
  // mechanisms, a single bid for slot mechanisms.
  std::vector<double> best_report;
  std::string best_desc = "truthful";
  bool profitable = false;
  std::size_t tie_excluded = 0;  // grid points skipped as ties
  std::size_t error_points = 0;  // grid points where the mechanism threw
  std::size_t evaluated = 0;
};

// Sweeps bidder's deviations (uniform row scalings and single-outcome
// perturbations over the grid) against the mechanism. `bids` carries every
// bidder's baseline report; `true_row` carries the deviator's true values.
DeviationReport best_response(const GeneralMechanism& mech, const Comparator& cmp,
                              const ValuationMatrix& bids,
                              const std::vector<double>& true_row, std::size_t bidder,
                              const GridSpec& grid, double eps);

// Slot variant: deviations are single per-click bids on the grid.
DeviationReport best_response(const SlotMechanism& mech, const Comparator& cmp,
                              const SlotAuctionInstance& bids, double true_type,
                              std::size_t bidder, const GridSpec& grid, double eps);

// Runs best_response for every bidder. `report_map` maps a true value to
// the baseline report (identity for truthful bidding; v / (1 + gamma) for
// ROI bidders bidding reduced values).
std::vector<DeviationReport> dsic_ae_check(
    const GeneralMechanism& mech, const Comparator& cmp, const ValuationMatrix& true_values,
    const GridSpec& grid, double eps,
    const std::function<double(double)>& report_map = nullptr);

std::vector<DeviationReport> dsic_ae_check(
    const SlotMechanism& mech, const Comparator& cmp, const SlotAuctionInstance& instance,
    const GridSpec& grid, double eps,
    const std::function<double(double)>& report_map = nullptr);

inline bool all_truthful(const std::vector<DeviationReport>& reports) {
  for (const auto& r : reports)
    if (r.profitable) return false;
  return true;
}

struct MonotoneCheck {
  bool monotone = true;
  double violation_at = 0.0;  // first grid point where the level decreased
  double level_before = 0.0;
  double level_at = 0.0;
};

MonotoneCheck monotone_check(const AllocationRule& rule, const GridSpec& grid);

}  // namespace vma
