#include "vma/verify.hpp"

#include <algorithm>
#include <cmath>

namespace vma {

std::vector<double> GridSpec::points() const {
  if (!(step > 0.0)) throw ValidationError("grid step must be positive");
  if (hi < lo) throw ValidationError("grid hi must be >= lo");
  std::vector<double> out;
  std::size_t count = static_cast<std::size_t>(std::floor((hi + step / 2.0 - lo) / step)) + 1;
  out.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    double x = lo + static_cast<double>(k) * step;
    if (x >= hi + step / 2.0) break;
    out.push_back(x);
  }
  return out;
}

Comparator comparator_for(const PreferenceModel& model) {
  return [model](const Bundle& a, const Bundle& b) { return prefer(model, a, b); };
}

GeneralMechanism GeneralMechanism::lexi() {
  GeneralMechanism m;
  m.name = "lexi";
  m.run = [](const ValuationMatrix& v) {
    auto r = lexi_allocate(v);
    return GeneralRun{r.outcome, r.trace.decision_margin};
  };
  m.payment_for = [](const ValuationMatrix& v, std::size_t chosen, std::size_t i) {
    return lexi_payment_for(v, chosen, i);
  };
  return m;
}

GeneralMechanism GeneralMechanism::lp(double alpha) {
  GeneralMechanism m;
  m.name = "lp";
  m.run = [alpha](const ValuationMatrix& v) {
    auto r = lp_allocate_with_margin(v, alpha);
    return GeneralRun{r.outcome, r.margin};
  };
  m.payment_for = [alpha](const ValuationMatrix& v, std::size_t chosen, std::size_t i) {
    return lp_payment_for(v, alpha, chosen, i);
  };
  return m;
}

GeneralMechanism GeneralMechanism::virtual_welfare(std::vector<VirtualValueFn> phis) {
  auto transform = [phis](const ValuationMatrix& v) {
    ValuationMatrix t(v.bidders(), v.outcomes());
    for (std::size_t i = 0; i < v.bidders(); ++i)
      for (std::size_t o = 0; o < v.outcomes(); ++o) {
        if (v(i, o) < phis[i].domain_lo || v(i, o) > phis[i].domain_hi)
          throw ValidationError("value outside virtual function domain");
        t(i, o) = phis[i].forward(v(i, o));
      }
    return t;
  };
  GeneralMechanism m;
  m.name = "virtual";
  m.run = [transform](const ValuationMatrix& v) {
    auto r = lexi_allocate(transform(v));
    return GeneralRun{r.outcome, r.trace.decision_margin};
  };
  m.payment_for = [transform, phis](const ValuationMatrix& v, std::size_t chosen,
                                    std::size_t i) {
    double pi = lexi_payment_for(transform(v), chosen, i);
    return invert_virtual(phis[i], pi);
  };
  return m;
}

SlotMechanism SlotMechanism::gsp() {
  SlotMechanism m;
  m.name = "gsp";
  m.run = [](const SlotAuctionInstance& s) { return vma::gsp(s); };
  m.decision_margin = [](const SlotAuctionInstance& s) { return gsp_decision_margin(s); };
  return m;
}

SlotMechanism SlotMechanism::hybrid(double alpha) {
  SlotMechanism m;
  m.name = "hybrid-gsp";
  m.run = [alpha](const SlotAuctionInstance& s) { return hybrid_gsp(s, alpha); };
  m.decision_margin = [](const SlotAuctionInstance& s) { return gsp_decision_margin(s); };
  return m;
}

namespace {

void rank_candidate(DeviationReport& rep, const Comparator& cmp, const Bundle& bundle,
                    const std::vector<double>& report, const std::string& desc) {
  if (cmp(bundle, rep.best) == Pref::a_better) {
    rep.best = bundle;
    rep.best_report = report;
    rep.best_desc = desc;
  }
}

}  // namespace

DeviationReport best_response(const GeneralMechanism& mech, const Comparator& cmp,
                              const ValuationMatrix& bids,
                              const std::vector<double>& true_row, std::size_t bidder,
                              const GridSpec& grid, double eps) {
  if (bidder >= bids.bidders()) throw ValidationError("bidder index out of range");
  if (true_row.size() != bids.outcomes())
    throw ValidationError("true row length does not match outcome count");

  ValuationMatrix work = bids;
  auto evaluate = [&](const std::vector<double>& report) {
    work.set_row(bidder, report);
    GeneralRun r = mech.run(work);
    Bundle b{true_row[r.outcome], mech.payment_for(work, r.outcome, bidder)};
    return std::pair<Bundle, double>(b, r.margin);
  };

  DeviationReport rep;
  rep.bidder = bidder;
  rep.best_report = bids.row(bidder);
  rep.truthful = evaluate(rep.best_report).first;
  rep.best = rep.truthful;
  rep.evaluated = 1;

  auto consider = [&](const std::vector<double>& report, const std::string& desc) {
    ++rep.evaluated;
    try {
      auto [bundle, margin] = evaluate(report);
      if (margin < eps) {
        ++rep.tie_excluded;
        return;
      }
      rank_candidate(rep, cmp, bundle, report, desc);
    } catch (const std::exception&) {
      ++rep.error_points;
    }
  };

  const std::vector<double> baseline = bids.row(bidder);
  const std::vector<double> gridpoints = grid.points();

  // Uniform scalings of the baseline report.
  for (double s : gridpoints) {
    std::vector<double> row(baseline.size());
    for (std::size_t o = 0; o < row.size(); ++o) row[o] = s * baseline[o];
    consider(row, "scale " + std::to_string(s));
  }
  // Single-outcome perturbations.
  for (std::size_t o = 0; o < baseline.size(); ++o) {
    std::vector<double> row = baseline;
    for (double g : gridpoints) {
      row[o] = g;
      consider(row, "outcome " + std::to_string(o) + " -> " + std::to_string(g));
    }
    row[o] = baseline[o];
  }

  rep.profitable = cmp(rep.best, rep.truthful) == Pref::a_better;
  return rep;
}

DeviationReport best_response(const SlotMechanism& mech, const Comparator& cmp,
                              const SlotAuctionInstance& bids, double true_type,
                              std::size_t bidder, const GridSpec& grid, double eps) {
  if (bidder >= bids.bidders()) throw ValidationError("bidder index out of range");

  SlotAuctionInstance work = bids;
  auto evaluate = [&](double bid) {
    work.bids[bidder] = bid;
    SlotAssignment a = mech.run(work);
    double clicks = a.slot_of[bidder]
                        ? bids.slot_effects[*a.slot_of[bidder]] * bids.ad_effects[bidder]
                        : 0.0;
    return Bundle{true_type * clicks, a.expected_payment[bidder]};
  };
  auto margin = [&](double bid) {
    work.bids[bidder] = bid;
    return mech.decision_margin(work);
  };

  DeviationReport rep;
  rep.bidder = bidder;
  rep.best_report = {bids.bids[bidder]};
  rep.truthful = evaluate(bids.bids[bidder]);
  rep.best = rep.truthful;
  rep.evaluated = 1;

  for (double g : grid.points()) {
    ++rep.evaluated;
    try {
      if (margin(g) < eps) {
        ++rep.tie_excluded;
        continue;
      }
      rank_candidate(rep, cmp, evaluate(g), {g}, "bid " + std::to_string(g));
    } catch (const std::exception&) {
      ++rep.error_points;
    }
  }

  rep.profitable = cmp(rep.best, rep.truthful) == Pref::a_better;
  return rep;
}

std::vector<DeviationReport> dsic_ae_check(const GeneralMechanism& mech,
                                           const Comparator& cmp,
                                           const ValuationMatrix& true_values,
                                           const GridSpec& grid, double eps,
                                           const std::function<double(double)>& report_map) {
  ValuationMatrix bids = true_values;
  if (report_map) {
    for (std::size_t i = 0; i < bids.bidders(); ++i)
      for (std::size_t o = 0; o < bids.outcomes(); ++o)
        bids(i, o) = report_map(true_values(i, o));
  }
  std::vector<DeviationReport> reports;
  reports.reserve(true_values.bidders());
  for (std::size_t i = 0; i < true_values.bidders(); ++i)
    reports.push_back(best_response(mech, cmp, bids, true_values.row(i), i, grid, eps));
  return reports;
}

std::vector<DeviationReport> dsic_ae_check(const SlotMechanism& mech, const Comparator& cmp,
                                           const SlotAuctionInstance& instance,
                                           const GridSpec& grid, double eps,
                                           const std::function<double(double)>& report_map) {
  SlotAuctionInstance bids = instance;
  std::vector<double> types = instance.types ? *instance.types : instance.bids;
  if (report_map)
    for (std::size_t i = 0; i < bids.bids.size(); ++i) bids.bids[i] = report_map(types[i]);
  std::vector<DeviationReport> reports;
  reports.reserve(bids.bidders());
  for (std::size_t i = 0; i < bids.bidders(); ++i)
    reports.push_back(best_response(mech, cmp, bids, types[i], i, grid, eps));
  return reports;
}

MonotoneCheck monotone_check(const AllocationRule& rule, const GridSpec& grid) {
  MonotoneCheck out;
  double prev = -kInfinity;
  for (double g : grid.points()) {
    double x = rule.level(g);
    if (x < prev) {
      out.monotone = false;
      out.violation_at = g;
      out.level_before = prev;
      out.level_at = x;
      return out;
    }
    prev = x;
  }
  return out;
}

}  // namespace vma
