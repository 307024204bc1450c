#include "vma/robustness.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "vma/parallel.hpp"

namespace vma {

SeparationCheck separation_condition(const ValuationMatrix& values, double gamma) {
  if (!(gamma > 0.0)) throw ValidationError("gamma must be positive");
  values.validate();
  SeparationCheck check;
  check.violation.assign(values.bidders(), std::nullopt);
  const double shrink = gamma / (gamma + 1.0);
  for (std::size_t i = 0; i < values.bidders(); ++i) {
    for (std::size_t hi = 0; hi < values.outcomes() && !check.violation[i]; ++hi) {
      for (std::size_t lo = 0; lo < values.outcomes(); ++lo) {
        if (values(i, hi) <= values(i, lo)) continue;
        if (values(i, hi) * shrink < values(i, lo)) {
          check.violation[i] = SeparationViolation{hi, lo};
          break;
        }
      }
    }
  }
  return check;
}

double min_robust_roi(const SlotAuctionInstance& instance) {
  instance.validate();
  const std::size_t n = instance.bidders();
  const std::size_t m = instance.slots();

  std::vector<double> scores(n);
  for (std::size_t i = 0; i < n; ++i) scores[i] = instance.score(i);
  std::sort(scores.begin(), scores.end(), std::greater<double>());
  for (std::size_t i = 0; i + 1 < n; ++i)
    if (scores[i] == scores[i + 1])
      throw ValidationError("tied bidder scores: minimum robust ROI undefined");

  auto score_at = [&](std::size_t rank) {  // 1-based, 0 beyond the field
    return rank <= n ? scores[rank - 1] : 0.0;
  };

  double gamma_star = 0.0;
  for (std::size_t i = 1; i <= m; ++i) {
    double a_i = instance.slot_effects[i - 1];
    double a_next = i < m ? instance.slot_effects[i] : 0.0;
    double denom = a_i - a_next;
    double s_below = score_at(i + 1);
    if (s_below == 0.0) continue;  // nobody below slot i
    double ratio = score_at(i + 2) / s_below;
    gamma_star = std::max(gamma_star, a_i / denom - (a_next / denom) * ratio);
  }
  return gamma_star;
}

void RobustnessReport::validate() const {
  double prev = -1.0;
  for (const auto& [gamma, fraction] : curve) {
    if (fraction < 0.0 || fraction > 1.0)
      throw InvariantError("curve fraction outside [0, 1]");
    if (fraction < prev) throw InvariantError("gamma curve is not nondecreasing");
    prev = fraction;
  }
}

RobustnessReport gamma_curve(const std::vector<SlotAuctionInstance>& dataset,
                             const std::vector<double>& gammas, std::size_t threads) {
  if (dataset.empty()) throw ValidationError("empty dataset");
  if (!std::is_sorted(gammas.begin(), gammas.end()))
    throw ValidationError("gammas must be sorted ascending");

  RobustnessReport report;
  report.dataset_size = dataset.size();
  report.per_auction_gamma_star.assign(dataset.size(),
                                       std::numeric_limits<double>::quiet_NaN());

  parallel_for(dataset.size(), threads, [&](std::size_t idx) {
    try {
      report.per_auction_gamma_star[idx] = min_robust_roi(dataset[idx]);
    } catch (const ValidationError&) {
      // tied scores: left as NaN, tallied below
    }
  });

  std::vector<double> valid;
  valid.reserve(dataset.size());
  for (double g : report.per_auction_gamma_star) {
    if (std::isnan(g))
      ++report.excluded;
    else
      valid.push_back(g);
  }
  std::sort(valid.begin(), valid.end());

  report.curve.reserve(gammas.size());
  for (double gamma : gammas) {
    std::size_t certified =
        std::lower_bound(valid.begin(), valid.end(), gamma) - valid.begin();
    double fraction = valid.empty()
                          ? 0.0
                          : static_cast<double>(certified) / static_cast<double>(valid.size());
    report.curve.emplace_back(gamma, fraction);
  }
  report.validate();
  return report;
}

bool slot_effects_separated(const std::vector<double>& slot_effects, double gamma) {
  if (!(gamma > 0.0)) throw ValidationError("gamma must be positive");
  const double shrink = gamma / (gamma + 1.0);
  for (std::size_t i = 0; i < slot_effects.size(); ++i) {
    double next = i + 1 < slot_effects.size() ? slot_effects[i + 1] : 0.0;
    if (next > shrink * slot_effects[i]) return false;
  }
  return true;
}

Comparator prefer_with_roi(const PreferenceModel& base, double gamma) {
  if (!(gamma > 0.0)) throw ValidationError("gamma must be positive");
  return [base, gamma](const Bundle& a, const Bundle& b) {
    bool fa = a.payment <= a.value / (1.0 + gamma);
    bool fb = b.payment <= b.value / (1.0 + gamma);
    if (fa != fb) return fa ? Pref::a_better : Pref::b_better;
    if (fa) return prefer(base, a, b);
    if (a.payment != b.payment)
      return a.payment < b.payment ? Pref::a_better : Pref::b_better;
    if (a.value != b.value) return a.value > b.value ? Pref::a_better : Pref::b_better;
    return Pref::tie;
  };
}

}  // namespace vma
