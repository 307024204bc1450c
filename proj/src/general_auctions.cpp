#include "vma/general_auctions.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace vma {

namespace {

struct MaskedLexiResult {
  std::size_t outcome = 0;
  LexiTrace trace;
};

// Runs the round-based allocation over the bidders marked active. With no
// active bidders every outcome survives and the lowest index wins.
MaskedLexiResult lexi_allocate_masked(const ValuationMatrix& values,
                                      const std::vector<bool>& active) {
  const std::size_t n = values.bidders();
  const std::size_t k = values.outcomes();

  MaskedLexiResult res;
  double margin = kInfinity;

  std::vector<std::size_t> surviving(k);
  std::iota(surviving.begin(), surviving.end(), std::size_t{0});
  std::vector<bool> considered(n, false);

  std::size_t remaining = 0;
  for (std::size_t i = 0; i < n; ++i)
    if (active[i]) ++remaining;

  while (remaining > 0) {
    // Best achievable value over the surviving outcomes, per bidder.
    std::size_t winner = n;
    double winner_best = -1.0;
    double runner_up = -1.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (!active[i] || considered[i]) continue;
      double best = 0.0;
      for (std::size_t o : surviving) best = std::max(best, values(i, o));
      if (winner == n || best > winner_best) {
        runner_up = winner_best;
        winner_best = best;
        winner = i;
      } else {
        runner_up = std::max(runner_up, best);
      }
    }
    if (runner_up >= 0.0) margin = std::min(margin, winner_best - runner_up);

    std::vector<std::size_t> kept;
    for (std::size_t o : surviving) {
      if (values(winner, o) == winner_best) {
        kept.push_back(o);
      } else {
        margin = std::min(margin, winner_best - values(winner, o));
      }
    }
    surviving = std::move(kept);
    considered[winner] = true;
    --remaining;
    res.trace.rounds.push_back(LexiRound{winner, winner_best, surviving});
  }

  if (surviving.size() > 1) margin = 0.0;  // final pick is an arbitrary tie
  res.outcome = surviving.front();
  res.trace.decision_margin = std::isfinite(margin) ? margin : 0.0;
  return res;
}

double stable_power_sum(const std::vector<double>& column, double alpha, double scale) {
  double sum = 0.0;
  for (double v : column) sum += std::pow(v / scale, alpha);
  return sum;
}

// L^alpha score of one outcome column, evaluated as m * (sum (v/m)^a)^(1/a)
// so that alpha up to 64 cannot overflow. alpha == 1 uses the plain sum.
double lp_score(const std::vector<double>& column, double alpha) {
  if (alpha == 1.0) return std::accumulate(column.begin(), column.end(), 0.0);
  double scale = *std::max_element(column.begin(), column.end());
  if (scale <= 0.0) return 0.0;
  return scale * std::pow(stable_power_sum(column, alpha, scale), 1.0 / alpha);
}

std::vector<double> outcome_column(const ValuationMatrix& values, std::size_t o,
                                   const std::vector<bool>& active) {
  std::vector<double> col;
  col.reserve(values.bidders());
  for (std::size_t i = 0; i < values.bidders(); ++i)
    if (active[i]) col.push_back(values(i, o));
  return col;
}

std::size_t lp_allocate_masked(const ValuationMatrix& values, double alpha,
                               const std::vector<bool>& active) {
  std::size_t best = 0;
  double best_score = -1.0;
  for (std::size_t o = 0; o < values.outcomes(); ++o) {
    double score = lp_score(outcome_column(values, o, active), alpha);
    if (o == 0 || score > best_score) {
      best_score = score;
      best = o;
    }
  }
  return best;
}

// sum_{active j} v_j(o_hi)^a - v_j(o_lo)^a, factored by the largest entry.
// Returns the factored sum together with the scale.
struct FactoredDiff {
  double sum = 0.0;
  double scale = 0.0;
};

FactoredDiff power_diff(const ValuationMatrix& values, double alpha, std::size_t o_hi,
                        std::size_t o_lo, const std::vector<bool>& active) {
  FactoredDiff d;
  for (std::size_t j = 0; j < values.bidders(); ++j) {
    if (!active[j]) continue;
    d.scale = std::max({d.scale, values(j, o_hi), values(j, o_lo)});
  }
  if (d.scale == 0.0) return d;
  for (std::size_t j = 0; j < values.bidders(); ++j) {
    if (!active[j]) continue;
    if (alpha == 1.0) {
      d.sum += (values(j, o_hi) - values(j, o_lo)) / d.scale;
    } else {
      d.sum += std::pow(values(j, o_hi) / d.scale, alpha) -
               std::pow(values(j, o_lo) / d.scale, alpha);
    }
  }
  return d;
}

}  // namespace

LexiOutcome lexi_allocate(const ValuationMatrix& values) {
  if (values.empty()) throw ValidationError("no bidders/outcomes");
  values.validate();
  std::vector<bool> active(values.bidders(), true);
  auto res = lexi_allocate_masked(values, active);
  return LexiOutcome{res.outcome, std::move(res.trace)};
}

namespace {

double lexi_payment_masked(const ValuationMatrix& values, std::size_t chosen,
                           std::size_t bidder, std::vector<bool>& active) {
  active[bidder] = false;
  std::size_t without_i = lexi_allocate_masked(values, active).outcome;
  active[bidder] = true;
  if (without_i == chosen) return 0.0;
  double charge = 0.0;
  for (std::size_t j = 0; j < values.bidders(); ++j) {
    if (j == bidder) continue;
    if (values(j, without_i) != values(j, chosen))
      charge = std::max(charge, values(j, without_i));
  }
  return charge;
}

}  // namespace

std::vector<double> lexi_payments(const ValuationMatrix& values, std::size_t chosen) {
  if (values.empty()) throw ValidationError("no bidders/outcomes");
  if (chosen >= values.outcomes()) throw ValidationError("chosen outcome out of range");
  values.validate();
  const std::size_t n = values.bidders();
  std::vector<bool> active(n, true);
  if (lexi_allocate_masked(values, active).outcome != chosen)
    throw ValidationError("chosen outcome does not match the allocation");

  std::vector<double> payments(n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    payments[i] = lexi_payment_masked(values, chosen, i, active);
  return payments;
}

double lexi_payment_for(const ValuationMatrix& values, std::size_t chosen,
                        std::size_t bidder) {
  if (values.empty()) throw ValidationError("no bidders/outcomes");
  if (chosen >= values.outcomes() || bidder >= values.bidders())
    throw ValidationError("index out of range");
  std::vector<bool> active(values.bidders(), true);
  return lexi_payment_masked(values, chosen, bidder, active);
}

std::size_t lp_allocate(const ValuationMatrix& values, double alpha) {
  if (values.empty()) throw ValidationError("no bidders/outcomes");
  if (!(alpha >= 1.0)) throw ValidationError("alpha must be in [1, inf]");
  if (std::isinf(alpha)) return lexi_allocate(values).outcome;
  values.validate();
  std::vector<bool> active(values.bidders(), true);
  return lp_allocate_masked(values, alpha, active);
}

namespace {

double lp_payment_masked(const ValuationMatrix& values, double alpha, std::size_t chosen,
                         std::size_t bidder, std::vector<bool>& active) {
  active[bidder] = false;
  std::size_t without_i = lp_allocate_masked(values, alpha, active);
  FactoredDiff d = power_diff(values, alpha, without_i, chosen, active);
  active[bidder] = true;
  if (d.sum > 0.0 && d.scale > 0.0) return d.scale * std::pow(d.sum, 1.0 / alpha);
  if (d.sum < 0.0) {
    // The reduced optimum can only look worse than `chosen` through
    // floating-point noise; anything beyond that is an allocation bug.
    double log_mag = alpha * std::log(d.scale) + std::log(-d.sum);
    if (log_mag > std::log(1e-12))
      throw InvariantError("payment formula produced negative externality");
  }
  return 0.0;
}

}  // namespace

std::vector<double> lp_payments(const ValuationMatrix& values, double alpha,
                                std::size_t chosen) {
  if (std::isinf(alpha)) return lexi_payments(values, chosen);
  if (values.empty()) throw ValidationError("no bidders/outcomes");
  if (chosen >= values.outcomes()) throw ValidationError("chosen outcome out of range");
  if (!(alpha >= 1.0)) throw ValidationError("alpha must be in [1, inf]");
  values.validate();

  const std::size_t n = values.bidders();
  std::vector<bool> active(n, true);
  if (lp_allocate_masked(values, alpha, active) != chosen)
    throw ValidationError("chosen outcome does not match the allocation");

  std::vector<double> payments(n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    payments[i] = lp_payment_masked(values, alpha, chosen, i, active);
  return payments;
}

double lp_payment_for(const ValuationMatrix& values, double alpha, std::size_t chosen,
                      std::size_t bidder) {
  if (std::isinf(alpha)) return lexi_payment_for(values, chosen, bidder);
  if (values.empty()) throw ValidationError("no bidders/outcomes");
  if (chosen >= values.outcomes() || bidder >= values.bidders())
    throw ValidationError("index out of range");
  std::vector<bool> active(values.bidders(), true);
  return lp_payment_masked(values, alpha, chosen, bidder, active);
}

std::size_t lp_affine_allocate(const ValuationMatrix& values, const AffineParams& params) {
  if (values.empty()) throw ValidationError("no bidders/outcomes");
  if (params.weights.size() != values.bidders())
    throw ValidationError("affine params need one weight per bidder");
  if (params.offsets.size() != values.outcomes())
    throw ValidationError("affine params need one offset per outcome");
  for (double w : params.weights)
    if (!(w > 0.0)) throw ValidationError("affine weights must be positive");
  for (double z : params.offsets)
    if (z < 0.0) throw ValidationError("affine offsets must be nonnegative");
  if (!(params.alpha >= 1.0)) throw ValidationError("alpha must be in [1, inf]");

  // Weighted values plus the offset as one extra pseudo-bidder row; at
  // alpha = inf this reduces to the lexicographic allocation (and exactly
  // to lexi_allocate when all offsets are zero).
  bool any_offset =
      std::any_of(params.offsets.begin(), params.offsets.end(), [](double z) { return z != 0.0; });
  ValuationMatrix scaled(values.bidders() + (any_offset ? 1 : 0), values.outcomes());
  for (std::size_t i = 0; i < values.bidders(); ++i)
    for (std::size_t o = 0; o < values.outcomes(); ++o)
      scaled(i, o) = params.weights[i] * values(i, o);
  if (any_offset)
    for (std::size_t o = 0; o < values.outcomes(); ++o)
      scaled(values.bidders(), o) = params.offsets[o];

  if (std::isinf(params.alpha)) return lexi_allocate(scaled).outcome;
  std::vector<bool> active(scaled.bidders(), true);
  return lp_allocate_masked(scaled, params.alpha, active);
}

double lp_decision_margin(const ValuationMatrix& values, double alpha) {
  return lp_allocate_with_margin(values, alpha).margin;
}

LpChoice lp_allocate_with_margin(const ValuationMatrix& values, double alpha) {
  if (values.empty()) throw ValidationError("no bidders/outcomes");
  if (!(alpha >= 1.0)) throw ValidationError("alpha must be in [1, inf]");
  if (std::isinf(alpha)) {
    auto r = lexi_allocate(values);
    return LpChoice{r.outcome, r.trace.decision_margin};
  }
  std::vector<bool> active(values.bidders(), true);
  LpChoice choice;
  double best = -1.0, second = -1.0;
  for (std::size_t o = 0; o < values.outcomes(); ++o) {
    double score = lp_score(outcome_column(values, o, active), alpha);
    if (o == 0 || score > best) {
      second = best;
      best = score;
      choice.outcome = o;
    } else {
      second = std::max(second, score);
    }
  }
  choice.margin = second < 0.0 ? kInfinity : best - second;
  return choice;
}

}  // namespace vma
