#include "vma/core.hpp"

#include <algorithm>
#include <cmath>

namespace vma {

void OutcomeSpace::validate() const {
  if (labels.empty()) throw ValidationError("outcome space is empty");
}

ValuationMatrix ValuationMatrix::from_rows(const std::vector<std::vector<double>>& rows) {
  if (rows.empty()) throw ValidationError("valuation matrix has no bidders");
  ValuationMatrix m(rows.size(), rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != m.outcomes_)
      throw ValidationError("valuation matrix rows have inconsistent lengths");
    for (std::size_t o = 0; o < m.outcomes_; ++o) m(i, o) = rows[i][o];
  }
  m.validate();
  return m;
}

std::vector<double> ValuationMatrix::row(std::size_t bidder) const {
  std::vector<double> out(outcomes_);
  for (std::size_t o = 0; o < outcomes_; ++o) out[o] = (*this)(bidder, o);
  return out;
}

void ValuationMatrix::set_row(std::size_t bidder, const std::vector<double>& values) {
  if (values.size() != outcomes_)
    throw ValidationError("row length does not match outcome count");
  for (std::size_t o = 0; o < outcomes_; ++o) (*this)(bidder, o) = values[o];
}

std::vector<std::vector<double>> ValuationMatrix::rows() const {
  std::vector<std::vector<double>> out(bidders_);
  for (std::size_t i = 0; i < bidders_; ++i) out[i] = row(i);
  return out;
}

void ValuationMatrix::validate() const {
  if (empty()) throw ValidationError("valuation matrix has no bidders or no outcomes");
  for (double x : v_) {
    if (!std::isfinite(x) || x < 0.0)
      throw ValidationError("valuation matrix entries must be finite and nonnegative");
  }
}

PreferenceModel PreferenceModel::roi_value_max(double gamma) {
  if (!(gamma > 0.0) || !std::isfinite(gamma))
    throw ValidationError("ROI constraint gamma must be positive and finite");
  PreferenceModel m(PrefKind::roi_value_max);
  m.gamma_ = gamma;
  return m;
}

PreferenceModel PreferenceModel::alpha_hybrid(double alpha) {
  if (!(alpha >= 1.0)) throw ValidationError("hybrid exponent alpha must be >= 1");
  PreferenceModel m(PrefKind::alpha_hybrid);
  m.alpha_ = alpha;
  return m;
}

std::string PreferenceModel::name() const {
  switch (kind_) {
    case PrefKind::quasilinear: return "quasilinear";
    case PrefKind::simple_value_max: return "simple-vm";
    case PrefKind::roi_value_max: return "roi-vm(" + std::to_string(gamma_) + ")";
    case PrefKind::alpha_hybrid: return "alpha-hybrid(" + std::to_string(alpha_) + ")";
  }
  return "?";
}

bool feasible(const PreferenceModel& model, const Bundle& b) {
  switch (model.kind()) {
    case PrefKind::quasilinear:
    case PrefKind::alpha_hybrid:
      return true;
    case PrefKind::simple_value_max:
      return b.payment <= b.value;
    case PrefKind::roi_value_max:
      return b.payment <= b.value / (1.0 + model.gamma());
  }
  return true;
}

namespace {

Pref from_compare(double a, double b) {
  if (a > b) return Pref::a_better;
  if (a < b) return Pref::b_better;
  return Pref::tie;
}

// Exponents at or above this threshold are compared in the alpha -> inf
// limit ordering; below it, powers are evaluated after factoring out the
// largest magnitude so alpha up to the threshold cannot overflow.
constexpr double kAlphaLimitThreshold = 64.0;

Pref alpha_hybrid_prefer(double alpha, const Bundle& a, const Bundle& b) {
  if (alpha == 1.0)  // plain surplus; dividing by the scale would break exact ties
    return from_compare(a.value - a.payment, b.value - b.payment);
  if (alpha >= kAlphaLimitThreshold) {
    // Sign of v_a^a - p_a^a - v_b^a + p_b^a in the limit: compare the
    // positive terms {v_a, p_b} against the negative terms {p_a, v_b}
    // from the largest down.
    double pos_hi = std::max(a.value, b.payment);
    double pos_lo = std::min(a.value, b.payment);
    double neg_hi = std::max(a.payment, b.value);
    double neg_lo = std::min(a.payment, b.value);
    if (pos_hi != neg_hi) return from_compare(pos_hi, neg_hi);
    if (pos_lo != neg_lo) return from_compare(pos_lo, neg_lo);
    // Exact multiset tie; finite-alpha utilities coincide as well.
    return from_compare(a.value - a.payment, b.value - b.payment);
  }
  double scale = std::max({a.value, a.payment, b.value, b.payment});
  if (scale == 0.0) return Pref::tie;
  double ua = std::pow(a.value / scale, alpha) - std::pow(a.payment / scale, alpha);
  double ub = std::pow(b.value / scale, alpha) - std::pow(b.payment / scale, alpha);
  return from_compare(ua, ub);
}

Pref constrained_value_max_prefer(const PreferenceModel& model, const Bundle& a,
                                  const Bundle& b) {
  bool fa = feasible(model, a);
  bool fb = feasible(model, b);
  if (fa != fb) return fa ? Pref::a_better : Pref::b_better;
  if (fa) {
    if (a.value != b.value) return from_compare(a.value, b.value);
    return from_compare(b.payment, a.payment);
  }
  // Both infeasible: deterministic fallback, lower payment then higher value.
  if (a.payment != b.payment) return from_compare(b.payment, a.payment);
  return from_compare(a.value, b.value);
}

}  // namespace

Pref prefer(const PreferenceModel& model, const Bundle& a, const Bundle& b) {
  switch (model.kind()) {
    case PrefKind::quasilinear:
      return from_compare(a.value - a.payment, b.value - b.payment);
    case PrefKind::alpha_hybrid:
      return alpha_hybrid_prefer(model.alpha(), a, b);
    case PrefKind::simple_value_max:
    case PrefKind::roi_value_max:
      return constrained_value_max_prefer(model, a, b);
  }
  return Pref::tie;
}

double roi_reduced_value(double value, double gamma) {
  if (value < 0.0) throw ValidationError("value must be nonnegative");
  if (!(gamma > 0.0)) throw ValidationError("gamma must be positive");
  return value / (1.0 + gamma);
}

}  // namespace vma
