#pragma once

#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

// Core domain types shared by every auction mechanism and the incentive
// verifier: outcome spaces, valuation matrices, value-payment bundles, and
// the bidder preference families over bundles.

namespace vma {

// Thrown on malformed inputs (bad dimensions, schema violations, ...).
struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Thrown when an internal consistency check fails; indicates a bug, not
// a bad input.
struct InvariantError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

// Finite set of outcome labels with stable, contiguous indices.
struct OutcomeSpace {
  std::vector<std::string> labels;

  std::size_t size() const { return labels.size(); }
  void validate() const;
};

// Nonnegative value v(i, o) of bidder i for outcome o. The same structure
// holds reported bids when a mechanism runs on submitted values.
class ValuationMatrix {
 public:
  ValuationMatrix() = default;
  ValuationMatrix(std::size_t bidders, std::size_t outcomes, double fill = 0.0)
      : bidders_(bidders), outcomes_(outcomes), v_(bidders * outcomes, fill) {}

  static ValuationMatrix from_rows(const std::vector<std::vector<double>>& rows);

  double operator()(std::size_t bidder, std::size_t outcome) const {
    return v_[bidder * outcomes_ + outcome];
  }
  double& operator()(std::size_t bidder, std::size_t outcome) {
    return v_[bidder * outcomes_ + outcome];
  }

  std::size_t bidders() const { return bidders_; }
  std::size_t outcomes() const { return outcomes_; }
  bool empty() const { return bidders_ == 0 || outcomes_ == 0; }

  std::vector<double> row(std::size_t bidder) const;
  void set_row(std::size_t bidder, const std::vector<double>& values);
  std::vector<std::vector<double>> rows() const;

  // All entries finite and >= 0.
  void validate() const;

  friend bool operator==(const ValuationMatrix&, const ValuationMatrix&) = default;

 private:
  std::size_t bidders_ = 0;
  std::size_t outcomes_ = 0;
  std::vector<double> v_;
};

// A value-payment pair as seen by one bidder.
struct Bundle {
  double value = 0.0;
  double payment = 0.0;

  friend bool operator==(const Bundle&, const Bundle&) = default;
};

// Three-way result of comparing bundle a against bundle b under a model.
enum class Pref { a_better, b_better, tie };

inline Pref flip(Pref p) {
  if (p == Pref::a_better) return Pref::b_better;
  if (p == Pref::b_better) return Pref::a_better;
  return Pref::tie;
}

enum class PrefKind {
  quasilinear,      // maximize v - p
  simple_value_max, // maximize v subject to p <= v
  roi_value_max,    // maximize v subject to (v - p)/p >= gamma
  alpha_hybrid,     // maximize v^alpha - p^alpha
};

// Tagged preference family. Immutable once constructed.
class PreferenceModel {
 public:
  static PreferenceModel quasilinear() { return PreferenceModel(PrefKind::quasilinear); }
  static PreferenceModel simple_value_max() {
    return PreferenceModel(PrefKind::simple_value_max);
  }
  static PreferenceModel roi_value_max(double gamma);
  static PreferenceModel alpha_hybrid(double alpha);  // alpha in [1, inf]

  PrefKind kind() const { return kind_; }
  double gamma() const { return gamma_; }
  double alpha() const { return alpha_; }

  std::string name() const;

 private:
  explicit PreferenceModel(PrefKind kind) : kind_(kind) {}

  PrefKind kind_;
  double gamma_ = 0.0;
  double alpha_ = 1.0;
};

// True iff the model's spending constraint holds for the bundle.
// Quasilinear and alpha-hybrid preferences are unconstrained.
bool feasible(const PreferenceModel& model, const Bundle& b);

// Compares two bundles under the model. Total preorder; Tie only on exact
// equality of the deciding quantity. Constrained models rank every
// infeasible bundle strictly below every feasible one; among infeasible
// bundles, lower payment wins, then higher value.
Pref prefer(const PreferenceModel& model, const Bundle& a, const Bundle& b);

// Value a bidder with ROI constraint gamma is willing to pay: v / (1 + gamma).
double roi_reduced_value(double value, double gamma);

// Single-parameter type t in the decomposition v(o) = t * x(o).
struct SingleParamType {
  double t = 0.0;
};

}  // namespace vma
