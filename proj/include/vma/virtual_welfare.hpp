#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "vma/core.hpp"
#include "vma/general_auctions.hpp"

// Virtual welfare maximization: run the lexicographic mechanism on
// per-bidder monotone transforms of the reported values, then map the
// resulting virtual prices back through the inverse transform.

namespace vma {

// A strictly increasing continuous map on [domain_lo, domain_hi], with an
// optional closed-form inverse. Without one, inversion bisects the domain.
struct VirtualValueFn {
  std::function<double(double)> forward;
  std::optional<std::function<double(double)>> inverse;
  double domain_lo = 0.0;
  double domain_hi = 1e12;

  static VirtualValueFn identity();
  static VirtualValueFn power(double exponent);   // x^k, k > 0
  static VirtualValueFn scaled(double factor);    // c*x, c > 0
  static VirtualValueFn log1p();                  // log(1+x)

  // Named presets for the CLI: "identity" | "square" | "log1p".
  static VirtualValueFn by_name(const std::string& name);
};

// phi^{-1}(y): closed form when supplied, otherwise bisection on the domain
// to absolute tolerance 1e-12 in the argument. Throws when y lies outside
// the function's range.
double invert_virtual(const VirtualValueFn& fn, double y);

// Transforms row i by phis[i], runs the lexicographic mechanism, and
// returns the outcome with payments phi_i^{-1}(virtual price).
AuctionResult virtual_welfare_run(const ValuationMatrix& values,
                                  const std::vector<VirtualValueFn>& phis);

}  // namespace vma
